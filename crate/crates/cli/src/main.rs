use std::io::Write;
use std::process::ExitCode;

use crowell_cli::{run, Status};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = run(&args, &mut std::io::stdin().lock());
    let payload = result.payload.trim_end();
    if result.status == Status::Error {
        eprintln!("{payload}");
    } else {
        let mut out = std::io::stdout().lock();
        // a closed pipe downstream is not an error of ours
        let _ = writeln!(out, "{payload}");
    }
    ExitCode::from(result.exit_code as u8)
}
