//! Command-line front end: every subcommand reads diagram or presentation
//! JSON and writes JSON (or a single polynomial line) to stdout.

use std::collections::BTreeMap;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use crowell_core::coloring::{
    count_constrained, count_nonconstant, default_battery, element_lengths, fingerprint_with, is_coloring, Battery,
    Constraint, FiniteModuleSpec, GradedElement,
};
use crowell_core::presentation::{
    alexander_polynomial, build_presentation, check_equivalence_certificate, elementary_ideal_minors, quotient_mod_N,
    reduce_one_variable, simplify, EquivalenceCertificate, Presentation, Verdict,
};
use crowell_core::{parse_diagram, Diagram, Error};
use serde_json::{json, Value};

/// Environment variable naming an alternate battery file.
pub const BATTERY_VAR: &str = "CROWELL_BATTERY";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Refuted,
    Inconclusive,
    Error,
}

/// Outcome of one invocation: what to print and how to exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub status: Status,
    /// Text for stdout (on success) or stderr (on error).
    pub payload: String,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: String) -> Self {
        CommandResult { status: Status::Ok, payload, exit_code: 0 }
    }

    fn usage(message: String) -> Self {
        CommandResult { status: Status::Error, payload: message, exit_code: 2 }
    }

    fn failure(e: Failure) -> Self {
        match e {
            Failure::Usage(m) => Self::usage(m),
            Failure::Compute(m) => CommandResult { status: Status::Error, payload: m, exit_code: 3 },
        }
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(name = "crowell", version, about = "Alexander modules, sublinks and coloring invariants of link diagrams")]
struct Cli {
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Presentation of a diagram's Alexander module.
    Present { input: String },
    /// Eliminate generators by unit pivots.
    Simplify { input: String },
    /// Drop a component, as a diagram or as the quotient presentation.
    Sublink {
        input: String,
        #[arg(long)]
        drop: usize,
        #[arg(long, value_enum, default_value_t = Mode::Diagram)]
        mode: Mode,
    },
    /// Generators of the k-th elementary ideal.
    Ideals {
        input: String,
        #[arg(short, long)]
        k: usize,
    },
    /// Alexander polynomial of a one-variable presentation.
    Alexpoly { input: String },
    /// Send every variable to a single t.
    Reduce1 { input: String },
    /// Count colorings into a finite module, with optional orbit constraints.
    Color {
        input: String,
        #[arg(long)]
        spec: String,
        /// `i=free|constant|zero`, repeatable.
        #[arg(long)]
        constraint: Vec<String>,
        /// `count` or `nonconstant:i`.
        #[arg(long, default_value = "count")]
        report: String,
    },
    /// Coloring counts over the battery.
    Fingerprint {
        input: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a proposed isomorphism between two modules.
    CheckEquiv {
        a: String,
        b: String,
        cert: String,
        /// Verdict that counts as success.
        #[arg(long, value_enum, default_value_t = Expect::Verified)]
        expect: Expect,
    },
    /// Relabel components: component i becomes sigma(i).
    Permute {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
    },
    /// Element lengths reached from the arc values of a coloring.
    Lengths {
        input: String,
        #[arg(long)]
        spec: String,
        /// JSON object from generator name to module vector.
        #[arg(long)]
        coloring: String,
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Diagram,
    Quotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Verified,
    Refuted,
}

/// A parsed input document.
enum Input {
    Diagram(Diagram),
    Presentation(Presentation),
}

impl Input {
    fn presentation(&self) -> Presentation {
        match self {
            Input::Diagram(d) => build_presentation(d),
            Input::Presentation(p) => p.clone(),
        }
    }

    fn diagram(self, command: &str) -> Outcome<Diagram> {
        match self {
            Input::Diagram(d) => Ok(d),
            Input::Presentation(_) => Err(Failure::Usage(format!("{command} needs a diagram, got a presentation"))),
        }
    }
}

/// Reads files and stdin; `-` names stdin, which is read at most once.
struct Reader<'a> {
    stdin: &'a mut dyn Read,
    consumed: bool,
}

impl Reader<'_> {
    fn text(&mut self, path: &str) -> Outcome<String> {
        if path == "-" {
            if self.consumed {
                return Err(Failure::Usage("stdin can be read only once".into()));
            }
            self.consumed = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| Failure::Compute(format!("stdin: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(path).map_err(|e| Failure::Compute(format!("{path}: {e}")))
    }

    fn input(&mut self, path: &str) -> Outcome<Input> {
        let text = self.text(path)?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Compute(format!("{path}: {e}")))?;
        if value.get("arcs").is_some() {
            Ok(Input::Diagram(parse_diagram(&text)?))
        } else {
            Ok(Input::Presentation(Presentation::from_json(&text)?))
        }
    }

    fn presentation(&mut self, path: &str) -> Outcome<Presentation> {
        Ok(self.input(path)?.presentation())
    }

    fn spec(&mut self, path: &str) -> Outcome<FiniteModuleSpec> {
        Ok(FiniteModuleSpec::from_json(&self.text(path)?)?)
    }
}

/// Runs one invocation; `argv` excludes the program name.
pub fn run<S: AsRef<str>>(argv: &[S], stdin: &mut dyn Read) -> CommandResult {
    let args = std::iter::once("crowell").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult::ok(e.to_string())
                }
                _ => CommandResult::usage(e.to_string()),
            }
        }
    };
    let mut reader = Reader { stdin, consumed: false };
    match dispatch(cli.command, &mut reader) {
        Ok(Output::Json(v)) => CommandResult::ok(render(&v, cli.pretty)),
        Ok(Output::Text(s)) => CommandResult::ok(s),
        Ok(Output::Verdict(v, expect)) => {
            let payload = v.to_string();
            let (status, wanted) = match v {
                Verdict::Verified => (Status::Ok, expect == Expect::Verified),
                Verdict::Refuted { .. } => (Status::Refuted, expect == Expect::Refuted),
                Verdict::Inconclusive { .. } => (Status::Inconclusive, false),
            };
            CommandResult { status, payload, exit_code: if wanted { 0 } else { 1 } }
        }
        Err(e) => CommandResult::failure(e),
    }
}

enum Output {
    Json(Value),
    Text(String),
    Verdict(Verdict, Expect),
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("values serialize")
    } else {
        v.to_string()
    }
}

fn parse_json(text: &str) -> Value {
    serde_json::from_str(text).expect("library output is valid JSON")
}

fn dispatch(command: Command, r: &mut Reader) -> Outcome<Output> {
    let out = match command {
        Command::Present { input } => Output::Json(r.presentation(&input)?.to_json_value()),
        Command::Simplify { input } => Output::Json(simplify(&r.presentation(&input)?).to_json_value()),
        Command::Sublink { input, drop, mode } => {
            let d = r.input(&input)?.diagram("sublink")?;
            match mode {
                Mode::Diagram => Output::Json(parse_json(&d.delete_component(drop)?.to_json())),
                Mode::Quotient => Output::Json(quotient_mod_N(&build_presentation(&d), &d, drop)?.to_json_value()),
            }
        }
        Command::Ideals { input, k } => {
            let minors = elementary_ideal_minors(&r.presentation(&input)?, k);
            Output::Json(Value::from(minors.iter().map(ToString::to_string).collect::<Vec<_>>()))
        }
        Command::Alexpoly { input } => Output::Text(alexander_polynomial(&r.presentation(&input)?)?.to_string()),
        Command::Reduce1 { input } => Output::Json(reduce_one_variable(&r.presentation(&input)?).to_json_value()),
        Command::Color { input, spec, constraint, report } => {
            let p = r.presentation(&input)?;
            let spec = r.spec(&spec)?;
            let constraints = parse_constraints(&constraint, p.mu())?;
            let count = match report.as_str() {
                "count" => count_constrained(&p, &spec, &constraints)?,
                other => {
                    let i = other
                        .strip_prefix("nonconstant:")
                        .and_then(|i| i.parse().ok())
                        .ok_or_else(|| Failure::Usage(format!("--report expects count or nonconstant:i, got {other:?}")))?;
                    count_nonconstant(&p, &spec, &constraints, i)?
                }
            };
            Output::Json(json!({ "spec": spec.id(), "report": report, "count": count.to_string() }))
        }
        Command::Fingerprint { input, jobs } => {
            let p = r.presentation(&input)?;
            let battery = battery(p.mu())?;
            Output::Json(parse_json(&fingerprint_with(&p, &battery, jobs)?.to_json()))
        }
        Command::CheckEquiv { a, b, cert, expect } => {
            let a = r.presentation(&a)?;
            let b = r.presentation(&b)?;
            let cert = EquivalenceCertificate::from_json(&r.text(&cert)?)?;
            Output::Verdict(check_equivalence_certificate(&a, &b, &cert)?, expect)
        }
        Command::Permute { input, sigma } => {
            let d = r.input(&input)?.diagram("permute")?;
            Output::Json(parse_json(&d.permute_components(&sigma)?.to_json()))
        }
        Command::Lengths { input, spec, coloring, maxlen } => {
            if maxlen == 0 {
                return Err(Failure::Usage("--maxlen must be at least 1".into()));
            }
            let p = r.presentation(&input)?;
            let spec = r.spec(&spec)?;
            let seeds = seed_values(&p, &spec, &r.text(&coloring)?)?;
            let lengths = element_lengths(&seeds, &spec, maxlen);
            let rows: Vec<Value> = lengths
                .iter()
                .map(|(e, len)| json!({ "component": e.component, "value": e.value, "length": len }))
                .collect();
            Output::Json(Value::from(rows))
        }
    };
    Ok(out)
}

fn parse_constraints(items: &[String], mu: usize) -> Outcome<Vec<Constraint>> {
    let mut out = vec![Constraint::Free; mu];
    for item in items {
        let bad = || Failure::Usage(format!("--constraint expects i=free|constant|zero, got {item:?}"));
        let (i, c) = item.split_once('=').ok_or_else(bad)?;
        let i: usize = i.parse().map_err(|_| bad())?;
        if i == 0 || i > mu {
            return Err(Error::ComponentOutOfRange { index: i, mu }.into());
        }
        out[i - 1] = c.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

/// The battery named by the environment, or the default one.
fn battery(mu: usize) -> Outcome<Battery> {
    match std::env::var_os(BATTERY_VAR) {
        Some(path) => {
            let path = path.to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::Compute(format!("{path}: {e}")))?;
            Ok(Battery::from_json(&text)?)
        }
        None => Ok(default_battery(mu)),
    }
}

/// Values of the arc seeds under a coloring given as generator → vector.
fn seed_values(p: &Presentation, spec: &FiniteModuleSpec, text: &str) -> Outcome<Vec<GradedElement>> {
    let map: BTreeMap<String, Vec<i64>> =
        serde_json::from_str(text).map_err(|e| Failure::Compute(format!("coloring: {e}")))?;
    let n = spec.modulus() as i64;
    let mut values = vec![vec![0u64; spec.rank()]; p.generators().len()];
    for (name, v) in &map {
        let i = p.generator_index(name).ok_or_else(|| Failure::Compute(format!("coloring: unknown generator {name:?}")))?;
        if v.len() != spec.rank() {
            return Err(Failure::Compute(format!("coloring: {name} needs {} entries", spec.rank())));
        }
        values[i] = v.iter().map(|x| x.rem_euclid(n) as u64).collect();
    }
    if !is_coloring(p, spec, &values)? {
        return Err(Failure::Compute("coloring: the assignment violates a relation".into()));
    }
    let mut seeds = Vec::with_capacity(p.seeds().len());
    for s in p.seeds() {
        let mut value = vec![0u64; spec.rank()];
        for (c, x) in s.value.iter().zip(&values) {
            if c.is_zero() {
                continue;
            }
            for (acc, y) in value.iter_mut().zip(spec.eval(c)?.apply(x)) {
                *acc = (*acc + y) % spec.modulus();
            }
        }
        seeds.push(GradedElement::new(s.component, value));
    }
    Ok(seeds)
}
