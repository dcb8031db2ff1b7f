use crowell_core::diagram::{Arc, Crossing, Diagram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A valid formal diagram with 1 to 3 components, up to 4 arcs each and up to
/// 8 crossings, a fifth of them trivial.
#[allow(dead_code)]
pub fn random_diagram(seed: u64) -> Diagram {
    let mu = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9).gen_range(1..=3);
    random_diagram_with(seed, mu, 4, 8)
}

/// A valid formal diagram with `mu` components.
#[allow(dead_code)]
pub fn random_diagram_with(seed: u64, mu: usize, max_arcs: usize, max_crossings: usize) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for c in 1..=mu {
        for _ in 0..rng.gen_range(1..=max_arcs) {
            arcs.push(Arc { id: format!("a{}", arcs.len() + 1), component: c });
        }
    }
    let mut crossings = Vec::new();
    for i in 0..rng.gen_range(0..=max_crossings) {
        let left = &arcs[rng.gen_range(0..arcs.len())];
        let same: Vec<&Arc> = arcs.iter().filter(|a| a.component == left.component && a.id != left.id).collect();
        if same.is_empty() {
            continue;
        }
        let right = same[rng.gen_range(0..same.len())];
        let id = format!("c{}", i + 1);
        if rng.gen_bool(0.2) {
            crossings.push(Crossing { over: None, trivial: true, ..Crossing::new(&id, "", &left.id, &right.id) });
        } else {
            let over = &arcs[rng.gen_range(0..arcs.len())];
            crossings.push(Crossing::new(&id, &over.id, &left.id, &right.id));
        }
    }
    Diagram::new(mu, arcs, crossings).expect("generated diagram is valid")
}

