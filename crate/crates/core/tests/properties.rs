//! Invariants of the pipeline on random formal diagrams.

mod common;

use std::collections::BTreeMap;

use common::random_diagram_with;
use crowell_core::coloring::{fingerprint_with, Battery, FiniteModuleSpec, Fingerprint};
use crowell_core::presentation::{alexander_polynomial, build_presentation, quotient_mod_N, simplify};
use proptest::prelude::*;

/// Rank-one `Z/2`, `Z/3`, `Z/5` with every unit tuple: small enough to
/// enumerate colorings of random diagrams.
fn small_battery(mu: usize) -> Battery {
    let mut specs = Vec::new();
    for (n, units) in [(2u64, vec![1i64]), (3, vec![1, 2]), (5, vec![1, 2, 3, 4])] {
        let mut tuple = vec![0usize; mu];
        loop {
            let images: Vec<i64> = tuple.iter().map(|&i| units[i]).collect();
            specs.push(FiniteModuleSpec::scalar(n, &images).unwrap());
            let Some(pos) = tuple.iter().position(|&i| i + 1 < units.len()) else { break };
            tuple[pos] += 1;
            tuple[..pos].iter_mut().for_each(|i| *i = 0);
        }
    }
    Battery::new(specs)
}

fn by_spec(f: &Fingerprint) -> BTreeMap<String, (u128, Vec<u128>, Vec<u128>)> {
    f.entries().iter().map(|e| (e.spec.clone(), (e.unconstrained, e.constant.clone(), e.zero.clone()))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn simplify_preserves_fingerprints(seed in any::<u64>(), mu in 1usize..=2) {
        let d = random_diagram_with(seed, mu, 3, 6);
        let p = build_presentation(&d);
        let battery = small_battery(mu);
        prop_assert_eq!(fingerprint_with(&p, &battery, 1).unwrap(), fingerprint_with(&simplify(&p), &battery, 1).unwrap());
    }

    #[test]
    fn permutation_matches_permuted_battery(seed in any::<u64>()) {
        let d = random_diagram_with(seed, 2, 3, 6);
        let sigma = [2, 1];
        let battery = small_battery(2);
        let plain = by_spec(&fingerprint_with(&build_presentation(&d), &battery, 1).unwrap());
        let swapped = build_presentation(&d.permute_components(&sigma).unwrap());
        let moved = by_spec(&fingerprint_with(&swapped, &battery.permuted(&sigma).unwrap(), 1).unwrap());
        for spec in battery.specs() {
            let (u, c, z) = &plain[&spec.id()];
            let (u2, c2, z2) = &moved[&spec.permuted(&sigma).unwrap().id()];
            prop_assert_eq!(u, u2);
            prop_assert_eq!((c[0], c[1], z[0], z[1]), (c2[1], c2[0], z2[1], z2[0]));
        }
    }

    #[test]
    fn quotient_matches_deleted_component(seed in any::<u64>(), j in 1usize..=2) {
        let d = random_diagram_with(seed, 2, 3, 6);
        let battery = small_battery(1);
        let q = quotient_mod_N(&build_presentation(&d), &d, j).unwrap();
        let direct = build_presentation(&d.delete_component(j).unwrap());
        prop_assert_eq!(fingerprint_with(&q, &battery, 1).unwrap(), fingerprint_with(&direct, &battery, 1).unwrap());
    }

    #[test]
    fn alexander_polynomial_survives_simplify(seed in any::<u64>()) {
        let p = build_presentation(&random_diagram_with(seed, 1, 4, 6));
        prop_assert_eq!(alexander_polynomial(&p).unwrap(), alexander_polynomial(&simplify(&p)).unwrap());
    }

    #[test]
    fn jobs_do_not_change_fingerprints(seed in any::<u64>(), jobs in 2usize..=6) {
        let d = random_diagram_with(seed, 2, 2, 4);
        let p = build_presentation(&d);
        let battery = small_battery(2);
        prop_assert_eq!(fingerprint_with(&p, &battery, 1).unwrap(), fingerprint_with(&p, &battery, jobs).unwrap());
    }
}
