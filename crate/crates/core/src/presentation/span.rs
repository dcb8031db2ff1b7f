use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::intlin::solve_integer;
use crate::{LaurentPoly, Monomial};

/// Whether `target = Σ λ_j·rows[j]` for Laurent `λ_j` with exponents in
/// `[−bound, bound]`, decided by an exact integer solve on coefficients.
/// Smaller windows are tried first since they are much cheaper.
pub(crate) fn in_row_span(rows: &[Vec<LaurentPoly>], target: &[LaurentPoly], mu: usize, bound: i32) -> bool {
    if target.iter().all(LaurentPoly::is_zero) {
        return true;
    }
    (0..=bound).any(|b| in_window_span(rows, target, mu, b))
}

fn in_window_span(rows: &[Vec<LaurentPoly>], target: &[LaurentPoly], mu: usize, bound: i32) -> bool {
    let window = window_monomials(mu, bound);
    // unknowns: (row j, window monomial w); equations: (generator h, monomial)
    let mut equations: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut unknown = 0;
    for row in rows {
        for w in &window {
            for (h, c) in row.iter().enumerate() {
                for (m, coeff) in c.terms() {
                    let key = (h, m.mul(w));
                    let next = equations.len();
                    let e = *equations.entry(key).or_insert(next);
                    entries.push((e, unknown, coeff.clone()));
                }
            }
            unknown += 1;
        }
    }
    let mut rhs_keys = BTreeSet::new();
    for (h, c) in target.iter().enumerate() {
        for (m, _) in c.terms() {
            rhs_keys.insert((h, m.clone()));
        }
    }
    for key in &rhs_keys {
        if !equations.contains_key(key) {
            // a target monomial no multiplier can reach
            return false;
        }
    }
    let mut a = vec![vec![BigInt::zero(); unknown]; equations.len()];
    for (e, u, c) in entries {
        a[e][u] += c;
    }
    let mut b = vec![BigInt::zero(); equations.len()];
    for ((h, m), &e) in &equations {
        b[e] = target[*h].coeff(m);
    }
    solve_integer(&a, &b, unknown).is_some()
}

fn window_monomials(mu: usize, bound: i32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..mu {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i32>| {
                (-bound..=bound).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

