use super::Presentation;
use crate::error::{Error, Result};
use crate::LaurentPoly;

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<LaurentPoly>], mu: usize) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(mu);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = LaurentPoly::zero(mu);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &determinant(&sub, mu);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `(g-k)×(g-k)` minors of the relation matrix, `g` the generator count.
///
/// `[1]` when `g - k ≤ 0`; `[0]` when `g - k` exceeds the number of rows.
pub fn elementary_ideal_minors(p: &Presentation, k: usize) -> Vec<LaurentPoly> {
    let g = p.generators().len();
    let mu = p.mu();
    if k >= g {
        return vec![LaurentPoly::one(mu)];
    }
    let size = g - k;
    let rows = p.rows();
    if size > rows.len() {
        return vec![LaurentPoly::zero(mu)];
    }
    let mut out = Vec::new();
    for rs in combinations(rows.len(), size) {
        for cs in combinations(g, size) {
            let m: Vec<Vec<LaurentPoly>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
            out.push(determinant(&m, mu));
        }
    }
    out
}

/// Unit-normalized gcd of the first elementary ideal's generators, for a
/// one-variable presentation of a knot module.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPoly> {
    if p.mu() != 1 {
        return Err(Error::NotOneVariable(p.mu()));
    }
    let minors = elementary_ideal_minors(p, 1);
    let mut acc = LaurentPoly::zero(1);
    for m in &minors {
        acc = acc.gcd(m)?;
        if acc.is_one() {
            break;
        }
    }
    Ok(acc.unit_normalize())
}
