//! Multivariate gcd by recursive primitive pseudo-remainder sequences.
//!
//! Laurent inputs are shifted into `Z[t1, …, tμ]` first. The recursion
//! treats `t{v}` as the main variable with coefficients in `Z[t1, …, t{v-1}]`.

use std::collections::BTreeMap;


use super::{Coeff, Laurent, Monomial};

pub(super) fn laurent_gcd<C: Coeff>(a: &Laurent<C>, b: &Laurent<C>) -> Laurent<C> {
    if a.is_zero() {
        return b.unit_normalize();
    }
    if b.is_zero() {
        return a.unit_normalize();
    }
    let a = a.unit_normalize();
    let b = b.unit_normalize();
    poly_gcd(&a, &b, a.mu()).unit_normalize()
}

/// Coefficients of `p` as a polynomial in variable `v` (0-based).
fn split<C: Coeff>(p: &Laurent<C>, v: usize) -> BTreeMap<i32, Laurent<C>> {
    let mut out: BTreeMap<i32, Laurent<C>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        let d = e[v];
        e[v] = 0;
        out.entry(d)
            .or_insert_with(|| Laurent::zero(p.mu()))
            .add_term(Monomial(e), c.clone());
    }
    out
}

fn degree<C: Coeff>(p: &Laurent<C>, v: usize) -> i32 {
    p.terms().map(|(m, _)| m.exponents()[v]).max().unwrap_or(-1)
}

fn lead_coeff<C: Coeff>(p: &Laurent<C>, v: usize) -> Laurent<C> {
    split(p, v).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(|| Laurent::zero(p.mu()))
}

fn var_power(mu: usize, v: usize, d: i32) -> Monomial {
    let mut e = vec![0; mu];
    e[v] = d;
    Monomial(e)
}

/// gcd of polynomials involving only the first `top` variables.
fn poly_gcd<C: Coeff>(a: &Laurent<C>, b: &Laurent<C>, top: usize) -> Laurent<C> {
    let mu = a.mu();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if top == 0 {
        let x = a.coeff(&Monomial::one(mu));
        let y = b.coeff(&Monomial::one(mu));
        return Laurent::constant(mu, x.gcd(&y));
    }
    let v = top - 1;
    let ca = content(a, v);
    let cb = content(b, v);
    let c = poly_gcd(&ca, &cb, v);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if degree(&p, v) < degree(&q, v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part(&r, v) };
    }
    let g = primitive_part(&p, v);
    &c * &g
}

fn content<C: Coeff>(p: &Laurent<C>, v: usize) -> Laurent<C> {
    let mut acc = Laurent::zero(p.mu());
    for coeff in split(p, v).into_values() {
        acc = poly_gcd(&acc, &coeff, v);
        if acc.is_unit() {
            break;
        }
    }
    // sign-normalized so primitive parts keep a positive leading coefficient
    match acc.leading_term() {
        Some((_, c)) if c.is_negative() => -&acc,
        _ => acc,
    }
}

fn primitive_part<C: Coeff>(p: &Laurent<C>, v: usize) -> Laurent<C> {
    let c = content(p, v);
    p.div_exact(&c).expect("content divides")
}

fn pseudo_rem<C: Coeff>(a: &Laurent<C>, b: &Laurent<C>, v: usize) -> Laurent<C> {
    let mu = a.mu();
    let db = degree(b, v);
    let lb = lead_coeff(b, v);
    let mut r = a.clone();
    while !r.is_zero() && degree(&r, v) >= db {
        let dr = degree(&r, v);
        let lr = lead_coeff(&r, v);
        let shift = var_power(mu, v, dr - db);
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&shift));
    }
    r
}

#[cfg(test)]
mod tests {
    use crate::LaurentPoly;

    #[test]
    fn trivariate() {
        let p = |s| LaurentPoly::parse(3, s).unwrap();
        let f = p("1 + t1*t2 - t3^2");
        let g = p("2 - t3 + t1");
        let h = p("t2 + 5*t1*t3");
        let a = &f * &g;
        let b = &f * &h;
        assert!(a.gcd(&b).unwrap().associate(&f));
    }

    #[test]
    fn coprime_univariate() {
        let p = |s| LaurentPoly::parse(1, s).unwrap();
        assert!(p("1 - t1 + t1^2").gcd(&p("1 + t1")).unwrap().is_one());
        assert_eq!(p("4*t1^2 - 4").gcd(&p("6*t1 + 6")).unwrap(), p("2 + 2*t1"));
    }
}
