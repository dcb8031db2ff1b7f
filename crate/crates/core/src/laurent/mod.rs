//! Sparse Laurent polynomials `Z[t1^±1, …, tμ^±1]` with exact integer coefficients.
//!
//! [`Laurent`] is generic over the coefficient integer type; the crate root
//! exposes [`crate::LaurentPoly`] (arbitrary precision) as the working type.

mod gcd;
mod parse;
pub(crate) mod ring_map;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub use ring_map::{RingElement, RingMapSpec};

/// Integer coefficient types a [`Laurent`] polynomial can carry.
pub trait Coeff:
    Clone + fmt::Debug + fmt::Display + Ord + Hash + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl<T> Coeff for T where
    T: Clone + fmt::Debug + fmt::Display + Ord + Hash + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// Exponent vector of a monomial; position `i` holds the exponent of `t{i+1}`.
///
/// Ordered lexicographically with the last variable most significant, so
/// `1 < t1 < t2 < t1*t2` for two variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(mu: usize) -> Self {
        Monomial(vec![0; mu])
    }

    pub fn new(exponents: Vec<i32>) -> Self {
        Monomial(exponents)
    }

    /// `t{index}` (1-based).
    pub fn var(mu: usize, index: usize) -> Self {
        let mut e = vec![0; mu];
        e[index - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .iter()
            .rev()
            .cmp(other.0.iter().rev())
            .then(self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Z[t1^±1, …, tμ^±1]`, stored as a canonical sparse term map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<C> {
    mu: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Laurent<C> {
    pub fn zero(mu: usize) -> Self {
        Laurent { mu, terms: BTreeMap::new() }
    }

    pub fn one(mu: usize) -> Self {
        Self::constant(mu, C::one())
    }

    pub fn constant(mu: usize, c: C) -> Self {
        Self::monomial(mu, Monomial::one(mu), c)
    }

    pub fn from_i64(mu: usize, c: i64) -> Self {
        Self::constant(mu, C::from_i64(c).expect("coefficient fits"))
    }

    pub fn monomial(mu: usize, m: Monomial, c: C) -> Self {
        assert_eq!(m.len(), mu, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { mu, terms }
    }

    /// The variable `t{index}` (1-based).
    pub fn var(mu: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= mu, "variable t{index} outside 1..={mu}");
        Self::monomial(mu, Monomial::var(mu, index), C::one())
    }

    /// `t{index} - 1`, the Crowell value of an arc on component `index`.
    pub fn var_minus_one(mu: usize, index: usize) -> Self {
        &Self::var(mu, index) - &Self::one(mu)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(mu: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
    {
        let mut out = Self::zero(mu);
        for (e, c) in terms {
            assert_eq!(e.len(), mu, "monomial arity");
            out.add_term(Monomial(e), c);
        }
        out
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Greatest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn lowest_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next()
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_mu(&self, other: &Self) -> Result<()> {
        if self.mu != other.mu {
            return Err(Error::VariableCountMismatch { left: self.mu, right: other.mu });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_mu(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_mu(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_mu(other)?;
        let mut out = Self::zero(self.mu);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.mu);
        }
        Laurent {
            mu: self.mu,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Laurent {
            mu: self.mu,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.mu);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True iff the polynomial is `±` a monomial, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        Some(Self::monomial(self.mu, m.inverse(), c.clone()))
    }

    /// Sum of coefficients: the image under `t_i ↦ 1` for every `i`.
    pub fn augmentation(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Componentwise minimum exponent over all terms (all zeros for `0`).
    pub fn min_exponents(&self) -> Monomial {
        let mut mins: Option<Vec<i32>> = None;
        for m in self.terms.keys() {
            mins = Some(match mins {
                None => m.0.clone(),
                Some(v) => v.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        Monomial(mins.unwrap_or_else(|| vec![0; self.mu]))
    }

    pub fn max_exponents(&self) -> Monomial {
        let mut maxs: Option<Vec<i32>> = None;
        for m in self.terms.keys() {
            maxs = Some(match maxs {
                None => m.0.clone(),
                Some(v) => v.iter().zip(&m.0).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        Monomial(maxs.unwrap_or_else(|| vec![0; self.mu]))
    }

    /// Multiply by a unit `±monomial` so every variable has minimum exponent
    /// zero and the leading term has a positive coefficient.
    pub fn unit_normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let shifted = self.mul_monomial(&self.min_exponents().inverse());
        match shifted.leading_term() {
            Some((_, c)) if c.is_negative() => -&shifted,
            _ => shifted,
        }
    }

    /// Equality up to multiplication by a unit.
    pub fn associate(&self, other: &Self) -> bool {
        self.mu == other.mu && self.unit_normalize() == other.unit_normalize()
    }

    /// Exact quotient `self / divisor`, or `None` when the divisor does not
    /// divide `self` in the Laurent ring.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || self.mu != divisor.mu {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.mu));
        }
        let (lead_m, lead_c) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        // Newton polytopes add under multiplication, so quotient exponents
        // are confined to this box
        let lo = self.min_exponents().div(&divisor.min_exponents());
        let hi = self.max_exponents().div(&divisor.max_exponents());
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.mu);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lead_m);
            let inside = qm.0.iter().zip(lo.0.iter().zip(&hi.0)).all(|(e, (l, h))| l <= e && e <= h);
            if !inside {
                return None;
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let step = Self::monomial(self.mu, qm, qc);
            rem = &rem - &(&step * divisor);
            quotient = &quotient + &step;
        }
        Some(quotient)
    }

    /// Maximum absolute value of any coefficient.
    pub fn height(&self) -> C {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(C::zero)
    }

    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_mu(other)?;
        Ok(gcd::laurent_gcd(self, other))
    }
}

impl<C: Coeff> Add for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: Self) -> Laurent<C> {
        self.try_add(rhs).expect("variable count mismatch in add")
    }
}

impl<C: Coeff> Sub for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: Self) -> Laurent<C> {
        self.try_sub(rhs).expect("variable count mismatch in sub")
    }
}

impl<C: Coeff> Mul for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: Self) -> Laurent<C> {
        self.try_mul(rhs).expect("variable count mismatch in mul")
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent {
            mu: self.mu,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(v, &e)| if e == 1 { format!("t{}", v + 1) } else { format!("t{}^{}", v + 1, e) })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Laurent<C> {
    /// Parses the rendering grammar: signed terms `c*t1^e*t2…` with optional whitespace.
    pub fn parse(mu: usize, input: &str) -> Result<Self> {
        parse::parse(mu, input)
    }

    /// Parses with the variable count inferred from the largest `t{i}` seen.
    pub fn parse_infer(input: &str) -> Result<Self> {
        parse::parse_infer(input)
    }
}
