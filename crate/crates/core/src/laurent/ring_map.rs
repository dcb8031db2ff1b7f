use super::{Coeff, Laurent};
use crate::error::{Error, Result};
use crate::modular::{add_mod, inv_mod, mul_mod, reduce_coeff, ZnMatrix};

/// A ring homomorphism out of `Λμ`, given by the images of `t1, …, tμ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingMapSpec<C> {
    /// Into a Laurent ring in `target_mu` variables.
    Laurent { target_mu: usize, images: Vec<Laurent<C>> },
    /// Into `Z/modulus`.
    Residue { modulus: u64, images: Vec<u64> },
    /// Into `k×k` matrices over `Z/modulus`.
    Matrix { modulus: u64, images: Vec<ZnMatrix> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElement<C> {
    Laurent(Laurent<C>),
    Residue { modulus: u64, value: u64 },
    Matrix(ZnMatrix),
}

impl<C: Coeff> RingMapSpec<C> {
    pub fn laurent(target_mu: usize, images: Vec<Laurent<C>>) -> Result<Self> {
        for (i, p) in images.iter().enumerate() {
            if p.mu() != target_mu {
                return Err(Error::VariableCountMismatch { left: p.mu(), right: target_mu });
            }
            if !p.is_unit() {
                return Err(Error::NotInvertible { index: i + 1 });
            }
        }
        Ok(RingMapSpec::Laurent { target_mu, images })
    }

    pub fn residue(modulus: u64, images: Vec<u64>) -> Result<Self> {
        for (i, &a) in images.iter().enumerate() {
            if inv_mod(a % modulus, modulus).is_none() {
                return Err(Error::NotInvertible { index: i + 1 });
            }
        }
        Ok(RingMapSpec::Residue { modulus, images: images.into_iter().map(|a| a % modulus).collect() })
    }

    pub fn matrix(modulus: u64, images: Vec<ZnMatrix>) -> Result<Self> {
        for (i, m) in images.iter().enumerate() {
            if m.modulus() != modulus || !m.is_invertible() {
                return Err(Error::NotInvertible { index: i + 1 });
            }
        }
        Ok(RingMapSpec::Matrix { modulus, images })
    }

    /// The augmentation `ε`: every `t_i ↦ 1` in `Z` (a Laurent ring with no variables).
    pub fn augmentation(mu: usize) -> Self {
        RingMapSpec::Laurent { target_mu: 0, images: vec![Laurent::one(0); mu] }
    }

    /// `t_j ↦ 1`, the remaining variables renumbered in order into `Λ_{μ-1}`.
    pub fn drop_variable(mu: usize, j: usize) -> Self {
        let images = (1..=mu)
            .map(|i| match i.cmp(&j) {
                std::cmp::Ordering::Less => Laurent::var(mu - 1, i),
                std::cmp::Ordering::Equal => Laurent::one(mu - 1),
                std::cmp::Ordering::Greater => Laurent::var(mu - 1, i - 1),
            })
            .collect();
        RingMapSpec::Laurent { target_mu: mu - 1, images }
    }

    /// Every `t_i ↦ t`: the one-variable reduction.
    pub fn collapse(mu: usize) -> Self {
        RingMapSpec::Laurent { target_mu: 1, images: vec![Laurent::var(1, 1); mu] }
    }

    /// Relabels variables: `t_i ↦ t_{sigma[i-1]}`.
    pub fn permute(sigma: &[usize]) -> Self {
        let mu = sigma.len();
        RingMapSpec::Laurent { target_mu: mu, images: sigma.iter().map(|&s| Laurent::var(mu, s)).collect() }
    }

    pub fn arity(&self) -> usize {
        match self {
            RingMapSpec::Laurent { images, .. } => images.len(),
            RingMapSpec::Residue { images, .. } => images.len(),
            RingMapSpec::Matrix { images, .. } => images.len(),
        }
    }

    /// Applies the homomorphism to `p`.
    pub fn substitute(&self, p: &Laurent<C>) -> Result<RingElement<C>> {
        if self.arity() != p.mu() {
            return Err(Error::RingMapArity { given: self.arity(), needed: p.mu() });
        }
        Ok(match self {
            RingMapSpec::Laurent { target_mu, images } => {
                RingElement::Laurent(substitute_laurent(p, *target_mu, images))
            }
            RingMapSpec::Residue { modulus, images } => {
                RingElement::Residue { modulus: *modulus, value: eval_residue(p, *modulus, images) }
            }
            RingMapSpec::Matrix { modulus, images } => {
                let inverses: Vec<ZnMatrix> = images.iter().map(|m| m.inverse().expect("checked invertible")).collect();
                let rank = images.first().map_or(1, |m| m.rank());
                RingElement::Matrix(eval_matrix(p, *modulus, rank, images, &inverses))
            }
        })
    }
}

pub(crate) fn substitute_laurent<C: Coeff>(p: &Laurent<C>, target_mu: usize, images: &[Laurent<C>]) -> Laurent<C> {
    let inverses: Vec<Laurent<C>> = images.iter().map(|x| x.unit_inverse().expect("unit image")).collect();
    let mut out = Laurent::zero(target_mu);
    for (m, c) in p.terms() {
        let mut term = Laurent::constant(target_mu, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = &term * &images[i].pow(e as u32);
            } else if e < 0 {
                term = &term * &inverses[i].pow((-e) as u32);
            }
        }
        out = &out + &term;
    }
    out
}

fn pow_mod(mut base: u64, mut e: u32, n: u64) -> u64 {
    let mut acc = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    acc
}

pub(crate) fn eval_residue<C: Coeff>(p: &Laurent<C>, n: u64, images: &[u64]) -> u64 {
    let inverses: Vec<u64> = images.iter().map(|&a| inv_mod(a, n).expect("unit image")).collect();
    let mut acc = 0;
    for (m, c) in p.terms() {
        let mut term = reduce_coeff(c, n);
        for (i, &e) in m.exponents().iter().enumerate() {
            let (b, e) = if e >= 0 { (images[i], e as u32) } else { (inverses[i], (-e) as u32) };
            term = mul_mod(term, pow_mod(b, e, n), n);
        }
        acc = add_mod(acc, term, n);
    }
    acc
}

/// Evaluates `p` at commuting matrices, with precomputed inverses for negative exponents.
pub(crate) fn eval_matrix<C: Coeff>(
    p: &Laurent<C>,
    n: u64,
    rank: usize,
    images: &[ZnMatrix],
    inverses: &[ZnMatrix],
) -> ZnMatrix {
    let mut acc = ZnMatrix::zero(n, rank);
    for (m, c) in p.terms() {
        let mut term = ZnMatrix::scalar(n, rank, reduce_coeff(c, n));
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&images[i].pow(e as u32));
            } else if e < 0 {
                term = term.mul(&inverses[i].pow((-e) as u32));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

impl<C: Coeff> Laurent<C> {
    /// Image under a Laurent-valued ring map (convenience for the common case).
    pub fn map_laurent(&self, spec: &RingMapSpec<C>) -> Result<Laurent<C>> {
        match spec.substitute(self)? {
            RingElement::Laurent(p) => Ok(p),
            _ => Err(Error::Presentation("ring map does not target a Laurent ring".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LaurentPoly;

    #[test]
    fn projection_sets_last_variable_to_one() {
        let p = LaurentPoly::parse(2, "t1*t2 - t2 + 3").unwrap();
        let pi = RingMapSpec::drop_variable(2, 2);
        assert_eq!(p.map_laurent(&pi).unwrap(), LaurentPoly::parse(1, "t1 + 2").unwrap());
    }

    #[test]
    fn chi_into_gf3() {
        let chi = RingMapSpec::residue(3, vec![2, 1]).unwrap();
        let p = LaurentPoly::parse(2, "t1").unwrap();
        let q = &p - &LaurentPoly::var_minus_one(2, 1);
        assert_eq!(chi.substitute(&q).unwrap(), RingElement::Residue { modulus: 3, value: 1 });
        let inv = LaurentPoly::parse(2, "t1^-1 + t2^-3").unwrap();
        assert_eq!(chi.substitute(&inv).unwrap(), RingElement::Residue { modulus: 3, value: 0 });
    }

    #[test]
    fn augmentation_kills_augmentation_ideal() {
        let eps = RingMapSpec::augmentation(3);
        for i in 1..=3 {
            let p = LaurentPoly::var_minus_one(3, i);
            assert!(p.map_laurent(&eps).unwrap().is_zero());
        }
    }

    #[test]
    fn rejects_non_units() {
        assert!(RingMapSpec::<num_bigint::BigInt>::residue(4, vec![2]).is_err());
        let two_t = LaurentPoly::parse(1, "2*t1").unwrap();
        assert!(RingMapSpec::laurent(1, vec![two_t]).is_err());
        let p = LaurentPoly::parse(2, "t1").unwrap();
        assert!(RingMapSpec::residue(3, vec![1]).unwrap().substitute(&p).is_err());
    }

    #[test]
    fn matrix_target() {
        let m = ZnMatrix::from_rows(3, &[vec![0, 1], vec![-1, 1]]).unwrap();
        let spec = RingMapSpec::matrix(3, vec![m.clone()]).unwrap();
        // t^2 - t + 1 annihilates m
        let p = LaurentPoly::parse(1, "t1^2 - t1 + 1").unwrap();
        assert_eq!(spec.substitute(&p).unwrap(), RingElement::Matrix(ZnMatrix::zero(3, 2)));
        let q = LaurentPoly::parse(1, "t1^-1").unwrap();
        assert_eq!(spec.substitute(&q).unwrap(), RingElement::Matrix(m.inverse().unwrap()));
    }
}
