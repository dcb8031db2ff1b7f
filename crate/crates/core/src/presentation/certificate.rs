use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{combination_from_map, combination_to_map, Presentation};
use crate::coloring::{default_battery, is_coloring, solve_colorings, solve_system, Battery, FiniteModuleSpec};
use crate::error::{Error, Result};
use super::span::in_row_span;
use crate::LaurentPoly;

/// A proposed module map: the image of every generator of the source
/// presentation as a combination of the target's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub images: BTreeMap<String, BTreeMap<String, String>>,
    /// Exponent bound for the multipliers searched in the relation check.
    pub degree_bound: i32,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    images: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default = "default_degree_bound")]
    degree_bound: i32,
}

fn default_degree_bound() -> i32 {
    4
}

impl EquivalenceCertificate {
    pub fn from_json(text: &str) -> Result<Self> {
        let json: CertificateJson = serde_json::from_str(text)?;
        if json.degree_bound < 0 {
            return Err(Error::Presentation("degree_bound must be nonnegative".into()));
        }
        Ok(EquivalenceCertificate { images: json.images, degree_bound: json.degree_bound })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CertificateJson { images: self.images.clone(), degree_bound: self.degree_bound })
            .expect("certificate serializes")
    }

    /// The certificate sending every generator to the same-named generator.
    pub fn identity(p: &Presentation) -> Self {
        let images = p.generators.iter().map(|g| (g.clone(), BTreeMap::from([(g.clone(), "1".to_string())]))).collect();
        EquivalenceCertificate { images, degree_bound: default_degree_bound() }
    }

    /// Builds a certificate from explicit image vectors.
    pub fn from_vectors(a: &Presentation, b: &Presentation, images: &[Vec<LaurentPoly>], degree_bound: i32) -> Self {
        let images = a.generators.iter().zip(images).map(|(g, v)| (g.clone(), combination_to_map(&b.generators, v))).collect();
        EquivalenceCertificate { images, degree_bound }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted { witness: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Verified => write!(f, "VERIFIED"),
            Verdict::Refuted { witness } => write!(f, "REFUTED: {witness}"),
            Verdict::Inconclusive { reason } => write!(f, "INCONCLUSIVE: {reason}"),
        }
    }
}

/// Checks a proposed isomorphism `f: M(a) → M(b)` over the default battery.
pub fn check_equivalence_certificate(a: &Presentation, b: &Presentation, cert: &EquivalenceCertificate) -> Result<Verdict> {
    check_with_battery(a, b, cert, &default_battery(a.mu))
}

/// Checks, in order:
/// 1. `φ_b(f(g)) = φ_a(g)` for every generator `g` of `a`;
/// 2. on every battery module, `x ↦ x∘f` maps colorings of `b` into
///    colorings of `a` bijectively;
/// 3. every relation of `a` is carried into the relation submodule of `b`,
///    with multipliers whose exponents lie in `[−degree_bound, degree_bound]`.
///
/// A failure of 1 or 2 refutes the map; a failure of 3 alone is inconclusive,
/// since larger multipliers might exist.
pub fn check_with_battery(
    a: &Presentation,
    b: &Presentation,
    cert: &EquivalenceCertificate,
    battery: &Battery,
) -> Result<Verdict> {
    if a.mu != b.mu {
        return Err(Error::VariableCountMismatch { left: a.mu, right: b.mu });
    }
    let mu = a.mu;
    let mut images = Vec::with_capacity(a.generators.len());
    for g in &a.generators {
        let map = cert
            .images
            .get(g)
            .ok_or_else(|| Error::Presentation(format!("certificate has no image for generator {g:?}")))?;
        images.push(combination_from_map(mu, &b.generators, map)?);
    }
    if let Some(extra) = cert.images.keys().find(|k| a.generator_index(k).is_none()) {
        return Err(Error::Presentation(format!("certificate names unknown generator {extra:?}")));
    }

    for (g, (img, phi)) in a.generators.iter().zip(images.iter().zip(&a.phi)) {
        let got = b.phi_of(img);
        if got != *phi {
            return Ok(Verdict::Refuted { witness: format!("phi of the image of {g} is {got}, expected {phi}") });
        }
    }

    for spec in battery.specs() {
        if let Some(witness) = coloring_bijection_failure(a, b, &images, spec)? {
            return Ok(Verdict::Refuted { witness });
        }
    }

    for (r, row) in a.rows.iter().enumerate() {
        let mut target = vec![LaurentPoly::zero(mu); b.generators.len()];
        for (c, img) in row.iter().zip(&images) {
            if c.is_zero() {
                continue;
            }
            for (t, x) in target.iter_mut().zip(img) {
                *t = &*t + &(c * x);
            }
        }
        if !in_row_span(&b.rows, &target, mu, cert.degree_bound) {
            return Ok(Verdict::Inconclusive {
                reason: format!("no multipliers within degree {} carry relation {} of the source", cert.degree_bound, r + 1),
            });
        }
    }
    Ok(Verdict::Verified)
}

/// `None` when pulling back colorings along `images` is a bijection
/// `Col(b) → Col(a)` for this module.
fn coloring_bijection_failure(
    a: &Presentation,
    b: &Presentation,
    images: &[Vec<LaurentPoly>],
    spec: &FiniteModuleSpec,
) -> Result<Option<String>> {
    let id = spec.id();
    let sa = solve_colorings(a, spec)?;
    let sb = solve_colorings(b, spec)?;
    let (ca, cb) = (sa.count()?, sb.count()?);
    if ca != cb {
        return Ok(Some(format!("{id}: {ca} colorings of the source, {cb} of the target")));
    }
    // kernel of the pullback: colorings of b vanishing on every image
    let mut kernel_rows = b.rows.clone();
    kernel_rows.extend(images.iter().cloned());
    let kernel = solve_system(&kernel_rows, b.generators.len(), spec)?;
    if kernel.count()? != 1 {
        return Ok(Some(format!("{id}: the induced map on colorings is not injective")));
    }
    // the pullback is linear, so checking the cyclic generators suffices
    let n = spec.modulus();
    let k = spec.rank();
    for basis in sb.basis() {
        let xb: Vec<Vec<u64>> = basis.chunks(k).map(<[u64]>::to_vec).collect();
        let mut xa = Vec::with_capacity(images.len());
        for img in images {
            let mut v = vec![0u64; k];
            for (c, x) in img.iter().zip(&xb) {
                if c.is_zero() {
                    continue;
                }
                for (acc, y) in v.iter_mut().zip(spec.eval(c)?.apply(x)) {
                    *acc = (*acc + y) % n;
                }
            }
            xa.push(v);
        }
        if !is_coloring(a, spec, &xa)? {
            return Ok(Some(format!("{id}: a coloring of the target pulls back to a non-coloring")));
        }
    }
    Ok(None)
}
