//! Presentations of the Alexander module together with the Crowell map.
//!
//! A [`Presentation`] lists generators, relation rows (each a coefficient per
//! generator, read as `Σ row[g]·g = 0`), and the value `φ(g) ∈ Iμ` of every
//! generator. It also carries the arc generators of the diagram it came from
//! (the *seeds* of the quandle) expressed in the current generators, so that
//! orbit computations survive simplification.

mod certificate;
mod minors;
mod simplify;
mod span;

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::laurent::RingMapSpec;
use crate::LaurentPoly;

pub use certificate::{check_equivalence_certificate, EquivalenceCertificate, Verdict};
pub use minors::{alexander_polynomial, determinant, elementary_ideal_minors};
pub use simplify::{simplify, simplify_with_log, Step};

/// An arc generator of the source diagram, written in the current generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub arc: String,
    pub component: usize,
    pub value: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    mu: usize,
    generators: Vec<String>,
    rows: Vec<Vec<LaurentPoly>>,
    phi: Vec<LaurentPoly>,
    seeds: Vec<Seed>,
}

impl Presentation {
    /// Assembles a presentation and checks its invariants: arities, `ε(φ(g)) = 0`,
    /// and `Σ row[g]·φ(g) = 0` for every row.
    pub fn new(
        mu: usize,
        generators: Vec<String>,
        rows: Vec<Vec<LaurentPoly>>,
        phi: Vec<LaurentPoly>,
        seeds: Vec<Seed>,
    ) -> Result<Self> {
        let p = Presentation { mu, generators, rows, phi, seeds };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let g = self.generators.len();
        let bad = |m: String| Err(Error::Presentation(m));
        if self.phi.len() != g {
            return bad(format!("{} phi values for {} generators", self.phi.len(), g));
        }
        let mut names = std::collections::HashSet::new();
        for name in &self.generators {
            if !names.insert(name) {
                return bad(format!("duplicate generator {name:?}"));
            }
        }
        let all_polys = self
            .rows
            .iter()
            .flatten()
            .chain(&self.phi)
            .chain(self.seeds.iter().flat_map(|s| s.value.iter()));
        for poly in all_polys {
            if poly.mu() != self.mu {
                return Err(Error::VariableCountMismatch { left: poly.mu(), right: self.mu });
            }
        }
        for (name, f) in self.generators.iter().zip(&self.phi) {
            if !f.augmentation().is_zero() {
                return bad(format!("phi({name}) = {f} is not in the augmentation ideal"));
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != g {
                return bad(format!("row {i} has {} entries for {g} generators", row.len()));
            }
            if !self.phi_of(row).is_zero() {
                return bad(format!("row {i} is not compatible with phi"));
            }
        }
        for s in &self.seeds {
            if s.value.len() != g {
                return bad(format!("seed {:?} has wrong length", s.arc));
            }
            if s.component == 0 || s.component > self.mu {
                return Err(Error::ComponentOutOfRange { index: s.component, mu: self.mu });
            }
            if self.phi_of(&s.value) != LaurentPoly::var_minus_one(self.mu, s.component) {
                return bad(format!("seed {:?} does not have phi = t{} - 1", s.arc, s.component));
            }
        }
        Ok(())
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn phi(&self) -> &[LaurentPoly] {
        &self.phi
    }

    pub fn seeds(&self) -> &[Seed] {
        &self.seeds
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn phi_of_generator(&self, name: &str) -> Option<&LaurentPoly> {
        self.generator_index(name).map(|i| &self.phi[i])
    }

    /// `φ` of a combination `Σ v[g]·g`.
    pub fn phi_of(&self, combination: &[LaurentPoly]) -> LaurentPoly {
        combination
            .iter()
            .zip(&self.phi)
            .fold(LaurentPoly::zero(self.mu), |acc, (c, f)| &acc + &(c * f))
    }

    /// The relation row of a named crossing-derived row index, as a generator map.
    pub fn row_map(&self, i: usize) -> BTreeMap<String, LaurentPoly> {
        self.generators
            .iter()
            .zip(&self.rows[i])
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect()
    }

    /// Applies a Laurent-valued ring map to every coefficient and `φ` value.
    /// Seeds are re-graded by `regrade`; seeds mapped to `None` are dropped.
    fn map_ring(&self, map: &RingMapSpec<num_bigint::BigInt>, target_mu: usize, regrade: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        let f = |p: &LaurentPoly| p.map_laurent(map);
        let rows = self.rows.iter().map(|r| r.iter().map(f).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let phi = self.phi.iter().map(f).collect::<Result<Vec<_>>>()?;
        let mut seeds = Vec::new();
        for s in &self.seeds {
            if let Some(component) = regrade(s.component) {
                let value = s.value.iter().map(f).collect::<Result<Vec<_>>>()?;
                seeds.push(Seed { arc: s.arc.clone(), component, value });
            }
        }
        Presentation::new(target_mu, self.generators.clone(), rows, phi, seeds)
    }
}

/// Presentation read off a diagram: one generator per arc with `φ(a) = t_κ(a) - 1`,
/// one row per crossing.
pub fn build_presentation(d: &Diagram) -> Presentation {
    let mu = d.mu();
    let generators: Vec<String> = d.arcs().iter().map(|a| a.id.clone()).collect();
    let idx: HashMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let g = generators.len();
    let one = LaurentPoly::one(mu);
    let mut rows = Vec::with_capacity(d.crossings().len());
    for c in d.crossings() {
        let mut row = vec![LaurentPoly::zero(mu); g];
        let (l, r) = (idx[c.left.as_str()], idx[c.right.as_str()]);
        match &c.over {
            Some(over) if !c.trivial => {
                let o = idx[over.as_str()];
                let kl = d.component_of(&c.left).expect("validated");
                let ko = d.component_of(over).expect("validated");
                row[o] = &row[o] + &(&one - &LaurentPoly::var(mu, kl));
                row[r] = &row[r] + &LaurentPoly::var(mu, ko);
                row[l] = &row[l] - &one;
            }
            _ => {
                row[r] = &row[r] + &one;
                row[l] = &row[l] - &one;
            }
        }
        rows.push(row);
    }
    let phi = d.arcs().iter().map(|a| LaurentPoly::var_minus_one(mu, a.component)).collect();
    let seeds = d
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut value = vec![LaurentPoly::zero(mu); g];
            value[i] = one.clone();
            Seed { arc: a.id.clone(), component: a.component, value }
        })
        .collect();
    Presentation::new(mu, generators, rows, phi, seeds).expect("diagram presentations satisfy the invariants")
}

/// Every variable sent to a single `t`.
pub fn reduce_one_variable(p: &Presentation) -> Presentation {
    p.map_ring(&RingMapSpec::collapse(p.mu), 1, |_| Some(1))
        .expect("collapse preserves the invariants")
}

/// Presentation of `M/N` over `Λ_{μ-1}` for the submodule `N` generated by
/// `(t_j - 1)M` and the arcs of component `j`: apply `t_j ↦ 1` and kill those arcs.
///
/// The orbit of component `j` lies in `N` (it is generated from its arcs by
/// operations that stay in `N`), so killing arc generators suffices.
#[allow(non_snake_case)]
pub fn quotient_mod_N(p: &Presentation, d: &Diagram, j: usize) -> Result<Presentation> {
    let mu = p.mu;
    if j == 0 || j > mu {
        return Err(Error::ComponentOutOfRange { index: j, mu });
    }
    if mu < 2 {
        return Err(Error::SingleComponent);
    }
    let arc_ids: Vec<&str> = d.arcs().iter().map(|a| a.id.as_str()).collect();
    if p.generators.iter().map(String::as_str).ne(arc_ids.iter().copied()) || d.mu() != mu {
        return Err(Error::Presentation("quotient_mod_N expects the diagram's own presentation".into()));
    }
    let pi = RingMapSpec::drop_variable(mu, j);
    let mut q = p.map_ring(&pi, mu - 1, |c| match c.cmp(&j) {
        std::cmp::Ordering::Less => Some(c),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some(c - 1),
    })?;
    let g = q.generators.len();
    for (i, a) in d.arcs().iter().enumerate() {
        if a.component == j {
            let mut row = vec![LaurentPoly::zero(mu - 1); g];
            row[i] = LaurentPoly::one(mu - 1);
            q.rows.push(row);
        }
    }
    q.validate()?;
    Ok(q)
}

#[derive(Serialize, Deserialize)]
struct SeedJson {
    arc: String,
    component: usize,
    value: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    mu: usize,
    generators: Vec<String>,
    rows: Vec<Vec<String>>,
    phi: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seeds: Option<Vec<SeedJson>>,
}

pub(crate) fn combination_from_map(
    mu: usize,
    generators: &[String],
    map: &BTreeMap<String, String>,
) -> Result<Vec<LaurentPoly>> {
    let mut v = vec![LaurentPoly::zero(mu); generators.len()];
    for (name, poly) in map {
        let i = generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::Presentation(format!("unknown generator {name:?}")))?;
        v[i] = &v[i] + &LaurentPoly::parse(mu, poly)?;
    }
    Ok(v)
}

pub(crate) fn combination_to_map(generators: &[String], v: &[LaurentPoly]) -> BTreeMap<String, String> {
    generators
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(g, c)| (g.clone(), c.to_string()))
        .collect()
}

impl Presentation {
    pub fn to_json_value(&self) -> serde_json::Value {
        let json = PresentationJson {
            mu: self.mu,
            generators: self.generators.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
            phi: self.generators.iter().cloned().zip(self.phi.iter().map(|f| f.to_string())).collect(),
            seeds: Some(
                self.seeds
                    .iter()
                    .map(|s| SeedJson {
                        arc: s.arc.clone(),
                        component: s.component,
                        value: combination_to_map(&self.generators, &s.value),
                    })
                    .collect(),
            ),
        };
        serde_json::to_value(json).expect("presentation serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    /// Parses the JSON form. When `seeds` is absent, every generator whose `φ`
    /// is some `t_i - 1` is taken as a seed of component `i`.
    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let json: PresentationJson = serde_json::from_value(value)?;
        let mu = json.mu;
        let generators = json.generators;
        let rows = json
            .rows
            .iter()
            .map(|r| r.iter().map(|s| LaurentPoly::parse(mu, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut phi = Vec::with_capacity(generators.len());
        for g in &generators {
            let s = json.phi.get(g).ok_or_else(|| Error::Presentation(format!("no phi for generator {g:?}")))?;
            phi.push(LaurentPoly::parse(mu, s)?);
        }
        let seeds = match json.seeds {
            Some(seeds) => seeds
                .into_iter()
                .map(|s| {
                    Ok(Seed {
                        value: combination_from_map(mu, &generators, &s.value)?,
                        arc: s.arc,
                        component: s.component,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            None => generators
                .iter()
                .zip(&phi)
                .enumerate()
                .filter_map(|(i, (g, f))| {
                    (1..=mu).find(|&c| *f == LaurentPoly::var_minus_one(mu, c)).map(|c| {
                        let mut value = vec![LaurentPoly::zero(mu); generators.len()];
                        value[i] = LaurentPoly::one(mu);
                        Seed { arc: g.clone(), component: c, value }
                    })
                })
                .collect(),
        };
        Presentation::new(mu, generators, rows, phi, seeds)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(serde_json::from_str(text)?)
    }
}
