//! Colorings of Alexander modules by finite `Λμ`-modules, and the quandle
//! operations `x ▷ y = (φ(y)+1)x − φ(x)y`, `x ▷⁻¹ y = (φ(y)+1)⁻¹(x + φ(x)y)`
//! carried into the target.
//!
//! An element whose `φ`-value is `t_i − 1` is represented by a
//! [`GradedElement`] with `component = i`; the operations only depend on the
//! gradings and the action of the `t_i`.

mod fingerprint;
mod orbit;
mod solve;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::ring_map::eval_matrix;
use crate::modular::{add_mod, reduce_i64, sub_mod, ZnMatrix};
use crate::LaurentPoly;

pub use fingerprint::{default_battery, fingerprint, fingerprint_with, Battery, Fingerprint, FingerprintEntry};
pub use orbit::{
    closure, count_constrained, count_nonconstant, element_lengths, orbit_image, orbit_images, Constraint,
};
pub use solve::{is_coloring, solve_colorings, solve_system, Coloring, ColoringSpace};

/// A finite `Λμ`-module `(Z/n)^k` on which `t_i` acts by an invertible matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModuleSpec {
    modulus: u64,
    rank: usize,
    action: Vec<ZnMatrix>,
    inverses: Vec<ZnMatrix>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    modulus: u64,
    rank: usize,
    action: Vec<Vec<Vec<i64>>>,
}

impl FiniteModuleSpec {
    /// Validates: `n ≥ 2`, `k ≥ 1`, every action matrix is `k×k` and invertible
    /// mod `n`, and the matrices commute pairwise.
    pub fn new(modulus: u64, rank: usize, action: Vec<ZnMatrix>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModuleSpec(format!("modulus {modulus} < 2")));
        }
        if rank == 0 {
            return Err(Error::ModuleSpec("rank must be at least 1".into()));
        }
        let mut inverses = Vec::with_capacity(action.len());
        for (i, m) in action.iter().enumerate() {
            if m.rank() != rank || m.modulus() != modulus {
                return Err(Error::ModuleSpec(format!("action of t{} is not {rank}x{rank} mod {modulus}", i + 1)));
            }
            let inv = m
                .inverse()
                .ok_or_else(|| Error::ModuleSpec(format!("action of t{} is not invertible mod {modulus}", i + 1)))?;
            inverses.push(inv);
        }
        for (i, a) in action.iter().enumerate() {
            for b in &action[i + 1..] {
                if a.mul(b) != b.mul(a) {
                    return Err(Error::ModuleSpec("action matrices must commute".into()));
                }
            }
        }
        Ok(FiniteModuleSpec { modulus, rank, action, inverses })
    }

    /// Rank-one module: `t_i` acts by the scalar `units[i]`.
    pub fn scalar(modulus: u64, units: &[i64]) -> Result<Self> {
        let action = units.iter().map(|&u| ZnMatrix::scalar(modulus, 1, reduce_i64(u, modulus))).collect();
        Self::new(modulus, 1, action)
    }

    /// `GF(3)` with `t1 ↦ −1`, `t2 ↦ 1`.
    pub fn gf3_chi() -> Self {
        Self::scalar(3, &[-1, 1]).expect("valid")
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let json: SpecJson = serde_json::from_value(value)?;
        let action = json
            .action
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                ZnMatrix::from_rows(json.modulus.max(1), rows)
                    .ok_or_else(|| Error::ModuleSpec(format!("action of t{} is not a square matrix", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.modulus, json.rank, action)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(serde_json::from_str(text)?)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let action = self
            .action
            .iter()
            .map(|m| m.rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect())
            .collect();
        serde_json::to_value(SpecJson { modulus: self.modulus, rank: self.rank, action }).expect("spec serializes")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of variables acted on.
    pub fn arity(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self, i: usize) -> &ZnMatrix {
        &self.action[i - 1]
    }

    pub fn action_inverse(&self, i: usize) -> &ZnMatrix {
        &self.inverses[i - 1]
    }

    /// Number of elements, `n^k`.
    pub fn size(&self) -> u64 {
        self.modulus.pow(self.rank as u32)
    }

    /// Image of a Laurent polynomial as a `k×k` matrix over `Z/n`.
    pub fn eval(&self, p: &LaurentPoly) -> Result<ZnMatrix> {
        if p.mu() != self.arity() {
            return Err(Error::DimensionMismatch { presentation: p.mu(), spec: self.arity() });
        }
        Ok(eval_matrix(p, self.modulus, self.rank, &self.action, &self.inverses))
    }

    /// Sort key: modulus, rank, then the flattened action.
    pub fn sort_key(&self) -> (u64, usize, Vec<u64>) {
        (self.modulus, self.rank, self.action.iter().flat_map(|m| m.entries().to_vec()).collect())
    }

    /// Stable identifier, e.g. `n3k1:2,1` or `n3k2:[0 1;2 1],[1 0;0 1]`.
    pub fn id(&self) -> String {
        let parts: Vec<String> = self
            .action
            .iter()
            .map(|m| {
                if self.rank == 1 {
                    m.get(0, 0).to_string()
                } else {
                    let rows: Vec<String> = m
                        .rows()
                        .iter()
                        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                        .collect();
                    format!("[{}]", rows.join(";"))
                }
            })
            .collect();
        format!("n{}k{}:{}", self.modulus, self.rank, parts.join(","))
    }

    /// The spec seen after relabelling component `i` as `sigma[i-1]`:
    /// the new `t_{sigma[i-1]}` acts as the old `t_i`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<Self> {
        crate::diagram::check_permutation(sigma, self.arity())?;
        let mut action = self.action.clone();
        for (i, &s) in sigma.iter().enumerate() {
            action[s - 1] = self.action[i].clone();
        }
        Self::new(self.modulus, self.rank, action)
    }
}

/// An element of the target module graded by the component whose
/// `φ`-value `t_component − 1` it carries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedElement {
    pub component: usize,
    pub value: Vec<u64>,
}

impl GradedElement {
    pub fn new(component: usize, value: Vec<u64>) -> Self {
        GradedElement { component, value }
    }
}

fn sub_vec(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| sub_mod(x, y, n)).collect()
}

fn add_vec(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, n)).collect()
}

/// `x ▷ y`: value `A_{y}·x − (A_{x} − I)·y`, grading of `x`.
pub fn op_right(x: &GradedElement, y: &GradedElement, spec: &FiniteModuleSpec) -> GradedElement {
    let n = spec.modulus;
    let ty_x = spec.action(y.component).apply(&x.value);
    let tx_y = spec.action(x.component).apply(&y.value);
    // (A_x − I)·y = A_x·y − y
    let phi_x_y = sub_vec(&tx_y, &y.value, n);
    GradedElement { component: x.component, value: sub_vec(&ty_x, &phi_x_y, n) }
}

/// `x ▷⁻¹ y`: value `A_{y}⁻¹·(x + (A_{x} − I)·y)`, grading of `x`.
pub fn op_right_inv(x: &GradedElement, y: &GradedElement, spec: &FiniteModuleSpec) -> GradedElement {
    let n = spec.modulus;
    let tx_y = spec.action(x.component).apply(&y.value);
    let phi_x_y = sub_vec(&tx_y, &y.value, n);
    let inner = add_vec(&x.value, &phi_x_y, n);
    GradedElement { component: x.component, value: spec.action_inverse(y.component).apply(&inner) }
}
