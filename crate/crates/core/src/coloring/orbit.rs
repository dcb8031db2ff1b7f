use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{op_right, op_right_inv, Coloring, FiniteModuleSpec, GradedElement};
use crate::error::{Error, Result};
use crate::modular::add_mod;
use crate::presentation::Presentation;

/// Orbit constraint on one component's image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    Free,
    /// The orbit image has exactly one element.
    Constant,
    /// The orbit image is `{0}`.
    Zero,
}

impl std::str::FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Constraint::Free),
            "constant" => Ok(Constraint::Constant),
            "zero" => Ok(Constraint::Zero),
            _ => Err(Error::ModuleSpec(format!("unknown constraint {s:?}"))),
        }
    }
}

/// Both operations on encoded elements `(component − 1)·n^k + Σ v_j n^j`,
/// tabulated when the module is small.
pub(crate) struct Ops<'a> {
    spec: &'a FiniteModuleSpec,
    size: u64,
    mu: usize,
    right: Vec<u32>,
    inv: Vec<u32>,
}

const TABLE_LIMIT: u64 = 1 << 20;
/// Modules up to this many graded elements track membership in a flat table.
const DENSE_LIMIT: u64 = 1 << 16;

/// Reusable membership buffers for closures.
#[derive(Default)]
pub(crate) struct Scratch {
    seen: Vec<bool>,
    sparse: HashSet<u64>,
}

impl<'a> Ops<'a> {
    pub(crate) fn new(spec: &'a FiniteModuleSpec) -> Self {
        let size = spec.size();
        let mu = spec.arity();
        let total = size * mu as u64;
        let mut ops = Ops { spec, size, mu, right: Vec::new(), inv: Vec::new() };
        if total.saturating_mul(total) <= TABLE_LIMIT {
            let t = total as usize;
            ops.right = vec![0; t * t];
            ops.inv = vec![0; t * t];
            for x in 0..total {
                let ex = ops.decode(x);
                for y in 0..total {
                    let ey = ops.decode(y);
                    let at = x as usize * t + y as usize;
                    ops.right[at] = ops.encode(&op_right(&ex, &ey, spec)) as u32;
                    ops.inv[at] = ops.encode(&op_right_inv(&ex, &ey, spec)) as u32;
                }
            }
        }
        ops
    }

    pub(crate) fn encode(&self, e: &GradedElement) -> u64 {
        let n = self.spec.modulus();
        let idx = e.value.iter().rev().fold(0u64, |acc, &v| acc * n + v);
        (e.component as u64 - 1) * self.size + idx
    }

    pub(crate) fn decode(&self, code: u64) -> GradedElement {
        let n = self.spec.modulus();
        let mut idx = code % self.size;
        let value = (0..self.spec.rank())
            .map(|_| {
                let v = idx % n;
                idx /= n;
                v
            })
            .collect();
        GradedElement { component: (code / self.size) as usize + 1, value }
    }

    fn right(&self, x: u64, y: u64) -> u64 {
        if self.right.is_empty() {
            self.encode(&op_right(&self.decode(x), &self.decode(y), self.spec))
        } else {
            self.right[(x * self.size * self.mu as u64 + y) as usize] as u64
        }
    }

    fn inv(&self, x: u64, y: u64) -> u64 {
        if self.inv.is_empty() {
            self.encode(&op_right_inv(&self.decode(x), &self.decode(y), self.spec))
        } else {
            self.inv[(x * self.size * self.mu as u64 + y) as usize] as u64
        }
    }

    /// Smallest set containing `seeds` and closed under `▷` and `▷⁻¹`.
    pub(crate) fn closure(&self, seeds: impl IntoIterator<Item = u64>) -> Vec<u64> {
        let mut elems = Vec::new();
        let mut scratch = Scratch::default();
        self.closure_into(seeds, &mut elems, &mut scratch);
        elems
    }

    /// [`Ops::closure`] writing into reusable buffers.
    pub(crate) fn closure_into(&self, seeds: impl IntoIterator<Item = u64>, elems: &mut Vec<u64>, scratch: &mut Scratch) {
        elems.clear();
        let total = self.size * self.mu as u64;
        let dense = total <= DENSE_LIMIT;
        if dense {
            scratch.seen.clear();
            scratch.seen.resize(total as usize, false);
        } else {
            scratch.sparse.clear();
        }
        let insert = |x: u64, scratch: &mut Scratch| {
            if dense {
                !std::mem::replace(&mut scratch.seen[x as usize], true)
            } else {
                scratch.sparse.insert(x)
            }
        };
        for s in seeds {
            if insert(s, scratch) {
                elems.push(s);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let z = elems[i];
            for j in 0..=i {
                let w = elems[j];
                for r in [self.right(z, w), self.right(w, z), self.inv(z, w), self.inv(w, z)] {
                    if insert(r, scratch) {
                        elems.push(r);
                    }
                }
            }
            i += 1;
        }
    }

    /// Component (1-based) and whether the value is zero, for an encoded element.
    pub(crate) fn split(&self, code: u64) -> (usize, bool) {
        ((code / self.size) as usize + 1, code % self.size == 0)
    }
}

/// Closure of `seeds` under `▷` and `▷⁻¹`.
pub fn closure(seeds: &[GradedElement], spec: &FiniteModuleSpec) -> BTreeSet<GradedElement> {
    let ops = Ops::new(spec);
    ops.closure(seeds.iter().map(|s| ops.encode(s))).into_iter().map(|c| ops.decode(c)).collect()
}

/// Per-seed evaluation of a coloring: the value of every arc generator.
pub(crate) struct SeedEvaluator {
    // for each seed: its component and (generator, matrix) terms
    seeds: Vec<(usize, Vec<(usize, crate::ZnMatrix)>)>,
    modulus: u64,
    rank: usize,
}

impl SeedEvaluator {
    pub(crate) fn new(p: &Presentation, spec: &FiniteModuleSpec) -> Result<Self> {
        if p.mu() != spec.arity() {
            return Err(Error::DimensionMismatch { presentation: p.mu(), spec: spec.arity() });
        }
        let seeds = p
            .seeds()
            .iter()
            .map(|s| {
                let terms = s
                    .value
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(g, c)| Ok((g, spec.eval(c)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((s.component, terms))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeedEvaluator { seeds, modulus: spec.modulus(), rank: spec.rank() })
    }

    /// Encoded seed values under a coloring.
    pub(crate) fn evaluate_codes<'a>(&'a self, ops: &'a Ops<'_>, c: &'a Coloring) -> impl Iterator<Item = u64> + 'a {
        self.evaluate(c).into_iter().map(move |e| ops.encode(&e))
    }

    pub(crate) fn evaluate(&self, c: &Coloring) -> Vec<GradedElement> {
        self.seeds
            .iter()
            .map(|(component, terms)| {
                let mut value = vec![0u64; self.rank];
                for (g, m) in terms {
                    for (a, y) in value.iter_mut().zip(m.apply(&c.values[*g])) {
                        *a = add_mod(*a, y, self.modulus);
                    }
                }
                GradedElement { component: *component, value }
            })
            .collect()
    }
}

/// Orbit images of every component, index `i − 1` for component `i`.
pub(crate) fn images_with(ops: &Ops<'_>, eval: &SeedEvaluator, c: &Coloring, mu: usize) -> Vec<BTreeSet<Vec<u64>>> {
    let seeds = eval.evaluate(c);
    let mut out = vec![BTreeSet::new(); mu];
    for code in ops.closure(seeds.iter().map(|s| ops.encode(s))) {
        let e = ops.decode(code);
        out[e.component - 1].insert(e.value);
    }
    out
}

/// Image of every orbit of the presentation's quandle under a coloring.
pub fn orbit_images(p: &Presentation, c: &Coloring, spec: &FiniteModuleSpec) -> Result<Vec<BTreeSet<Vec<u64>>>> {
    let eval = SeedEvaluator::new(p, spec)?;
    Ok(images_with(&Ops::new(spec), &eval, c, p.mu()))
}

/// Image of the component-`i` orbit under a coloring.
pub fn orbit_image(p: &Presentation, c: &Coloring, spec: &FiniteModuleSpec, i: usize) -> Result<BTreeSet<Vec<u64>>> {
    if i == 0 || i > p.mu() {
        return Err(Error::ComponentOutOfRange { index: i, mu: p.mu() });
    }
    Ok(orbit_images(p, c, spec)?.swap_remove(i - 1))
}

pub(crate) fn satisfies(images: &[BTreeSet<Vec<u64>>], constraints: &[Constraint]) -> bool {
    images.iter().zip(constraints).all(|(img, c)| match c {
        Constraint::Free => true,
        Constraint::Constant => img.len() == 1,
        Constraint::Zero => img.len() == 1 && img.iter().all(|v| v.iter().all(|&x| x == 0)),
    })
}

/// Exact number of colorings whose orbit images meet the per-component constraints.
pub fn count_constrained(p: &Presentation, spec: &FiniteModuleSpec, constraints: &[Constraint]) -> Result<u128> {
    if constraints.len() != p.mu() {
        return Err(Error::DimensionMismatch { presentation: p.mu(), spec: constraints.len() });
    }
    let space = super::solve_colorings(p, spec)?;
    if constraints.iter().all(|c| *c == Constraint::Free) {
        return space.count();
    }
    let eval = SeedEvaluator::new(p, spec)?;
    let ops = Ops::new(spec);
    let mut count = 0u128;
    for c in space.iter() {
        if satisfies(&images_with(&ops, &eval, &c, p.mu()), constraints) {
            count += 1;
        }
    }
    Ok(count)
}

/// Colorings meeting `constraints` whose component-`i` orbit image is not
/// constant: the constrained count minus the count with component `i` also
/// forced constant.
pub fn count_nonconstant(p: &Presentation, spec: &FiniteModuleSpec, constraints: &[Constraint], i: usize) -> Result<u128> {
    if i == 0 || i > p.mu() {
        return Err(Error::ComponentOutOfRange { index: i, mu: p.mu() });
    }
    let all = count_constrained(p, spec, constraints)?;
    let mut tighter = constraints.to_vec();
    if tighter[i - 1] == Constraint::Free {
        tighter[i - 1] = Constraint::Constant;
    }
    Ok(all - count_constrained(p, spec, &tighter)?)
}

/// Minimum length of every element reachable from `seeds` using at most
/// `maxlen − 1` operations, where a term `x ▷ y` or `x ▷⁻¹ y` has length
/// `len(x) + len(y)` and the seeds have length 1.
pub fn element_lengths(seeds: &[GradedElement], spec: &FiniteModuleSpec, maxlen: usize) -> BTreeMap<GradedElement, usize> {
    let ops = Ops::new(spec);
    let mut length: BTreeMap<u64, usize> = BTreeMap::new();
    let mut layers: Vec<Vec<u64>> = vec![Vec::new()];
    let mut first = Vec::new();
    for s in seeds {
        let code = ops.encode(s);
        if length.insert(code, 1).is_none() {
            first.push(code);
        }
    }
    layers.push(first);
    for len in 2..=maxlen {
        let mut layer = Vec::new();
        for a in 1..len {
            for &x in &layers[a] {
                for &y in &layers[len - a] {
                    for z in [ops.right(x, y), ops.inv(x, y)] {
                        if let std::collections::btree_map::Entry::Vacant(e) = length.entry(z) {
                            e.insert(len);
                            layer.push(z);
                        }
                    }
                }
            }
        }
        layers.push(layer);
    }
    length.into_iter().map(|(c, l)| (ops.decode(c), l)).collect()
}
