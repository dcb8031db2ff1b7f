use serde::{Deserialize, Serialize};

use super::orbit::{Ops, Scratch, SeedEvaluator};
use super::{solve_colorings, FiniteModuleSpec};
use crate::error::{Error, Result};
use crate::modular::{units_mod, ZnMatrix};
use crate::presentation::Presentation;

/// Colorings above this many are not enumerated.
const ENUMERATION_LIMIT: u128 = 1 << 24;

/// A sorted list of finite target modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Battery {
    specs: Vec<FiniteModuleSpec>,
}

impl Battery {
    /// Sorts by `(n, k, action)` and removes duplicates.
    pub fn new(mut specs: Vec<FiniteModuleSpec>) -> Self {
        specs.sort_by_key(FiniteModuleSpec::sort_key);
        specs.dedup();
        Battery { specs }
    }

    pub fn specs(&self) -> &[FiniteModuleSpec] {
        &self.specs
    }

    /// A JSON list of spec objects.
    pub fn from_json(text: &str) -> Result<Self> {
        let values: Vec<serde_json::Value> = serde_json::from_str(text)?;
        Ok(Self::new(values.into_iter().map(FiniteModuleSpec::from_json_value).collect::<Result<_>>()?))
    }

    pub fn to_json(&self) -> String {
        let values: Vec<_> = self.specs.iter().map(FiniteModuleSpec::to_json_value).collect();
        serde_json::to_string(&values).expect("battery serializes")
    }

    /// Every spec relabelled by `sigma`, re-sorted.
    pub fn permuted(&self, sigma: &[usize]) -> Result<Self> {
        Ok(Self::new(self.specs.iter().map(|s| s.permuted(sigma)).collect::<Result<_>>()?))
    }
}

/// Rank-one `Z/n` for `n ∈ {2,3,4,5,7}` with every tuple of units, and rank-two
/// `Z/3` with `t1 ↦ [[0,1],[−1,1]]` and the other variables all `↦ I` or all `↦ −I`.
pub fn default_battery(mu: usize) -> Battery {
    let mut specs = Vec::new();
    for n in [2u64, 3, 4, 5, 7] {
        let units = units_mod(n);
        let mut tuple = vec![0usize; mu];
        loop {
            let images: Vec<i64> = tuple.iter().map(|&i| units[i] as i64).collect();
            specs.push(FiniteModuleSpec::scalar(n, &images).expect("units are invertible"));
            let Some(pos) = tuple.iter().position(|&i| i + 1 < units.len()) else { break };
            tuple[pos] += 1;
            tuple[..pos].iter_mut().for_each(|i| *i = 0);
        }
    }
    if mu >= 1 {
        let m = ZnMatrix::from_rows(3, &[vec![0, 1], vec![-1, 1]]).expect("square");
        let others: &[u64] = if mu == 1 { &[1] } else { &[1, 2] };
        for &s in others {
            let mut action = vec![m.clone()];
            action.extend((1..mu).map(|_| ZnMatrix::scalar(3, 2, s)));
            specs.push(FiniteModuleSpec::new(3, 2, action).expect("scalars commute"));
        }
    }
    Battery::new(specs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintEntry {
    pub spec: String,
    pub unconstrained: u128,
    pub constant: Vec<u128>,
    pub zero: Vec<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint(pub Vec<FingerprintEntry>);

impl Fingerprint {
    pub fn entries(&self) -> &[FingerprintEntry] {
        &self.0
    }

    pub fn entry(&self, spec_id: &str) -> Option<&FingerprintEntry> {
        self.0.iter().find(|e| e.spec == spec_id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fingerprint serializes")
    }
}

fn entry(p: &Presentation, spec: &FiniteModuleSpec) -> Result<FingerprintEntry> {
    let space = solve_colorings(p, spec)?;
    let total = space.count()?;
    if total > ENUMERATION_LIMIT {
        return Err(Error::CountOverflow);
    }
    let mu = p.mu();
    let ops = Ops::new(spec);
    let eval = SeedEvaluator::new(p, spec)?;
    let mut constant = vec![0u128; mu];
    let mut zero = vec![0u128; mu];
    let mut elems = Vec::new();
    let mut scratch = Scratch::default();
    // per component: image size and whether the image is {0}
    let mut sizes = vec![0usize; mu];
    let mut zeros = vec![true; mu];
    for c in space.iter() {
        ops.closure_into(eval.evaluate_codes(&ops, &c), &mut elems, &mut scratch);
        sizes.iter_mut().for_each(|s| *s = 0);
        zeros.iter_mut().for_each(|z| *z = true);
        for &code in &elems {
            let (component, is_zero) = ops.split(code);
            sizes[component - 1] += 1;
            zeros[component - 1] &= is_zero;
        }
        for i in 0..mu {
            if sizes[i] == 1 {
                constant[i] += 1;
                if zeros[i] {
                    zero[i] += 1;
                }
            }
        }
    }
    Ok(FingerprintEntry { spec: spec.id(), unconstrained: total, constant, zero })
}

/// Fingerprint over the default battery for the presentation's variable count.
pub fn fingerprint(p: &Presentation) -> Result<Fingerprint> {
    fingerprint_with(p, &default_battery(p.mu()), 1)
}

/// Fingerprint over `battery`, evaluating up to `jobs` specs at once. The
/// result follows the battery order whatever the number of jobs.
pub fn fingerprint_with(p: &Presentation, battery: &Battery, jobs: usize) -> Result<Fingerprint> {
    let specs = battery.specs();
    let jobs = jobs.clamp(1, specs.len().max(1));
    if jobs == 1 {
        return specs.iter().map(|s| entry(p, s)).collect::<Result<_>>().map(Fingerprint);
    }
    let chunk = specs.len().div_ceil(jobs);
    let parts: Vec<Result<Vec<FingerprintEntry>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|s| entry(p, s)).collect::<Result<Vec<_>>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("battery worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(specs.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(Fingerprint(out))
}
