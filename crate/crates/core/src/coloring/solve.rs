use super::FiniteModuleSpec;
use crate::error::{Error, Result};
use crate::modular::{add_mod, mul_mod, sub_mod};
use crate::presentation::Presentation;
use crate::LaurentPoly;

/// An assignment of a module element to every generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub values: Vec<Vec<u64>>,
}

impl Coloring {
    fn from_flat(flat: &[u64], rank: usize) -> Self {
        Coloring { values: flat.chunks(rank).map(<[u64]>::to_vec).collect() }
    }
}

/// Solutions of `Σ_g row[g]·x_g = 0` in `(Z/n)^k`, stored as an internal
/// direct sum of cyclic groups: every solution is `Σ c_i·basis[i]` for a
/// unique choice of `0 ≤ c_i < orders[i]`.
#[derive(Clone, Debug)]
pub struct ColoringSpace {
    modulus: u64,
    rank: usize,
    generators: usize,
    basis: Vec<Vec<u64>>,
    orders: Vec<u64>,
}

impl ColoringSpace {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of colorings.
    pub fn count(&self) -> Result<u128> {
        self.orders.iter().try_fold(1u128, |acc, &o| acc.checked_mul(o as u128)).ok_or(Error::CountOverflow)
    }

    /// Every coloring exactly once, in mixed-radix order of the coefficients.
    pub fn iter(&self) -> impl Iterator<Item = Coloring> + '_ {
        let width = self.generators * self.rank;
        let mut digits = vec![0u64; self.basis.len()];
        let mut current = vec![0u64; width];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Coloring::from_flat(&current, self.rank.max(1));
            // adding basis[i] orders[i] times returns to the start, so no reset is needed
            done = true;
            for (i, b) in self.basis.iter().enumerate() {
                for (c, &x) in current.iter_mut().zip(b) {
                    *c = add_mod(*c, x, self.modulus);
                }
                digits[i] += 1;
                if digits[i] < self.orders[i] {
                    done = false;
                    break;
                }
                digits[i] = 0;
            }
            Some(out)
        })
    }
}

/// Colorings of a presentation by a finite module.
pub fn solve_colorings(p: &Presentation, spec: &FiniteModuleSpec) -> Result<ColoringSpace> {
    if p.mu() != spec.arity() {
        return Err(Error::DimensionMismatch { presentation: p.mu(), spec: spec.arity() });
    }
    solve_system(p.rows(), p.generators().len(), spec)
}

/// Whether `values` satisfies every row.
pub fn is_coloring(p: &Presentation, spec: &FiniteModuleSpec, values: &[Vec<u64>]) -> Result<bool> {
    let n = spec.modulus();
    for row in p.rows() {
        let mut acc = vec![0u64; spec.rank()];
        for (c, x) in row.iter().zip(values) {
            if c.is_zero() {
                continue;
            }
            for (a, y) in acc.iter_mut().zip(spec.eval(c)?.apply(x)) {
                *a = add_mod(*a, y, n);
            }
        }
        if acc.iter().any(|&a| a != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solutions of an arbitrary homogeneous system with `generators` unknowns.
pub fn solve_system(rows: &[Vec<LaurentPoly>], generators: usize, spec: &FiniteModuleSpec) -> Result<ColoringSpace> {
    let n = spec.modulus();
    let k = spec.rank();
    let width = generators * k;
    let mut a: Vec<Vec<u64>> = Vec::with_capacity(rows.len() * k);
    for row in rows {
        let mut block = vec![vec![0u64; width]; k];
        for (g, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = spec.eval(c)?;
            for (r, line) in block.iter_mut().enumerate() {
                for s in 0..k {
                    line[g * k + s] = m.get(r, s);
                }
            }
        }
        a.extend(block);
    }
    let (diag, v) = diagonalize(a, width, n);
    let mut basis = Vec::new();
    let mut orders = Vec::new();
    for t in 0..width {
        let d = diag.get(t).copied().unwrap_or(0);
        // d·y ≡ 0 (mod n) ⟺ y ∈ (n/gcd(d,n))·Z/n
        let g = num_integer::gcd(d, n);
        if g == 1 {
            continue;
        }
        let step = n / g;
        basis.push((0..width).map(|r| mul_mod(v[r][t], step, n)).collect());
        orders.push(g);
    }
    Ok(ColoringSpace { modulus: n, rank: k, generators, basis, orders })
}

/// Reduces `a` (entries in `[0,n)`) to diagonal form by row operations and
/// invertible column operations over `Z/n`; returns the diagonal and the
/// accumulated column transform `V`, so that the kernel of `a` is `V` applied to
/// the kernel of the diagonal.
fn diagonalize(mut a: Vec<Vec<u64>>, width: usize, n: u64) -> (Vec<u64>, Vec<Vec<u64>>) {
    let mut v: Vec<Vec<u64>> = (0..width).map(|i| (0..width).map(|j| u64::from(i == j)).collect()).collect();
    let m = a.len();
    let mut diag = Vec::new();
    let col_sub = |a: &mut Vec<Vec<u64>>, v: &mut Vec<Vec<u64>>, j: usize, t: usize, q: u64| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row[j] = sub_mod(row[j], mul_mod(q, row[t], n), n);
        }
    };
    let col_swap = |a: &mut Vec<Vec<u64>>, v: &mut Vec<Vec<u64>>, i: usize, j: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
    };
    for t in 0..m.min(width) {
        // smallest nonzero representative in the remaining block
        let best = (t..m)
            .flat_map(|i| (t..width).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j]);
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        col_swap(&mut a, &mut v, t, bj);
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t] != 0 {
                    let q = a[i][t] / p;
                    for c in t..width {
                        a[i][c] = sub_mod(a[i][c], mul_mod(q, a[t][c], n), n);
                    }
                    clean &= a[i][t] == 0;
                }
            }
            for j in t + 1..width {
                if a[t][j] != 0 {
                    let q = a[t][j] / p;
                    col_sub(&mut a, &mut v, j, t, q);
                    clean &= a[t][j] == 0;
                }
            }
            if clean {
                break;
            }
            // a strictly smaller remainder sits in row t or column t
            let row_best = (t + 1..width).filter(|&j| a[t][j] != 0).min_by_key(|&j| a[t][j]);
            let col_best = (t + 1..m).filter(|&i| a[i][t] != 0).min_by_key(|&i| a[i][t]);
            match (row_best, col_best) {
                (Some(j), Some(i)) if a[i][t] < a[t][j] => a.swap(t, i),
                (Some(j), _) => col_swap(&mut a, &mut v, t, j),
                (None, Some(i)) => a.swap(t, i),
                (None, None) => unreachable!("unclean pivot leaves a remainder"),
            }
        }
        diag.push(a[t][t]);
    }
    (diag, v)
}
