//! Arithmetic in `Z/n` and square matrices over it.

use num_integer::Integer;

use crate::laurent::Coeff;

/// Canonical representative of `x mod n` in `0..n`.
pub fn reduce_i64(x: i64, n: u64) -> u64 {
    (x as i128).rem_euclid(n as i128) as u64
}

pub fn reduce_coeff<C: Coeff>(c: &C, n: u64) -> u64 {
    let m = C::from_u64(n).expect("modulus fits coefficient type");
    c.mod_floor(&m).to_u64().expect("reduced coefficient fits u64")
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    add_mod(a, n - b % n, n)
}

/// Multiplicative inverse of `a` modulo `n`, if `gcd(a, n) = 1`.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(n as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i128) as u64)
}

pub fn units_mod(n: u64) -> Vec<u64> {
    (1..n).filter(|a| a.gcd(&n) == 1).collect()
}

/// `k×k` matrix with entries in `Z/n`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZnMatrix {
    modulus: u64,
    rank: usize,
    entries: Vec<u64>,
}

impl ZnMatrix {
    pub fn identity(modulus: u64, rank: usize) -> Self {
        Self::scalar(modulus, rank, 1)
    }

    pub fn zero(modulus: u64, rank: usize) -> Self {
        ZnMatrix { modulus, rank, entries: vec![0; rank * rank] }
    }

    pub fn scalar(modulus: u64, rank: usize, s: u64) -> Self {
        let mut m = Self::zero(modulus, rank);
        for i in 0..rank {
            m.entries[i * rank + i] = s % modulus;
        }
        m
    }

    /// Builds from integer rows, reducing every entry; `None` if not square.
    pub fn from_rows(modulus: u64, rows: &[Vec<i64>]) -> Option<Self> {
        let rank = rows.len();
        if rank == 0 || rows.iter().any(|r| r.len() != rank) {
            return None;
        }
        let entries = rows.iter().flatten().map(|&x| reduce_i64(x, modulus)).collect();
        Some(ZnMatrix { modulus, rank, entries })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.modulus;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| add_mod(a, b, n)).collect();
        ZnMatrix { entries, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.modulus;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| sub_mod(a, b, n)).collect();
        ZnMatrix { entries, ..*self }
    }

    pub fn scale(&self, s: u64) -> Self {
        let n = self.modulus;
        ZnMatrix { entries: self.entries.iter().map(|&a| mul_mod(a, s, n)).collect(), ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (n, k) = (self.modulus, self.rank);
        let mut out = Self::zero(n, k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = 0u128;
                for l in 0..k {
                    acc += self.get(i, l) as u128 * other.get(l, j) as u128;
                }
                out.entries[i * k + j] = (acc % n as u128) as u64;
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let (n, k) = (self.modulus, self.rank);
        (0..k)
            .map(|i| {
                let acc: u128 = (0..k).map(|j| self.get(i, j) as u128 * v[j] as u128).sum();
                (acc % n as u128) as u64
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.modulus, self.rank);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let k = self.rank - 1;
        let mut entries = Vec::with_capacity(k * k);
        for i in (0..self.rank).filter(|&i| i != skip_row) {
            for j in (0..self.rank).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j));
            }
        }
        ZnMatrix { modulus: self.modulus, rank: k, entries }
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus;
        match self.rank {
            0 => 1 % n,
            1 => self.entries[0],
            _ => {
                let mut acc = 0u64;
                for j in 0..self.rank {
                    let term = mul_mod(self.get(0, j), self.minor(0, j).det(), n);
                    acc = if j % 2 == 0 { add_mod(acc, term, n) } else { sub_mod(acc, term, n) };
                }
                acc
            }
        }
    }

    /// Inverse via the adjugate; `None` when the determinant is not a unit mod n.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.modulus;
        let dinv = inv_mod(self.det(), n)?;
        let k = self.rank;
        if k == 1 {
            return Some(ZnMatrix { entries: vec![dinv], ..*self });
        }
        let mut out = Self::zero(n, k);
        for i in 0..k {
            for j in 0..k {
                let c = self.minor(j, i).det();
                let c = if (i + j) % 2 == 0 { c } else { sub_mod(0, c, n) };
                out.entries[i * k + j] = mul_mod(c, dinv, n);
            }
        }
        Some(out)
    }

    pub fn is_invertible(&self) -> bool {
        inv_mod(self.det(), self.modulus).is_some()
    }
}
