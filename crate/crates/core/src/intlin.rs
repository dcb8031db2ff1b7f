//! Exact solving of `A·x = b` over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Some integer solution of `a·x = b`, or `None` when there is none.
///
/// Reduces `a` to lower column echelon form `H = a·V` with `V` unimodular,
/// solves `H·y = b` by forward substitution and returns `x = V·y`.
pub fn solve_integer(a: &[Vec<BigInt>], b: &[BigInt], width: usize) -> Option<Vec<BigInt>> {
    let m = a.len();
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut v: Vec<Vec<BigInt>> =
        (0..width).map(|i| (0..width).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    // pivot column of each row, if any
    let mut pivots: Vec<Option<usize>> = vec![None; m];
    let mut pc = 0;
    for r in 0..m {
        if pc == width {
            break;
        }
        for j in pc + 1..width {
            if h[r][j].is_zero() {
                continue;
            }
            if h[r][pc].is_zero() {
                swap_columns(&mut h, &mut v, pc, j);
                continue;
            }
            let (x, y) = (h[r][pc].clone(), h[r][j].clone());
            let e = x.extended_gcd(&y);
            // [col_pc, col_j] ← [s·col_pc + t·col_j, −(y/g)·col_pc + (x/g)·col_j], determinant 1
            let (s, t) = (e.x, e.y);
            let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
            for row in h.iter_mut().chain(v.iter_mut()) {
                let (cp, cj) = (row[pc].clone(), row[j].clone());
                row[pc] = &s * &cp + &t * &cj;
                row[j] = &xg * &cj - &yg * &cp;
            }
        }
        if !h[r][pc].is_zero() {
            pivots[r] = Some(pc);
            pc += 1;
        }
    }
    let mut y = vec![BigInt::zero(); width];
    for r in 0..m {
        let mut residual = b[r].clone();
        for (c, yc) in y.iter().enumerate() {
            if !yc.is_zero() && !h[r][c].is_zero() {
                residual -= &h[r][c] * yc;
            }
        }
        match pivots[r] {
            Some(c) => {
                let (q, rem) = residual.div_rem(&h[r][c]);
                if !rem.is_zero() {
                    return None;
                }
                y[c] = q;
            }
            None if !residual.is_zero() => return None,
            None => {}
        }
    }
    Some(v.iter().map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum()).collect())
}

fn swap_columns(h: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in h.iter_mut().chain(v.iter_mut()) {
        row.swap(i, j);
    }
}
