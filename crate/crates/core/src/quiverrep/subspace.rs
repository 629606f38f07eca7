//! Brute-force stability over a small field: search every tuple of
//! subspaces `W_i ⊆ U_i` for one that destabilizes the point.
//!
//! Exponential in the dimensions; this is a cross-check for
//! [`QuiverRep::is_stable`], not a replacement.

use super::QuiverRep;
use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, FieldSpec};

/// Every subspace of `F_p^n`, each as an `n x k` basis matrix, enumerated
/// through reduced row echelon forms.
pub fn subspaces(field: FieldSpec, n: usize) -> Vec<ExactMatrix> {
    let p = field.p();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let k = pivots.len();
        // free slots: (row, col) right of the row's pivot and not a pivot column
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                (pc + 1..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let count = p.pow(free.len() as u32);
        for code in 0..count {
            let mut rref = ExactMatrix::zeros(field, k, n);
            for (r, &pc) in pivots.iter().enumerate() {
                rref.set(r, pc, 1);
            }
            let mut rest = code;
            for &(r, c) in &free {
                rref.set(r, c, rest % p);
                rest /= p;
            }
            out.push(rref.transpose());
        }
    }
    out
}

/// Stability by the subspace criterion: there is no nonzero tuple
/// `W_1, ..., W_(t-1)` with `A_i W_i ⊆ W_(i+1)`, `B_i W_(i+1) ⊆ W_i` for
/// `i <= t-2` and `A_(t-1) W_(t-1) = 0`.
///
/// `budget` bounds the number of subspace tuples examined.
pub fn is_stable_by_subspaces(z: &QuiverRep, budget: u64) -> Result<bool> {
    let t = z.dims().len();
    if t < 2 {
        return Ok(true);
    }
    let field = z.field();
    let lattices: Vec<Vec<ExactMatrix>> = z.dims().dims()[..t - 1]
        .iter()
        .map(|&n| subspaces(field, n))
        .collect();
    let size: u128 = lattices.iter().map(|l| l.len() as u128).product();
    if size > u128::from(budget) {
        return Err(Error::BudgetExceeded { size, budget });
    }

    let contains = |big: &ExactMatrix, small: &ExactMatrix| -> Result<bool> {
        if small.cols() == 0 {
            return Ok(true);
        }
        big.column_space_contains(small)
    };

    let mut idx = vec![0usize; t - 1];
    loop {
        let ws: Vec<&ExactMatrix> = idx.iter().zip(&lattices).map(|(&i, l)| &l[i]).collect();
        if ws.iter().any(|w| w.cols() > 0) {
            let mut destabilizing = z.a(t - 1).mul(ws[t - 2])?.is_zero();
            for i in 1..t - 1 {
                if !destabilizing {
                    break;
                }
                destabilizing = contains(ws[i], &z.a(i).mul(ws[i - 1])?)?
                    && contains(ws[i - 1], &z.b(i).mul(ws[i])?)?;
            }
            if destabilizing {
                return Ok(false);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(true);
            }
            idx[k] += 1;
            if idx[k] < lattices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
