//! Ad-hoc reduction: shrink coefficients by unimodular changes of variables.
//!
//! A first proposal comes from [`balanced_lll`] and is kept only if it lowers the sum
//! of squared coefficients. Then greedy descent on that norm. The moves are the elementary
//! shears `x_j ↦ x_j + k·x_i`; for each pair `(i, j)` and sign the step length `k` is
//! found by a doubling line search starting at `±1`. Permutations and sign changes of
//! variables do not change the norm, so they are not part of the move set.

use crate::balance::balanced_lll;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;

/// Upper bound on descent rounds; each round strictly lowers the norm.
const MAX_ROUNDS: usize = 100_000;

fn shear(n: usize, i: usize, j: usize, k: &BigInt) -> IntMatrix {
    let mut t = IntMatrix::identity(n);
    t.set(i, j, k.clone());
    t
}

/// The best shear `x_j ↦ x_j + k x_i` along one direction, if it lowers the norm.
fn line_search(f: &Form, i: usize, j: usize, sign: i64, base: &BigInt) -> Result<Option<(BigInt, Form, BigInt)>> {
    let n = f.nvars();
    let mut best: Option<(BigInt, Form, BigInt)> = None;
    let mut k = BigInt::from(sign);
    loop {
        let g = f.substitute(&shear(n, i, j, &k))?;
        let norm = g.norm_sq();
        let current = best.as_ref().map(|b| &b.2).unwrap_or(base);
        if norm >= *current {
            break;
        }
        best = Some((k.clone(), g, norm));
        k *= 2;
    }
    // Refine between the last improving length and its double.
    if let Some((k0, _, _)) = best.clone() {
        let mut lo = k0.clone();
        let mut step = &k0 / 2;
        while step != BigInt::from(0) {
            let cand = &lo + &step;
            let g = f.substitute(&shear(n, i, j, &cand))?;
            let norm = g.norm_sq();
            if norm < best.as_ref().unwrap().2 {
                best = Some((cand.clone(), g, norm));
                lo = cand;
            }
            step /= 2;
        }
    }
    Ok(best)
}

/// Reduce `F` by greedy shears. Returns the reduced form and unimodular `T` with
/// `output = F(x·T)`.
pub fn adhoc_reduce(f: &Form) -> Result<(Form, IntMatrix)> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = f.nvars();
    let mut g = f.clone();
    let mut t = IntMatrix::identity(n);
    let mut norm = g.norm_sq();
    if let Some(u) = balanced_lll(&g) {
        let h = g.substitute(&u)?;
        let hn = h.norm_sq();
        if hn < norm {
            g = h;
            t = u;
            norm = hn;
        }
    }
    for _ in 0..MAX_ROUNDS {
        let mut best: Option<(usize, usize, BigInt, Form, BigInt)> = None;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for sign in [1i64, -1] {
                    let base = best.as_ref().map(|b| b.4.clone()).unwrap_or_else(|| norm.clone());
                    if let Some((k, h, hn)) = line_search(&g, i, j, sign, &base)? {
                        best = Some((i, j, k, h, hn));
                    }
                }
            }
        }
        let Some((i, j, k, h, hn)) = best else { break };
        t = &shear(n, i, j, &k) * &t;
        g = h;
        norm = hn;
    }
    Ok((g, t))
}
