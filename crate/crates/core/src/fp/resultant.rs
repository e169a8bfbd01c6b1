//! Sylvester resultants over `F_p` and over the integers.

use super::field::Fp;
use super::upoly::UPoly;
use crate::arith::bareiss_det;
use num_bigint::BigInt;
use num_traits::Zero;

/// Sylvester matrix of coefficient lists (increasing degree) with formal degrees `m` and `n`.
fn sylvester<T: Clone>(a: &[T], m: usize, b: &[T], n: usize, zero: T) -> Vec<Vec<T>> {
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    let coeff = |c: &[T], k: usize| c.get(k).cloned().unwrap_or_else(|| zero.clone());
    for i in 0..n {
        let mut r = vec![zero.clone(); size];
        for k in 0..=m {
            r[i + k] = coeff(a, m - k);
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![zero.clone(); size];
        for k in 0..=n {
            r[i + k] = coeff(b, n - k);
        }
        rows.push(r);
    }
    rows
}

/// Resultant over `F_p` using the actual degrees.
pub fn resultant(f: &Fp, a: &UPoly, b: &UPoly) -> u64 {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else { return 0 };
    if m + n == 0 {
        return 1;
    }
    let mut mat = sylvester(&a.c, m, &b.c, n, 0u64);
    det_mod(f, &mut mat)
}

fn det_mod(f: &Fp, a: &mut [Vec<u64>]) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if piv != k {
            a.swap(piv, k);
            det = f.neg(det);
        }
        det = f.mul(det, a[k][k]);
        let inv = f.inv(a[k][k]);
        for i in k + 1..n {
            if a[i][k] == 0 {
                continue;
            }
            let factor = f.mul(a[i][k], inv);
            for j in k..n {
                let t = f.mul(factor, a[k][j]);
                a[i][j] = f.sub(a[i][j], t);
            }
        }
    }
    det
}

/// Integer resultant with formal degrees `m = len(a)-1`, `n = len(b)-1`.
pub fn resultant_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len().saturating_sub(1);
    let n = b.len().saturating_sub(1);
    if m + n == 0 {
        return BigInt::from(1);
    }
    bareiss_det(&sylvester(a, m, b, n, BigInt::zero()))
}
