//! Sublattices of `Z^n` of a given `p`-power elementary divisor type.
//!
//! A step `F ↦ p^{-e} F(x·M)` depends only on the row lattice `Z^n·M`, so each lattice
//! is represented once, by its row Hermite normal form: upper triangular, diagonal
//! `p^{a_j}`, and entries above the diagonal reduced modulo the diagonal entry of their
//! column.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Default bound on the number of Hermite normal forms visited per weight.
pub const DEFAULT_LATTICE_CAP: u64 = 1_000_000;

fn det_i128(rows: &[Vec<i128>]) -> i128 {
    // Bareiss fraction-free elimination.
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m = rows.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn val_i128(mut a: i128, p: u64) -> Option<u32> {
    if a == 0 {
        return None;
    }
    let p = p as i128;
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    Some(v)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exponents of the `p`-parts of the elementary divisors, ascending, from the
/// determinantal divisors. `None` if the matrix is singular.
pub fn smith_exponents(m: &[Vec<i128>], p: u64) -> Option<Vec<u32>> {
    let n = m.len();
    let mut divisors = vec![0u32];
    for k in 1..=n {
        let mut best: Option<u32> = None;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i128>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect();
                if let Some(v) = val_i128(det_i128(&minor), p) {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        divisors.push(best?);
    }
    Some(divisors.windows(2).map(|w| w[1] - w[0]).collect())
}

fn inverse_mod(a: i128, m: i128) -> i128 {
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m)
}

/// Same as [`smith_exponents`] for a matrix whose determinant has valuation `total`,
/// by elimination modulo `p^{total+1}`. `None` if that modulus does not fit.
fn smith_exponents_local(m: &[Vec<i128>], p: u64, total: u32) -> Option<Vec<u32>> {
    let p = p as i128;
    let modulus = p.checked_pow(total + 1).filter(|&q| q < 1 << 62)?;
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(modulus)).collect()).collect();
    let mut out = Vec::with_capacity(a.len());
    while !a.is_empty() {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let v = val_i128(x, p as u64).unwrap_or(0);
                if best.is_none_or(|b| v < b.0) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, pi, pj) = best?;
        let pv = p.pow(v);
        let inv = inverse_mod(a[pi][pj] / pv, modulus);
        let pivot = a.remove(pi);
        for row in a.iter_mut() {
            let c = (row[pj] / pv) * inv % modulus;
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = (*x - c * y).rem_euclid(modulus);
            }
            row.remove(pj);
        }
        out.push(v);
    }
    out.sort_unstable();
    Some(out)
}

/// Compositions of `total` into `n` parts, each at most `max`, in lexicographic order.
fn diagonals(n: usize, total: u32, max: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, n: usize, left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == n {
            if left <= max {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for a in 0..=left.min(max) {
            cur.push(a);
            rec(k + 1, n, left - a, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, total, max, &mut Vec::new(), &mut out);
    out
}

/// Number of Hermite normal forms that [`lattices_of_type`] visits.
pub fn candidate_count(w: &[u32], p: u64) -> u64 {
    let n = w.len();
    let total: u32 = w.iter().sum();
    let max = w.iter().copied().max().unwrap_or(0);
    diagonals(n, total, max)
        .iter()
        .map(|a| {
            a.iter()
                .enumerate()
                .fold(1u64, |acc, (j, &aj)| acc.saturating_mul((p as u64).saturating_pow(aj * j as u32)))
        })
        .fold(0u64, |a, b| a.saturating_add(b))
}

/// All row-HNF matrices whose lattice has elementary divisors `p^{w_i}` (in any order),
/// in a deterministic order: by diagonal exponents, then entries row by row.
///
/// Fails with a resource error when more than `cap` candidates would be visited.
pub fn lattices_of_type(w: &[u32], p: u64, cap: u64) -> Result<Vec<IntMatrix>> {
    let n = w.len();
    let count = candidate_count(w, p);
    if count > cap {
        return Err(Error::ResourceCap(format!("{count} lattices for weight {w:?} at p = {p} exceed the cap {cap}")));
    }
    let mut target = w.to_vec();
    target.sort_unstable();
    let total: u32 = w.iter().sum();
    let max = w.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    for a in diagonals(n, total, max) {
        let diag: Vec<i128> = a.iter().map(|&e| (p as i128).pow(e)).collect();
        // Free positions (i, j) with i < j, each ranging over [0, diag[j]).
        let free: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut m: Vec<Vec<i128>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
        'odometer: loop {
            let smith = smith_exponents_local(&m, p, total).or_else(|| smith_exponents(&m, p));
            if smith.as_deref() == Some(target.as_slice()) {
                let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
                out.push(IntMatrix::from_i64(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>()));
            }
            // Advance the free entries, last position fastest.
            for &(i, j) in free.iter().rev() {
                m[i][j] += 1;
                if m[i][j] < diag[j] {
                    continue 'odometer;
                }
                m[i][j] = 0;
            }
            break;
        }
    }
    Ok(out)
}
