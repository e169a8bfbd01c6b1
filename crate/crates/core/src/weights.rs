//! Weight vectors and the combinatorics of instability.
//!
//! A weight `w = (w_0, ..., w_n)` with `0 = w_0 ≤ ... ≤ w_n` gives the profile
//! `f_w(i) = max(0, ⌊⟨v_i, w⟩/(n+1)⌋ + 1)` over monomials `x^i` of degree `d`, where
//! `v_i = d·(1,...,1) - (n+1)·i`. A form is unstable for `(E, w)` exactly when every
//! coefficient `a_i` has `v_p(a_i) ≥ f_w(i)`.

use crate::error::{Error, Result};
use crate::form::monomials;
use num_integer::Integer;
use rayon::prelude::*;

/// Default cap on the number of weight vectors enumerated.
pub const DEFAULT_CANDIDATE_CAP: usize = 5_000_000;

/// `0 = w_0 ≤ w_1 ≤ ... ≤ w_n`.
pub fn is_normalized(w: &[u32]) -> bool {
    w.first() == Some(&0) && w.windows(2).all(|p| p[0] <= p[1])
}

pub fn is_primitive(w: &[u32]) -> bool {
    w.iter().fold(0u32, |g, &x| g.gcd(&x)) == 1
}

/// The profile `f_w` listed in the order of [`monomials`]`(n+1, d)`.
pub fn fw_profile(w: &[u32], d: u32) -> Vec<u32> {
    let mons = monomials(w.len(), d);
    profile_on(w, d, &mons)
}

fn profile_on(w: &[u32], d: u32, mons: &[Vec<u32>]) -> Vec<u32> {
    let n1 = w.len() as i64;
    let sw: i64 = w.iter().map(|&x| x as i64).sum();
    mons.iter()
        .map(|i| {
            let iw: i64 = i.iter().zip(w).map(|(&a, &b)| a as i64 * b as i64).sum();
            let vw = d as i64 * sw - n1 * iw;
            (Integer::div_floor(&vw, &n1) + 1).max(0) as u32
        })
        .collect()
}

/// Whether `w` dominates `w2`: `f_w ≤ f_{w2}` pointwise (instability for `w2` implies it for `w`).
pub fn dominates(w: &[u32], w2: &[u32], d: u32) -> bool {
    fw_profile(w, d).iter().zip(fw_profile(w2, d)).all(|(a, b)| *a <= b)
}

/// Bound on the largest entry of weights in a minimal complete set.
pub fn weight_bound(n: usize, d: u32) -> u64 {
    match n {
        1 => 1,
        2 => d as u64,
        _ => {
            let g = (d as u64).gcd(&(n as u64 + 1));
            2 * n as u64 * (d as u64 / g) * (d as u64).pow(n as u32 - 2)
        }
    }
}

/// Result of [`minimal_complete_set`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSet {
    pub weights: Vec<Vec<u32>>,
    /// Whether distinct weights with identical profiles were met (only possible for `d ≤ n`);
    /// the lexicographically smallest representative is kept.
    pub ties: bool,
}

fn enumerate_weights(n: usize, bound: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n + 1];
    fn rec(k: usize, n: usize, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cap: usize) -> Result<()> {
        if k > n {
            if is_primitive(cur) {
                if out.len() >= cap {
                    return Err(Error::ResourceCap(format!("more than {cap} candidate weights")));
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        for v in cur[k - 1]..=bound {
            cur[k] = v;
            rec(k + 1, n, bound, cur, out, cap)?;
        }
        Ok(())
    }
    rec(1, n, bound, &mut cur, &mut out, cap)?;
    Ok(out)
}

/// Sort key: ascending `Σw`, then lexicographic.
fn order_key(w: &[u32]) -> (u64, Vec<u32>) {
    (w.iter().map(|&x| x as u64).sum(), w.to_vec())
}

/// Remove dominated weights from `cands` (already in processing order).
pub fn minimize_weight_set(cands: Vec<Vec<u32>>, d: u32) -> MinimalSet {
    if cands.is_empty() {
        return MinimalSet { weights: vec![], ties: false };
    }
    let mons = monomials(cands[0].len(), d);
    let profiles: Vec<Vec<u32>> = cands.par_iter().map(|w| profile_on(w, d, &mons)).collect();
    let mut alive: Vec<usize> = (0..cands.len()).collect();
    let mut removed = vec![false; cands.len()];
    let mut ties = false;
    let mut pos = 0;
    while pos < cands.len() {
        let i = pos;
        pos += 1;
        if removed[i] {
            continue;
        }
        let pi = &profiles[i];
        let dominated: Vec<(usize, bool)> = alive
            .par_iter()
            .filter(|&&j| j != i)
            .filter_map(|&j| {
                let pj = &profiles[j];
                pi.iter().zip(pj).all(|(a, b)| a <= b).then(|| (j, pi == pj))
            })
            .collect();
        if dominated.is_empty() {
            continue;
        }
        for (j, tie) in dominated {
            removed[j] = true;
            ties |= tie;
        }
        alive.retain(|&j| !removed[j]);
    }
    let weights = alive.into_iter().map(|j| cands[j].clone()).collect();
    MinimalSet { weights, ties }
}

/// A minimal complete set of primitive normalized weights for forms of degree `d` in
/// `n+1` variables, sorted by `Σw` then lexicographically.
///
/// For `n = 1` this is `{[0,0], [0,1]}`. The zero weight (content) is otherwise excluded.
pub fn minimal_complete_set(n: usize, d: u32) -> Result<MinimalSet> {
    minimal_complete_set_capped(n, d, DEFAULT_CANDIDATE_CAP)
}

/// All primitive normalized weights with entries up to [`weight_bound`], before any
/// dominance pruning, in processing order.
pub fn candidate_weights(n: usize, d: u32) -> Result<Vec<Vec<u32>>> {
    if n == 0 || d == 0 {
        return Err(Error::ContractViolation("need n ≥ 1 and d ≥ 1".into()));
    }
    let bound = weight_bound(n, d);
    if bound > u32::MAX as u64 {
        return Err(Error::ResourceCap("weight bound too large".into()));
    }
    let mut cands = enumerate_weights(n, bound as u32, DEFAULT_CANDIDATE_CAP)?;
    cands.sort_by_key(|w| order_key(w));
    Ok(cands)
}

pub fn minimal_complete_set_capped(n: usize, d: u32, cap: usize) -> Result<MinimalSet> {
    if n == 0 || d == 0 {
        return Err(Error::ContractViolation("need n ≥ 1 and d ≥ 1".into()));
    }
    if n == 1 {
        return Ok(MinimalSet { weights: vec![vec![0, 0], vec![0, 1]], ties: false });
    }
    let bound = weight_bound(n, d);
    if bound > u32::MAX as u64 {
        return Err(Error::ResourceCap("weight bound too large".into()));
    }
    let mut cands = enumerate_weights(n, bound as u32, cap)?;
    cands.sort_by_key(|w| order_key(w));
    let mut set = minimize_weight_set(cands, d);
    set.weights.sort_by_key(|w| order_key(w));
    Ok(set)
}

/// Complete set for plane curves from the Stern–Brocot tree: every reduced fraction
/// `a/b` (including `0/1` and `1/0`) with `a + b ≤ d` gives the weight `[0, b, a+b]`.
pub fn n2_complete_set(d: u32) -> Vec<Vec<u32>> {
    fn rec(l: (u32, u32), r: (u32, u32), d: u32, out: &mut Vec<(u32, u32)>) {
        let m = (l.0 + r.0, l.1 + r.1);
        if m.0 + m.1 > d {
            return;
        }
        rec(l, m, d, out);
        out.push(m);
        rec(m, r, d, out);
    }
    let mut fr = vec![(0, 1)];
    if d >= 1 {
        rec((0, 1), (1, 0), d, &mut fr);
    }
    fr.push((1, 0));
    let mut out: Vec<Vec<u32>> = fr.into_iter().map(|(a, b)| vec![0, b, a + b]).collect();
    out.sort_by_key(|w| order_key(w));
    out
}

/// Multiplicities `m_k` (`k = 0..n-1`) of the flag attached to an unstable pair: `m_k = 0`
/// if `(n+1)w_k > Σw`, otherwise `⌊d(Σw - (n+1)w_k) / ((n+1)(w_n - w_k))⌋ + 1`.
pub fn flag_multiplicities(w: &[u32], d: u32) -> Result<Vec<u32>> {
    if !is_normalized(w) || w.iter().all(|&x| x == 0) {
        return Err(Error::ContractViolation("normalized nonzero weight expected".into()));
    }
    let n = w.len() - 1;
    let n1 = (n + 1) as u64;
    let sw: u64 = w.iter().map(|&x| x as u64).sum();
    let wn = w[n] as u64;
    Ok((0..n)
        .map(|k| {
            let wk = w[k] as u64;
            if n1 * wk > sw {
                0
            } else {
                (d as u64 * (sw - n1 * wk) / (n1 * (wn - wk)) + 1) as u32
            }
        })
        .collect())
}

/// Largest entry among the weights of the minimal complete set for plane curves.
pub fn largest_entry_n2(d: u32) -> Result<u32> {
    let s = minimal_complete_set(2, d)?;
    Ok(s.weights.iter().map(|w| w[2]).max().unwrap_or(0))
}
