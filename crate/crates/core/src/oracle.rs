//! Brute-force minimization over all lattices of every weight type.
//!
//! Slow and only practical for small `p`, but independent of the geometric case
//! analysis of the fast minimizers, which makes it the reference they are tested against.

use crate::error::{Error, Result};
use crate::form::Form;
use crate::lattice::{lattices_of_type, DEFAULT_LATTICE_CAP};
use crate::matrix::IntMatrix;
use crate::record::{Minimized, Step, TransformRecord};
use crate::weights::minimal_complete_set;
use rayon::prelude::*;

pub const DEFAULT_STEP_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOptions {
    /// Weights to try; the minimal complete set when `None`.
    pub weights: Option<Vec<Vec<u32>>>,
    /// Largest number of lattices visited per weight.
    pub max_lattices: u64,
    pub step_cap: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { weights: None, max_lattices: DEFAULT_LATTICE_CAP, step_cap: DEFAULT_STEP_CAP }
    }
}

/// Try `F ↦ p^{-e} F(x·M)` for `M` one of the lattices of weight type `w`.
fn try_matrix(f: &Form, m: &IntMatrix, w: &[u32], p: u64) -> Result<Option<Step>> {
    let g = f.substitute(m)?;
    let e = g.valuation(p).finite().ok_or(Error::ZeroForm)?;
    let n1 = f.nvars() as u64;
    let sigma: u64 = w.iter().map(|&x| x as u64).sum();
    if n1 * e > f.degree() as u64 * sigma {
        return Ok(Some(Step { form: g.div_pow(p, e), matrix: m.clone(), e }));
    }
    Ok(None)
}

/// The first successful step over the weights (by `Σw`) and their lattices (in
/// enumeration order), or `None` if `F` is minimal at `p`.
pub fn oracle_one_step(f: &Form, p: u64, opts: &OracleOptions) -> Result<Option<Step>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = f.nvars();
    if n < 2 {
        return Err(Error::DimensionMismatch("at least two variables required".into()));
    }
    let mut weights = match &opts.weights {
        Some(ws) => ws.clone(),
        None => minimal_complete_set(n - 1, f.degree())?.weights,
    };
    if let Some(w) = weights.iter().find(|w| w.len() != n) {
        return Err(Error::DimensionMismatch(format!("weight {w:?} for {n} variables")));
    }
    weights.sort_by_key(|w| (w.iter().map(|&x| x as u64).sum::<u64>(), w.clone()));
    for w in weights.iter().filter(|w| w.iter().any(|&x| x > 0)) {
        let lattices = lattices_of_type(w, p, opts.max_lattices)?;
        let found = lattices.par_iter().map(|m| try_matrix(f, m, w, p)).find_first(|r| !matches!(r, Ok(None)));
        if let Some(r) = found {
            return r;
        }
    }
    Ok(None)
}

/// Remove the `p`-part of the content, then repeat [`oracle_one_step`].
pub fn oracle_minimize(f: &Form, p: u64, opts: &OracleOptions) -> Result<Minimized> {
    let e0 = f.valuation(p).finite().ok_or(Error::ZeroForm)?;
    let mut g = f.div_pow(p, e0);
    let mut record = TransformRecord::identity(f.nvars(), p);
    record.scale_exp = e0;
    while let Some(step) = oracle_one_step(&g, p, opts)? {
        if record.steps >= opts.step_cap {
            return Err(Error::NotSemistable(format!("still minimizing after {} steps at p = {p}", opts.step_cap)));
        }
        record.push(&step.matrix, step.e);
        g = step.form;
    }
    Ok(Minimized { form: g, record })
}

/// Whether some `T` invertible mod `p` makes `(T, w)` a minimizing step, by running
/// over representatives of `T` directly.
///
/// Row `i` of `T` only matters modulo `p^{max(w) - w_i}`, and modulo `p` at least so that
/// the reduction of `T` can be checked for invertibility. This is the coset formulation
/// the lattice enumeration replaces; it is kept for cross-checks on tiny cases.
pub fn coset_unstable(f: &Form, w: &[u32], p: u64) -> Result<bool> {
    let n = f.nvars();
    if w.len() != n {
        return Err(Error::DimensionMismatch(format!("weight {w:?} for {n} variables")));
    }
    let max = w.iter().copied().max().unwrap_or(0);
    let moduli: Vec<u64> = w.iter().map(|&wi| p.pow((max - wi).max(1))).collect();
    let counts: Vec<u64> = moduli.iter().map(|&m| m.pow(n as u32)).collect();
    let total = counts.iter().try_fold(1u64, |a, &c| a.checked_mul(c));
    if total.is_none_or(|t| t > 50_000_000) {
        return Err(Error::ResourceCap(format!("coset enumeration for {w:?} at p = {p} is too large")));
    }
    let total = total.unwrap();
    let d = IntMatrix::weight_diagonal(w, p);
    let found = (0..total).into_par_iter().find_any(|&idx| {
        let mut k = idx;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for c in 0..n {
                rows[i][c] = (k % moduli[i]) as i64;
                k /= moduli[i];
            }
        }
        let t = IntMatrix::from_i64(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
        if crate::arith::mod_u64(&t.det(), p) == 0 {
            return false;
        }
        matches!(try_matrix(f, &(&d * &t), w, p), Ok(Some(_)))
    });
    Ok(found.is_some())
}
