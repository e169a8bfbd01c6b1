//! Rational points of zero-dimensional systems.

use super::groebner::groebner_basis;
use super::mpoly::{MPoly, MonomialOrder};
use super::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroDimSolution {
    /// All `F_p`-rational solutions, sorted lexicographically.
    Points(Vec<Vec<u64>>),
    /// The variety has positive dimension; the lex basis is returned for inspection.
    PositiveDimensional(Vec<MPoly>),
}

fn is_zero_dimensional(basis: &[MPoly], nvars: usize) -> bool {
    (0..nvars).all(|i| {
        basis.iter().any(|g| {
            let (e, _) = g.leading(MonomialOrder::Lex).unwrap();
            e[i] > 0 && e.iter().enumerate().all(|(j, &k)| j == i || k == 0)
        })
    })
}

/// Solve a polynomial system over `F_p`.
///
/// A lex basis is computed; the last variable is eliminated first, and each root is
/// substituted back before recursing on the remaining variables.
pub fn solve_zero_dim(polys: &[MPoly], nvars: usize) -> ZeroDimSolution {
    let gens: Vec<MPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if gens.is_empty() {
        if nvars == 0 {
            return ZeroDimSolution::Points(vec![vec![]]);
        }
        return ZeroDimSolution::PositiveDimensional(vec![]);
    }
    let basis = groebner_basis(&gens, MonomialOrder::Lex);
    if basis.iter().any(|g| g.is_constant()) {
        return ZeroDimSolution::Points(vec![]);
    }
    if !is_zero_dimensional(&basis, nvars) {
        return ZeroDimSolution::PositiveDimensional(basis);
    }
    let mut out = Vec::new();
    back_substitute(&basis, nvars, &mut out);
    for pt in &mut out {
        debug_assert_eq!(pt.len(), nvars);
    }
    out.sort();
    out.dedup();
    ZeroDimSolution::Points(out)
}

fn back_substitute(basis: &[MPoly], nvars: usize, out: &mut Vec<Vec<u64>>) {
    if nvars == 0 {
        if basis.iter().all(|g| g.is_zero()) {
            out.push(vec![]);
        }
        return;
    }
    let Some(first) = basis.first() else { return };
    let f = first.field;
    let last = nvars - 1;
    let mut elim = UPoly::zero();
    for g in basis {
        if let Some(u) = g.to_upoly(last) {
            elim = elim.gcd(&f, &u);
        }
    }
    if elim.is_zero() {
        return;
    }
    for r in elim.roots(&f) {
        let reduced: Vec<MPoly> =
            basis.iter().map(|g| g.substitute_value(last, r).drop_var(last)).filter(|g| !g.is_zero()).collect();
        if reduced.iter().any(|g| g.is_constant()) {
            continue;
        }
        let sub_basis = if reduced.is_empty() { vec![] } else { groebner_basis(&reduced, MonomialOrder::Lex) };
        if sub_basis.iter().any(|g| g.is_constant()) {
            continue;
        }
        let mut partial = Vec::new();
        back_substitute(&sub_basis, nvars - 1, &mut partial);
        for mut pt in partial {
            pt.push(r);
            out.push(pt);
        }
    }
}
