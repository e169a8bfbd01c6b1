//! Geometry of reductions modulo `p`: linear factors, points of high multiplicity,
//! singular loci of cubic surfaces, and unimodular coordinate changes that move
//! `F_p`-rational subspaces into coordinate position.

use crate::arith::{mod_u64, pow_u64};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::fp::linalg::{nullspace, rref};
use crate::fp::{groebner_basis, solve_zero_dim, Fp, MPoly, MonomialOrder, UPoly, ZeroDimSolution};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A point of projective space over `F_p`, scaled so its first nonzero coordinate is 1.
pub type ProjPoint = Vec<u64>;

/// A linear form over `F_p` (first nonzero coefficient 1) with its multiplicity as a factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFactor {
    pub coeffs: Vec<u64>,
    pub multiplicity: u32,
}

impl LinearFactor {
    pub fn as_poly(&self, f: Fp) -> MPoly {
        MPoly::linear(f, &self.coeffs)
    }

    pub fn eval(&self, f: &Fp, pt: &[u64]) -> u64 {
        self.coeffs.iter().zip(pt).fold(0, |acc, (a, b)| f.add(acc, f.mul(*a, *b)))
    }
}

pub fn normalize(f: &Fp, v: &[u64]) -> Option<Vec<u64>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead);
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

/// Linear factors of a binary form over `F_p`, sorted by coefficient vector.
pub fn binary_form_linear_factors(g: &MPoly) -> Result<Vec<LinearFactor>> {
    if g.nvars != 2 {
        return Err(Error::DimensionMismatch("binary form expected".into()));
    }
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    let f = g.field;
    let c = g.binary_coeffs();
    let d = c.len() - 1;
    let mut out = Vec::new();
    // f(t, 1) = Σ c_j t^j; the factor x1 accounts for the drop in degree.
    let u = UPoly::new(c.clone());
    let top = u.degree().unwrap_or(0);
    if top < d {
        out.push(LinearFactor { coeffs: vec![0, 1], multiplicity: (d - top) as u32 });
    }
    for (r, m) in u.roots_with_multiplicity(&f) {
        out.push(LinearFactor { coeffs: vec![1, f.neg(r)], multiplicity: m });
    }
    out.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    Ok(out)
}

/// Distinct linear factors of a homogeneous polynomial, by restriction to `x_last = 0`.
fn distinct_linear_factors(g: &MPoly) -> Result<Vec<Vec<u64>>> {
    let n = g.nvars;
    let f = g.field;
    if n == 2 {
        return Ok(binary_form_linear_factors(g)?.into_iter().map(|l| l.coeffs).collect());
    }
    let last = n - 1;
    let mut out = Vec::new();
    let xl = MPoly::var(f, n, last);
    let mut h = g.clone();
    if g.substitute_value(last, 0).is_zero() {
        let mut e = vec![0; n];
        e[last] = 1;
        out.push(e);
        while let Some(q) = h.div_exact(&xl) {
            h = q;
        }
    }
    if h.total_degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let restricted = h.substitute_value(last, 0).drop_var(last);
    for l in distinct_linear_factors(&restricted)? {
        let k = l.iter().position(|&v| v != 0).expect("normalized");
        // Substitute x_k = -(Σ_{i≠k} l_i x_i + c x_last) with c an extra variable.
        let hh = h.insert_var(n);
        let mut lin = MPoly::zero(f, n + 1);
        for (i, &li) in l.iter().enumerate() {
            if i != k && li != 0 {
                let mut e = vec![0; n + 1];
                e[i] = 1;
                lin = lin.add(&MPoly::monomial(f, e, f.neg(li)));
            }
        }
        let mut e = vec![0; n + 1];
        e[last] = 1;
        e[n] = 1;
        lin = lin.add(&MPoly::monomial(f, e, f.neg(1)));
        let sub = hh.substitute_poly(k, &lin);
        // Group by x-monomial; each coefficient is a polynomial in c.
        let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<u64>> = Default::default();
        for (e, &v) in &sub.terms {
            let key = e[..n].to_vec();
            let deg = e[n] as usize;
            let entry = groups.entry(key).or_default();
            if entry.len() <= deg {
                entry.resize(deg + 1, 0);
            }
            entry[deg] = v;
        }
        let mut gc = UPoly::zero();
        for coeffs in groups.values() {
            gc = gc.gcd(&f, &UPoly::new(coeffs.clone()));
        }
        if gc.is_zero() {
            return Err(Error::ContractViolation("degenerate linear factor search".into()));
        }
        for c in gc.roots(&f) {
            let mut v = l.clone();
            v.push(c);
            out.push(v);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Linear factors over `F_p` with multiplicities, and the cofactor with none left.
pub fn linear_factors(g: &MPoly) -> Result<(Vec<LinearFactor>, MPoly)> {
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    let f = g.field;
    let mut cof = g.clone();
    let mut out = Vec::new();
    for l in distinct_linear_factors(g)? {
        let lp = MPoly::linear(f, &l);
        let mut m = 0;
        while let Some(q) = cof.div_exact(&lp) {
            cof = q;
            m += 1;
        }
        debug_assert!(m > 0);
        out.push(LinearFactor { coeffs: l, multiplicity: m });
    }
    Ok((out, cof))
}

/// Rational zeros of homogeneous polynomials, chart by chart. `Err(())` if some chart is
/// positive dimensional.
pub fn projective_zeros(polys: &[MPoly], n: usize) -> std::result::Result<Vec<ProjPoint>, ()> {
    let mut out = Vec::new();
    for j in 0..n {
        let chart: Vec<MPoly> = polys
            .iter()
            .map(|g| {
                let mut h = g.clone();
                for i in 0..j {
                    h = h.substitute_value(i, 0);
                }
                h = h.substitute_value(j, 1);
                for i in (0..=j).rev() {
                    h = h.drop_var(i);
                }
                h
            })
            .collect();
        match solve_zero_dim(&chart, n - j - 1) {
            ZeroDimSolution::Points(pts) => {
                for pt in pts {
                    let mut v = vec![0u64; j];
                    v.push(1);
                    v.extend(pt);
                    out.push(v);
                }
            }
            ZeroDimSolution::PositiveDimensional(_) => return Err(()),
        }
    }
    Ok(out)
}

fn multi_indices(n: usize, k: u32) -> Vec<Vec<u32>> {
    crate::form::monomials(n, k)
}

/// Conditions for a point to have multiplicity at least `m+1`: all divided partials of order ≤ m.
fn multiplicity_conditions(g: &MPoly, m: u32) -> Vec<MPoly> {
    let mut polys = Vec::new();
    for k in 0..=m {
        for a in multi_indices(g.nvars, k) {
            let d = g.divided_derivative(&a);
            if !d.is_zero() {
                polys.push(d);
            }
        }
    }
    polys
}

/// Multiplicity of a rational point on `g = 0` (0 if the point is off the curve).
pub fn point_multiplicity(g: &MPoly, pt: &[u64]) -> u32 {
    let deg = g.total_degree().unwrap_or(0);
    for k in 0..=deg {
        for a in multi_indices(g.nvars, k) {
            if g.divided_derivative(&a).eval(pt) != 0 {
                return k;
            }
        }
    }
    deg + 1
}

/// The unique `F_p`-point of multiplicity at least `m+1` on `g = 0`, if any.
///
/// Fails when the locus of such points is not finite (e.g. a multiple component) or
/// holds more than one rational point.
pub fn high_multiplicity_point(g: &MPoly, m: u32) -> Result<Option<ProjPoint>> {
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    if m == 0 {
        return Err(Error::ContractViolation("threshold must be positive".into()));
    }
    let deg = g.total_degree().unwrap_or(0);
    if m >= deg {
        return Ok(None);
    }
    let polys = multiplicity_conditions(g, m);
    let pts = projective_zeros(&polys, g.nvars)
        .map_err(|_| Error::ContractViolation("points of high multiplicity form a curve".into()))?;
    match pts.len() {
        0 => Ok(None),
        1 => Ok(pts.into_iter().next()),
        _ => Err(Error::ContractViolation("several points of high multiplicity".into())),
    }
}

/// `F_p`-singular locus of a cubic surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularLocus {
    /// Finitely many rational singular points.
    FinitePoints(Vec<ProjPoint>),
    /// A rational line of singular points, given by two distinct points on it.
    SingularLine(ProjPoint, ProjPoint),
    /// The reduction has an `F_p`-rational linear factor.
    ContainsPlane(Vec<u64>),
}

fn singular_conditions(g: &MPoly) -> Vec<MPoly> {
    let mut polys = vec![g.clone()];
    for i in 0..g.nvars {
        let d = g.partial(i);
        if !d.is_zero() {
            polys.push(d);
        }
    }
    polys
}

/// Whether every point of the line through `a` and `b` satisfies all `polys`.
fn line_in_zero_set(polys: &[MPoly], a: &[u64], b: &[u64]) -> bool {
    let f = polys[0].field;
    let n = a.len();
    // Parametrize as s·a + t·b in two new variables.
    let s = MPoly::var(f, 2, 0);
    let t = MPoly::var(f, 2, 1);
    let coords: Vec<MPoly> = (0..n).map(|i| s.scale(a[i]).add(&t.scale(b[i]))).collect();
    polys.iter().all(|g| {
        let mut acc = MPoly::zero(f, 2);
        for (e, &c) in &g.terms {
            let mut term = MPoly::constant(f, 2, c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&coords[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc.is_zero()
    })
}

const EXHAUSTIVE_SURFACE_LIMIT: u64 = 53;

fn all_points(p: u64, n: usize) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    for j in 0..n {
        let free = n - j - 1;
        let count = p.pow(free as u32);
        for idx in 0..count {
            let mut v = vec![0u64; j];
            v.push(1);
            let mut r = idx;
            let mut tail = vec![0u64; free];
            for slot in tail.iter_mut().rev() {
                *slot = r % p;
                r /= p;
            }
            v.extend(tail);
            out.push(v);
        }
    }
    out
}

/// Rational singular points of a cubic surface found on random plane sections.
fn sampled_singular_points(polys: &[MPoly], f: Fp, seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<ProjPoint> = Vec::new();
    let mut successes = 0;
    for _ in 0..12 {
        if successes >= 3 {
            break;
        }
        let a: Vec<u64> = (0..4).map(|_| rng.gen_range(0..f.p())).collect();
        let Some(k) = a.iter().position(|&x| x != 0) else { continue };
        // x_k = -(Σ_{i≠k} a_i x_i)/a_k, then drop x_k.
        let inv = f.inv(a[k]);
        let coeffs: Vec<u64> = (0..4).map(|i| if i == k { 0 } else { f.neg(f.mul(a[i], inv)) }).collect();
        let lin = MPoly::linear(f, &coeffs);
        let sliced: Vec<MPoly> = polys.iter().map(|g| g.substitute_poly(k, &lin).drop_var(k)).collect();
        let Ok(pts) = projective_zeros(&sliced, 3) else { continue };
        successes += 1;
        for pt in pts {
            let mut full = pt.clone();
            let xk = {
                let mut s = 0u64;
                let mut idx = 0;
                for i in 0..4 {
                    if i == k {
                        continue;
                    }
                    s = f.add(s, f.mul(coeffs[i], pt[idx]));
                    idx += 1;
                }
                s
            };
            full.insert(k, xk);
            if let Some(v) = normalize(&f, &full) {
                if !found.contains(&v) {
                    found.push(v);
                }
            }
        }
    }
    found.sort();
    found
}

/// The rational point where every second-order divided partial vanishes, when it is unique.
pub fn triple_points(g: &MPoly) -> Vec<ProjPoint> {
    let f = g.field;
    let n = g.nvars;
    let mut rows = Vec::new();
    for a in multi_indices(n, 2) {
        let d = g.divided_derivative(&a);
        let mut row = vec![0u64; n];
        for (e, &c) in &d.terms {
            if let Some(i) = e.iter().position(|&k| k == 1) {
                row[i] = c;
            }
        }
        rows.push(row);
    }
    let ker = nullspace(&f, &rows, n);
    if ker.len() == 1 {
        let v = normalize(&f, &ker[0]).unwrap();
        if singular_conditions(g).iter().all(|h| h.eval(&v) == 0) {
            return vec![v];
        }
    }
    vec![]
}

/// Whether the projective hypersurface `g = 0` is smooth over the algebraic closure.
///
/// `g` itself is included with its partials since the Euler relation fails when `p`
/// divides the degree. The locus is empty iff the homogeneous ideal is irrelevant, i.e.
/// a pure power of every variable is a leading monomial of its Gröbner basis.
pub fn is_nonsingular(g: &MPoly) -> bool {
    if g.is_zero() {
        return false;
    }
    let basis = groebner_basis(&singular_conditions(g), MonomialOrder::GrevLex);
    (0..g.nvars).all(|i| {
        basis.iter().any(|b| {
            let (e, _) = b.leading(MonomialOrder::GrevLex).unwrap();
            e.iter().enumerate().all(|(j, &k)| (j == i) == (k > 0))
        })
    })
}

/// Singular locus over `F_p` of the reduction of a cubic surface.
pub fn cubic_surface_singular_locus(g: &MPoly) -> Result<SingularLocus> {
    cubic_surface_singular_locus_seeded(g, crate::seed::seed())
}

pub fn cubic_surface_singular_locus_seeded(g: &MPoly, seed: u64) -> Result<SingularLocus> {
    if g.nvars != 4 || g.total_degree() != Some(3) {
        return Err(Error::DimensionMismatch("cubic surface expected".into()));
    }
    let (factors, _) = linear_factors(g)?;
    if let Some(l) = factors.first() {
        return Ok(SingularLocus::ContainsPlane(l.coeffs.clone()));
    }
    let f = g.field;
    let polys = singular_conditions(g);
    if let Ok(mut pts) = projective_zeros(&polys, 4) {
        pts.sort();
        return Ok(SingularLocus::FinitePoints(pts));
    }
    // Positive-dimensional over the algebraic closure: the rational singular points form
    // either a rational line or a single point where three conjugate planes meet.
    let mut pts = if f.p() <= EXHAUSTIVE_SURFACE_LIMIT {
        all_points(f.p(), 4).into_iter().filter(|pt| polys.iter().all(|h| h.eval(pt) == 0)).collect()
    } else {
        sampled_singular_points(&polys, f, seed)
    };
    if pts.len() >= 2 {
        let (a, b) = (pts[0].clone(), pts[1].clone());
        if line_in_zero_set(&polys, &a, &b) {
            return Ok(SingularLocus::SingularLine(a, b));
        }
        return Err(Error::ContractViolation("singular points off a common singular line".into()));
    }
    for t in triple_points(g) {
        if !pts.contains(&t) {
            pts.push(t);
        }
    }
    pts.sort();
    Ok(SingularLocus::FinitePoints(pts))
}

/// Very singular points of an integral cubic surface: singular modulo `p` with
/// `v_p(F(P)) ≥ 2` at (any) lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerySingular {
    Points(Vec<ProjPoint>),
    /// Every point of this singular line is very singular.
    Line(ProjPoint, ProjPoint),
}

fn lift(pt: &[u64]) -> Vec<BigInt> {
    pt.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn is_very_singular(form: &Form, pt: &[u64], p: u64) -> bool {
    let v = form.eval(&lift(pt));
    mod_u64(&v, p * p) == 0
}

pub fn very_singular_points(form: &Form, p: u64) -> Result<VerySingular> {
    let f = Fp::new(p)?;
    let g = MPoly::from_form(form, f);
    match cubic_surface_singular_locus(&g)? {
        SingularLocus::ContainsPlane(_) => Err(Error::ContractViolation("reduction contains a plane".into())),
        SingularLocus::FinitePoints(pts) => {
            Ok(VerySingular::Points(pts.into_iter().filter(|pt| is_very_singular(form, pt, p)).collect()))
        }
        SingularLocus::SingularLine(a, b) => {
            let t = complete_to_unimodular(&f, &[a.clone(), b.clone()], 4);
            let h = form.substitute(&t)?;
            // Restriction to the line x2 = x3 = 0, divided by p.
            let mut c = vec![0u64; 4];
            for (e, v) in h.terms() {
                if e[2] == 0 && e[3] == 0 {
                    let q = v / BigInt::from(p);
                    c[e[0] as usize] = mod_u64(&q, p);
                }
            }
            let g3 = MPoly::from_form(
                &Form::new(2, 3, (0..4u32).map(|k| (vec![k, 3 - k], BigInt::from(c[k as usize]))))?,
                f,
            );
            if g3.is_zero() {
                return Ok(VerySingular::Line(a, b));
            }
            let tr = t.reduce_mod(p);
            let mut pts = Vec::new();
            for l in binary_form_linear_factors(&g3)? {
                // Zero of α x0 + β x1 on the line: (β, -α) in line coordinates.
                let xi = [l.coeffs[1], f.neg(l.coeffs[0])];
                let v: Vec<u64> = (0..4).map(|j| f.add(f.mul(xi[0], tr[0][j]), f.mul(xi[1], tr[1][j]))).collect();
                pts.push(normalize(&f, &v).unwrap());
            }
            pts.sort();
            Ok(VerySingular::Points(pts))
        }
    }
}

/// Unimodular `T` whose first rows span the same `F_p`-subspace as `rows`.
pub fn complete_to_unimodular(f: &Fp, rows: &[Vec<u64>], n: usize) -> IntMatrix {
    let (ech, pivots) = rref(f, rows);
    let mut m: Vec<Vec<BigInt>> = ech.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        let mut r = vec![BigInt::zero(); n];
        r[j] = BigInt::one();
        m.push(r);
    }
    IntMatrix::new(m).expect("square")
}

/// Unimodular `T` with `T·ℓ = e_target`, so the linear form `ℓ` becomes `x_target`.
pub fn move_line_to(l: &[u64], target: usize) -> Result<IntMatrix> {
    let n = l.len();
    let k = l.iter().position(|&v| v != 0).ok_or(Error::ZeroForm)?;
    if l[k] != 1 {
        return Err(Error::ContractViolation("linear form must be normalized".into()));
    }
    let mut vinv = IntMatrix::identity(n);
    for i in 0..n {
        if i != k {
            vinv.set(i, k, -BigInt::from(l[i]));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(k, target);
    Ok(&IntMatrix::permutation(&perm) * &vinv)
}

/// Unimodular `T` whose row `target` lifts the point `P`, so `e_target·T ≡ P`.
pub fn move_point_to(pt: &[u64], target: usize) -> Result<IntMatrix> {
    let n = pt.len();
    let k = pt.iter().position(|&v| v != 0).ok_or(Error::ZeroForm)?;
    if pt[k] != 1 {
        return Err(Error::ContractViolation("point must be normalized".into()));
    }
    let mut w = IntMatrix::identity(n);
    for j in 0..n {
        w.set(k, j, BigInt::from(pt[j]));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(k, target);
    Ok(&IntMatrix::permutation(&perm) * &w)
}

/// Rank of a quadratic form over `F_p` and a basis of its vertex (characteristic 2 aware).
///
/// The vertex is `{v : q(x+v) = q(x) for all x}`; the rank is the number of variables
/// minus its dimension.
pub fn quadric_rank_and_vertex(q: &MPoly) -> (usize, Vec<Vec<u64>>) {
    let f = q.field;
    let n = q.nvars;
    let mut b = vec![vec![0u64; n]; n];
    for (e, &c) in &q.terms {
        let idx: Vec<usize> = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i).collect();
        if idx.len() == 1 {
            b[idx[0]][idx[0]] = f.mul(2 % f.p(), c);
        } else {
            b[idx[0]][idx[1]] = c;
            b[idx[1]][idx[0]] = c;
        }
    }
    let rad = nullspace(&f, &b, n);
    let vertex = if f.p() == 2 && !rad.is_empty() {
        let vals: Vec<u64> = rad.iter().map(|r| q.eval(r)).collect();
        let sub = nullspace(&f, &[vals], rad.len());
        sub.iter()
            .map(|c| (0..n).map(|j| c.iter().zip(&rad).fold(0, |acc, (ci, r)| f.add(acc, f.mul(*ci, r[j])))).collect())
            .collect()
    } else {
        rad
    };
    (n - vertex.len(), vertex)
}

/// `p^{-k}` times an integral form, reduced mod `p`; used for `F(x0, px1, ...)/p^k`.
pub fn scaled_reduction(form: &Form, w: &[u32], p: u64, k: u64) -> Option<MPoly> {
    let g = form.scale_vars_pow(w, p);
    if !g.valuation(p).at_least(k) {
        return None;
    }
    let pk = pow_u64(p, k);
    Some(MPoly::from_form(&g.div_exact(&pk), Fp::new(p).ok()?))
}
