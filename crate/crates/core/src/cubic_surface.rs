//! Minimization of cubic surfaces at a prime.
//!
//! The minimal complete set for cubic surfaces is `[0,0,0,1]`, `[0,0,1,1]`, `[0,1,1,1]`,
//! `[0,1,2,2]`, `[0,2,2,3]`. Each has a geometric test on the reduction: a linear factor,
//! a very singular line, a very singular triple point, or a very singular point whose
//! tangent quadric has rank 1 or 2 followed by a short chain of simpler steps.

use crate::error::{Error, Result};
use crate::form::{apply_weight, Form};
use crate::fp::linalg::{nullspace, rank};
use crate::fp::{Fp, MPoly};
use crate::geometry::normalize;
use crate::geometry::{
    complete_to_unimodular, cubic_surface_singular_locus, linear_factors, move_line_to, move_point_to,
    point_multiplicity, quadric_rank_and_vertex, very_singular_points, ProjPoint, SingularLocus, VerySingular,
};
use crate::matrix::IntMatrix;
use crate::record::{Minimized, Step, TransformRecord};
use num_bigint::BigInt;

pub const DEFAULT_STEP_CAP: usize = 64;

/// A successful step together with the weight it realizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceStep {
    pub step: Step,
    pub weight: [u32; 4],
}

/// A partial chain of weight applications: `p^e · form = F(x·matrix)`, `det = ±p^k`.
#[derive(Clone)]
struct Chain {
    form: Form,
    matrix: IntMatrix,
    e: u64,
    k: u64,
}

impl Chain {
    fn start(f: &Form) -> Chain {
        Chain { form: f.clone(), matrix: IntMatrix::identity(4), e: 0, k: 0 }
    }

    fn apply(&self, t: &IntMatrix, w: [u32; 4], p: u64) -> Result<Chain> {
        let (form, e) = apply_weight(&self.form, t, &w, p)?;
        let matrix = &(&IntMatrix::weight_diagonal(&w, p) * t) * &self.matrix;
        let k = w.iter().map(|&x| x as u64).sum::<u64>();
        Ok(Chain { form, matrix, e: self.e + e, k: self.k + k })
    }

    /// `4e > 3k`: the accumulated substitution is a minimization step.
    fn minimizes(&self) -> bool {
        4 * self.e > 3 * self.k
    }

    fn finish(self, weight: [u32; 4]) -> SurfaceStep {
        SurfaceStep { step: Step { form: self.form, matrix: self.matrix, e: self.e }, weight }
    }
}

fn check_cubic_surface(f: &Form) -> Result<()> {
    if f.nvars() != 4 || f.degree() != 3 {
        return Err(Error::ContractViolation(format!(
            "quaternary cubic expected, got {} variables of degree {}",
            f.nvars(),
            f.degree()
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(())
}

fn reduce(f: &Form, p: u64) -> Result<MPoly> {
    let g = MPoly::from_form(f, Fp::new(p)?);
    if g.is_zero() {
        return Err(Error::ContractViolation("form is not primitive at p".into()));
    }
    Ok(g)
}

/// `[0,0,0,1]`: applies exactly when the reduction has a linear factor.
pub fn test_0001(f: &Form, p: u64) -> Result<Option<SurfaceStep>> {
    check_cubic_surface(f)?;
    let (factors, _) = linear_factors(&reduce(f, p)?)?;
    let Some(l) = factors.first() else { return Ok(None) };
    let c = Chain::start(f).apply(&move_line_to(&l.coeffs, 3)?, [0, 0, 0, 1], p)?;
    debug_assert!(c.minimizes());
    Ok(c.minimizes().then(|| c.finish([0, 0, 0, 1])))
}

/// `[0,0,1,1]`: the reduction is singular along a rational line, moved to `x2 = x3 = 0`,
/// and `v_p(F(x0, x1, p x2, p x3)) ≥ 2` there.
pub fn test_0011(f: &Form, p: u64) -> Result<Option<SurfaceStep>> {
    check_cubic_surface(f)?;
    let g = reduce(f, p)?;
    let SingularLocus::SingularLine(a, b) = cubic_surface_singular_locus(&g)? else { return Ok(None) };
    let t = complete_to_unimodular(&g.field, &[a, b], 4);
    let c = Chain::start(f).apply(&t, [0, 0, 1, 1], p)?;
    Ok(c.minimizes().then(|| c.finish([0, 0, 1, 1])))
}

/// `[0,1,1,1]` at one very singular point: the point is a triple point of the reduction
/// and `v_p(F(x0, p x1, p x2, p x3)) ≥ 3` once it is moved to `[1:0:0:0]`.
pub fn test_0111_at(f: &Form, p: u64, pt: &[u64]) -> Result<Option<SurfaceStep>> {
    check_cubic_surface(f)?;
    let g = reduce(f, p)?;
    if point_multiplicity(&g, pt) < 3 {
        return Ok(None);
    }
    let c = Chain::start(f).apply(&move_point_to(pt, 0)?, [0, 1, 1, 1], p)?;
    Ok(c.minimizes().then(|| c.finish([0, 1, 1, 1])))
}

/// Linear form (normalized) vanishing on the span of `vertex`, a hyperplane.
fn plane_of(fp: &Fp, vertex: &[Vec<u64>]) -> Vec<u64> {
    let m = nullspace(fp, vertex, 4);
    debug_assert_eq!(m.len(), 1);
    normalize(fp, &m[0]).expect("nonzero")
}

/// Largest number of points of a linear triple locus tried by [`triple_points_off_x0`].
const TRIPLE_LOCUS_LIMIT: u64 = 1000;

/// Rational triple points of a cubic surface outside `x0 = 0`, up to adding multiples of
/// `[0:0:0:1]` (which does not change the resulting lattice). The triple locus is linear;
/// when it is larger than a point only its first [`TRIPLE_LOCUS_LIMIT`] points are tried.
fn triple_points_off_x0(g: &MPoly) -> Vec<ProjPoint> {
    let fp = g.field;
    let p = fp.p();
    let rows: Vec<Vec<u64>> = crate::form::monomials(4, 2)
        .iter()
        .map(|a| {
            let d = g.divided_derivative(a);
            (0..4)
                .map(|i| {
                    let mut e = vec![0u32; 4];
                    e[i] = 1;
                    d.coeff(&e)
                })
                .collect()
        })
        .collect();
    let ker = nullspace(&fp, &rows, 4);
    let e3_in_ker = rank(&fp, &[ker.clone(), vec![vec![0, 0, 0, 1]]].concat()) == ker.len();
    let mut out: Vec<ProjPoint> = Vec::new();
    let total = p.checked_pow(ker.len() as u32).unwrap_or(u64::MAX).min(TRIPLE_LOCUS_LIMIT);
    for idx in 1..total {
        let mut k = idx;
        let mut v = vec![0u64; 4];
        for b in &ker {
            let c = k % p;
            k /= p;
            for j in 0..4 {
                v[j] = fp.add(v[j], fp.mul(c, b[j]));
            }
        }
        if v[0] == 0 {
            continue;
        }
        let mut v = normalize(&fp, &v).expect("nonzero");
        if e3_in_ker {
            v[3] = 0;
        }
        if !out.contains(&v) && point_multiplicity(g, &v) >= 3 {
            out.push(v);
        }
    }
    out.sort();
    out
}

/// `[0,1,2,2]` and `[0,2,2,3]` at one very singular point.
///
/// After moving the point to `[1:0:0:0]`, the reduction is `x0·f2 + f3` and
/// `F1 = p^{-2} F(x0, p x1, p x2, p x3)` is integral with reduction `x0·q`, where the
/// quadric `q` restricts to `f2` on `x0 = 0`. Changing the lift of the point moves `q` by
/// a substitution fixing `x0`, so the vertex of `q` is the lift-independent datum. If `f2`
/// has rank 2, `[0,0,1,1]` is tried on `F1` along the vertex line of `q`. If `f2` has rank
/// 1 and `q = λm²`, `[0,0,0,1]` is applied to `F1` along `m = 0` and then every linear
/// factor (`[0,0,0,1]`) and triple point (`[0,1,1,1]`) of the result is tried. A chain
/// counts only if the accumulated substitution satisfies `4e > 3k`.
pub fn test_0122_0223_at(f: &Form, p: u64, pt: &[u64]) -> Result<Option<SurfaceStep>> {
    check_cubic_surface(f)?;
    let fp = Fp::new(p)?;
    let t1 = move_point_to(pt, 0)?;
    let moved = f.substitute(&t1)?;
    let gbar = MPoly::from_form(&moved, fp);
    // Coefficient of x0 in the reduction, as a quadric in x1, x2, x3.
    let mut f2 = MPoly::zero(fp, 3);
    for (e, &c) in &gbar.terms {
        if e[0] == 1 {
            f2 = f2.add(&MPoly::monomial(fp, e[1..].to_vec(), c));
        }
    }
    if f2.is_zero() {
        return Ok(None);
    }
    let (rank, _) = quadric_rank_and_vertex(&f2);
    if rank > 2 {
        return Ok(None);
    }
    let c1 = Chain::start(f).apply(&t1, [0, 1, 1, 1], p)?;
    let g1 = MPoly::from_form(&c1.form, fp);
    let Some(q) = g1.div_exact(&MPoly::var(fp, 4, 0)) else { return Ok(None) };
    let (qrank, qvertex) = quadric_rank_and_vertex(&q);
    if qrank != rank {
        return Ok(None);
    }
    match rank {
        2 => {
            // Only a line leaving x0 = 0 gives a lattice through the lift of the point.
            if qvertex.iter().all(|v| v[0] == 0) {
                return Ok(None);
            }
            let t2 = complete_to_unimodular(&fp, &qvertex, 4);
            let c2 = c1.apply(&t2, [0, 0, 1, 1], p)?;
            Ok(c2.minimizes().then(|| c2.finish([0, 1, 2, 2])))
        }
        1 => {
            // q = λm²; the vertex is the plane m = 0.
            let m = plane_of(&fp, &qvertex);
            let c1 = if m[0] == 0 {
                c1
            } else {
                // Move the lift of the point by p·u so that m loses its x0 term: in the
                // coordinates of F1 this substitutes x_j ↦ x_j + u_j x0.
                let j = (1..4).find(|&j| m[j] != 0).expect("f2 is nonzero");
                let u = fp.neg(fp.div(m[0], m[j]));
                let mut shift = IntMatrix::identity(4);
                shift.set(0, j, BigInt::from(p) * BigInt::from(u));
                Chain::start(f).apply(&(&shift * &t1), [0, 1, 1, 1], p)?
            };
            let g1 = MPoly::from_form(&c1.form, fp);
            let Some(q) = g1.div_exact(&MPoly::var(fp, 4, 0)) else { return Ok(None) };
            let (qrank, qvertex) = quadric_rank_and_vertex(&q);
            if qrank != 1 {
                return Ok(None);
            }
            let m = plane_of(&fp, &qvertex);
            debug_assert_eq!(m[0], 0);
            let c2 = c1.apply(&move_line_to(&m, 3)?, [0, 0, 0, 1], p)?;
            let g2 = reduce(&c2.form, p)?;
            let (factors, _) = linear_factors(&g2)?;
            for l in &factors {
                let c3 = c2.apply(&move_line_to(&l.coeffs, 3)?, [0, 0, 0, 1], p)?;
                if c3.minimizes() {
                    return Ok(Some(c3.finish([0, 1, 2, 2])));
                }
            }
            for q in triple_points_off_x0(&g2) {
                let c3 = c2.apply(&move_point_to(&q, 0)?, [0, 1, 1, 1], p)?;
                if c3.minimizes() {
                    return Ok(Some(c3.finish([0, 2, 2, 3])));
                }
            }
            Ok(None)
        }
        _ => Ok(None),
    }
}

/// Very singular points in lexicographic order (empty if they fill a line).
fn very_singular_list(f: &Form, p: u64) -> Result<Vec<ProjPoint>> {
    match very_singular_points(f, p)? {
        VerySingular::Points(mut pts) => {
            pts.sort();
            Ok(pts)
        }
        VerySingular::Line(..) => Ok(vec![]),
    }
}

/// One minimization step at `p`, trying the tests in the order
/// `[0,0,0,1]`, `[0,0,1,1]`, then per very singular point `[0,1,1,1]` and the chains.
pub fn minimize_cubic_surface_one_step(f: &Form, p: u64) -> Result<Option<SurfaceStep>> {
    check_cubic_surface(f)?;
    if let Some(s) = test_0001(f, p)? {
        return Ok(Some(s));
    }
    if let Some(s) = test_0011(f, p)? {
        return Ok(Some(s));
    }
    for pt in very_singular_list(f, p)? {
        if let Some(s) = test_0111_at(f, p, &pt)? {
            return Ok(Some(s));
        }
        if let Some(s) = test_0122_0223_at(f, p, &pt)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

pub fn minimize_cubic_surface(f: &Form, p: u64) -> Result<Minimized> {
    minimize_cubic_surface_with_cap(f, p, DEFAULT_STEP_CAP)
}

/// Remove the `p`-part of the content and repeat single steps, at most `cap` of them.
pub fn minimize_cubic_surface_with_cap(f: &Form, p: u64, cap: usize) -> Result<Minimized> {
    check_cubic_surface(f)?;
    let e0 = f.valuation(p).finite().ok_or(Error::ZeroForm)?;
    let mut g = f.div_pow(p, e0);
    let mut record = TransformRecord::identity(4, p);
    record.scale_exp = e0;
    while let Some(s) = minimize_cubic_surface_one_step(&g, p)? {
        if record.steps >= cap {
            return Err(Error::NotSemistable(format!("still minimizing after {cap} steps at p = {p}")));
        }
        record.push(&s.step.matrix, s.step.e);
        g = s.step.form;
    }
    Ok(Minimized { form: g, record })
}
