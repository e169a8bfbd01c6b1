//! Minimization of binary forms at a prime.
//!
//! After dividing out the `p`-part of the content, the only weight left to test is
//! `[0,1]`, and it can only apply along a linear factor of `F mod p` of multiplicity
//! greater than `d/2`.

use crate::arith::{exact_div, valuation, Valuation};
use crate::error::{Error, Result};
use crate::form::{apply_weight, Form};
use crate::fp::{Fp, MPoly};
use crate::geometry::{binary_form_linear_factors, move_line_to};
use crate::matrix::IntMatrix;
use crate::record::{Minimized, Step, TransformRecord};
use num_bigint::BigInt;
use num_traits::Zero;

/// Step cap used when the discriminant vanishes and gives no bound.
pub const DEFAULT_STEP_CAP: usize = 64;

fn check_binary(f: &Form) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch(format!("binary form expected, got {} variables", f.nvars())));
    }
    if f.degree() < 2 {
        return Err(Error::ContractViolation("degree must be at least 2".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(())
}

/// Coefficients of `F(t, 1)` in increasing powers of `t`.
fn dehomogenized(f: &Form) -> Vec<BigInt> {
    let d = f.degree();
    (0..=d).map(|k| f.coeff(&[k, d - k])).collect()
}

/// Discriminant of a binary form, `(-1)^{d(d-1)/2} Res(f, f') / lc(f)` after a
/// determinant-one shear that makes the leading coefficient nonzero.
pub fn discriminant(f: &Form) -> Result<BigInt> {
    check_binary(f)?;
    let d = f.degree();
    let mut k = 0i64;
    let g = loop {
        let t = IntMatrix::from_i64(&[&[1, k], &[0, 1]]);
        let g = f.substitute(&t)?;
        if !g.coeff(&[d, 0]).is_zero() {
            break g;
        }
        k += 1;
    };
    let u = dehomogenized(&g);
    let du: Vec<BigInt> = u.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let res = crate::fp::resultant_int(&u, &du);
    let disc = exact_div(&res, &u[d as usize]);
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -disc } else { disc })
}

/// One minimization step at `p`, or `None` if `F` is minimal at `p` (for primitive `F`).
pub fn minimize_binary_one_step(f: &Form, p: u64) -> Result<Option<Step>> {
    check_binary(f)?;
    let d = f.degree();
    let fp = Fp::new(p)?;
    let fbar = MPoly::from_form(f, fp);
    if fbar.is_zero() {
        return Err(Error::ContractViolation("form is not primitive at p".into()));
    }
    let Some(l) = binary_form_linear_factors(&fbar)?.into_iter().find(|l| 2 * l.multiplicity > d) else {
        return Ok(None);
    };
    let t = move_line_to(&l.coeffs, 1)?;
    let w = [0, 1];
    let (g, e) = apply_weight(f, &t, &w, p)?;
    if 2 * e > d as u64 {
        let matrix = &IntMatrix::weight_diagonal(&w, p) * &t;
        return Ok(Some(Step { form: g, matrix, e }));
    }
    Ok(None)
}

/// Iterate single steps until none applies, starting by removing the `p`-part of the content.
///
/// Each step lowers `v_p(disc)`, so more than `v_p(disc) + 1` steps means the input was
/// not semistable.
pub fn minimize_binary(f: &Form, p: u64) -> Result<Minimized> {
    check_binary(f)?;
    let e0 = f.valuation(p).finite().ok_or(Error::ZeroForm)?;
    let mut g = f.div_pow(p, e0);
    let mut record = TransformRecord::identity(2, p);
    record.scale_exp = e0;
    let cap = match valuation(&discriminant(&g)?, p) {
        Valuation::Finite(v) => v as usize + 1,
        Valuation::Infinite => DEFAULT_STEP_CAP,
    };
    while let Some(step) = minimize_binary_one_step(&g, p)? {
        if record.steps >= cap {
            return Err(Error::NotSemistable(format!("no termination after {cap} steps at p = {p}")));
        }
        record.push(&step.matrix, step.e);
        g = step.form;
    }
    Ok(Minimized { form: g, record })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Form {
        Form::parse(s).unwrap()
    }

    #[test]
    fn discriminant_of_quadratics() {
        // b^2 - 4ac
        assert_eq!(discriminant(&f("x0^2 + x0*x1 + x1^2")).unwrap(), BigInt::from(-3));
        assert_eq!(discriminant(&f("x0*x1")).unwrap(), BigInt::from(1));
        assert_eq!(discriminant(&f("x1^2 + 7*x0*x1 + 49*x0^2")).unwrap(), BigInt::from(-147));
    }

    #[test]
    fn discriminant_of_cubic() {
        // x^3 + a x + b: -4a^3 - 27b^2
        let g = f("x0^3 - 2*x0*x1^2 + 5*x1^3");
        assert_eq!(discriminant(&g).unwrap(), BigInt::from(-4 * -8 - 27 * 25));
        // invariant under x1 -> x1 + x0 shifts and the swap
        let t = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(discriminant(&g.substitute(&t).unwrap()).unwrap(), BigInt::from(-643));
    }

    #[test]
    fn round_trip_quadratic() {
        // x0^2 + x0 x1 + x1^2 pushed through x1 -> p x1 and a swap
        let p = 5;
        let g = f("x1^2 + 5*x0*x1 + 25*x0^2");
        let step = minimize_binary_one_step(&g, p).unwrap().unwrap();
        assert_eq!(step.e, 2);
        assert_eq!(valuation(&discriminant(&step.form).unwrap(), p), Valuation::Finite(0));
        let m = minimize_binary(&g, p).unwrap();
        assert_eq!(m.record.steps, 1);
        assert!(m.record.verify(&g, &m.form).unwrap());
    }

    #[test]
    fn minimal_inputs_do_nothing() {
        assert!(minimize_binary_one_step(&f("x0*x1"), 3).unwrap().is_none());
        assert!(minimize_binary_one_step(&f("x0^3 + x1^3 + x0*x1^2"), 7).unwrap().is_none());
        let m = minimize_binary(&f("x0^4 - x1^4 + x0*x1^3"), 2).unwrap();
        assert_eq!(m.record.steps, 0);
        assert_eq!(m.record.matrix, IntMatrix::identity(2));
    }

    #[test]
    fn scaled_quartic_recovers_discriminant_valuation() {
        let g = f("x0^4 + 2*x0^3*x1 - x0*x1^3 + 3*x1^4");
        let p = 3;
        let big = g.scale_vars_pow(&[0, 3], p);
        let m = minimize_binary(&big, p).unwrap();
        assert!(m.record.verify(&big, &m.form).unwrap());
        let v = |h: &Form| valuation(&discriminant(h).unwrap(), p);
        assert_eq!(v(&m.form), v(&g));
        assert!(minimize_binary_one_step(&m.form, p).unwrap().is_none());
    }

    #[test]
    fn content_is_removed_first() {
        let g = f("9*x0^2 + 9*x0*x1 + 9*x1^2");
        let m = minimize_binary(&g, 3).unwrap();
        assert_eq!(m.record.scale_exp, 2);
        assert_eq!(m.form, f("x0^2 + x0*x1 + x1^2"));
    }

    #[test]
    fn unstable_input_hits_the_cap() {
        let g = f("x0^3*x1");
        assert!(matches!(minimize_binary(&g, 2), Err(Error::NotSemistable(_))));
    }
}
