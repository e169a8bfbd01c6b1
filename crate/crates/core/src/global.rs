//! Minimization over all primes: candidate bad primes, per-prime loops and reduction.

use crate::arith::gcd_all;
use crate::binary::minimize_binary;
use crate::cubic_surface::minimize_cubic_surface_with_cap;
use crate::error::{Error, Result};
use crate::factor::{factor_integer, is_prime_u64};
use crate::form::Form;
use crate::fp::resultant_int;
use crate::invariants::ternary_invariants;
use crate::matrix::IntMatrix;
use crate::plane_curve::{minimize_plane_curve_with, PlaneCurveOptions};
use crate::record::{GlobalRecord, Minimized};
use crate::reduce::adhoc_reduce;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlobalOptions {
    pub plane_curve: PlaneCurveOptions,
    /// Step cap for cubic surfaces at a single prime.
    pub surface_step_cap: usize,
    /// Run the ad-hoc reduction first and after every prime.
    pub reduce: bool,
}

impl Default for GlobalOptions {
    fn default() -> Self {
        GlobalOptions {
            plane_curve: PlaneCurveOptions::default(),
            surface_step_cap: crate::cubic_surface::DEFAULT_STEP_CAP,
            reduce: true,
        }
    }
}

fn prime_divisors(n: &BigInt) -> Result<BTreeSet<BigInt>> {
    if n.is_zero() {
        return Err(Error::ContractViolation("cannot factor zero".into()));
    }
    Ok(factor_integer(n)?.into_iter().map(|(p, _)| p).collect())
}

/// Primes at which a binary form can fail to be minimal.
///
/// A root of multiplicity above `d/2` at infinity makes `a_d, …, a_{d-⌊d/2⌋}` of
/// `F(t, 1) = Σ a_k t^k` divisible by `p`; a finite one is a common root of the divided
/// derivatives `f^(k)/k!` for `k ≤ ⌊d/2⌋`, so `p` divides each of their pairwise
/// resultants. Content primes are included.
pub fn candidate_primes_binary(f: &Form) -> Result<BTreeSet<BigInt>> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch(format!("binary form expected, got {} variables", f.nvars())));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree() as usize;
    let half = d / 2;
    let a: Vec<BigInt> = (0..=d).map(|k| f.coeff(&[k as u32, (d - k) as u32])).collect();
    let mut out = BTreeSet::new();
    let content = f.content();
    out.extend(prime_divisors(&content)?);

    let at_infinity = gcd_all(a[d - half..].iter());
    if at_infinity.is_zero() {
        return Err(Error::NotSemistable("root of high multiplicity at infinity".into()));
    }
    let divided: Vec<Vec<BigInt>> = (0..=half)
        .map(|k| (k..=d).map(|i| &a[i] * crate::arith::binomial_big(i as u64, k as u64)).collect::<Vec<_>>())
        .map(|mut c: Vec<BigInt>| {
            while c.last().is_some_and(|x| x.is_zero()) {
                c.pop();
            }
            c
        })
        .collect();
    let mut resultants = Vec::new();
    for i in 0..divided.len() {
        for j in i + 1..divided.len() {
            let r = resultant_int(&divided[i], &divided[j]);
            if !r.is_zero() {
                resultants.push(r);
            }
        }
    }
    if resultants.is_empty() && d > 1 {
        return Err(Error::NotSemistable("divided derivatives share a root over the rationals".into()));
    }
    let finite = gcd_all(resultants.iter());
    out.extend(prime_divisors(&at_infinity)?);
    if !finite.is_zero() {
        out.extend(prime_divisors(&finite)?);
    }
    Ok(out)
}

/// Primes dividing the gcd of the ternary invariant pair.
pub fn candidate_primes_ternary(f: &Form) -> Result<BTreeSet<BigInt>> {
    let g = ternary_invariants(f)?.gcd();
    if g.is_zero() {
        return Err(Error::NeedsManualPrimes("both invariants vanish".into()));
    }
    let mut out = prime_divisors(&g)?;
    out.extend(prime_divisors(&f.content())?);
    Ok(out)
}

/// Candidate primes for a binary or ternary form.
pub fn candidate_primes(f: &Form) -> Result<BTreeSet<BigInt>> {
    match f.nvars() {
        2 => candidate_primes_binary(f),
        3 => candidate_primes_ternary(f),
        n => Err(Error::NeedsManualPrimes(format!("no prime detection for {n} variables"))),
    }
}

fn minimize_at(f: &Form, p: u64, opts: &GlobalOptions) -> Result<Minimized> {
    match f.nvars() {
        2 => minimize_binary(f, p),
        3 => minimize_plane_curve_with(f, p, &opts.plane_curve),
        4 if f.degree() == 3 => minimize_cubic_surface_with_cap(f, p, opts.surface_step_cap),
        n => Err(Error::DimensionMismatch(format!("no minimization for degree {} in {n} variables", f.degree()))),
    }
}

/// Minimize `F` at every prime of `primes` (or of the detected candidates), in
/// ascending order. The content is divided out first.
pub fn minimize_global(f: &Form, primes: Option<&[u64]>, opts: &GlobalOptions) -> Result<GlobalRecord> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = f.nvars();
    let mut scale_exp: BTreeMap<u64, u64> = BTreeMap::new();
    let mut touched: BTreeSet<u64> = BTreeSet::new();

    let content = f.content();
    let mut g = f.div_exact(&content);
    for (p, e) in factor_integer(&content)? {
        let p = p.to_u64().ok_or_else(|| Error::ResourceCap(format!("content prime {p} exceeds 64 bits")))?;
        *scale_exp.entry(p).or_default() += e as u64;
        touched.insert(p);
    }

    let mut matrix = IntMatrix::identity(n);
    if opts.reduce {
        let (h, u) = adhoc_reduce(&g)?;
        g = h;
        matrix = &u * &matrix;
    }

    let primes: BTreeSet<u64> = match primes {
        Some(list) => {
            for &p in list {
                if !is_prime_u64(p) {
                    return Err(Error::ContractViolation(format!("{p} is not prime")));
                }
            }
            list.iter().copied().collect()
        }
        None => candidate_primes(&g)?
            .into_iter()
            .map(|p| p.to_u64().ok_or_else(|| Error::ResourceCap(format!("candidate prime {p} exceeds 64 bits"))))
            .collect::<Result<_>>()?,
    };

    for p in primes {
        let m = minimize_at(&g, p, opts)?;
        if m.record.scale_exp > 0 || m.record.steps > 0 {
            touched.insert(p);
        }
        if m.record.scale_exp > 0 {
            *scale_exp.entry(p).or_default() += m.record.scale_exp;
        }
        matrix = &m.record.matrix * &matrix;
        g = m.form;
        if opts.reduce {
            let (h, u) = adhoc_reduce(&g)?;
            g = h;
            matrix = &u * &matrix;
        }
    }
    Ok(GlobalRecord { form: g, matrix, scale_exp, primes_touched: touched.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Form {
        Form::parse(s).unwrap()
    }

    fn set(v: &[u64]) -> BTreeSet<BigInt> {
        v.iter().map(|&p| BigInt::from(p)).collect()
    }

    #[test]
    fn binary_candidates() {
        assert_eq!(candidate_primes_binary(&f("x0*x1")).unwrap(), set(&[]));
        assert!(candidate_primes_binary(&f("x1^2 + 49*x0^2")).unwrap().contains(&BigInt::from(7)));
        assert!(candidate_primes_binary(&f("x0^2 + 9*x1^2")).unwrap().contains(&BigInt::from(3)));
        assert!(matches!(candidate_primes_binary(&f("x0^3*x1")), Err(Error::NotSemistable(_))));
        assert!(matches!(candidate_primes_binary(&f("x0*x1^3")), Err(Error::NotSemistable(_))));
    }

    #[test]
    fn ternary_candidates_of_a_good_cubic() {
        let g = Form::parse_with_vars("x0*x1*x2 + x1^3 + x2^3", 3).unwrap();
        assert!(candidate_primes_ternary(&g).unwrap().is_empty());
    }

    #[test]
    fn global_binary_round_trip() {
        let g = f("x1^2 + 5*x0*x1 + 25*x0^2").scale(&BigInt::from(6));
        let r = minimize_global(&g, None, &GlobalOptions::default()).unwrap();
        assert!(r.verify(&g).unwrap());
        assert_eq!(r.scale_exp.get(&5), Some(&2));
        assert_eq!(r.scale_exp.get(&2), Some(&1));
        assert_eq!(r.primes_touched, vec![2, 3, 5]);
    }

    #[test]
    fn surfaces_need_primes() {
        let g = Form::parse_with_vars("x0^3 + x1^3 + x2^3 + x3^3", 4).unwrap();
        assert!(matches!(minimize_global(&g, None, &GlobalOptions::default()), Err(Error::NeedsManualPrimes(_))));
        let r = minimize_global(&g, Some(&[5]), &GlobalOptions::default()).unwrap();
        assert_eq!(r.form, g);
    }
}
