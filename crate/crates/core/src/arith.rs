//! Small integer helpers shared across modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// p-adic valuation of an integer or form; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// Compare against a finite threshold.
    pub fn at_least(self, k: u64) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// v_p(a) for a nonzero integer, `Infinite` for zero.
pub fn valuation(a: &BigInt, p: u64) -> Valuation {
    if a.is_zero() {
        return Valuation::Infinite;
    }
    let pb = BigUint::from(p);
    let mut m = a.magnitude().clone();
    let mut v = 0u64;
    // Strip large powers first so huge valuations stay cheap.
    let mut powers = vec![pb.clone()];
    while let Some(last) = powers.last() {
        if last.bits() * 2 > m.bits() + 1 {
            break;
        }
        let sq = last * last;
        powers.push(sq);
    }
    for (k, pw) in powers.iter().enumerate().rev() {
        loop {
            let (q, r) = m.div_rem(pw);
            if !r.is_zero() {
                break;
            }
            m = q;
            v += 1u64 << k;
        }
    }
    Valuation::Finite(v)
}

/// Residue of `a` modulo `p` in `[0, p)`.
pub fn mod_u64(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

pub fn pow_u64(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Exact division; panics if `b` does not divide `a`.
pub fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "inexact division");
    q
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for a in it {
        g = g.gcd(a);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Binomial coefficient as u64; arguments are small in practice.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Total order on integers by absolute value, then sign (used for canonical choices).
pub fn cmp_abs(a: &BigInt, b: &BigInt) -> Ordering {
    a.abs().cmp(&b.abs()).then(a.sign().cmp(&b.sign()))
}

pub fn is_negative(a: &BigInt) -> bool {
    a.sign() == Sign::Minus
}

/// Determinant of a small integer matrix by fraction-free elimination.
pub fn bareiss_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = exact_div(&t, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_basic() {
        assert_eq!(valuation(&BigInt::from(48), 2), Valuation::Finite(4));
        assert_eq!(valuation(&BigInt::from(-81), 3), Valuation::Finite(4));
        assert_eq!(valuation(&BigInt::from(7), 3), Valuation::Finite(0));
        assert_eq!(valuation(&BigInt::zero(), 5), Valuation::Infinite);
        let big = pow_u64(7, 300) * BigInt::from(10);
        assert_eq!(valuation(&big, 7), Valuation::Finite(300));
    }

    #[test]
    fn det_small() {
        let m = vec![
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(bareiss_det(&m), BigInt::from(2));
        let z = vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(0)]];
        assert_eq!(bareiss_det(&z), BigInt::from(-1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial_big(40, 20).to_string(), "137846528820");
    }
}
