//! Transvectants of ternary forms and the invariants used to locate bad primes.
//!
//! `Üb^k(F, G, H) = Δ^k F(x) G(y) H(z) |_{y,z ← x}` where `Δ` is the determinant of the
//! 3×3 matrix of partial derivative operators in `x`, `y`, `z`. The six terms of the
//! determinant commute, so `Δ^k` is expanded multinomially into products of three mixed
//! partials. No content is removed from the results.

use crate::error::{Error, Result};
use crate::form::Form;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::HashMap;

/// The six permutations of `{0,1,2}` with their signs.
const PERMS: [([usize; 3], i8); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];

fn check_ternary(f: &Form) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::DimensionMismatch(format!("ternary form expected, got {} variables", f.nvars())));
    }
    Ok(())
}

fn compositions(k: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

type Triple = ([u32; 3], [u32; 3], [u32; 3]);

/// `Δ^k` as a sum of `c · ∂_x^a ∂_y^b ∂_z^c` with integer coefficients.
fn delta_power(k: u32) -> Vec<(Triple, BigInt)> {
    let kf = factorial(k);
    let mut acc: HashMap<Triple, BigInt> = HashMap::new();
    for ks in compositions(k, 6) {
        let mut coef = kf.clone();
        let mut sign = 1i8;
        let (mut a, mut b, mut c) = ([0u32; 3], [0u32; 3], [0u32; 3]);
        for (kk, (perm, s)) in ks.iter().zip(PERMS.iter()) {
            coef /= factorial(*kk);
            if kk % 2 == 1 {
                sign *= s;
            }
            a[perm[0]] += kk;
            b[perm[1]] += kk;
            c[perm[2]] += kk;
        }
        if sign < 0 {
            coef = -coef;
        }
        *acc.entry((a, b, c)).or_insert_with(BigInt::zero) += coef;
    }
    let mut v: Vec<(Triple, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|x, y| x.0.cmp(&y.0));
    v
}

/// Memoized mixed partials of one form.
struct Partials<'a> {
    form: &'a Form,
    cache: HashMap<[u32; 3], Form>,
}

impl<'a> Partials<'a> {
    fn new(form: &'a Form) -> Self {
        Partials { form, cache: HashMap::new() }
    }

    fn fill(&mut self, keys: impl Iterator<Item = [u32; 3]>) {
        for a in keys {
            let form = self.form;
            self.cache.entry(a).or_insert_with(|| form.partial(&a));
        }
    }

    fn get(&self, a: &[u32; 3]) -> &Form {
        &self.cache[a]
    }
}

/// The `k`-th transvectant `Üb^k(F, G, H)`, a form of degree `deg F + deg G + deg H − 3k`.
pub fn transvectant(f: &Form, g: &Form, h: &Form, k: u32) -> Result<Form> {
    for x in [f, g, h] {
        check_ternary(x)?;
    }
    let deg = f.degree() + g.degree() + h.degree();
    if f.degree() < k || g.degree() < k || h.degree() < k {
        return Ok(Form::zero(3, deg.saturating_sub(3 * k)));
    }
    let out_deg = deg - 3 * k;
    let terms = delta_power(k);
    let (mut pf, mut pg, mut ph) = (Partials::new(f), Partials::new(g), Partials::new(h));
    pf.fill(terms.iter().map(|t| t.0 .0));
    pg.fill(terms.iter().map(|t| t.0 .1));
    ph.fill(terms.iter().map(|t| t.0 .2));
    let sum = terms
        .par_iter()
        .map(|((a, b, c), coef)| {
            let (x, y, z) = (pf.get(a), pg.get(b), ph.get(c));
            if x.is_zero() || y.is_zero() || z.is_zero() {
                return Form::zero(3, out_deg);
            }
            x.mul(y).and_then(|xy| xy.mul(z)).expect("ternary").scale(coef)
        })
        .reduce(|| Form::zero(3, out_deg), |u, v| u.add(&v).expect("same shape"));
    Ok(sum)
}

/// Value of a degree-0 form (zero form counts as 0).
fn constant_of(f: &Form) -> BigInt {
    if f.is_zero() {
        BigInt::zero()
    } else {
        f.constant()
    }
}

/// `I1 = Üb^d(F,F,F)` and `I2 = Üb^6(G,G,G)` with `G = Üb^{d-2}(F,F,F)`, for even `d`.
pub fn invariants_even(f: &Form) -> Result<(BigInt, BigInt)> {
    check_ternary(f)?;
    let d = f.degree();
    if d % 2 == 1 || d == 0 {
        return Err(Error::ContractViolation(format!("even degree expected, got {d}")));
    }
    let i1 = constant_of(&transvectant(f, f, f, d)?);
    let g = transvectant(f, f, f, d - 2)?;
    let i2 = constant_of(&transvectant(&g, &g, &g, 6)?);
    Ok((i1, i2))
}

/// The cubic covariant `Üb^{d-1}(F,F,F)` of a form of odd degree `d ≥ 3`.
pub fn cubic_covariant(f: &Form) -> Result<Form> {
    check_ternary(f)?;
    let d = f.degree();
    if d % 2 == 0 || d < 3 {
        return Err(Error::ContractViolation(format!("odd degree at least 3 expected, got {d}")));
    }
    transvectant(f, f, f, d - 1)
}

/// `∏ Ω_{ijk}` applied to `F(u_0)…F(u_{m-1})` for a cubic `F`, where
/// `Ω_{ijk} = det(∂/∂u_i, ∂/∂u_j, ∂/∂u_k)`. Every copy must occur in exactly three
/// brackets, so the result is a constant.
fn bracket_value(f: &Form, copies: usize, brackets: &[[usize; 3]]) -> BigInt {
    // Third derivatives of a cubic are the constants a!·coeff(a).
    let third: HashMap<Vec<u32>, BigInt> =
        f.terms().map(|(e, c)| (e.clone(), c * e.iter().map(|&k| factorial(k)).product::<BigInt>())).collect();
    let choices = 6usize.pow(brackets.len() as u32);
    (0..choices)
        .into_par_iter()
        .map(|mut idx| {
            let mut exps = vec![vec![0u32; 3]; copies];
            let mut sign = 1i8;
            for br in brackets {
                let (perm, s) = PERMS[idx % 6];
                idx /= 6;
                sign *= s;
                for (slot, &copy) in br.iter().enumerate() {
                    exps[copy][perm[slot]] += 1;
                }
            }
            let mut prod = BigInt::from(sign);
            for e in &exps {
                match third.get(e) {
                    Some(v) => prod *= v,
                    None => return BigInt::zero(),
                }
            }
            prod
        })
        .sum()
}

/// Aronhold's degree-4 invariant `(abc)(abd)(acd)(bcd)` (unnormalized).
fn bracket_s(f: &Form) -> BigInt {
    bracket_value(f, 4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
}

/// Aronhold's degree-6 invariant `(abc)(abd)(ace)(bcf)(def)^2` (unnormalized).
fn bracket_t(f: &Form) -> BigInt {
    bracket_value(f, 6, &[[0, 1, 2], [0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5], [3, 4, 5]])
}

fn anchor_cubic() -> Form {
    Form::parse_with_vars("x0*x1*x2 + x1^3 + x2^3", 3).expect("valid")
}

/// Normalizing divisors for `c4` and `c6`: the bracket values on the anchor cubic
/// `xyz + y³ + z³`, on which `(c4, c6) = (1, −1)`.
fn anchors() -> &'static (BigInt, BigInt) {
    static A: std::sync::OnceLock<(BigInt, BigInt)> = std::sync::OnceLock::new();
    A.get_or_init(|| {
        let a = anchor_cubic();
        (bracket_s(&a), -bracket_t(&a))
    })
}

fn exact_quotient(n: &BigInt, d: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = n.div_rem(d);
    if !r.is_zero() {
        return Err(Error::ContractViolation(format!("{what} normalization is not integral")));
    }
    Ok(q)
}

/// The classical invariants `c4`, `c6` of a ternary cubic.
pub fn ternary_cubic_invariants(f: &Form) -> Result<(BigInt, BigInt)> {
    check_ternary(f)?;
    if f.degree() != 3 {
        return Err(Error::ContractViolation("cubic expected".into()));
    }
    let (s0, t0) = anchors();
    Ok((exact_quotient(&bracket_s(f), s0, "c4")?, exact_quotient(&bracket_t(f), t0, "c6")?))
}

/// Which pair of invariants a ternary form is measured with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum InvariantKind {
    /// `I1, I2` of an even-degree form.
    EvenI1I2,
    /// `c4, c6` of a cubic.
    CubicC4C6,
    /// `c4, c6` of the cubic covariant of an odd-degree form.
    CovariantC4C6,
}

impl InvariantKind {
    pub fn labels(self) -> (&'static str, &'static str) {
        match self {
            InvariantKind::EvenI1I2 => ("I1", "I2"),
            _ => ("c4", "c6"),
        }
    }
}

/// Two invariants with the recipe used to get them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPair {
    pub kind: InvariantKind,
    pub values: (BigInt, BigInt),
}

impl InvariantPair {
    /// Positive gcd of the two values; zero if both vanish.
    pub fn gcd(&self) -> BigInt {
        self.values.0.gcd(&self.values.1).abs()
    }
}

/// The invariant pair used for a ternary form of any degree `d ≥ 2`.
pub fn ternary_invariants(f: &Form) -> Result<InvariantPair> {
    check_ternary(f)?;
    let d = f.degree();
    if d < 2 {
        return Err(Error::ContractViolation("degree must be at least 2".into()));
    }
    if d % 2 == 0 {
        return Ok(InvariantPair { kind: InvariantKind::EvenI1I2, values: invariants_even(f)? });
    }
    if d == 3 {
        return Ok(InvariantPair { kind: InvariantKind::CubicC4C6, values: ternary_cubic_invariants(f)? });
    }
    let g = cubic_covariant(f)?;
    Ok(InvariantPair { kind: InvariantKind::CovariantC4C6, values: ternary_cubic_invariants(&g)? })
}
