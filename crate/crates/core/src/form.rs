//! Homogeneous integer forms.

use crate::arith::{exact_div, gcd_all, mod_u64, pow_u64, valuation, Valuation};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub type Exponent = Vec<u32>;

/// A homogeneous polynomial with integer coefficients.
///
/// Terms are keyed by exponent vectors; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct Form {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    nvars: usize,
    degree: u32,
    text: String,
}

impl From<Form> for FormRepr {
    fn from(f: Form) -> Self {
        FormRepr { nvars: f.nvars, degree: f.degree, text: f.to_string() }
    }
}

impl TryFrom<FormRepr> for Form {
    type Error = Error;
    fn try_from(r: FormRepr) -> Result<Self> {
        let f =
            if r.text.trim() == "0" { Form::zero(r.nvars, r.degree) } else { Form::parse_with_vars(&r.text, r.nvars)? };
        if f.degree != r.degree {
            return Err(Error::DimensionMismatch(format!("degree {} does not match text", r.degree)));
        }
        Ok(f)
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in descending lexicographic order.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

type Poly = HashMap<Exponent, BigInt>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = HashMap::with_capacity(a.len() * b.len());
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl Form {
    /// Build a form, validating exponent lengths and homogeneity. Zero coefficients are dropped.
    pub fn new(nvars: usize, degree: u32, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Result<Self> {
        if nvars < 2 {
            return Err(Error::DimensionMismatch(format!("forms need at least 2 variables, got {nvars}")));
        }
        let mut map: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!("exponent {e:?} has wrong length")));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::DimensionMismatch(format!("exponent {e:?} not of degree {degree}")));
            }
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Form { nvars, degree, terms: map })
    }

    pub fn from_i64(nvars: usize, degree: u32, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::new(nvars, degree, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    /// Build from coefficients listed in the order of [`monomials`].
    pub fn from_coeffs(nvars: usize, degree: u32, coeffs: &[BigInt]) -> Result<Self> {
        let mons = monomials(nvars, degree);
        if mons.len() != coeffs.len() {
            return Err(Error::DimensionMismatch(format!("expected {} coefficients", mons.len())));
        }
        Self::new(nvars, degree, mons.into_iter().zip(coeffs.iter().cloned()))
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        Form { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Coefficients in the order of [`monomials`], zeros included.
    pub fn dense_coeffs(&self) -> Vec<BigInt> {
        monomials(self.nvars, self.degree).iter().map(|e| self.coeff(e)).collect()
    }

    /// Nonnegative gcd of the coefficients (zero for the zero form).
    pub fn content(&self) -> BigInt {
        gcd_all(self.terms.values())
    }

    pub fn primitive_part(&self) -> Form {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_exact(&c)
    }

    pub fn div_exact(&self, c: &BigInt) -> Form {
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), exact_div(v, c))).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Form {
        if c.is_zero() {
            return Form::zero(self.nvars, self.degree);
        }
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Form {
        self.scale(&BigInt::from(-1))
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DimensionMismatch("adding forms of different shape".into()));
        }
        Form::new(
            self.nvars,
            self.degree,
            self.terms.iter().chain(other.terms.iter()).map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Minimum valuation of the coefficients at `p`.
    pub fn valuation(&self, p: u64) -> Valuation {
        self.terms.values().map(|c| valuation(c, p)).min().unwrap_or(Valuation::Infinite)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Sum of squared coefficients.
    pub fn norm_sq(&self) -> BigInt {
        self.terms.values().map(|c| c * c).sum()
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate modulo `p` at a residue point.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let pp = p as u128;
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let mut t = mod_u64(c, p) as u128;
            for (&x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x as u128 % pp;
                }
            }
            acc = (acc + t) % pp;
        }
        acc as u64
    }

    /// `x ↦ (c_0 x_0, ..., c_n x_n)`.
    pub fn scale_vars(&self, c: &[BigInt]) -> Form {
        assert_eq!(c.len(), self.nvars);
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            let mut t = v.clone();
            for (ci, &k) in c.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(ci.clone(), k as usize);
                }
            }
            if !t.is_zero() {
                terms.insert(e.clone(), t);
            }
        }
        Form { nvars: self.nvars, degree: self.degree, terms }
    }

    /// `x ↦ (p^{w_0} x_0, ..., p^{w_n} x_n)`.
    pub fn scale_vars_pow(&self, w: &[u32], p: u64) -> Form {
        let c: Vec<BigInt> = w.iter().map(|&k| pow_u64(p, k as u64)).collect();
        self.scale_vars(&c)
    }

    /// The form `F(x·T)`, where `x` is a row vector.
    ///
    /// Composition follows `substitute(substitute(F, A), B) == substitute(F, B·A)`.
    pub fn substitute(&self, t: &IntMatrix) -> Result<Form> {
        let n = self.nvars;
        if t.dim() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix for {} variables", t.dim(), t.dim(), n)));
        }
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || t.get(i, j).is_zero()));
        if diagonal {
            let c: Vec<BigInt> = (0..n).map(|i| t.get(i, i).clone()).collect();
            return Ok(self.scale_vars(&c));
        }
        // Powers of the linear forms y_j = sum_i x_i T_ij.
        let d = self.degree as usize;
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut lin: Poly = HashMap::new();
            for i in 0..n {
                let c = t.get(i, j);
                if !c.is_zero() {
                    let mut e = vec![0u32; n];
                    e[i] = 1;
                    lin.insert(e, c.clone());
                }
            }
            let mut pw = Vec::with_capacity(d + 1);
            let mut one: Poly = HashMap::new();
            one.insert(vec![0u32; n], BigInt::one());
            pw.push(one);
            for k in 1..=d {
                let next = poly_mul(&pw[k - 1], &lin);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc: Poly = HashMap::new();
        for (e, c) in &self.terms {
            let mut prod: Poly = HashMap::new();
            prod.insert(vec![0u32; n], c.clone());
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    prod = poly_mul(&prod, &powers[j][k as usize]);
                }
            }
            for (m, v) in prod {
                *acc.entry(m).or_insert_with(BigInt::zero) += v;
            }
        }
        Form::new(n, self.degree, acc)
    }

    /// Divide by `p^e`; panics if the result is not integral.
    pub fn div_pow(&self, p: u64, e: u64) -> Form {
        if e == 0 {
            return self.clone();
        }
        self.div_exact(&pow_u64(p, e))
    }

    /// Partial derivative with respect to `x_var`, of degree `d-1`.
    pub fn derivative(&self, var: usize) -> Form {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                terms.insert(e2, c * BigInt::from(e[var]));
            }
        }
        Form { nvars: self.nvars, degree: self.degree.saturating_sub(1), terms }
    }

    /// Mixed partial derivative `∂^a F` (ordinary, not divided).
    pub fn partial(&self, a: &[u32]) -> Form {
        let ord: u32 = a.iter().sum();
        if ord > self.degree {
            return Form::zero(self.nvars, 0);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.iter().zip(a).any(|(x, y)| x < y) {
                continue;
            }
            let mut coef = c.clone();
            for (&x, &y) in e.iter().zip(a) {
                for k in 0..y {
                    coef *= BigInt::from(x - k);
                }
            }
            let e2: Exponent = e.iter().zip(a).map(|(x, y)| x - y).collect();
            terms.insert(e2, coef);
        }
        Form { nvars: self.nvars, degree: self.degree - ord, terms }
    }

    /// Product of two forms in the same variables.
    pub fn mul(&self, other: &Form) -> Result<Form> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch("multiplying forms in different variables".into()));
        }
        let a: Poly = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        let b: Poly = other.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        Form::new(self.nvars, self.degree + other.degree, poly_mul(&a, &b))
    }

    /// Constant value of a degree-0 form.
    pub fn constant(&self) -> BigInt {
        assert_eq!(self.degree, 0, "not a constant");
        self.coeff(&vec![0; self.nvars])
    }

    /// Set the last variable to zero, giving a form in one fewer variable.
    pub fn restrict_last_zero(&self) -> Result<Form> {
        let n = self.nvars;
        Form::new(
            n - 1,
            self.degree,
            self.terms.iter().filter(|(e, _)| e[n - 1] == 0).map(|(e, c)| (e[..n - 1].to_vec(), c.clone())),
        )
    }

    /// Embed in more variables (new variables do not occur).
    pub fn extend_vars(&self, nvars: usize) -> Form {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(nvars, 0);
                (e2, c.clone())
            })
            .collect();
        Form { nvars, degree: self.degree, terms }
    }

    /// Canonical sign: make the leading (lexicographically largest) coefficient positive.
    pub fn sign_normalized(&self) -> Form {
        match self.terms.iter().next_back() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Form> {
        crate::parse::parse_form(text, None)
    }

    pub fn parse_with_vars(text: &str, nvars: usize) -> Result<Form> {
        crate::parse::parse_form(text, Some(nvars))
    }
}

impl std::str::FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Form> {
        Form::parse(s)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut parts: Vec<String> = Vec::new();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            if !mag.is_one() || vars.is_empty() {
                parts.push(mag.to_string());
            }
            parts.extend(vars);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Apply a weight after a change of variables.
///
/// Returns `(p^{-e} F(x·M_w·T), e)` with `M_w = diag(p^{w_i})` and `e` the valuation
/// of `F(x·M_w·T)`.
pub fn apply_weight(f: &Form, t: &IntMatrix, w: &[u32], p: u64) -> Result<(Form, u64)> {
    if w.len() != f.nvars() {
        return Err(Error::DimensionMismatch(format!("weight of length {} for {} variables", w.len(), f.nvars())));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let g = f.substitute(t)?.scale_vars_pow(w, p);
    let e = g.valuation(p).finite().expect("nonzero form");
    Ok((g.div_pow(p, e), e))
}

/// Whether `F` is unstable for the pair `(E, w)` at `p`: `(n+1)e > d·Σw`.
pub fn is_unstable(f: &Form, w: &[u32], p: u64) -> Result<bool> {
    let (_, e) = apply_weight(f, &IntMatrix::identity(f.nvars()), w, p)?;
    let sw: u64 = w.iter().map(|&x| x as u64).sum();
    Ok((f.nvars() as u64) * e > f.degree() as u64 * sw)
}
