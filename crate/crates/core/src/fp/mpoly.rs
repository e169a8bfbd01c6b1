//! Sparse multivariate polynomials over `F_p`.

use super::field::Fp;
use super::upoly::UPoly;
use crate::arith::binomial;
use crate::form::Form;
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic with `x_0 > x_1 > ...`.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub field: Fp,
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, u64>,
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl MPoly {
    pub fn zero(field: Fp, nvars: usize) -> MPoly {
        MPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Fp, nvars: usize, c: u64) -> MPoly {
        let mut m = MPoly::zero(field, nvars);
        if c % field.p() != 0 {
            m.terms.insert(vec![0; nvars], c % field.p());
        }
        m
    }

    pub fn monomial(field: Fp, e: Monomial, c: u64) -> MPoly {
        let mut m = MPoly::zero(field, e.len());
        if c % field.p() != 0 {
            m.terms.insert(e, c % field.p());
        }
        m
    }

    pub fn var(field: Fp, nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(field, e, 1)
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(field: Fp, coeffs: &[u64]) -> MPoly {
        let n = coeffs.len();
        let mut m = MPoly::zero(field, n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c % field.p() != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                m.terms.insert(e, c % field.p());
            }
        }
        m
    }

    pub fn from_form(f: &Form, field: Fp) -> MPoly {
        let mut m = MPoly::zero(field, f.nvars());
        for (e, c) in f.terms() {
            let r = field.from_big(c);
            if r != 0 {
                m.terms.insert(e.clone(), r);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn coeff(&self, e: &[u32]) -> u64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    fn insert_add(&mut self, e: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, &c) in &o.terms {
            r.insert_add(e.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, &c) in &o.terms {
            r.insert_add(e.clone(), self.field.neg(c));
        }
        r
    }

    pub fn scale(&self, k: u64) -> MPoly {
        let k = k % self.p();
        if k == 0 {
            return MPoly::zero(self.field, self.nvars);
        }
        let f = self.field;
        MPoly {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), f.mul(c, k))).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let f = self.field;
        let mut r = MPoly::zero(f, self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &o.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                r.insert_add(e, f.mul(ca, cb));
            }
        }
        r
    }

    /// Multiply by the monomial `c·x^e`.
    pub fn mul_term(&self, e: &[u32], c: u64) -> MPoly {
        let f = self.field;
        let mut r = MPoly::zero(f, self.nvars);
        if c % f.p() == 0 {
            return r;
        }
        for (ea, &ca) in &self.terms {
            let m: Monomial = ea.iter().zip(e).map(|(x, y)| x + y).collect();
            r.terms.insert(m, f.mul(ca, c));
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut r = MPoly::constant(self.field, self.nvars, 1);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, u64)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)).map(|(e, &c)| (e, c))
    }

    pub fn monic(&self, order: MonomialOrder) -> MPoly {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field.inv(c)),
        }
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        let f = self.field;
        let mut acc = 0;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (&x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = f.mul(t, f.pow(x, k as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Set `x_var = value`, keeping the variable count.
    pub fn substitute_value(&self, var: usize, value: u64) -> MPoly {
        let f = self.field;
        let mut r = MPoly::zero(f, self.nvars);
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] = 0;
            r.insert_add(e2, f.mul(c, f.pow(value, k as u64)));
        }
        r
    }

    /// Remove a variable that does not occur.
    pub fn drop_var(&self, var: usize) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars - 1);
        for (e, &c) in &self.terms {
            assert_eq!(e[var], 0, "dropping a variable that occurs");
            let mut e2 = e.clone();
            e2.remove(var);
            r.terms.insert(e2, c);
        }
        r
    }

    /// Insert a new variable (not occurring) at position `var`.
    pub fn insert_var(&self, var: usize) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars + 1);
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            e2.insert(var, 0);
            r.terms.insert(e2, c);
        }
        r
    }

    /// Replace `x_var` by the polynomial `g` (same variable set).
    pub fn substitute_poly(&self, var: usize, g: &MPoly) -> MPoly {
        let maxk = self.terms.keys().map(|e| e[var]).max().unwrap_or(0);
        let mut pw = vec![MPoly::constant(self.field, self.nvars, 1)];
        for k in 1..=maxk as usize {
            let next = pw[k - 1].mul(g);
            pw.push(next);
        }
        let mut r = MPoly::zero(self.field, self.nvars);
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            let t = pw[k].mul_term(&e2, c);
            r = r.add(&t);
        }
        r
    }

    /// Linear change of variables `F(x·T)` with `T` given mod p (row-vector convention).
    pub fn substitute_matrix(&self, t: &[Vec<u64>]) -> MPoly {
        let n = self.nvars;
        let f = self.field;
        let lins: Vec<MPoly> = (0..n).map(|j| MPoly::linear(f, &(0..n).map(|i| t[i][j]).collect::<Vec<_>>())).collect();
        let maxd = self.total_degree().unwrap_or(0) as usize;
        let pows: Vec<Vec<MPoly>> = lins
            .iter()
            .map(|l| {
                let mut v = vec![MPoly::constant(f, n, 1)];
                for k in 1..=maxd {
                    let next = v[k - 1].mul(l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut r = MPoly::zero(f, n);
        for (e, &c) in &self.terms {
            let mut prod = MPoly::constant(f, n, c);
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    prod = prod.mul(&pows[j][k as usize]);
                }
            }
            r = r.add(&prod);
        }
        r
    }

    /// Divided derivative `D^a`: the coefficient extraction `Σ C(e, a) c_e x^{e-a}`.
    pub fn divided_derivative(&self, a: &[u32]) -> MPoly {
        let f = self.field;
        let mut r = MPoly::zero(f, self.nvars);
        for (e, &c) in &self.terms {
            if !divides(a, e) {
                continue;
            }
            let mut coef = c;
            for (&x, &y) in e.iter().zip(a) {
                coef = f.mul(coef, binomial(x as u64, y as u64) % f.p());
            }
            let e2: Monomial = e.iter().zip(a).map(|(x, y)| x - y).collect();
            r.insert_add(e2, coef);
        }
        r
    }

    pub fn partial(&self, var: usize) -> MPoly {
        let mut a = vec![0; self.nvars];
        a[var] = 1;
        self.divided_derivative(&a)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let order = MonomialOrder::Lex;
        let (ld, lc) = d.leading(order)?;
        let ld = ld.clone();
        let inv = self.field.inv(lc);
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.field, self.nvars);
        while let Some((lr, cr)) = rem.leading(order) {
            if !divides(&ld, lr) {
                return None;
            }
            let e: Monomial = lr.iter().zip(&ld).map(|(x, y)| x - y).collect();
            let c = self.field.mul(cr, inv);
            rem = rem.sub(&d.mul_term(&e, c));
            q.insert_add(e, c);
        }
        Some(q)
    }

    /// Variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    /// View as a univariate polynomial in `x_var`; `None` if other variables occur.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let mut c = Vec::new();
        for (e, &v) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            let k = e[var] as usize;
            if c.len() <= k {
                c.resize(k + 1, 0);
            }
            c[k] = v;
        }
        Some(UPoly::new(c))
    }

    pub fn from_upoly(field: Fp, nvars: usize, var: usize, u: &UPoly) -> MPoly {
        let mut m = MPoly::zero(field, nvars);
        for (k, &c) in u.c.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                m.terms.insert(e, c);
            }
        }
        m
    }

    /// Coefficients of a binary form in `(x_0, x_1)` ordered by the exponent of `x_0`.
    pub fn binary_coeffs(&self) -> Vec<u64> {
        assert_eq!(self.nvars, 2);
        let d = self.total_degree().unwrap_or(0) as usize;
        let mut c = vec![0u64; d + 1];
        for (e, &v) in &self.terms {
            c[e[0] as usize] = v;
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 3], &[1, 1, 0]), Ordering::Greater);
    }

    #[test]
    fn divided_derivative_char2() {
        let f = Fp::new(2).unwrap();
        // x0^2 x1: D^(2,0) = x1 while the ordinary second derivative vanishes mod 2.
        let g = MPoly::monomial(f, vec![2, 1], 1);
        assert_eq!(g.divided_derivative(&[2, 0]), MPoly::monomial(f, vec![0, 1], 1));
    }

    #[test]
    fn exact_division() {
        let f = Fp::new(7).unwrap();
        let a = MPoly::linear(f, &[1, 2, 3]);
        let b = MPoly::linear(f, &[0, 1, 5]);
        let prod = a.mul(&b).mul(&a);
        assert_eq!(prod.div_exact(&a).unwrap(), a.mul(&b));
        assert!(prod.div_exact(&MPoly::linear(f, &[1, 1, 1])).is_none());
    }
}
