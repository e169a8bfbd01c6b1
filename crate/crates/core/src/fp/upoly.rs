//! Dense univariate polynomials over `F_p`.

use super::field::Fp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients in increasing degree; the leading coefficient is nonzero (empty for zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    pub c: Vec<u64>,
}

const EXHAUSTIVE_ROOT_LIMIT: u64 = 257;

impl UPoly {
    pub fn new(mut c: Vec<u64>) -> UPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> UPoly {
        UPoly { c: vec![] }
    }

    pub fn one() -> UPoly {
        UPoly { c: vec![1] }
    }

    /// `x - r`.
    pub fn linear_root(f: &Fp, r: u64) -> UPoly {
        UPoly::new(vec![f.neg(r), 1])
    }

    pub fn x() -> UPoly {
        UPoly { c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn eval(&self, f: &Fp, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn add(&self, f: &Fp, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.add(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0))).collect();
        UPoly::new(c)
    }

    pub fn sub(&self, f: &Fp, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.sub(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0))).collect();
        UPoly::new(c)
    }

    pub fn mul(&self, f: &Fp, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, f: &Fp, k: u64) -> UPoly {
        UPoly::new(self.c.iter().map(|&a| f.mul(a, k)).collect())
    }

    pub fn monic(&self, f: &Fp) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(f, f.inv(self.lead()))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &Fp, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), UPoly::new(r));
        }
        let inv = f.inv(d.lead());
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = f.mul(r[k + dd], inv);
            q[k] = coef;
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] = f.sub(r[k + j], f.mul(coef, b));
                }
            }
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, f: &Fp, d: &UPoly) -> UPoly {
        self.divrem(f, d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, f: &Fp, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Fp) -> UPoly {
        if self.c.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, &a)| f.mul(a, i as u64 % f.p())).collect())
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Fp, mut e: u64, m: &UPoly) -> UPoly {
        let mut base = self.rem(f, m);
        let mut r = UPoly::one().rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        r
    }

    /// Distinct roots in `F_p`, sorted ascending.
    pub fn roots(&self, f: &Fp) -> Vec<u64> {
        self.roots_seeded(f, crate::seed::seed())
    }

    pub fn roots_seeded(&self, f: &Fp, seed: u64) -> Vec<u64> {
        match self.degree() {
            None => panic!("roots of the zero polynomial"),
            Some(0) => return vec![],
            _ => {}
        }
        let p = f.p();
        if p <= EXHAUSTIVE_ROOT_LIMIT {
            return (0..p).filter(|&x| self.eval(f, x) == 0).collect();
        }
        let g = self.monic(f);
        // Product of the distinct linear factors: gcd with x^p - x.
        let xp = UPoly::x().powmod(f, p, &g);
        let split = g.gcd(f, &xp.sub(f, &UPoly::x()));
        let mut roots = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        equal_degree_split(f, &split, &mut rng, &mut roots);
        roots.sort_unstable();
        roots
    }

    /// Roots with multiplicities, sorted by root.
    pub fn roots_with_multiplicity(&self, f: &Fp) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for r in self.roots(f) {
            let lin = UPoly::linear_root(f, r);
            let mut g = self.clone();
            let mut m = 0;
            loop {
                let (q, rem) = g.divrem(f, &lin);
                if !rem.is_zero() {
                    break;
                }
                g = q;
                m += 1;
            }
            out.push((r, m));
        }
        out
    }
}

/// Split a monic squarefree product of distinct linear factors (odd `p`).
fn equal_degree_split(f: &Fp, g: &UPoly, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(g.c[0])),
        Some(_) => loop {
            let a = rng.gen_range(0..f.p());
            let shifted = UPoly::new(vec![a, 1]);
            let h = shifted.powmod(f, (f.p() - 1) / 2, g).sub(f, &UPoly::one());
            let d = g.gcd(f, &h);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < g.degree().unwrap() {
                let (q, _) = g.divrem(f, &d);
                equal_degree_split(f, &d, rng, out);
                equal_degree_split(f, &q.monic(f), rng, out);
                return;
            }
        },
    }
}
