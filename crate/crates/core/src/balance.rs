//! Floating-point helpers for reduction: balancing a form under `SL(n, R)` and LLL.
//!
//! The Bombieri norm `Σ |a_α|² α!/d!` is invariant under orthogonal substitutions, so
//! its minimum over `F(x·g)` depends only on the class of `g` modulo `O(n)`. At the
//! minimizing `G`, the lattice spanned by the rows of `G⁻¹` is LLL-reduced; the
//! resulting unimodular `U` makes `F(x·U) = F_bal(x·U·G⁻¹)` small.

use crate::form::{Exponent, Form};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use std::collections::HashMap;

const MAX_ITERATIONS: usize = 20_000;
const TOLERANCE: f64 = 1e-13;

type Mat = Vec<Vec<f64>>;

#[derive(Debug, Clone)]
struct RealForm {
    n: usize,
    d: u32,
    terms: HashMap<Exponent, f64>,
}

fn multinomial(d: u32, e: &[u32]) -> f64 {
    let mut r = 1.0;
    let mut k = 0u32;
    for &a in e {
        for j in 1..=a {
            k += 1;
            r *= k as f64 / j as f64;
        }
    }
    debug_assert_eq!(k, d);
    r
}

impl RealForm {
    /// Coefficients scaled by the largest absolute value.
    fn from_form(f: &Form) -> Option<RealForm> {
        let max = f.max_abs_coeff();
        let bits = max.bits().saturating_sub(60);
        let scale = |c: &BigInt| -> Option<f64> {
            let shifted: BigInt = if c.is_negative() { -((-c) >> bits) } else { c >> bits };
            shifted.to_f64()
        };
        let m = scale(&max)?;
        if m == 0.0 {
            return None;
        }
        let mut terms = HashMap::new();
        for (e, c) in f.terms() {
            terms.insert(e.clone(), scale(c)? / m);
        }
        Some(RealForm { n: f.nvars(), d: f.degree(), terms })
    }

    fn norm_sq(&self) -> f64 {
        self.terms.iter().map(|(e, c)| c * c / multinomial(self.d, e)).sum()
    }

    /// `F(x·g)` for a real matrix `g`.
    fn substitute(&self, g: &Mat) -> RealForm {
        let n = self.n;
        let d = self.d as usize;
        let mut powers: Vec<Vec<HashMap<Exponent, f64>>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut lin = HashMap::new();
            for (i, row) in g.iter().enumerate() {
                let mut e = vec![0u32; n];
                e[i] = 1;
                lin.insert(e, row[j]);
            }
            let mut pw = vec![HashMap::from([(vec![0u32; n], 1.0)])];
            for k in 1..=d {
                let next = mul(&pw[k - 1], &lin);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc: HashMap<Exponent, f64> = HashMap::new();
        for (e, &c) in &self.terms {
            let mut prod = HashMap::from([(vec![0u32; n], c)]);
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    prod = mul(&prod, &powers[j][k as usize]);
                }
            }
            for (m, v) in prod {
                *acc.entry(m).or_insert(0.0) += v;
            }
        }
        RealForm { n, d: self.d, terms: acc }
    }

    /// `M[a][i] = ⟨F, x_a ∂F/∂x_i⟩` for the Bombieri inner product.
    fn moment(&self) -> Mat {
        let n = self.n;
        let mut m = vec![vec![0.0; n]; n];
        for (e, &c) in &self.terms {
            for i in 0..n {
                if e[i] == 0 {
                    continue;
                }
                for (a, row) in m.iter_mut().enumerate() {
                    let mut b = e.clone();
                    b[i] -= 1;
                    b[a] += 1;
                    if let Some(&fb) = self.terms.get(&b) {
                        row[i] += fb * c * e[i] as f64 / multinomial(self.d, &b);
                    }
                }
            }
        }
        m
    }
}

fn mul(a: &HashMap<Exponent, f64>, b: &HashMap<Exponent, f64>) -> HashMap<Exponent, f64> {
    let mut out = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0.0) += ca * cb;
        }
    }
    out
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

fn det(a: &Mat) -> f64 {
    let n = a.len();
    let mut m = a.clone();
    let mut d = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs())).unwrap();
        if m[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d
}

fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut m: Mat = a.iter().zip(identity(n)).map(|(r, e)| r.iter().copied().chain(e).collect()).collect();
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[piv][c] == 0.0 {
            return None;
        }
        m.swap(piv, c);
        let p = m[c][c];
        for k in 0..2 * n {
            m[c][k] /= p;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                for k in 0..2 * n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A matrix `G` with `det G = 1` minimizing the Bombieri norm of `F(x·G)`, by gradient
/// descent with backtracking. `None` if the iteration degenerates.
fn balance(f: &RealForm) -> Option<Mat> {
    let n = f.n;
    let mut cur = f.clone();
    let mut norm = cur.norm_sq();
    let mut total = identity(n);
    let mut eta = 0.25;
    for _ in 0..MAX_ITERATIONS {
        let m = cur.moment();
        let tr: f64 = (0..n).map(|i| m[i][i]).sum::<f64>() / n as f64;
        let s: Mat = (0..n)
            .map(|i| (0..n).map(|j| (m[i][j] + m[j][i]) / 2.0 / norm - if i == j { tr / norm } else { 0.0 }).collect())
            .collect();
        let grad: f64 = s.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
        if grad < TOLERANCE {
            break;
        }
        loop {
            let g: Mat =
                (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - eta * s[i][j]).collect()).collect();
            let dg = det(&g);
            if dg > 0.0 {
                let g: Mat = g.iter().map(|r| r.iter().map(|x| x / dg.powf(1.0 / n as f64)).collect()).collect();
                let next = cur.substitute(&g);
                let nn = next.norm_sq();
                if nn.is_finite() && nn < norm {
                    // Rescale so the coefficients stay of unit size.
                    let c = nn.sqrt();
                    let next = RealForm { terms: next.terms.into_iter().map(|(e, v)| (e, v / c)).collect(), ..next };
                    total = matmul(&g, &total);
                    norm = 1.0;
                    cur = next;
                    eta = (eta * 1.5).min(1.0);
                    break;
                }
            }
            eta /= 2.0;
            if eta < 1e-18 {
                return total.iter().flatten().all(|x| x.is_finite()).then_some(total);
            }
        }
    }
    total.iter().flatten().all(|x| x.is_finite()).then_some(total)
}

/// LLL reduction of the rows of `b`; returns the integral transformation `U` with
/// `U·b` reduced, or `None` if it does not fit in `i64`.
fn lll(b: &Mat) -> Option<Vec<Vec<i64>>> {
    let n = b.len();
    let mut b = b.clone();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let gram_schmidt = |b: &Mat| -> (Mat, Mat) {
        let mut q = b.clone();
        let mut mu = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..i {
                let qq: f64 = q[j].iter().map(|x| x * x).sum();
                mu[i][j] = b[i].iter().zip(&q[j]).map(|(x, y)| x * y).sum::<f64>() / qq;
                let qj = q[j].clone();
                for (x, y) in q[i].iter_mut().zip(qj) {
                    *x -= mu[i][j] * y;
                }
            }
        }
        (q, mu)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n {
        guard += 1;
        if guard > 100_000 {
            return None;
        }
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(&b);
            let q = mu[k][j].round();
            if q != 0.0 {
                if q.abs() > 1e15 {
                    return None;
                }
                let qi = q as i64;
                for c in 0..n {
                    b[k][c] -= q * b[j][c];
                    u[k][c] = u[k][c].checked_sub(qi.checked_mul(u[j][c])?)?;
                }
            }
        }
        let (q, mu) = gram_schmidt(&b);
        let nk: f64 = q[k].iter().map(|x| x * x).sum();
        let nk1: f64 = q[k - 1].iter().map(|x| x * x).sum();
        if nk >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * nk1 {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    Some(u)
}

/// A unimodular `U` for which `F(x·U)` is expected to have small coefficients, found by
/// balancing `F` and LLL-reducing the balanced lattice. `None` when the numerics fail.
pub fn balanced_lll(f: &Form) -> Option<IntMatrix> {
    let n = f.nvars();
    if n < 2 || f.degree() == 0 {
        return None;
    }
    let real = RealForm::from_form(f)?;
    let g = balance(&real)?;
    let u = lll(&inverse(&g)?)?;
    let m = IntMatrix::from_i64(&u.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
    m.is_unimodular().then_some(m)
}
