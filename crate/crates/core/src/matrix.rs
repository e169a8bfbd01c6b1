//! Square integer matrices acting on variables by `F ↦ F(x·T)`.

use crate::arith::{bareiss_det, mod_u64};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<String>>", into = "Vec<Vec<String>>")]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("matrix must be square and nonempty, got {n} rows")));
        }
        Ok(IntMatrix { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).expect("square matrix")
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        IntMatrix { rows }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::identity(n);
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        m
    }

    /// `diag(p^{w_0}, ..., p^{w_n})`.
    pub fn weight_diagonal(w: &[u32], p: u64) -> Self {
        let e: Vec<BigInt> = w.iter().map(|&k| num_traits::pow(BigInt::from(p), k as usize)).collect();
        Self::diagonal(&e)
    }

    /// Permutation matrix sending row `i` of the identity to row `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, &j) in perm.iter().enumerate() {
            rows[i][j] = BigInt::one();
        }
        IntMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn det(&self) -> BigInt {
        bareiss_det(&self.rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// True when every entry is divisible by `p`.
    pub fn is_zero_mod(&self, p: u64) -> bool {
        self.rows.iter().flatten().all(|v| mod_u64(v, p) == 0)
    }

    pub fn reduce_mod(&self, p: u64) -> Vec<Vec<u64>> {
        self.rows.iter().map(|r| r.iter().map(|v| mod_u64(v, p)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let rows = (0..n).map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect()).collect();
        IntMatrix { rows }
    }

    /// Inverse of a unimodular matrix (adjugate times ±1).
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(Error::ContractViolation("matrix is not unimodular".into()));
        }
        let adj = self.adjugate();
        Ok(IntMatrix { rows: adj.rows.into_iter().map(|r| r.into_iter().map(|v| v * &d).collect()).collect() })
    }

    pub fn adjugate(&self) -> Self {
        let n = self.dim();
        if n == 1 {
            return Self::identity(1);
        }
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| self.rows[r][c].clone()).collect())
                    .collect();
                let c = bareiss_det(&minor);
                rows[j][i] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        IntMatrix { rows }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.rows.iter().flatten().map(|v| v.abs()).max().unwrap_or_default()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.dim();
        assert_eq!(n, rhs.dim(), "matrix dimensions differ");
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    rows[i][j] += &self.rows[i][k] * &rhs.rows[k][j];
                }
            }
        }
        IntMatrix { rows }
    }
}

impl Mul for IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: IntMatrix) -> IntMatrix {
        &self * &rhs
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl From<IntMatrix> for Vec<Vec<String>> {
    fn from(m: IntMatrix) -> Self {
        m.rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
    }
}

impl TryFrom<Vec<Vec<String>>> for IntMatrix {
    type Error = Error;
    fn try_from(v: Vec<Vec<String>>) -> Result<Self> {
        let rows = v
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|s| {
                        s.parse::<BigInt>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad integer {s:?}") })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::new(rows)
    }
}
