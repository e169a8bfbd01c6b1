//! Audit records for minimization: every result satisfies `scale · output = F(x·T)`.

use crate::arith::pow_u64;
use crate::error::Result;
use crate::form::Form;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One successful minimization step: `p^e · form = F(x·matrix)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub form: Form,
    pub matrix: IntMatrix,
    pub e: u64,
}

/// Accumulated transformation at a single prime: `p^scale_exp · output = F(x·matrix)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub matrix: IntMatrix,
    pub scale_exp: u64,
    pub prime: u64,
    /// Number of successful steps composed into `matrix`.
    pub steps: usize,
}

impl TransformRecord {
    pub fn identity(n: usize, p: u64) -> Self {
        TransformRecord { matrix: IntMatrix::identity(n), scale_exp: 0, prime: p, steps: 0 }
    }

    /// Compose a step applied to the current output.
    pub fn push(&mut self, step_matrix: &IntMatrix, e: u64) {
        self.matrix = step_matrix * &self.matrix;
        self.scale_exp += e;
        self.steps += 1;
    }

    /// Check `p^e · output == input(x·T)` exactly.
    pub fn verify(&self, input: &Form, output: &Form) -> Result<bool> {
        let lhs = output.scale(&pow_u64(self.prime, self.scale_exp));
        Ok(lhs == input.substitute(&self.matrix)?)
    }
}

/// Result of a minimization at a single prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimized {
    pub form: Form,
    pub record: TransformRecord,
}

/// Transformation across several primes: `(∏ p^{scale_exp[p]}) · form = F(x·matrix)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalRecord {
    pub form: Form,
    pub matrix: IntMatrix,
    pub scale_exp: BTreeMap<u64, u64>,
    pub primes_touched: Vec<u64>,
}

impl GlobalRecord {
    pub fn scale(&self) -> BigInt {
        self.scale_exp.iter().fold(BigInt::one(), |acc, (&p, &e)| acc * pow_u64(p, e))
    }

    pub fn verify(&self, input: &Form) -> Result<bool> {
        Ok(self.form.scale(&self.scale()) == input.substitute(&self.matrix)?)
    }
}
