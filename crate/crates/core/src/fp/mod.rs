//! Arithmetic over prime fields: univariate and multivariate polynomials, Gröbner bases,
//! zero-dimensional solving and resultants.

pub mod field;
pub mod groebner;
pub mod linalg;
pub mod mpoly;
pub mod resultant;
pub mod solve;
pub mod upoly;

pub use field::Fp;
pub use groebner::{groebner_basis, normal_form, Ideal};
pub use mpoly::{MPoly, MonomialOrder};
pub use resultant::{resultant, resultant_int};
pub use solve::{solve_zero_dim, ZeroDimSolution};
pub use upoly::UPoly;
