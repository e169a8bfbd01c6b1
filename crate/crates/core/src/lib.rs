//! Minimization and reduction of integral models of projective hypersurfaces.
//!
//! A form `F` with integer coefficients is *non-minimal* at a prime `p` when some change
//! of variables `F ↦ p^{-e} F(x·M)`, with `det M = ±p^k` and `(n+1)e > d·k`, keeps it
//! integral; each such step strictly lowers the `p`-adic valuation of every invariant.

pub mod arith;
pub mod balance;
pub mod binary;
pub mod cubic_surface;
pub mod error;
pub mod factor;
pub mod form;
pub mod fp;
pub mod geometry;
pub mod global;
pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod plane_curve;
pub mod record;
pub mod reduce;
pub mod seed;
pub mod weights;

pub use arith::Valuation;
pub use error::{Error, Result};
pub use form::{apply_weight, is_unstable, Form};
pub use matrix::IntMatrix;
