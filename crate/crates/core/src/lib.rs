//! Exact arithmetic for period relations of degenerating abelian families.
//!
//! The crate is `no_std` (it needs `alloc`) and covers:
//!
//! - [`scalar`]: rationals and real/imaginary quadratic numbers with
//!   valuations and absolute values at every place,
//! - [`series`]: truncated power series with composition, compositional
//!   inversion and per-place radius/evaluation bookkeeping,
//! - [`poly`]: sparse polynomials in the period variables `Y_ij`, `Z_ij`,
//!   polynomial matrices and a small Buchberger engine,
//! - [`symplectic`]: exact symplectic and similitude matrices,
//! - [`ideal`]: the ideal of trivial relations generated by the entries of
//!   `YᵗZ − ZᵗY`,
//! - [`relations`]: non-archimedean and real-quadratic period relations with
//!   non-triviality certificates,
//! - [`gfun`]: derivation of the `G_ij` series and place radii.
//!
//! IO, JSON formats and the command line live in the `periodrel` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod error;
pub mod gfun;
pub mod ideal;
pub mod matrix;
pub mod poly;
pub mod relations;
pub mod rng;
pub mod scalar;
pub mod series;
pub mod symplectic;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{Block, MultiPoly, PolyMatrix, VarId};
pub use scalar::{Embedding, Place, Prime, QuadScalar, Rational, Ring, Scalar};
pub use series::TruncatedSeries;
