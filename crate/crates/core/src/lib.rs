//! Exact analysis of pencils of plane curves `mu*f + lambda*g` through
//! Ruppert-type linear maps.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`]: exact scalars over `Q` and `F_p`;
//! - [`poly`]: sparse polynomials, gcd, squarefree decomposition, parsing;
//! - [`matrix`]: exact kernels, ranks and determinants;
//! - [`ruppert`]: the maps `G_nu(f)`, `R_nu(f)`, `R(F)` and their dimension formulas;
//! - [`newton`]: Newton polygons, good edges and the sparse map `SR(h)`;
//! - [`spectrum`]: spectrum polynomial, per-member statistics and bound verdicts.

pub mod error;
pub mod field;
pub mod matrix;
pub mod newton;
pub mod poly;
pub mod ruppert;
pub mod spectrum;
pub mod worked_examples;

pub use error::{Error, Result};
pub use field::{CoefficientField, FieldElement};
pub use matrix::Matrix;
pub use newton::{GoodEdge, LatticePolygon};
pub use poly::{BivariatePolynomial, HomogeneousPolynomial3, MPoly, SquarefreeDecomposition};
