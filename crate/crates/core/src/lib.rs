#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Spectral theory of perturbed Jacobi Sturm–Liouville operators on
//! `(0, π/2)`: Galerkin eigenbases, large-`n` asymptotics, summability
//! kernels and equiconvergence with cosine expansions.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the bottom fix the scalar to `f64`.

pub mod asymptotics;
pub mod eigensolver;
pub mod error;
pub mod expansion;
pub mod kernels;
pub mod linalg;
pub mod operator;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type SymmetricMatrix64 = linalg::SymmetricMatrix<f64>;
pub type QuadratureRule64 = linalg::QuadratureRule<f64>;
pub type OperatorSpec64 = operator::OperatorSpec<f64>;
pub type EigenDecomposition64 = eigensolver::EigenDecomposition<f64>;
pub type SummabilitySequence64 = kernels::SummabilitySequence<f64>;
pub type PiecewiseFunction64 = expansion::PiecewiseFunction<f64>;
