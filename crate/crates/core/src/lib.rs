//! Bethe ansatz solutions of quasi-exactly solvable difference equations.
//!
//! Six one-dimensional discrete quantum mechanical models are covered: the
//! crossed Meixner–Pollaczek/continuous Hahn model, two sextic deformations
//! of the difference harmonic oscillator, two centrifugal-sextic deformations
//! and the Askey–Wilson type `q`-model. For each model the similarity
//! transformed Hamiltonian is built exactly as a finite matrix on its
//! invariant polynomial subspace; the matrix eigenvectors give Bethe roots
//! that are polished against the Bethe ansatz equations, and the closed-form
//! eigenvalue-from-roots formulas are checked against the spectrum.
//!
//! All numerics are generic over the real scalar ([`Real`]: `f32` or `f64`);
//! the aliases at the crate root fix the scalar to `f64`, which is what the
//! stated tolerances assume.

pub mod bethe;
pub mod error;
pub mod limits;
pub mod models;
pub mod numerics;
pub mod operator;
pub mod scalar;
pub mod spectral;
pub mod wavefun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex = num_complex::Complex<f64>;
pub type PolynomialC = numerics::Polynomial<f64>;
pub type MatrixC = numerics::CMatrix<f64>;
pub type EigenDecompositionC = numerics::EigenDecomposition<f64>;
pub type Spec = models::ModelSpec<f64>;
pub type Params = models::ModelParams<f64>;
pub type OperatorMatrixC = operator::OperatorMatrix<f64>;
pub type RootSetC = spectral::RootSet<f64>;
pub type OracleEigenpairC = spectral::OracleEigenpair<f64>;
pub type BetheSolutionC = bethe::BetheSolution<f64>;
pub type LimitCaseC = limits::LimitCase<f64>;
pub type GridSpecC = wavefun::GridSpec<f64>;
