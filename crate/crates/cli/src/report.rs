//! Serialized output documents. Complex numbers are `[re, im]` pairs.

use num_complex::Complex;
use qes_core::bethe::{BetheSolution, SeedMode, SolutionFlags, Tolerances};
use qes_core::limits::{LimitReport, ReducedBaeReport};
use qes_core::models::ModelDocument;
use qes_core::wavefun::GridRow;
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn pair(c: Complex<f64>) -> [f64; 2] {
    // normalise signed zeros
    [c.re + 0.0, c.im + 0.0]
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedMode>,
}

#[derive(Debug, Serialize)]
pub struct SolutionOut {
    pub index: usize,
    pub eigenvalue: [f64; 2],
    pub eigenvalue_oracle: [f64; 2],
    pub discrepancy: f64,
    pub roots_x: Vec<[f64; 2]>,
    pub roots_eta: Vec<[f64; 2]>,
    pub residual_max: f64,
    pub flags: SolutionFlags,
    pub pass: bool,
}

impl SolutionOut {
    pub fn new(index: usize, s: &BetheSolution<f64>, tol: &Tolerances) -> Self {
        Self {
            index,
            eigenvalue: pair(s.e_formula),
            eigenvalue_oracle: pair(s.e_oracle),
            discrepancy: s.discrepancy(),
            roots_x: s.roots.roots_x.iter().copied().map(pair).collect(),
            roots_eta: s.roots.roots_eta.iter().copied().map(pair).collect(),
            residual_max: s.residual_max(),
            flags: s.flags,
            pass: s.passes(tol),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveDoc {
    pub spec: ModelDocument,
    pub solutions: Vec<SolutionOut>,
    pub pass: bool,
    pub meta: Meta,
}

#[derive(Debug, Serialize)]
pub struct VerifiedSolution {
    #[serde(flatten)]
    pub solution: SolutionOut,
    pub schrodinger_residual_max: f64,
}

#[derive(Debug, Serialize)]
pub struct WavefunctionChecks {
    pub points: usize,
    pub zero_mode_residual_max: f64,
    pub phi0_positive: bool,
    pub schrodinger_residual_max: f64,
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub spec: ModelDocument,
    pub solutions: Vec<VerifiedSolution>,
    pub checks: WavefunctionChecks,
    pub pass: bool,
    pub meta: Meta,
}

#[derive(Debug, Serialize)]
pub struct LimitsDoc {
    pub case: &'static str,
    pub spec: ModelDocument,
    pub report: LimitReport,
    pub reduced_bae: Option<ReducedBaeReport>,
    pub pass: bool,
    pub meta: Meta,
}

#[derive(Debug, Serialize)]
pub struct GridDoc {
    pub spec: ModelDocument,
    pub solution: usize,
    pub eigenvalue: [f64; 2],
    pub rows: Vec<GridRow>,
    pub pass: bool,
    pub meta: Meta,
}
