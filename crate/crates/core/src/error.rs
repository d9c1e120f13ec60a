use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure mode of the library. Numeric payloads are carried as `f64`
/// regardless of the scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inexact polynomial division: remainder {remainder:e} exceeds {bound:e}")]
    InexactDivision { remainder: f64, bound: f64 },

    #[error("leading coefficient {leading:e} is negligible relative to {norm:e}")]
    DegenerateLeadingCoefficient { leading: f64, norm: f64 },

    #[error("no convergence after {iterations} iterations (dimension {dim})")]
    NoConvergence { dim: usize, iterations: usize },

    #[error("singular Jacobian (condition estimate {condition:e})")]
    SingularJacobian { condition: f64 },

    #[error("log-gamma pole at z = {re} + {im}i")]
    PoleOfGamma { re: f64, im: f64 },

    #[error("divergent q-product: {0}")]
    DivergentProduct(String),

    #[error("potential has a pole at x = {re} + {im}i")]
    PoleOfPotential { re: f64, im: f64 },

    #[error("sector mismatch: {0}")]
    SectorMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation not supported for family {0}")]
    UnsupportedFamily(String),

    #[error("invariant subspace leak in column {column}: overflow {overflow:e} (column norm {norm:e})")]
    SubspaceLeak { column: usize, overflow: f64, norm: f64 },

    #[error("degenerate Bethe roots: |x_{i} - x_{j}| = {distance:e}")]
    DegenerateRoots { i: usize, j: usize, distance: f64 },

    #[error("root count {got} does not match the sector (expected {expected})")]
    RootCountMismatch { got: usize, expected: usize },

    #[error("limit violated at m = {m}: computed {computed}, expected {expected}, gap {gap:e}")]
    LimitViolation { m: usize, computed: f64, expected: f64, gap: f64 },

    #[error("malformed model document: {0}")]
    Document(String),
}
