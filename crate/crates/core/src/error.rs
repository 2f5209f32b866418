use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma has a pole at x = {0}; use recip_gamma_fn")]
    Pole(f64),

    #[error("{name} = {value} is outside the admissible range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("grid needs at least {needed} nodes, got {got}")]
    GridTooShort { needed: usize, got: usize },

    #[error("grid step must be positive and finite, got {0}")]
    BadStep(f64),

    #[error("grids differ in shape ({0} vs {1} nodes)")]
    ShapeMismatch(usize, usize),

    #[error("grid data must vanish at both ends (got {first} and {last})")]
    NonzeroBoundary { first: f64, last: f64 },

    #[error("lambda must be nonzero; for lambda = 0 use v0 + frac_integral(b)")]
    ZeroLambda,

    #[error("Laplace truncation unsound: s * t_end = {0} < 25")]
    LaplaceTruncation(f64),

    #[error("energy must be strictly positive on the fit window (found {value} at t = {t})")]
    NonPositiveEnergy { t: f64, value: f64 },

    #[error("fit window [{lo}, {hi}] contains fewer than two nodes")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("t_end = {t_end} exceeds the existence horizon T1 = {horizon}")]
    BeyondHorizon { t_end: f64, horizon: f64 },

    #[error("state dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("sub-solution check failed at t = {t}: excess {excess} over tolerance {tol}")]
    NotSubSolution { t: f64, excess: f64, tol: f64 },

    #[error("right-hand side is not nondecreasing in v near t = {t}, v = {v}")]
    NotMonotone { t: f64, v: f64 },

    #[error("{0}")]
    Precondition(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
