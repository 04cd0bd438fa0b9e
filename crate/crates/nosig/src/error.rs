//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tol:.0e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    EigNoConvergence { sweeps: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("Bloch vector has norm {norm} > 1, not a state")]
    BlochNorm { norm: f64 },

    #[error("operator trace {trace} is not 1 within {tol:.0e}")]
    TraceNotUnit { trace: f64, tol: f64 },

    #[error("operator is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("priors sum to {sum}, expected 1 within 1e-12")]
    PriorsNotNormalized { sum: f64 },

    #[error("prior {index} is negative ({value})")]
    NegativePrior { index: usize, value: f64 },

    #[error("an ensemble needs at least 2 members, got {count}")]
    TooFewStates { count: usize },

    #[error("coefficients have squared norm {norm_sq}, expected 1 within 1e-10")]
    CoefficientsNotNormalized { norm_sq: f64 },

    #[error("coefficient {index} is zero; the symmetric measurement phase c_k/|c_k| is undefined")]
    ZeroCoefficient { index: usize },

    #[error("more coefficients ({coeffs}) than states ({states})")]
    TooManyCoefficients { coeffs: usize, states: usize },

    #[error("radius {r} outside [0,1]")]
    RadiusOutOfRange { r: f64 },

    #[error("sin(theta) = 0: the equatorial construction degenerates; the bound for this case is 1/N")]
    DegenerateTheta,

    #[error("spin needs two_j >= 1, got {two_j}")]
    InvalidTwoJ { two_j: u32 },

    #[error("state family is not positive for this parameter: min eigenvalue {min_eigenvalue:.3e}")]
    FamilyNotPositive { min_eigenvalue: f64 },

    #[error("decomposition weights sum to {sum}, expected 1 within 1e-12")]
    WeightsNotNormalized { sum: f64 },

    #[error("decomposition weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },

    #[error("target weight {index} is not positive ({value}); the allocation bound needs p_k > 0")]
    NonPositiveTargetWeight { index: usize, value: f64 },

    #[error("decomposition averages differ by {distance:.3e} (Frobenius), tolerance 1e-10")]
    AveragesDiffer { distance: f64 },

    #[error("a decomposition family needs at least 2 decompositions, got {count}")]
    TooFewDecompositions { count: usize },

    #[error("candidate families do not target the same ensemble (first mismatch at index {index})")]
    MismatchedTargets { index: usize },

    #[error("no candidate families given")]
    EmptyCandidates,

    #[error("POVM element {index} fails positivity: min eigenvalue {min_eigenvalue:.3e}")]
    PovmElementNotPositive { index: usize, min_eigenvalue: f64 },

    #[error("POVM elements sum to identity only within {deviation:.3e} (Frobenius), tolerance 1e-9")]
    PovmNotComplete { deviation: f64 },

    #[error("POVM is empty")]
    EmptyPovm,
}
