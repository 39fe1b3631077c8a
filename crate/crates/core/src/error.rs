use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (|A[{row}][{col}] - A[{col}][{row}]| = {deviation:e})")]
    NonSymmetric { row: usize, col: usize, deviation: f64 },

    #[error("eigen-solver failed to converge for eigenvalue {index}")]
    EigenSolverFailed { index: usize },

    #[error(
        "source has component {component:e} along zero mode {mode} (limit {limit:e}); \
         sources must be built relationally from edge values"
    )]
    NonzeroKernelComponent { mode: usize, component: f64, limit: f64 },

    #[error("retained eigenvalue {index} is {value:e}; hyperplane amplitudes need positive modes")]
    NonPositiveEigenvalue { index: usize, value: f64 },

    #[error("kernel is singular (relative determinant {relative_det:e}); use symmetry_amplitude")]
    SingularKernel { relative_det: f64 },

    #[error("resonance at omega = {omega}: denominator {denominator:e} vanishes")]
    Resonance { omega: f64, denominator: f64 },

    #[error("no coupling defined between sources {0} and {1}")]
    UnknownPair(usize, usize),

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("all amplitudes are zero; intensities cannot be normalized")]
    ZeroIntensity,
}

impl Error {
    /// True for failures caused by the numbers rather than the input shape.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::EigenSolverFailed { .. }
                | Error::NonzeroKernelComponent { .. }
                | Error::NonPositiveEigenvalue { .. }
                | Error::SingularKernel { .. }
                | Error::Resonance { .. }
                | Error::ZeroIntensity
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
