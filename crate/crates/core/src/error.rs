use thiserror::Error;

/// Every failure the library reports.
///
/// Contract violations (bad shapes, non-finite input, unknown ids) and
/// physical obstructions (closed gaps, broken symmetries) share one enum so
/// callers can match on a single type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("operator is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("operator square is not proportional to the identity (residual {residual:.3e})")]
    BadSquare { residual: f64 },
    #[error("declared square sign {declared} disagrees with the matrix ({actual})")]
    SquareSignMismatch { declared: i8, actual: i8 },
    #[error("declared commutation sign {declared} for {pair} disagrees with the matrices ({actual})")]
    CommutationSignMismatch { pair: String, declared: i8, actual: i8 },
    #[error("not in catalog: {0}")]
    NotInCatalog(String),
    #[error("symmetry {kind} broken (residual {residual:.3e})")]
    SymmetryBroken { kind: String, residual: f64 },
    #[error("no {axis} line gap (margin {margin:.3e})")]
    NoLineGap { axis: String, margin: f64 },
    #[error("Hamiltonian is close to defective (eigenvector condition number {condition:.3e})")]
    NearDefective { condition: f64 },
    #[error("gap closes along the deformation path at t = {t} (margin {margin:.3e})")]
    GapClosedAlongPath { t: f64, margin: f64 },
    #[error("matrix is not invertible at a grid point (smallest singular value {margin:.3e})")]
    NotInvertible { margin: f64 },
    #[error("invariant not quantized (residual {residual:.3e})")]
    Unquantized { residual: f64 },
    #[error("reference energy lies on the sampled spectrum (distance {margin:.3e})")]
    ReferenceOnSpectrum { margin: f64 },
    #[error("Hamiltonian is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("spectrum is gapless at zero energy (margin {margin:.3e})")]
    Gapless { margin: f64 },
    #[error("no supported gauge makes the matrix real")]
    NotRealizable,
    #[error("matrix is singular")]
    Singular,
    #[error("no generator block for class {class} at delta = {delta}")]
    MissingBlock { class: String, delta: i64 },
    #[error("unknown identifier: {0}")]
    UnknownId(String),
    #[error("homomorphism codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambiguous relative sign for {class} at delta = {delta}")]
    AmbiguousRelativeSign { class: String, delta: i64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Short machine-readable tag, used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "NonFinite",
            Error::NotSquare { .. } => "NotSquare",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::BadSquare { .. } => "BadSquare",
            Error::SquareSignMismatch { .. } => "SquareSignMismatch",
            Error::CommutationSignMismatch { .. } => "CommutationSignMismatch",
            Error::NotInCatalog(_) => "NotInCatalog",
            Error::SymmetryBroken { .. } => "SymmetryBroken",
            Error::NoLineGap { .. } => "NoLineGap",
            Error::NearDefective { .. } => "NearDefective",
            Error::GapClosedAlongPath { .. } => "GapClosedAlongPath",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::Unquantized { .. } => "Unquantized",
            Error::ReferenceOnSpectrum { .. } => "ReferenceOnSpectrum",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::Gapless { .. } => "Gapless",
            Error::NotRealizable => "NotRealizable",
            Error::Singular => "Singular",
            Error::MissingBlock { .. } => "MissingBlock",
            Error::UnknownId(_) => "UnknownId",
            Error::CodomainMismatch(_) => "CodomainMismatch",
            Error::IllDefinedHom(_) => "IllDefinedHom",
            Error::Parse(_) => "Parse",
            Error::AmbiguousRelativeSign { .. } => "AmbiguousRelativeSign",
            Error::InvalidTolerance(_) => "InvalidTolerance",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
