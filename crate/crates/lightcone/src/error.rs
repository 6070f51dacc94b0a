use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature or ODE integration did not converge: {0}")]
    NonConvergent(String),
    #[error("integrand is not finite at {0}")]
    SingularSample(String),
    #[error("rotation parameter must be nonzero")]
    ZeroParameter,
    #[error("one-parameter subgroup generator is zero")]
    ZeroGenerator,
    #[error("Frenet frame is degenerate: {0}")]
    DegenerateFrame(String),
    #[error("curve is not unit speed: <c',c'> = {0}")]
    NotUnitSpeed(f64),
    #[error("geodesic data violate the Gram relations: {0}")]
    InvalidGram(String),
    #[error("degenerate point at ({u}, {v})")]
    DegeneratePoint { u: f64, v: f64 },
    #[error("affine slice is empty in the light cone")]
    EmptyIntersection,
    #[error("integration path is singular: {0}")]
    SingularPath(String),
    #[error("Weierstrass data undefined: {0}")]
    UndefinedData(String),
    #[error("family parameter lambda must be nonzero")]
    ZeroLambda,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("c = -1/2 is a pole of the Lawson-side map")]
    PoleAtMinusHalf,
    #[error("frame is not unimodular: |det F - 1| = {0}")]
    NonUnimodular(f64),
    #[error("degree-4 fit residual {residual} exceeds {limit}")]
    FitResidualExceeded { residual: f64, limit: f64 },
    #[error("ambiguous branch: {0}")]
    AmbiguousBranch(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
