use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero divisor: norm {norm:.3e} below tolerance")]
    ZeroDivisor { norm: f64 },
    #[error("sigma mismatch: {0} vs {1}")]
    SigmaMismatch(i8, i8),
    #[error("invalid sigma value {0}; expected -1, 0 or 1")]
    InvalidSigma(i64),
    #[error("not an SL(2,R) element: det = {0}")]
    NotUnimodular(f64),
    #[error("degenerate cycle (k = 0)")]
    DegenerateCycle,
    #[error("focus undefined (n = 0)")]
    UndefinedFocus,
    #[error("all-zero quadruple is not a cycle")]
    ZeroCycle,
    #[error("matrix does not have FSCc shape: {0}")]
    NotFscc(String),
    #[error("diameter has no extremum along the pencil")]
    NoExtremum,
    #[error("no cycle satisfies the constraints")]
    NoSuchCycle,
    #[error("finite differences disagree: {d1:.3e} vs {d2:.3e}")]
    NonSmooth { d1: f64, d2: f64 },
    #[error("resolvent is numerically singular (condition {0:.3e})")]
    SingularResolvent(f64),
    #[error("matrix norm {0} is not below 1")]
    NotContraction(f64),
    #[error("eigenvalue clusters ambiguous at tolerance {0:.3e}")]
    IllConditioned(f64),
    #[error("map is constant")]
    ConstantMap,
    #[error("matrix order {0} exceeds bound {1}")]
    TooLarge(usize, usize),
    #[error("point outside the patch interior")]
    OutOfPatch,
    #[error("point not inside the unit disk: |u| = {0}")]
    OutsideDisk(f64),
    #[error("SU(1,1) condition fails: |a|^2 - |b|^2 = {0}")]
    NotSu11(f64),
    #[error("grid size {0} must be a power of two >= 16")]
    BadGrid(usize),
    #[error("viewport is empty")]
    EmptyViewport,
    #[error("unresolved reference `{0}`")]
    UnresolvedReference(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
