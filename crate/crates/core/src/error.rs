use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("element {0} outside ambient {1}")]
    ElementOutsideAmbient(String, String),
    #[error("window overflow: support needs bound {needed} but widening is disabled (bound {bound})")]
    WindowOverflow { needed: String, bound: String },
    #[error("empty set not allowed: {0}")]
    EmptySet(&'static str),
    #[error("unsupported operation {op} for ambient {ambient}")]
    UnsupportedOp { op: &'static str, ambient: String },
    #[error("Lp norm requires p >= 1 (got {0})")]
    InvalidNormExponent(String),
    #[error("Lp norm exponent {0} not exactly representable (need integer or half-integer p)")]
    InexactNormExponent(String),
    #[error("negative value where a nonnegative function is required (at {0})")]
    NegativeValue(String),
    #[error("universe too large for exhaustive search: {size} elements (limit {limit})")]
    UniverseTooLarge { size: u64, limit: u64 },
    #[error("control search universe unavailable: {0}")]
    BadUniverse(String),
    #[error("kappa out of range (0, 1]: {0}")]
    KappaOutOfRange(String),
    #[error("hypothesis violated at {0}")]
    HypothesisViolated(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("all mass below the floor {0}")]
    AllMassBelowFloor(String),
    #[error("function is not strictly convex: {0}")]
    NotConvex(String),
    #[error("curve evaluation ambiguous: abscissa {0} inside table domain but not tabulated")]
    AmbiguousCurvePoint(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("nonpositive element {0} in a multiplicative context")]
    NonpositiveElement(String),
    #[error("exponent symbol {0} not in the declared registry")]
    UnknownSymbol(String),
    #[error("no crossing: {0}")]
    NoCrossing(String),
    #[error("inconsistent or underdetermined chain: {0}")]
    BadChain(String),
    #[error("exponent catalog mismatch in entry {entry}: expected {expected}, computed {computed}")]
    CatalogMismatch { entry: String, expected: String, computed: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
