use thiserror::Error;

/// Crate-wide error type.
///
/// Validation errors (bad input, domain violations) and computational
/// failures (non-convergence, size limits) are kept distinct so the CLI
/// can map them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop ({0}, {0}) is not allowed")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("vertex id {id} out of range (vertex count {count})")]
    VertexOutOfRange { id: usize, count: usize },

    #[error("operation requires a non-empty graph")]
    EmptyGraph,

    #[error("graph is not regular (degrees range from {min} to {max})")]
    NotRegular { min: usize, max: usize },

    #[error("clique-insertion requires regular degree >= 3, got {0}")]
    DegreeTooSmall(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("expected {expected} spectrum, got {found}")]
    WrongSpectrumKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("top eigenvalue {top} does not match regular degree {r}")]
    NotRegularSpectrum { top: f64, r: usize },

    #[error("negative discriminant {0} in spectrum map (invalid input spectrum)")]
    NegativeDiscriminant(f64),

    #[error("spectral gap {mu2} outside [0, {max}]")]
    GapOutOfRange { mu2: f64, max: f64 },

    #[error("lattice dimensions ({m}, {n}) below minimum {min} for this boundary")]
    LatticeTooSmall { m: usize, n: usize, min: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exponent n*s = {0} is not a nonnegative integer for these (r, n, k)")]
    NonIntegralExponent(String),

    #[error("graph has {n} vertices; matching enumeration is limited to {max}")]
    GraphTooLarge { n: usize, max: usize },

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("graph is not 2-connected")]
    NotTwoConnected,

    #[error("edge count {0} is odd; an even edge count is required")]
    OddEdgeCount(usize),

    #[error(
        "quadrature did not converge: value {value}, delta {delta} at grid {grid} (tol {tol})"
    )]
    QuadratureNotConverged {
        value: f64,
        delta: f64,
        grid: usize,
        tol: f64,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("p and q must be distinct, got {0}")]
    PEqualsQ(u64),

    #[error("q = {q} too small: the construction requires q > 2*sqrt(p) (p = {p})")]
    QTooSmall { p: u64, q: u64 },

    #[error("{a} is not a quadratic residue mod {q}")]
    QuadraticNonResidue { a: u64, q: u64 },

    #[error("required square root of {radicand} does not exist: {radicand} = {residue} is not a quadratic residue mod {q}")]
    ChiuRootMissing { radicand: i64, residue: u64, q: u64 },

    #[error("q = {0} divides 26; the degree-3 generator set is undefined")]
    ChiuBadPrime(u64),

    #[error("matrix is singular mod {0}")]
    SingularMatrix(u64),

    #[error("generator is not in the stated group: {0}")]
    GeneratorNotInGroup(String),

    #[error("generator set violates {0}")]
    BadGeneratorSet(String),

    #[error("expected {expected} generators, found {found}")]
    GeneratorCount { expected: usize, found: usize },

    #[error("group order {order} exceeds dense-eigensolve guidance {max}")]
    GroupTooLarge { order: usize, max: usize },

    #[error("malformed edge list at line {line}: {reason}")]
    MalformedEdgeList { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of computation (as opposed to input validation).
    pub fn is_computational(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNotConverged { .. }
                | Error::GraphTooLarge { .. }
                | Error::GroupTooLarge { .. }
                | Error::NoPerfectMatching
                | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
