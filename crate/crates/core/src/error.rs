use thiserror::Error;

/// Errors raised while validating structures or running the deciders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not antisymmetric: cycle {}", .cycle.join(" <= "))]
    Antisymmetry { cycle: Vec<String> },
    #[error("map is not defined on `{0}`")]
    NotTotal(String),
    #[error("map sends `{element}` outside the codomain")]
    OutsideCodomain { element: String },
    #[error("involution is not involutive at `{0}`")]
    NotInvolutive(String),
    #[error("involution is not antitone on the pair ({lower}, {upper})")]
    NotAntitone { lower: String, upper: String },
    #[error("map is not monotone on the pair ({lower}, {upper})")]
    NotMonotone { lower: String, upper: String },
    #[error("map does not commute with the involution at `{0}`")]
    InvolutionNotPreserved(String),
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("carrier is not a lattice: ({0}, {1}) lacks a join or a meet")]
    NotALattice(String, String),
    #[error("carrier is not distributive at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("homomorphism does not preserve {op} at {args:?}")]
    OperationNotPreserved { op: &'static str, args: Vec<String> },
    #[error("variety mismatch: {0}")]
    VarietyMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size guard exceeded: {what} is {got}, limit {limit}")]
    SizeGuard { what: &'static str, got: usize, limit: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
