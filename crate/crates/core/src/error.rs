use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator is not an involution (max deviation {deviation:e})")]
    NotAnInvolution { deviation: f64 },
    #[error("operator is not self-adjoint (max deviation {deviation:e})")]
    NotSelfAdjoint { deviation: f64 },
    #[error("map is not an isometry (max deviation {deviation:e})")]
    NotIsometry { deviation: f64 },
    #[error("operator is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("operator is not normal (max deviation {deviation:e})")]
    NotNormal { deviation: f64 },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },
    #[error("generators are not maximal independent abelian: {0}")]
    NotMaximalAbelian(String),
    #[error("projector product annihilated every basis seed")]
    ZeroProjection,
    #[error("error set is not correctable (max Knill-Laflamme deviation {deviation:e})")]
    NotCorrectable { deviation: f64 },
    #[error("operator does not leave its domain invariant (deviation {deviation:e})")]
    NotInvariant { deviation: f64 },
    #[error("{family} family members cannot be assigned to 2^{m} syndromes")]
    TooManyErrors { family: usize, m: usize },
    #[error("insufficient space: {0}")]
    InsufficientSpace(String),
    #[error("{numerator} is not divisible by {denominator}")]
    NotDivisible { numerator: usize, denominator: usize },
    #[error("syndrome table invalid: {0}")]
    TableInvalid(String),
    #[error("operator is not Paulian: {0}")]
    NotPaulian(String),
    #[error("state lies outside the stabilizer domain (distance {distance:e})")]
    StateOutsideDomain { distance: f64 },
    #[error("syndrome {0} is not assigned to any correctable error")]
    UncorrectableSyndrome(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("codewords are not orthonormal (max Gram deviation {deviation:e})")]
    NonOrthogonalCodewords { deviation: f64 },
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("signature {signature} is shared by family members {first} and {second}")]
    SignatureCollision { signature: String, first: usize, second: usize },
    #[error("insufficient spare signatures: need {needed}, have {available}")]
    InsufficientSpares { needed: usize, available: usize },
    #[error("operator is proportional to the identity; nothing to correct")]
    ScalarOperator,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("Fock cutoff {cutoff} too small (need at least {required})")]
    CutoffTooSmall { cutoff: usize, required: usize },
    #[error("guide operators do not respect the syndrome complement: {0}")]
    GuideIncompatible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
