//! Paulian stabilizer groups for arbitrary quantum error-correcting codes.

pub mod code;
pub mod cws;
pub mod error;
pub mod linalg;
pub mod measure;
pub mod pauli;
pub mod scalar;
pub mod synthesis;
pub mod zoo;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Subspace};
pub use pauli::{PauliOp, SignatureTuple};
pub use scalar::{Real, C};

pub type Code = code::QuantumCode<f64>;
pub type Matrix = ComplexMatrix<f64>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type Space = Subspace<f64>;
pub type Space32 = Subspace<f32>;
