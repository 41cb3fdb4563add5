//! Dense complex matrices and orthonormal-frame subspaces.
//!
//! Everything here is deterministic: Gram–Schmidt processes inputs in the
//! order given, and complements are completed by ascending standard-basis
//! index, so identical inputs give bit-identical outputs.

mod matrix;
mod subspace;

pub use matrix::{basis_vector, inner, norm, normalize, ComplexMatrix};
pub use subspace::{
    involution_eigensplit, orthonormal_basis, polar_isometry, projector, projector_range, unitary_extend, Subspace,
};
