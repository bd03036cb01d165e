//! Dense qudit state vectors and the linear algebra around them: unitary
//! application, partial trace, entropies, Schmidt decomposition and
//! projective measurement.

mod density;
mod measure;
mod random;
mod register;
mod schmidt;
mod state;
mod unitary;

pub use density::{
    binary_entropy, bipartition_entanglement, entropy_of_spectrum, partial_trace,
    von_neumann_entropy, Bipartition, DensityMatrix,
};
pub use measure::{
    check_orthonormal, complete_basis, orthonormality_deviation, projective_measure,
    MeasurementOutcome,
};
pub use random::{random_state, random_state_with, random_unitary, seeded_rng};
pub use register::QuditRegister;
pub use schmidt::{schmidt_decompose, SchmidtDecomposition};
pub use state::{
    apply_unitary, c, equal_up_to_global_phase, permute_wires, tensor_product, StateVector,
};
pub use unitary::{unitarity_deviation, UnitaryOp};

pub type C64 = num_complex::Complex64;

/// Unit-norm tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-12;
/// Unitarity, orthonormality and Hermiticity checks.
pub const STRUCT_TOL: f64 = 1e-10;
/// `|<a|b>| >= 1 - PHASE_TOL` means equal up to global phase.
pub const PHASE_TOL: f64 = 1e-10;
/// Entropy comparisons.
pub const ENTROPY_TOL: f64 = 1e-9;
/// Eigenvalues and Schmidt coefficients below this are zero.
pub const EIGEN_CUTOFF: f64 = 1e-12;
