//! Numeric tolerances used across the crate.
//!
//! Everything here is calibrated for double precision, ambient dimensions up
//! to 64, and word lengths up to a few hundred. Exact combinatorial layers
//! (trees, words, group elements) never go through these; only the dense
//! linear-algebra layers do.

/// Max-norm defect allowed in the defining identity `A*A + B*B = I`.
pub const TOL_IDENTITY: f64 = 1e-10;

/// Equality tolerance for norm-preservation tests (`‖wξ‖ = ‖ξ‖`).
pub const TOL_NORM: f64 = 1e-9;

/// Singular-value / eigenvalue cutoff when truncating to a subspace basis.
pub const TOL_RANK: f64 = 1e-10;

/// Grouping radius for eigenvalues of the period unitary.
pub const TOL_EIGEN_GROUP: f64 = 1e-8;

/// Allowed deviation of the restricted period operator from unitarity.
pub const TOL_UNITARY: f64 = 1e-9;

/// Inner products on the limit space must be representative-independent
/// within this bound.
pub const TOL_INNER_PRODUCT: f64 = 1e-10;
