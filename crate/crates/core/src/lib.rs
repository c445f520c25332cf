//! Numerical verification of semisimple Frobenius manifold identities.
//!
//! The pipeline runs from a model (prepotential, metric, Euler field) through
//! the canonical frame and rotation coefficients to genus-1 data and the
//! genus-2 G-function coefficients. [`gwcomb`] holds the exact combinatorics
//! of orbifold P¹ selection rules.

pub mod algebra;
pub mod eigen;
pub mod frame;
pub mod g2;
pub mod genus;
pub mod gwcomb;
pub mod jet;
pub mod matrix;
pub mod rotation;
pub mod sampling;
pub mod scalar;

pub use algebra::{builtin, load_model, parse_model, Coefficient, FrobeniusModel, ModelError, Point, PrepotentialTerm};
pub use frame::{canonical_frame, directional_jet, gauge_transform, FrameError, FrameJet, FrameOptions, Gauge, SemisimpleFrame};
pub use g2::{
    g2_assemble, g2_coefficients, g2_from_rotation, max_coefficient_difference, relabel, FamilyResiduals, G2Coefficients, G2Error, JetPoint,
    QDoubleSum,
};
pub use genus::{c2_identity_residuals, estimate_c, genus_one, phi_one_point, phi_two_point, C2Residuals, GenusError, GenusOneData};
pub use jet::Jet;
pub use matrix::{Square, Tensor3};
pub use rotation::{r_derivative_analytic, rotation_data, structure_residuals, RotationData, RotationError};
pub use scalar::{principal_sqrt, relative_difference, Scalar, TrackedSum};
