//! Flat-coordinate product structure of Frobenius models.

pub mod builtin;
pub mod file;
mod model;
mod prepotential;

pub use file::{load_model, parse_model, ModelFile};
pub use model::{product_from_tensor, FrobeniusModel, Homogeneity, ModelError, Point};
pub use prepotential::{Coefficient, PrepotentialTerm};
