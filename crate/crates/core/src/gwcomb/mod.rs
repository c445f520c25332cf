//! Selection rules for Gromov–Witten invariants of orbifold `P¹` with three
//! orbifold points, in exact rational arithmetic.

mod correlator;
mod enumerate;
pub mod oracle;
mod orbifold;
mod selection;

use thiserror::Error;

pub use correlator::{divisor_reduce, ClassExpr, CorrelatorDescriptor, Insertion};
pub use enumerate::{ade_triples, run_selection, SelectionBounds, SelectionReport};
pub use orbifold::{ade_predicate, poincare_pair, three_point_deg0, virtual_dim, CRClass, OrbifoldP1, Q};
pub use selection::{theorem_part, vanishes_by_theorem, Decision, Rule, Step, TheoremPart, Verdict};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GwError {
    #[error("orbifold orders must be positive, got {0:?}")]
    ZeroOrder([u32; 3]),
    #[error("no class Δ{sector}{index}")]
    InvalidClass { sector: u8, index: u32 },
    #[error("class {0} does not belong to this orbifold")]
    ForeignClass(String),
    #[error("malformed correlator: {0}")]
    MalformedCorrelator(&'static str),
    #[error("max_k = {0} exceeds the enumeration limit of 12")]
    BoundsTooLarge(u32),
    #[error("orbifold {0:?} is not of ADE type")]
    NotAde([u32; 3]),
}
