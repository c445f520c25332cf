//! Library side of the `frobenius` binary: argument parsing helpers and the
//! report builders behind each subcommand.

pub mod inspect;
pub mod parse;
pub mod verify;

use std::path::Path;

use frobenius_core::{builtin, load_model, FrobeniusModel, ModelError};

pub use inspect::{eval_g2, frame_report, selection_report, EvalReport, FrameReport, SelectionRun};
pub use parse::{parse_complex, parse_orders, parse_point, parse_range};
pub use verify::{verify, CheckReport, VerifyConfig, VerifyReport};

/// Exit status for a failed check or a selection disagreement.
pub const EXIT_FAILED: u8 = 1;
/// Exit status when the model cannot be loaded.
pub const EXIT_MODEL: u8 = 2;
/// Exit status when the orbifold is not of ADE type.
pub const EXIT_NOT_ADE: u8 = 3;

/// A built-in name (`a1`, `qh-p1`, `a2`, `a3`, `a3-corrupted`) or a path to a
/// JSON model file; a relative path that does not exist is also tried under `models/`.
pub fn resolve_model(name: &str) -> Result<FrobeniusModel, ModelError> {
    if let Some(m) = builtin::by_name(name) {
        return Ok(m);
    }
    let path = Path::new(name);
    let fallback = Path::new("models").join(path);
    if !path.exists() && path.is_relative() && fallback.exists() {
        return load_model(fallback);
    }
    load_model(path)
}
