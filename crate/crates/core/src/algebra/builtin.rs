//! Built-in model zoo.

use num_complex::Complex64;

use super::model::FrobeniusModel;
use super::prepotential::PrepotentialTerm;
use crate::matrix::Square;

/// Names accepted by [`by_name`].
pub const BUILTIN_NAMES: [&str; 5] = ["a1", "qh-p1", "a2", "a3", "a3-corrupted"];

/// Index of the `t₂²t₃²` term in [`a3`], the one shifted by [`a3_corrupted`].
pub const A3_CORRUPTED_TERM: usize = 2;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn antidiagonal(n: usize) -> Square<Complex64> {
    Square::from_fn(n, |i, j| if i + j + 1 == n { c(1.0) } else { c(0.0) })
}

/// `F = t³/6`, `E = t∂`.
pub fn a1() -> FrobeniusModel {
    FrobeniusModel::new(
        "a1",
        0,
        Square::filled(1, c(1.0)),
        vec![PrepotentialTerm::monomial(1, 6, vec![3])],
        vec![c(1.0)],
        vec![c(0.0)],
    )
    .expect("a1 is valid")
}

/// Quantum cohomology of P¹: `F = ½t₁²t₂ + e^{t₂}`, `E = t₁∂₁ + 2∂₂`.
pub fn qh_p1() -> FrobeniusModel {
    FrobeniusModel::new(
        "qh-p1",
        0,
        antidiagonal(2),
        vec![
            PrepotentialTerm::monomial(1, 2, vec![2, 1]),
            PrepotentialTerm::new(num_rational::Ratio::from_integer(1), vec![0, 0], vec![0.0, 1.0]),
        ],
        vec![c(1.0), c(0.0)],
        vec![c(0.0), c(2.0)],
    )
    .expect("qh-p1 is valid")
}

/// A₂ singularity: `F = ½t₁²t₂ + t₂⁴/72`, `E = t₁∂₁ + ⅔t₂∂₂`.
pub fn a2() -> FrobeniusModel {
    FrobeniusModel::new(
        "a2",
        0,
        antidiagonal(2),
        vec![
            PrepotentialTerm::monomial(1, 2, vec![2, 1]),
            PrepotentialTerm::monomial(1, 72, vec![0, 4]),
        ],
        vec![c(1.0), c(2.0 / 3.0)],
        vec![c(0.0); 2],
    )
    .expect("a2 is valid")
}

/// A₃ singularity: `F = ½t₁²t₃ + ½t₁t₂² − t₂²t₃²/16 + t₃⁵/960`,
/// `E = t₁∂₁ + ¾t₂∂₂ + ½t₃∂₃`.
pub fn a3() -> FrobeniusModel {
    FrobeniusModel::new("a3", 0, antidiagonal(3), a3_terms(-1, 16), vec![c(1.0), c(0.75), c(0.5)], vec![c(0.0); 3]).expect("a3 is valid")
}

/// A₃ with the `t₂²t₃²` coefficient shifted by `+0.1`; violates WDVV.
pub fn a3_corrupted() -> FrobeniusModel {
    let m = a3().with_shifted_term(A3_CORRUPTED_TERM, c(0.1)).expect("term exists");
    FrobeniusModel::new(
        "a3-corrupted",
        m.identity_index(),
        m.eta().clone(),
        m.prepotential().to_vec(),
        m.euler_linear().to_vec(),
        m.euler_constant().to_vec(),
    )
    .expect("a3-corrupted is valid")
}

fn a3_terms(num: i64, den: i64) -> Vec<PrepotentialTerm> {
    vec![
        PrepotentialTerm::monomial(1, 2, vec![2, 0, 1]),
        PrepotentialTerm::monomial(1, 2, vec![1, 2, 0]),
        PrepotentialTerm::monomial(num, den, vec![0, 2, 2]),
        PrepotentialTerm::monomial(1, 960, vec![0, 0, 5]),
    ]
}

pub fn by_name(name: &str) -> Option<FrobeniusModel> {
    match name {
        "a1" => Some(a1()),
        "qh-p1" => Some(qh_p1()),
        "a2" => Some(a2()),
        "a3" => Some(a3()),
        "a3-corrupted" => Some(a3_corrupted()),
        _ => None,
    }
}

/// The models on which the vanishing identities are expected to hold.
pub fn vanishing_models() -> Vec<FrobeniusModel> {
    vec![qh_p1(), a2(), a3()]
}
