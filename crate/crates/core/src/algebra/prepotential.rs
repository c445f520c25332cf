//! Monomial × exponential prepotential terms and their derivatives.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Coefficient of a prepotential term. Rational coefficients are kept exact
/// until evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Coefficient {
    Rational(Ratio<i64>),
    Complex(Complex64),
}

impl Coefficient {
    pub fn to_complex(self) -> Complex64 {
        match self {
            Coefficient::Rational(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            Coefficient::Complex(z) => z,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Coefficient::Rational(q) => *q.numer() == 0,
            Coefficient::Complex(z) => z == Complex64::new(0.0, 0.0),
        }
    }
}

impl From<Ratio<i64>> for Coefficient {
    fn from(q: Ratio<i64>) -> Self {
        Coefficient::Rational(q)
    }
}

impl From<Complex64> for Coefficient {
    fn from(z: Complex64) -> Self {
        Coefficient::Complex(z)
    }
}

/// `coefficient · Π t_α^{m_α} · exp(Σ k_α t_α)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrepotentialTerm {
    pub coefficient: Coefficient,
    pub monomial_exponents: Vec<u32>,
    pub exponential_form: Vec<f64>,
}

impl PrepotentialTerm {
    pub fn new(coefficient: impl Into<Coefficient>, monomial_exponents: Vec<u32>, exponential_form: Vec<f64>) -> Self {
        PrepotentialTerm {
            coefficient: coefficient.into(),
            monomial_exponents,
            exponential_form,
        }
    }

    /// Pure monomial `q · Π t_α^{m_α}` with rational `q = num/den`.
    pub fn monomial(num: i64, den: i64, exponents: Vec<u32>) -> Self {
        let n = exponents.len();
        PrepotentialTerm::new(Ratio::new(num, den), exponents, vec![0.0; n])
    }

    pub fn dimension(&self) -> usize {
        self.monomial_exponents.len()
    }

    pub fn evaluate<S: Scalar>(&self, t: &[S]) -> S {
        DiffTerm::from(self).evaluate(t)
    }
}

/// Working form used for differentiation: always a complex coefficient.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct DiffTerm {
    coefficient: Complex64,
    exponents: Vec<u32>,
    weights: Vec<f64>,
}

impl From<&PrepotentialTerm> for DiffTerm {
    fn from(t: &PrepotentialTerm) -> Self {
        DiffTerm {
            coefficient: t.coefficient.to_complex(),
            exponents: t.monomial_exponents.clone(),
            weights: t.exponential_form.clone(),
        }
    }
}

impl DiffTerm {
    /// `∂/∂t_alpha`; at most two terms (power rule, exponential rule).
    pub(crate) fn differentiate(&self, alpha: usize) -> Vec<DiffTerm> {
        let mut out = Vec::with_capacity(2);
        let m = self.exponents[alpha];
        if m > 0 {
            let mut e = self.exponents.clone();
            e[alpha] -= 1;
            out.push(DiffTerm {
                coefficient: self.coefficient * m as f64,
                exponents: e,
                weights: self.weights.clone(),
            });
        }
        let k = self.weights[alpha];
        if k != 0.0 {
            out.push(DiffTerm {
                coefficient: self.coefficient * k,
                exponents: self.exponents.clone(),
                weights: self.weights.clone(),
            });
        }
        out
    }

    pub(crate) fn evaluate<S: Scalar>(&self, t: &[S]) -> S {
        let mut acc = S::from(self.coefficient);
        for (x, &m) in t.iter().zip(&self.exponents) {
            if m > 0 {
                acc *= x.powu(m);
            }
        }
        if self.weights.iter().any(|&k| k != 0.0) {
            let mut arg = S::zero();
            for (x, &k) in t.iter().zip(&self.weights) {
                if k != 0.0 {
                    arg += x.scale(Complex64::new(k, 0.0));
                }
            }
            acc *= arg.exp();
        }
        acc
    }
}

/// All terms of `∂_a ∂_b ∂_c` of a sum of prepotential terms.
pub(crate) fn third_partial(terms: &[PrepotentialTerm], a: usize, b: usize, c: usize) -> Vec<DiffTerm> {
    let mut cur: Vec<DiffTerm> = terms.iter().map(DiffTerm::from).collect();
    for idx in [a, b, c] {
        cur = cur.iter().flat_map(|t| t.differentiate(idx)).collect();
    }
    cur
}
