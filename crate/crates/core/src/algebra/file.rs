//! JSON model files.
//!
//! ```json
//! {
//!   "name": "a2",
//!   "dimension": 2,
//!   "identity_index": 0,
//!   "eta": [0, 1, 1, 0],
//!   "euler_linear": [1, "2/3"],
//!   "euler_constant": [0, 0],
//!   "prepotential": [
//!     {"coeff_re": "1/2", "coeff_im": 0, "monomial": [2, 1], "exp_form": [0, 0]},
//!     {"coeff_re": "1/72", "monomial": [0, 4]}
//!   ]
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings holding a decimal or a rational
//! `p/q`. A coefficient given as a rational string with zero imaginary part is
//! kept exact.

use std::path::Path;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::model::{FrobeniusModel, ModelError};
use super::prepotential::{Coefficient, PrepotentialTerm};
use crate::matrix::Square;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Float(f64),
    Text(String),
}

impl Number {
    fn exact(&self) -> Option<Ratio<i64>> {
        match self {
            Number::Text(s) => parse_ratio(s.trim()),
            Number::Float(x) if x.fract() == 0.0 && x.abs() < 1e15 => Some(Ratio::from_integer(*x as i64)),
            Number::Float(_) => None,
        }
    }

    fn to_f64(&self) -> Result<f64, ModelError> {
        match self {
            Number::Float(x) => Ok(*x),
            Number::Text(s) => {
                let s = s.trim();
                if let Some(q) = parse_ratio(s) {
                    return Ok(*q.numer() as f64 / *q.denom() as f64);
                }
                s.parse::<f64>().map_err(|_| ModelError::Parse(format!("not a number: {s:?}")))
            }
        }
    }
}

fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            (q != 0).then(|| Ratio::new(p, q))
        }
        None => s.parse::<i64>().ok().map(Ratio::from_integer),
    }
}

impl From<f64> for Number {
    fn from(x: f64) -> Self {
        Number::Float(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff_re: Number,
    #[serde(default = "zero")]
    pub coeff_im: Number,
    pub monomial: Vec<u32>,
    #[serde(default)]
    pub exp_form: Vec<Number>,
}

fn zero() -> Number {
    Number::Float(0.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub dimension: usize,
    pub identity_index: usize,
    pub eta: Vec<Number>,
    pub euler_linear: Vec<Number>,
    pub euler_constant: Vec<Number>,
    pub prepotential: Vec<TermFile>,
}

fn reals(v: &[Number], what: &str, n: usize) -> Result<Vec<Complex64>, ModelError> {
    if v.len() != n {
        return Err(ModelError::LengthMismatch {
            what: what.into(),
            got: v.len(),
            expected: n,
        });
    }
    v.iter().map(|x| x.to_f64().map(|r| Complex64::new(r, 0.0))).collect()
}

impl ModelFile {
    pub fn into_model(self) -> Result<FrobeniusModel, ModelError> {
        let n = self.dimension;
        let eta = reals(&self.eta, "eta", n * n)?;
        let eta = Square::from_fn(n, |i, j| eta[i * n + j]);
        let mut terms = Vec::with_capacity(self.prepotential.len());
        for (idx, t) in self.prepotential.iter().enumerate() {
            let im = t.coeff_im.to_f64()?;
            let coefficient = match (t.coeff_re.exact(), im == 0.0) {
                (Some(q), true) => Coefficient::Rational(q),
                _ => Coefficient::Complex(Complex64::new(t.coeff_re.to_f64()?, im)),
            };
            let exp_form = if t.exp_form.is_empty() {
                vec![0.0; t.monomial.len()]
            } else {
                t.exp_form.iter().map(Number::to_f64).collect::<Result<_, _>>()?
            };
            if t.monomial.len() != n || exp_form.len() != n {
                return Err(ModelError::BadTerm(idx, format!("expected {n} exponents and weights")));
            }
            terms.push(PrepotentialTerm::new(coefficient, t.monomial.clone(), exp_form));
        }
        FrobeniusModel::new(
            self.name,
            self.identity_index,
            eta,
            terms,
            reals(&self.euler_linear, "euler_linear", n)?,
            reals(&self.euler_constant, "euler_constant", n)?,
        )
    }

    /// File representation of a model with real metric and Euler data.
    pub fn from_model(m: &FrobeniusModel) -> Self {
        let n = m.dimension();
        let num = |z: &Complex64| Number::Float(z.re);
        ModelFile {
            name: m.name().to_string(),
            dimension: n,
            identity_index: m.identity_index(),
            eta: (0..n * n).map(|k| num(&m.eta()[(k / n, k % n)])).collect(),
            euler_linear: m.euler_linear().iter().map(num).collect(),
            euler_constant: m.euler_constant().iter().map(num).collect(),
            prepotential: m
                .prepotential()
                .iter()
                .map(|t| {
                    let (re, im) = match t.coefficient {
                        Coefficient::Rational(q) => (Number::Text(format!("{}/{}", q.numer(), q.denom())), Number::Float(0.0)),
                        Coefficient::Complex(z) => (Number::Float(z.re), Number::Float(z.im)),
                    };
                    TermFile {
                        coeff_re: re,
                        coeff_im: im,
                        monomial: t.monomial_exponents.clone(),
                        exp_form: t.exponential_form.iter().map(|&k| Number::Float(k)).collect(),
                    }
                })
                .collect(),
        }
    }
}

pub fn parse_model(json: &str) -> Result<FrobeniusModel, ModelError> {
    let f: ModelFile = serde_json::from_str(json).map_err(|e| ModelError::Parse(e.to_string()))?;
    f.into_model()
}

pub fn load_model(path: impl AsRef<Path>) -> Result<FrobeniusModel, ModelError> {
    let text = std::fs::read_to_string(path)?;
    parse_model(&text)
}
