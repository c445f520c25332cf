//! Frobenius models in flat coordinates and their product structure.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::prepotential::{third_partial, DiffTerm, PrepotentialTerm};
use crate::jet::Jet;
use crate::matrix::{Square, Tensor3};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("dimension must be positive")]
    EmptyModel,
    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch { what: String, got: usize, expected: usize },
    #[error("identity index {0} out of range")]
    IdentityOutOfRange(usize),
    #[error("metric is not symmetric (entry ({0}, {1}))")]
    NonSymmetricMetric(usize, usize),
    #[error("metric is singular")]
    SingularMetric,
    #[error("prepotential term {0}: {1}")]
    BadTerm(usize, String),
    #[error("term index {0} out of range")]
    NoSuchTerm(usize),
    #[error("malformed model file: {0}")]
    Parse(String),
    #[error("cannot read model file: {0}")]
    Io(#[from] std::io::Error),
}

/// Point on the small phase space in flat coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point(pub Vec<Complex64>);

impl Point {
    pub fn new(t: Vec<Complex64>) -> Self {
        Point(t)
    }

    pub fn real(t: &[f64]) -> Self {
        Point(t.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }

    /// `self + s·dir`.
    pub fn shifted(&self, dir: &[Complex64], s: f64) -> Point {
        Point(self.0.iter().zip(dir).map(|(a, b)| a + b * s).collect())
    }
}

struct ThirdTable {
    // one entry per sorted triple a ≤ b ≤ c
    entries: Vec<((usize, usize, usize), Vec<DiffTerm>)>,
}

/// Immutable Frobenius model: metric, prepotential and Euler field.
#[derive(Clone)]
pub struct FrobeniusModel {
    name: String,
    dimension: usize,
    identity_index: usize,
    eta: Square<Complex64>,
    eta_inv: Square<Complex64>,
    prepotential: Vec<PrepotentialTerm>,
    euler_linear: Vec<Complex64>,
    euler_constant: Vec<Complex64>,
    third: std::sync::Arc<ThirdTable>,
}

impl std::fmt::Debug for FrobeniusModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrobeniusModel")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("identity_index", &self.identity_index)
            .field("eta", &self.eta)
            .field("prepotential", &self.prepotential)
            .field("euler_linear", &self.euler_linear)
            .field("euler_constant", &self.euler_constant)
            .finish()
    }
}

impl FrobeniusModel {
    /// Validates and builds a model. Zero-coefficient terms are dropped.
    pub fn new(
        name: impl Into<String>,
        identity_index: usize,
        eta: Square<Complex64>,
        prepotential: Vec<PrepotentialTerm>,
        euler_linear: Vec<Complex64>,
        euler_constant: Vec<Complex64>,
    ) -> Result<Self, ModelError> {
        let n = eta.dim();
        if n == 0 {
            return Err(ModelError::EmptyModel);
        }
        if identity_index >= n {
            return Err(ModelError::IdentityOutOfRange(identity_index));
        }
        for (what, len) in [("euler_linear", euler_linear.len()), ("euler_constant", euler_constant.len())] {
            if len != n {
                return Err(ModelError::LengthMismatch {
                    what: what.into(),
                    got: len,
                    expected: n,
                });
            }
        }
        let scale = eta.max_abs().max(1.0);
        for i in 0..n {
            for j in 0..i {
                if (eta[(i, j)] - eta[(j, i)]).norm() > 1e-14 * scale {
                    return Err(ModelError::NonSymmetricMetric(i, j));
                }
            }
        }
        let inv = eta.to_nalgebra().try_inverse().ok_or(ModelError::SingularMetric)?;
        let eta_inv = Square::from_nalgebra(&inv);
        if !eta_inv.max_abs().is_finite() || eta_inv.max_abs() * eta.max_abs() > 1e12 {
            return Err(ModelError::SingularMetric);
        }
        let mut terms = Vec::with_capacity(prepotential.len());
        for (idx, t) in prepotential.into_iter().enumerate() {
            if t.monomial_exponents.len() != n || t.exponential_form.len() != n {
                return Err(ModelError::BadTerm(idx, format!("expected {n} exponents and weights")));
            }
            if t.exponential_form.iter().any(|k| !k.is_finite()) || !t.coefficient.to_complex().is_finite() {
                return Err(ModelError::BadTerm(idx, "non-finite data".into()));
            }
            if !t.coefficient.is_zero() {
                terms.push(t);
            }
        }
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    entries.push(((a, b, c), third_partial(&terms, a, b, c)));
                }
            }
        }
        Ok(FrobeniusModel {
            name: name.into(),
            dimension: n,
            identity_index,
            eta,
            eta_inv,
            prepotential: terms,
            euler_linear,
            euler_constant,
            third: std::sync::Arc::new(ThirdTable { entries }),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn eta(&self) -> &Square<Complex64> {
        &self.eta
    }

    pub fn eta_inv(&self) -> &Square<Complex64> {
        &self.eta_inv
    }

    pub fn prepotential(&self) -> &[PrepotentialTerm] {
        &self.prepotential
    }

    pub fn euler_linear(&self) -> &[Complex64] {
        &self.euler_linear
    }

    pub fn euler_constant(&self) -> &[Complex64] {
        &self.euler_constant
    }

    /// Unit vector of the identity field.
    pub fn identity_vector(&self) -> Vec<Complex64> {
        let mut e = vec![Complex64::new(0.0, 0.0); self.dimension];
        e[self.identity_index] = Complex64::new(1.0, 0.0);
        e
    }

    /// Copy of the model with `delta` added to the coefficient of one term.
    pub fn with_shifted_term(&self, index: usize, delta: Complex64) -> Result<Self, ModelError> {
        let mut terms = self.prepotential.clone();
        let t = terms.get_mut(index).ok_or(ModelError::NoSuchTerm(index))?;
        t.coefficient = (t.coefficient.to_complex() + delta).into();
        FrobeniusModel::new(
            format!("{}-shifted", self.name),
            self.identity_index,
            self.eta.clone(),
            terms,
            self.euler_linear.clone(),
            self.euler_constant.clone(),
        )
    }

    /// `c_{αβγ} = ∂³F₀` evaluated on any scalar type.
    pub fn third_derivatives_at<S: Scalar>(&self, t: &[S]) -> Tensor3<S> {
        assert_eq!(t.len(), self.dimension, "point has wrong dimension");
        let mut c = Tensor3::filled(self.dimension, S::zero());
        for ((a, b, cc), terms) in &self.third.entries {
            let mut v = S::zero();
            for term in terms {
                v += term.evaluate(t);
            }
            c.set_symmetric(*a, *b, *cc, v);
        }
        c
    }

    pub fn third_derivatives(&self, p: &Point) -> Tensor3<Complex64> {
        self.third_derivatives_at(&p.0)
    }

    /// `E(t)^α = d_α t^α + r_α`.
    pub fn euler_vector_at<S: Scalar>(&self, t: &[S]) -> Vec<S> {
        t.iter()
            .zip(self.euler_linear.iter().zip(&self.euler_constant))
            .map(|(x, (&d, &r))| x.scale(d) + S::from(r))
            .collect()
    }

    pub fn product_matrix(&self, p: &Point, w: &[Complex64]) -> Square<Complex64> {
        let c = self.third_derivatives(p);
        let w: Vec<Complex64> = w.to_vec();
        product_from_tensor(&c, &self.eta_inv, &w)
    }

    pub fn euler_matrix(&self, p: &Point) -> Square<Complex64> {
        self.euler_matrix_at(&p.0)
    }

    pub fn euler_matrix_at<S: Scalar>(&self, t: &[S]) -> Square<S> {
        let c = self.third_derivatives_at(t);
        let e = self.euler_vector_at(t);
        product_from_tensor(&c, &self.eta_inv, &e)
    }

    /// Basis multiplication matrices `A_α = γ_α∘`.
    pub fn basis_products(&self, p: &Point) -> Vec<Square<Complex64>> {
        let c = self.third_derivatives(p);
        (0..self.dimension)
            .map(|a| {
                let mut w = vec![Complex64::new(0.0, 0.0); self.dimension];
                w[a] = Complex64::new(1.0, 0.0);
                product_from_tensor(&c, &self.eta_inv, &w)
            })
            .collect()
    }

    /// Max-norm of all commutators `[A_α, A_β]`.
    pub fn wdvv_residual(&self, p: &Point) -> f64 {
        let mats: Vec<DMatrix<Complex64>> = self.basis_products(p).iter().map(Square::to_nalgebra).collect();
        let mut worst: f64 = 0.0;
        for a in 0..mats.len() {
            for b in a + 1..mats.len() {
                let comm = &mats[a] * &mats[b] - &mats[b] * &mats[a];
                worst = worst.max(comm.iter().fold(0.0, |m, z| m.max(z.norm())));
            }
        }
        worst
    }

    /// `max |c_{1βγ} − η_{βγ}|`.
    pub fn identity_residual(&self, p: &Point) -> f64 {
        let c = self.third_derivatives(p);
        let e = self.identity_index;
        let mut worst: f64 = 0.0;
        for b in 0..self.dimension {
            for g in 0..self.dimension {
                worst = worst.max((c[(e, b, g)] - self.eta[(b, g)]).norm());
            }
        }
        worst
    }

    /// Euler homogeneity of the structure constants.
    ///
    /// For a conformal model `E(c_{abc}) = (κ − d_a − d_b − d_c) c_{abc}` with a
    /// single constant `κ = 3 − charge`. The constant is fitted by least
    /// squares; the residual is relative to the largest `|E(c)|`.
    pub fn homogeneity(&self, p: &Point) -> Homogeneity {
        let e = self.euler_vector_at(&p.0);
        let t: Vec<Jet> = p.0.iter().zip(&e).map(|(x, d)| Jet::from_coeffs(&[*x, *d], 1)).collect();
        let c = self.third_derivatives_at(&t);
        let n = self.dimension;
        let mut rows = Vec::new();
        for a in 0..n {
            for b in a..n {
                for g in b..n {
                    let v = c[(a, b, g)];
                    let shift = self.euler_linear[a] + self.euler_linear[b] + self.euler_linear[g];
                    // E(c) + shift·c = κ·c
                    rows.push((v.coeff(0), v.coeff(1) + shift * v.coeff(0)));
                }
            }
        }
        let num: Complex64 = rows.iter().map(|(c0, rhs)| c0.conj() * rhs).sum();
        let den: f64 = rows.iter().map(|(c0, _)| c0.norm_sqr()).sum();
        let kappa = if den > 0.0 { num / den } else { Complex64::new(0.0, 0.0) };
        let mut residual: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for (c0, rhs) in &rows {
            residual = residual.max((rhs - kappa * c0).norm());
            scale = scale.max(rhs.norm()).max(c0.norm());
        }
        Homogeneity {
            charge: Complex64::new(3.0, 0.0) - kappa,
            residual: if scale > 0.0 { residual / scale } else { 0.0 },
        }
    }
}

/// Result of the Euler homogeneity diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Homogeneity {
    pub charge: Complex64,
    pub residual: f64,
}

/// `(w∘)[γ][β] = Σ_α Σ_δ w^α c_{αβδ} η^{δγ}`.
pub fn product_from_tensor<S: Scalar>(c: &Tensor3<S>, eta_inv: &Square<Complex64>, w: &[S]) -> Square<S> {
    let n = c.dim();
    let mut low = Square::zeros(n);
    for b in 0..n {
        for d in 0..n {
            let mut acc = S::zero();
            for (a, wa) in w.iter().enumerate() {
                acc += wa.clone() * c[(a, b, d)].clone();
            }
            low[(b, d)] = acc;
        }
    }
    Square::from_fn(n, |g, b| {
        let mut acc = S::zero();
        for d in 0..n {
            let e = eta_inv[(d, g)];
            if e != Complex64::new(0.0, 0.0) {
                acc += low[(b, d)].scale(e);
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn qh_third_derivatives_at_origin() {
        let m = builtin::qh_p1();
        let t = m.third_derivatives(&Point::origin(2));
        assert_eq!(t[(0, 0, 1)], c(1.0));
        assert_eq!(t[(1, 1, 1)], c(1.0));
        assert_eq!(t[(0, 0, 0)], c(0.0));
        assert_eq!(t[(0, 1, 1)], c(0.0));
    }

    #[test]
    fn a1_third_derivative_is_constant() {
        let m = builtin::a1();
        for x in [-3.0, 0.0, 5.0] {
            assert_eq!(m.third_derivatives(&Point::real(&[x]))[(0, 0, 0)], c(1.0));
        }
    }

    #[test]
    fn qh_products() {
        let m = builtin::qh_p1();
        let p = Point::origin(2);
        let omega = m.product_matrix(&p, &[c(0.0), c(1.0)]);
        assert_eq!(omega, Square::from_fn(2, |i, j| if i != j { c(1.0) } else { c(0.0) }));
        let e = m.euler_matrix(&p);
        assert_eq!(e, Square::from_fn(2, |i, j| if i != j { c(2.0) } else { c(0.0) }));
        let e = m.euler_matrix(&Point::real(&[1.0, 0.0]));
        assert_eq!(e, Square::from_fn(2, |i, j| if i != j { c(2.0) } else { c(1.0) }));
    }

    #[test]
    fn a1_products() {
        let m = builtin::a1();
        assert_eq!(m.product_matrix(&Point::real(&[2.0]), &[c(1.0)])[(0, 0)], c(1.0));
        assert_eq!(m.euler_matrix(&Point::real(&[2.5]))[(0, 0)], c(2.5));
    }

    #[test]
    fn singular_and_asymmetric_metrics_are_rejected() {
        let eta = Square::from_fn(2, |i, j| if i == 0 && j == 1 { c(1.0) } else { c(0.0) });
        let e = FrobeniusModel::new("x", 0, eta, vec![], vec![c(0.0); 2], vec![c(0.0); 2]);
        assert!(matches!(e, Err(ModelError::NonSymmetricMetric(1, 0))));
        let eta = Square::filled(2, c(1.0));
        let e = FrobeniusModel::new("x", 0, eta, vec![], vec![c(0.0); 2], vec![c(0.0); 2]);
        assert!(matches!(e, Err(ModelError::SingularMetric)));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let eta = Square::filled(1, c(1.0));
        let terms = vec![PrepotentialTerm::monomial(0, 1, vec![3]), PrepotentialTerm::monomial(1, 6, vec![3])];
        let m = FrobeniusModel::new("x", 0, eta, terms, vec![c(1.0)], vec![c(0.0)]).unwrap();
        assert_eq!(m.prepotential().len(), 1);
    }

    #[test]
    fn corrupted_a3_breaks_wdvv() {
        let m = builtin::a3_corrupted();
        let p = Point::real(&[0.3, -0.4, 0.7]);
        assert!(m.wdvv_residual(&p) > 1e-3);
        assert!(builtin::a3().wdvv_residual(&p) < 1e-13);
    }

    #[test]
    fn homogeneity_of_builtins() {
        let p = Point::real(&[0.2, -0.3, 0.5]);
        let h = builtin::a3().homogeneity(&p);
        assert!(h.residual < 1e-13);
        assert!((h.charge - c(0.5)).norm() < 1e-13);
        let h = builtin::qh_p1().homogeneity(&Point::real(&[0.2, -0.3]));
        assert!(h.residual < 1e-13);
        assert!((h.charge - c(1.0)).norm() < 1e-13);
        assert!(builtin::a3_corrupted().homogeneity(&p).residual < 1e-13);
    }
}
