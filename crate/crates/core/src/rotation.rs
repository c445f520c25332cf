//! Rotation coefficients and the tensors built from them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{FrobeniusModel, Point};
use crate::frame::{canonical_frame_with, directional_jet_from, Frame, FrameError, FrameOptions, SemisimpleFrame};
use crate::jet::Jet;
use crate::matrix::Square;
use crate::scalar::{Scalar, TrackedSum};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RotationError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("numerical blow-up: {0}")]
    NumericalBlowup(String),
    #[error("index ({0}, {1}, {2}) out of range")]
    IndexOutOfRange(usize, usize, usize),
}

/// `r` (full, `r_ii ≠ 0` in general), `γ` (zero diagonal), `v_ij = (u_j − u_i) r_ij`,
/// off-diagonal `θ` and `Ω` (diagonal left at zero), and `H_i = −½ Σ_j v_ij r_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationData<S = Complex64> {
    pub frame: Frame<S>,
    pub r: Square<S>,
    pub gamma: Square<S>,
    pub v: Square<S>,
    pub theta: Square<S>,
    pub omega: Square<S>,
    pub big_h: Vec<S>,
}

impl<S: Scalar> RotationData<S> {
    /// Builds every derived tensor from a frame and the matrix `r`.
    pub fn from_parts(frame: Frame<S>, r: Square<S>) -> Self {
        let n = frame.dim();
        let u = &frame.u;
        let gamma = Square::from_fn(n, |i, j| if i == j { S::zero() } else { r[(i, j)].clone() });
        let v = Square::from_fn(n, |i, j| (u[j].clone() - u[i].clone()) * r[(i, j)].clone());
        let mut theta = Square::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut acc = r[(i, j)].clone();
                    for k in 0..n {
                        acc += r[(i, k)].clone() * v[(j, k)].clone();
                    }
                    theta[(i, j)] = acc / (u[j].clone() - u[i].clone());
                }
            }
        }
        let mut omega = Square::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut acc = theta[(i, j)].clone() - theta[(j, i)].clone();
                    for k in 0..n {
                        for l in 0..n {
                            acc += r[(i, l)].clone() * r[(j, k)].clone() * v[(k, l)].clone();
                        }
                    }
                    omega[(i, j)] = acc / (u[j].clone() - u[i].clone());
                }
            }
        }
        let big_h = (0..n)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..n {
                    acc += v[(i, j)].clone() * r[(i, j)].clone();
                }
                acc.scale(Complex64::new(-0.5, 0.0))
            })
            .collect();
        RotationData {
            frame,
            r,
            gamma,
            v,
            theta,
            omega,
            big_h,
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn h(&self) -> &[S] {
        &self.frame.h
    }

    pub fn u(&self) -> &[S] {
        &self.frame.u
    }
}

impl RotationData<Jet> {
    /// Taylor coefficient `k` of `r`, `θ`, `Ω` and `H`.
    pub fn coefficient(&self, k: usize) -> RotationData<Complex64> {
        let f = |m: &Square<Jet>| m.map(|x| x.coeff(k));
        RotationData {
            frame: self.frame.coefficient(k),
            r: f(&self.r),
            gamma: f(&self.gamma),
            v: f(&self.v),
            theta: f(&self.theta),
            omega: f(&self.omega),
            big_h: self.big_h.iter().map(|x| x.coeff(k)).collect(),
        }
    }
}

fn check_finite(rd: &RotationData) -> Result<(), RotationError> {
    let n = rd.dim();
    let umax = rd.frame.u.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    for i in 0..n {
        for j in 0..i {
            if (rd.frame.u[i] - rd.frame.u[j]).norm() <= 1e3 * f64::EPSILON * (1.0 + umax) {
                return Err(RotationError::NumericalBlowup(format!("u_{i} - u_{j} underflows")));
            }
        }
    }
    let finite = |m: &Square<Complex64>| m.max_abs().is_finite();
    if ![&rd.r, &rd.theta, &rd.omega].iter().all(|m| finite(m)) || !rd.big_h.iter().all(|z| z.is_finite()) {
        return Err(RotationError::NumericalBlowup("non-finite rotation data".into()));
    }
    Ok(())
}

pub fn rotation_data(model: &FrobeniusModel, p: &Point) -> Result<RotationData, RotationError> {
    rotation_data_with(model, p, &FrameOptions::default())
}

pub fn rotation_data_with(model: &FrobeniusModel, p: &Point, opts: &FrameOptions) -> Result<RotationData, RotationError> {
    let frame = canonical_frame_with(model, p, opts)?;
    rotation_from_frame(model, p, frame)
}

/// `r_ij = (𝓔_j h_i) / h_j` from order-1 jets along each idempotent.
pub fn rotation_from_frame(model: &FrobeniusModel, p: &Point, frame: SemisimpleFrame) -> Result<RotationData, RotationError> {
    let n = frame.dim();
    let mut r = Square::zeros(n);
    for j in 0..n {
        let jet = directional_jet_from(model, &frame, p, &frame.idempotent(j), 1)?;
        for i in 0..n {
            r[(i, j)] = jet.h[i].coeff(1) / frame.h[j];
        }
    }
    let rd = RotationData::from_parts(frame, r);
    check_finite(&rd)?;
    Ok(rd)
}

/// `𝓔_k r_ij` on the small phase space, by the closed-form case split.
pub fn r_derivative_analytic(rd: &RotationData, i: usize, j: usize, k: usize) -> Result<Complex64, RotationError> {
    let n = rd.dim();
    if i >= n || j >= n || k >= n {
        return Err(RotationError::IndexOutOfRange(i, j, k));
    }
    let (r, h, th) = (&rd.r, &rd.frame.h, &rd.theta);
    let base = r[(i, k)] * r[(j, k)];
    let case = if i != j {
        if k == i {
            th[(i, j)]
        } else if k == j {
            th[(j, i)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    } else if k != i {
        h[k] / h[i] * th[(i, k)]
    } else {
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..n {
            acc -= r[(i, l)] * r[(i, l)] * 2.0;
        }
        for q in 0..n {
            if q != i {
                acc += h[q] / h[i] * th[(q, i)];
            }
        }
        acc
    };
    Ok(base + case)
}

/// Rotation data as order-1 jets along `t ↦ p + s·dir`.
///
/// Independent of [`r_derivative_analytic`]: the derivative of
/// `r_ij = ∇h_i·𝓔_j / h_j` is assembled from second-order frame jets, with the
/// Hessian of `h_i` recovered by polarization.
pub fn rotation_jet(model: &FrobeniusModel, p: &Point, base: &RotationData, dir: &[Complex64]) -> Result<RotationData<Jet>, RotationError> {
    let frame = &base.frame;
    let n = frame.dim();
    let along = |w: &[Complex64], order| directional_jet_from(model, frame, p, w, order);
    let jd = along(dir, 2)?;
    let mut r = Square::filled(n, Jet::constant(Complex64::new(0.0, 0.0)));
    for j in 0..n {
        let ej = frame.idempotent(j);
        let sum: Vec<Complex64> = ej.iter().zip(dir).map(|(a, b)| a + b).collect();
        let dej: Vec<Complex64> = (0..n).map(|a| jd.idempotents[(a, j)].coeff(1)).collect();
        let jj = along(&ej, 2)?;
        let js = along(&sum, 2)?;
        let jde = along(&dej, 1)?;
        let hj = frame.h[j];
        let dhj = jd.h[j].coeff(1);
        for i in 0..n {
            let hess = js.h[i].coeff(2) - jj.h[i].coeff(2) - jd.h[i].coeff(2);
            let r0 = base.r[(i, j)];
            let r1 = (jde.h[i].coeff(1) + hess - r0 * dhj) / hj;
            r[(i, j)] = Jet::from_coeffs(&[r0, r1], 1);
        }
    }
    let f1 = Frame {
        u: jd.u.iter().map(|x| x.truncated(1)).collect(),
        idempotents: jd.idempotents.map(|x| x.truncated(1)),
        g: jd.g.iter().map(|x| x.truncated(1)).collect(),
        h: jd.h.iter().map(|x| x.truncated(1)).collect(),
        gauge: jd.gauge.clone(),
    };
    Ok(RotationData::from_parts(f1, r))
}

/// Residuals of the algebraic identities, each relative to its largest term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicResiduals {
    pub r_symmetry: f64,
    pub theta_symmetry: f64,
    pub omega_symmetry: f64,
    pub string_equation: f64,
    pub hamiltonian_forms: f64,
}

/// Residuals of identities checked against jets, relative to their largest term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StructureResiduals {
    pub algebraic: AlgebraicResiduals,
    /// Closed-form `𝓔_k r_ij` against the jet oracle.
    pub r_derivative: f64,
    /// `𝓔_j θ_ij = (r_jj − (h_j/h_i) r_ij) θ_ij − Ω_ij` against the jet oracle.
    pub theta_derivative: f64,
    /// `∂_j h_i = r_ij h_j` with `∂_j` assembled from flat-coordinate jets.
    pub h_derivative: f64,
}

fn pair(a: Complex64, b: Complex64) -> f64 {
    let s: TrackedSum = [a, -b].into_iter().collect();
    s.relative()
}

pub fn algebraic_residuals(rd: &RotationData) -> AlgebraicResiduals {
    let n = rd.dim();
    let (r, h, th, om) = (&rd.r, &rd.frame.h, &rd.theta, &rd.omega);
    let mut out = AlgebraicResiduals::default();
    for i in 0..n {
        let string: TrackedSum = (0..n).map(|j| r[(i, j)] * h[j]).collect();
        out.string_equation = out.string_equation.max(string.relative());
        let mut forms = TrackedSum::new();
        forms.add(rd.big_h[i]);
        for j in 0..n {
            if j != i {
                let g = rd.gamma[(i, j)];
                forms.sub((rd.frame.u[i] - rd.frame.u[j]) * g * g * 0.5);
            }
        }
        out.hamiltonian_forms = out.hamiltonian_forms.max(forms.relative());
        for j in 0..n {
            if i == j {
                continue;
            }
            out.r_symmetry = out.r_symmetry.max(pair(r[(i, j)], r[(j, i)]));
            out.omega_symmetry = out.omega_symmetry.max(pair(om[(i, j)], om[(j, i)]));
            let mut s = TrackedSum::new();
            s.add(th[(i, j)]);
            s.add(th[(j, i)]);
            for k in 0..n {
                s.add(r[(i, k)] * r[(j, k)]);
            }
            out.theta_symmetry = out.theta_symmetry.max(s.relative());
        }
    }
    out
}

pub fn structure_residuals(model: &FrobeniusModel, p: &Point, rd: &RotationData) -> Result<StructureResiduals, RotationError> {
    let n = rd.dim();
    let mut out = StructureResiduals {
        algebraic: algebraic_residuals(rd),
        ..Default::default()
    };
    let (r, h) = (&rd.r, &rd.frame.h);
    for k in 0..n {
        let jet = rotation_jet(model, p, rd, &rd.frame.idempotent(k))?;
        for i in 0..n {
            for j in 0..n {
                let analytic = r_derivative_analytic(rd, i, j, k)?;
                out.r_derivative = out.r_derivative.max(pair(analytic, jet.r[(i, j)].coeff(1)));
            }
        }
        // k plays the role of j in 𝓔_j θ_ij
        for i in 0..n {
            if i == k {
                continue;
            }
            let lhs = jet.theta[(i, k)].coeff(1);
            let mut s = TrackedSum::new();
            s.add(lhs);
            s.sub(r[(k, k)] * rd.theta[(i, k)]);
            s.add(h[k] / h[i] * r[(i, k)] * rd.theta[(i, k)]);
            s.add(rd.omega[(i, k)]);
            out.theta_derivative = out.theta_derivative.max(s.relative());
        }
    }
    let flat: Vec<_> = (0..n)
        .map(|a| {
            let mut w = vec![Complex64::new(0.0, 0.0); n];
            w[a] = Complex64::new(1.0, 0.0);
            directional_jet_from(model, &rd.frame, p, &w, 1)
        })
        .collect::<Result<_, _>>()?;
    for j in 0..n {
        let ej = rd.frame.idempotent(j);
        for i in 0..n {
            let d: Complex64 = (0..n).map(|a| ej[a] * flat[a].h[i].coeff(1)).sum();
            out.h_derivative = out.h_derivative.max(pair(d, r[(i, j)] * h[j]));
        }
    }
    Ok(out)
}
