//! Canonical frame at a semisimple point and its jets along a direction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{FrobeniusModel, Point};
use crate::eigen::eigen_decompose;
use crate::jet::{Jet, MAX_ORDER};
use crate::matrix::Square;
use crate::scalar::{principal_sqrt, Scalar};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum FrameError {
    #[error("point is not semisimple: min |u_i - u_j| = {min_gap:.3e} below {threshold:.3e}")]
    NotSemisimple { min_gap: f64, threshold: f64 },
    #[error("eigen-solver failed")]
    EigenFailure,
    #[error("eigenvector is isotropic for the metric")]
    IsotropicEigenvector,
    #[error("gauge mismatch: {0}")]
    GaugeMismatch(String),
    #[error("point has non-finite coordinates or wrong dimension")]
    BadPoint,
    #[error("jet order {0} not in 1..={MAX_ORDER}")]
    BadOrder(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameOptions {
    /// Relative semisimplicity threshold δ.
    pub delta: f64,
}

impl Default for FrameOptions {
    fn default() -> Self {
        FrameOptions { delta: 1e-6 }
    }
}

/// Ordering and branch choices that produced a frame.
///
/// `permutation[i]` is the eigen-solver index that became canonical index `i`;
/// `flips[i]` is the sign applied to the principal root `√g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gauge {
    pub permutation: Vec<usize>,
    pub flips: Vec<i8>,
}

/// Canonical frame: `u_i`, idempotents (column `i` is `𝓔_i` in the flat
/// basis), `g_i = ⟨𝓔_i, 𝓔_i⟩` and `h_i` with `h_i² = g_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<S> {
    pub u: Vec<S>,
    pub idempotents: Square<S>,
    pub g: Vec<S>,
    pub h: Vec<S>,
    pub gauge: Gauge,
}

pub type SemisimpleFrame = Frame<Complex64>;
pub type FrameJet = Frame<Jet>;

impl<S: Scalar> Frame<S> {
    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// Column `i` as a flat vector.
    pub fn idempotent(&self, i: usize) -> Vec<S> {
        (0..self.dim()).map(|a| self.idempotents[(a, i)].clone()).collect()
    }
}

impl FrameJet {
    /// Taylor coefficient `k` of every field.
    pub fn coefficient(&self, k: usize) -> SemisimpleFrame {
        Frame {
            u: self.u.iter().map(|x| x.coeff(k)).collect(),
            idempotents: self.idempotents.map(|x| x.coeff(k)),
            g: self.g.iter().map(|x| x.coeff(k)).collect(),
            h: self.h.iter().map(|x| x.coeff(k)).collect(),
            gauge: self.gauge.clone(),
        }
    }
}

/// Maximum violations of the frame invariants, relative to the largest
/// idempotent entry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameResiduals {
    pub idempotency: f64,
    pub completeness: f64,
    pub orthogonality: f64,
}

impl SemisimpleFrame {
    pub fn residuals(&self, model: &FrobeniusModel, p: &Point) -> FrameResiduals {
        let n = self.dim();
        let c = model.third_derivatives(p);
        let eta = model.eta();
        let eta_inv = model.eta_inv();
        let scale = self.idempotents.max_abs().max(1.0);
        let mut idem: f64 = 0.0;
        let mut orth: f64 = 0.0;
        for i in 0..n {
            let ei = self.idempotent(i);
            let mi = crate::algebra::product_from_tensor(&c, eta_inv, &ei);
            for j in 0..n {
                let ej = self.idempotent(j);
                for g in 0..n {
                    let prod: Complex64 = (0..n).map(|b| mi[(g, b)] * ej[b]).sum();
                    let want = if i == j { ej[g] } else { Complex64::new(0.0, 0.0) };
                    idem = idem.max((prod - want).norm());
                }
                let pair: Complex64 = (0..n)
                    .flat_map(|a| (0..n).map(move |b| (a, b)))
                    .map(|(a, b)| ei[a] * eta[(a, b)] * ej[b])
                    .sum();
                let want = if i == j { self.g[i] } else { Complex64::new(0.0, 0.0) };
                orth = orth.max((pair - want).norm());
            }
        }
        let e = model.identity_vector();
        let comp = (0..n)
            .map(|a| ((0..n).map(|i| self.idempotents[(a, i)]).sum::<Complex64>() - e[a]).norm())
            .fold(0.0, f64::max);
        let gscale = self.g.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        FrameResiduals {
            idempotency: idem / scale,
            completeness: comp / scale,
            orthogonality: orth / gscale,
        }
    }
}

fn check_point(model: &FrobeniusModel, p: &Point) -> Result<(), FrameError> {
    if p.dim() != model.dimension() || !p.is_finite() {
        return Err(FrameError::BadPoint);
    }
    Ok(())
}

fn eta_form(model: &FrobeniusModel, x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let n = x.len();
    let eta = model.eta();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            acc += x[a] * eta[(a, b)] * y[b];
        }
    }
    acc
}

fn sort_key(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn canonical_frame(model: &FrobeniusModel, p: &Point) -> Result<SemisimpleFrame, FrameError> {
    canonical_frame_with(model, p, &FrameOptions::default())
}

pub fn canonical_frame_with(model: &FrobeniusModel, p: &Point, opts: &FrameOptions) -> Result<SemisimpleFrame, FrameError> {
    check_point(model, p)?;
    let a = model.euler_matrix(p).to_nalgebra();
    let (values, vectors) = eigen_decompose(&a).ok_or(FrameError::EigenFailure)?;
    frame_from_eigenpairs(model, &values, &vectors, opts)
}

/// Builds the frame from any eigenvector normalization.
pub fn frame_from_eigenpairs(
    model: &FrobeniusModel,
    values: &[Complex64],
    vectors: &DMatrix<Complex64>,
    opts: &FrameOptions,
) -> Result<SemisimpleFrame, FrameError> {
    let n = values.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&x, &y| sort_key(&values[x], &values[y]));
    let u: Vec<Complex64> = perm.iter().map(|&k| values[k]).collect();

    let umax = u.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let threshold = opts.delta * (1.0 + umax);
    let mut min_gap = f64::INFINITY;
    for i in 0..n {
        for j in 0..i {
            min_gap = min_gap.min((u[i] - u[j]).norm());
        }
    }
    if min_gap < threshold {
        return Err(FrameError::NotSemisimple { min_gap, threshold });
    }

    let e = model.identity_vector();
    let mut idempotents = Square::zeros(n);
    let mut g = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    for (i, &k) in perm.iter().enumerate() {
        let v: Vec<Complex64> = vectors.column(k).iter().copied().collect();
        let vv = eta_form(model, &v, &v);
        let ve = eta_form(model, &v, &e);
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let escale = model.eta().max_abs() * vnorm * vnorm;
        if vv.norm() <= 1e-13 * escale {
            return Err(FrameError::IsotropicEigenvector);
        }
        let factor = ve / vv;
        for a in 0..n {
            idempotents[(a, i)] = v[a] * factor;
        }
        let gi = ve * ve / vv;
        if !gi.is_finite() {
            return Err(FrameError::EigenFailure);
        }
        g.push(gi);
        h.push(principal_sqrt(gi));
    }
    Ok(Frame {
        u,
        idempotents,
        g,
        h,
        gauge: Gauge {
            permutation: perm,
            flips: vec![1; n],
        },
    })
}

/// Frame jets along `t ↦ p + s·dir`, gauge fixed by `canonical_frame(p)`.
pub fn directional_jet(model: &FrobeniusModel, p: &Point, dir: &[Complex64], order: usize) -> Result<FrameJet, FrameError> {
    let base = canonical_frame(model, p)?;
    directional_jet_from(model, &base, p, dir, order)
}

/// Frame jets along `t ↦ p + s·dir` continuing the ordering and branches of
/// `base`, which must be a frame at `p`.
pub fn directional_jet_from(
    model: &FrobeniusModel,
    base: &SemisimpleFrame,
    p: &Point,
    dir: &[Complex64],
    order: usize,
) -> Result<FrameJet, FrameError> {
    check_point(model, p)?;
    if order == 0 || order > MAX_ORDER {
        return Err(FrameError::BadOrder(order));
    }
    let n = model.dimension();
    if dir.len() != n || base.dim() != n {
        return Err(FrameError::BadPoint);
    }
    let t: Vec<Jet> = p.0.iter().zip(dir).map(|(x, d)| Jet::from_coeffs(&[*x, *d], order)).collect();
    let a_jet = model.euler_matrix_at(&t);
    let a: Vec<DMatrix<Complex64>> = (0..=order).map(|m| a_jet.map(|x| x.coeff(m)).to_nalgebra()).collect();

    let v0 = base.idempotents.to_nalgebra();
    let w0 = v0.clone().try_inverse().ok_or(FrameError::EigenFailure)?;
    let scale = a[0].iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1.0);
    for i in 0..n {
        let r = &a[0] * v0.column(i) - v0.column(i) * base.u[i];
        let vn = v0.column(i).norm().max(f64::MIN_POSITIVE);
        if r.norm() > 1e-8 * scale * vn {
            return Err(FrameError::GaugeMismatch(format!(
                "base eigenpair {i} does not match the point (residual {:.3e})",
                r.norm() / vn
            )));
        }
    }

    let mut u = Vec::with_capacity(n);
    let mut idempotents = Square::filled(n, Jet::constant(Complex64::new(0.0, 0.0)));
    for i in 0..n {
        let mut lam = vec![base.u[i]];
        let mut vs = vec![v0.column(i).into_owned()];
        for m in 1..=order {
            let mut acc = &a[1] * &vs[m - 1];
            for j in 2..=m {
                acc += &a[j] * &vs[m - j];
            }
            let lm = (w0.row(i) * &acc)[(0, 0)];
            let mut rhs = acc;
            for j in 1..m {
                rhs -= &vs[m - j] * lam[j];
            }
            let mut vm = DVector::zeros(n);
            for l in 0..n {
                if l == i {
                    continue;
                }
                let c = -(w0.row(l) * &rhs)[(0, 0)] / (base.u[l] - base.u[i]);
                vm += v0.column(l) * c;
            }
            lam.push(lm);
            vs.push(vm);
        }
        u.push(Jet::from_coeffs(&lam, order));
        // 𝓔_i = v (vᵀηe)/(vᵀηv) with v the eigenvector jet.
        let v: Vec<Jet> = (0..n)
            .map(|a_| Jet::from_coeffs(&vs.iter().map(|x| x[(a_, 0)]).collect::<Vec<_>>(), order))
            .collect();
        let (ve, vv) = jet_eta_pairings(model, &v);
        let factor = ve / vv;
        for a_ in 0..n {
            let mut x = v[a_] * factor;
            x.set_coeff(0, base.idempotents[(a_, i)]);
            idempotents[(a_, i)] = x;
        }
    }

    let e = model.identity_vector();
    let mut g = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let col: Vec<Jet> = (0..n).map(|a_| idempotents[(a_, i)]).collect();
        let mut gi = Jet::constant(Complex64::new(0.0, 0.0));
        for (a_, ea) in e.iter().enumerate() {
            if *ea != Complex64::new(0.0, 0.0) {
                for b in 0..n {
                    gi += col[b].scale(model.eta()[(a_, b)] * ea);
                }
            }
        }
        gi.set_coeff(0, base.g[i]);
        let hi = gi.sqrt_with_root(base.h[i]);
        g.push(gi);
        h.push(hi);
    }
    Ok(Frame {
        u,
        idempotents,
        g,
        h,
        gauge: base.gauge.clone(),
    })
}

fn jet_eta_pairings(model: &FrobeniusModel, v: &[Jet]) -> (Jet, Jet) {
    let n = v.len();
    let eta = model.eta();
    let e = model.identity_vector();
    let mut ve = Jet::constant(Complex64::new(0.0, 0.0));
    let mut vv = Jet::constant(Complex64::new(0.0, 0.0));
    for a in 0..n {
        for b in 0..n {
            let w = eta[(a, b)];
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            vv += (v[a] * v[b]).scale(w);
            if e[b] != Complex64::new(0.0, 0.0) {
                ve += v[a].scale(w * e[b]);
            }
        }
    }
    (ve, vv)
}

/// Applies a branch flip and relabelling: new index `i` takes old index
/// `perm[i]`, and `h_i ↦ flips_i · h_{perm(i)}`.
///
/// # Panics
///
/// Panics if `perm` is not a permutation of `0..N` or `flips` has the wrong
/// length or entries outside `{+1, −1}`.
pub fn gauge_transform<S: Scalar>(frame: &Frame<S>, flips: &[i8], perm: &[usize]) -> Frame<S> {
    let n = frame.dim();
    assert_eq!(flips.len(), n, "flip vector has wrong length");
    assert!(flips.iter().all(|f| *f == 1 || *f == -1), "flips must be ±1");
    assert!(is_permutation(perm, n), "not a permutation of 0..{n}");
    let idempotents = Square::from_fn(n, |a, i| frame.idempotents[(a, perm[i])].clone());
    Frame {
        u: perm.iter().map(|&k| frame.u[k].clone()).collect(),
        idempotents,
        g: perm.iter().map(|&k| frame.g[k].clone()).collect(),
        h: perm
            .iter()
            .zip(flips)
            .map(|(&k, &f)| if f < 0 { -frame.h[k].clone() } else { frame.h[k].clone() })
            .collect(),
        gauge: Gauge {
            permutation: perm.iter().map(|&k| frame.gauge.permutation[k]).collect(),
            flips: perm.iter().zip(flips).map(|(&k, &f)| frame.gauge.flips[k] * f).collect(),
        },
    }
}

pub fn is_permutation(perm: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    perm.len() == n && perm.iter().all(|&k| k < n && !std::mem::replace(&mut seen[k], true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn qh_frame_at_origin() {
        let m = builtin::qh_p1();
        let f = canonical_frame(&m, &Point::origin(2)).unwrap();
        let s = 0.5f64.sqrt();
        assert!(close(f.u[0], c(-2.0, 0.0), 1e-14) && close(f.u[1], c(2.0, 0.0), 1e-14));
        assert!(close(f.idempotents[(0, 0)], c(0.5, 0.0), 1e-14));
        assert!(close(f.idempotents[(1, 0)], c(-0.5, 0.0), 1e-14));
        assert!(close(f.idempotents[(0, 1)], c(0.5, 0.0), 1e-14));
        assert!(close(f.idempotents[(1, 1)], c(0.5, 0.0), 1e-14));
        assert!(close(f.g[0], c(-0.5, 0.0), 1e-14) && close(f.g[1], c(0.5, 0.0), 1e-14));
        assert!(close(f.h[0], c(0.0, s), 1e-14) && close(f.h[1], c(s, 0.0), 1e-14));
    }

    #[test]
    fn a1_frame() {
        let f = canonical_frame(&builtin::a1(), &Point::real(&[5.0])).unwrap();
        assert_eq!(f.u, vec![c(5.0, 0.0)]);
        assert!(close(f.idempotents[(0, 0)], c(1.0, 0.0), 1e-15));
        assert!(close(f.h[0], c(1.0, 0.0), 1e-15));
    }

    #[test]
    fn frame_invariants_on_builtins() {
        let pts = [[0.3, -0.2, 0.7], [-0.9, 0.4, 0.1], [0.5, 0.5, -0.6]];
        for m in builtin::vanishing_models() {
            for x in &pts {
                let p = Point::real(&x[..m.dimension()]);
                let f = canonical_frame(&m, &p).unwrap();
                let r = f.residuals(&m, &p);
                assert!(
                    r.idempotency < 1e-10 && r.completeness < 1e-10 && r.orthogonality < 1e-10,
                    "{}: {r:?}",
                    m.name()
                );
                for i in 0..f.dim() {
                    assert!((f.h[i] * f.h[i] - f.g[i]).norm() < 1e-15 * f.g[i].norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn eigenvector_normalization_does_not_matter() {
        let m = builtin::a3();
        let p = Point::real(&[0.1, 0.6, -0.4]);
        let a = m.euler_matrix(&p).to_nalgebra();
        let (vals, mut vecs) = eigen_decompose(&a).unwrap();
        let f0 = frame_from_eigenpairs(&m, &vals, &vecs, &FrameOptions::default()).unwrap();
        for (k, s) in [c(3.0, 1.0), c(-0.01, 0.0), c(0.0, 7.0)].iter().enumerate() {
            let col = vecs.column(k) * *s;
            vecs.set_column(k, &col);
        }
        let f1 = frame_from_eigenpairs(&m, &vals, &vecs, &FrameOptions::default()).unwrap();
        for i in 0..3 {
            assert!(close(f0.g[i], f1.g[i], 1e-12));
            assert!(close(f0.h[i], f1.h[i], 1e-12));
            for a in 0..3 {
                assert!(close(f0.idempotents[(a, i)], f1.idempotents[(a, i)], 1e-12));
            }
        }
    }

    /// The A₂ caustic lies where the discriminant of E∘ vanishes; locate
    /// it by bisection along t₂ at fixed t₁ and check the frame refuses it.
    #[test]
    fn a2_caustic_is_not_semisimple() {
        let m = builtin::a2();
        let disc = |t2: f64| {
            let e = m.euler_matrix(&Point::real(&[0.3, t2]));
            let tr = e[(0, 0)] + e[(1, 1)];
            let det = e[(0, 0)] * e[(1, 1)] - e[(0, 1)] * e[(1, 0)];
            (tr * tr - det * 4.0).re
        };
        let (mut lo, mut hi) = (-0.5, 0.7);
        assert!(disc(lo).signum() != disc(hi).signum());
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if disc(mid).signum() == disc(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        // rounding in the discriminant leaves the root within ~ε^{1/3} of t₂ = 0
        assert!(root.abs() < 1e-4);
        let err = canonical_frame(&m, &Point::real(&[0.3, root])).unwrap_err();
        assert!(matches!(err, FrameError::NotSemisimple { .. }));
        assert!(canonical_frame(&m, &Point::real(&[0.3, 0.2])).is_ok());
    }

    #[test]
    fn qh_jet_along_t2() {
        let m = builtin::qh_p1();
        let j = directional_jet(&m, &Point::origin(2), &[c(0.0, 0.0), c(1.0, 0.0)], 2).unwrap();
        assert!(close(j.h[1].coeff(1), c(-0.25 / 2f64.sqrt(), 0.0), 1e-14));
        // h₂ = e^{−t₂/4}/√2
        assert!(close(j.h[1].coeff(2), c(1.0 / 32.0 / 2f64.sqrt(), 0.0), 1e-14));
    }

    #[test]
    fn zero_direction_has_flat_jets() {
        let m = builtin::a3();
        let p = Point::real(&[0.2, -0.5, 0.4]);
        let j = directional_jet(&m, &p, &[c(0.0, 0.0); 3], 2).unwrap();
        let f = canonical_frame(&m, &p).unwrap();
        assert_eq!(j.coefficient(0), f);
        for k in 1..=2 {
            let d = j.coefficient(k);
            assert!(d.u.iter().chain(&d.g).chain(&d.h).all(|z| z.norm() == 0.0));
            assert_eq!(d.idempotents.max_abs(), 0.0);
        }
    }

    #[test]
    fn idempotent_derivative_of_canonical_coordinates() {
        for m in builtin::vanishing_models() {
            let p = Point::real(&[0.3, 0.8, -0.2][..m.dimension()]);
            let f = canonical_frame(&m, &p).unwrap();
            for i in 0..f.dim() {
                let j = directional_jet(&m, &p, &f.idempotent(i), 1).unwrap();
                for k in 0..f.dim() {
                    let want = if i == k { 1.0 } else { 0.0 };
                    assert!(close(j.u[k].coeff(1), c(want, 0.0), 1e-8));
                }
            }
        }
    }

    #[test]
    fn jets_match_richardson_differences() {
        let dirs = [[0.3, -1.0, 0.5], [1.0, 0.2, -0.7]];
        for m in builtin::vanishing_models() {
            let n = m.dimension();
            let p = Point::new(vec![c(0.4, 0.1), c(-0.6, 0.05), c(0.35, -0.2)][..n].to_vec());
            for d in &dirs {
                let dir: Vec<Complex64> = d[..n].iter().map(|&x| c(x, 0.0)).collect();
                let j = directional_jet(&m, &p, &dir, 1).unwrap();
                let base = canonical_frame(&m, &p).unwrap();
                let at = |s: f64| {
                    let q = p.shifted(&dir, s);
                    let f = canonical_frame(&m, &q).unwrap();
                    // continue the branch of h from the base point
                    let h: Vec<Complex64> =
                        f.h.iter()
                            .zip(&base.h)
                            .map(|(x, b)| if (x - b).norm() > (x + b).norm() { -x } else { *x })
                            .collect();
                    (f.u, h)
                };
                let step = 1e-5;
                let d1 = |s: f64| {
                    let (up, hp) = at(s);
                    let (um, hm) = at(-s);
                    let du: Vec<Complex64> = up.iter().zip(&um).map(|(a, b)| (a - b) / (2.0 * s)).collect();
                    let dh: Vec<Complex64> = hp.iter().zip(&hm).map(|(a, b)| (a - b) / (2.0 * s)).collect();
                    (du, dh)
                };
                let (du1, dh1) = d1(step);
                let (du2, dh2) = d1(step / 2.0);
                for i in 0..n {
                    let du = (du2[i] * 4.0 - du1[i]) / 3.0;
                    let dh = (dh2[i] * 4.0 - dh1[i]) / 3.0;
                    let su = j.u[i].coeff(1).norm().max(1.0);
                    let sh = j.h[i].coeff(1).norm().max(1.0);
                    assert!((du - j.u[i].coeff(1)).norm() < 1e-6 * su, "{} u{i}", m.name());
                    assert!((dh - j.h[i].coeff(1)).norm() < 1e-6 * sh, "{} h{i}", m.name());
                }
            }
        }
    }

    #[test]
    fn foreign_base_frame_is_a_gauge_mismatch() {
        let m = builtin::qh_p1();
        let base = canonical_frame(&m, &Point::real(&[0.0, 0.5])).unwrap();
        let err = directional_jet_from(&m, &base, &Point::origin(2), &[c(1.0, 0.0), c(0.0, 0.0)], 1).unwrap_err();
        assert!(matches!(err, FrameError::GaugeMismatch(_)));
    }

    #[test]
    fn gauge_transforms() {
        let m = builtin::qh_p1();
        let f = canonical_frame(&m, &Point::origin(2)).unwrap();
        assert_eq!(gauge_transform(&f, &[1, 1], &[0, 1]), f);
        let g = gauge_transform(&f, &[-1, 1], &[0, 1]);
        assert!(close(g.h[0], c(0.0, -(0.5f64.sqrt())), 1e-15));
        assert_eq!(g.g, f.g);
        assert_eq!(g.gauge.flips, vec![-1, 1]);
        let s = gauge_transform(&f, &[1, 1], &[1, 0]);
        assert_eq!(s.u, vec![f.u[1], f.u[0]]);
        assert_eq!(s.idempotent(0), f.idempotent(1));
        assert_eq!(gauge_transform(&s, &[1, 1], &[1, 0]), f);
    }
}
