//! Genus-1 point functions on the small phase space.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Square;
use crate::rotation::RotationData;
use crate::scalar::TrackedSum;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GenusError {
    #[error("cannot fit C: every h_i² vanishes")]
    DegenerateFit,
}

/// `φ_i`, off-diagonal `φ_ij` (diagonal left at zero), and the fit `φ_i ≈ C h_i²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenusOneData {
    pub phi1: Vec<Complex64>,
    pub phi2: Square<Complex64>,
    pub c_estimate: Complex64,
    pub c_residual: f64,
}

/// `24φ_i = −12 Σ_j r_ij v_ij − Σ_j (h_i/h_j) r_ij`.
pub fn phi_one_point(rd: &RotationData) -> Vec<Complex64> {
    let n = rd.dim();
    let (r, v, h) = (&rd.r, &rd.v, &rd.frame.h);
    (0..n)
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc -= r[(i, j)] * v[(i, j)] * 12.0;
                acc -= h[i] / h[j] * r[(i, j)];
            }
            acc / 24.0
        })
        .collect()
}

/// `Σ_l (r_il r_jl h_i h_j / h_l² − r_ij r_il h_j / h_l − r_ij r_jl h_i / h_l)`.
fn l_sum(rd: &RotationData, i: usize, j: usize, acc: &mut TrackedSum) {
    let (r, h) = (&rd.r, &rd.frame.h);
    for l in 0..rd.dim() {
        acc.add(r[(i, l)] * r[(j, l)] * h[i] * h[j] / (h[l] * h[l]));
        acc.sub(r[(i, j)] * r[(i, l)] * h[j] / h[l]);
        acc.sub(r[(i, j)] * r[(j, l)] * h[i] / h[l]);
    }
}

/// Off-diagonal `φ_ij`; the diagonal is not computed and left at zero.
pub fn phi_two_point(rd: &RotationData, phi1: &[Complex64]) -> Square<Complex64> {
    let n = rd.dim();
    let (r, h, th) = (&rd.r, &rd.frame.h, &rd.theta);
    Square::from_fn(n, |i, j| {
        if i == j {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = TrackedSum::new();
        acc.add(r[(i, j)] * r[(i, j)] * 12.0);
        l_sum(rd, i, j, &mut acc);
        acc.sub(th[(i, j)] * h[j] / h[i]);
        acc.sub(th[(j, i)] * h[i] / h[j]);
        acc.sub(r[(i, j)] * h[j] / h[i] * phi1[i] * 24.0);
        acc.sub(r[(i, j)] * h[i] / h[j] * phi1[j] * 24.0);
        acc.value / 24.0
    })
}

/// Least-squares `C` in `φ_i ≈ C h_i²`, and `max_i |φ_i − C h_i²|`.
pub fn estimate_c(rd: &RotationData, phi1: &[Complex64]) -> Result<(Complex64, f64), GenusError> {
    let g: Vec<Complex64> = rd.frame.h.iter().map(|x| x * x).collect();
    let den: f64 = g.iter().map(|z| z.norm_sqr()).sum();
    if den == 0.0 {
        return Err(GenusError::DegenerateFit);
    }
    let c: Complex64 = g.iter().zip(phi1).map(|(a, b)| a.conj() * b).sum::<Complex64>() / den;
    let res = g.iter().zip(phi1).map(|(a, b)| (b - c * a).norm()).fold(0.0, f64::max);
    Ok((c, res))
}

pub fn genus_one(rd: &RotationData) -> Result<GenusOneData, GenusError> {
    let phi1 = phi_one_point(rd);
    let phi2 = phi_two_point(rd, &phi1);
    let (c_estimate, c_residual) = estimate_c(rd, &phi1)?;
    Ok(GenusOneData {
        phi1,
        phi2,
        c_estimate,
        c_residual,
    })
}

/// Relative residuals of the small-phase-space identities that hold when
/// `φ_i = C h_i²` and `φ_ij = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct C2Residuals {
    pub one_point: f64,
    pub theta_pair: f64,
    pub theta_row: f64,
}

/// `Σ_j r_ij v_ij + (1/12) Σ_j r_ij h_i/h_j + 2C h_i²` for row `i`.
pub fn one_point_sum(rd: &RotationData, c: Complex64, i: usize) -> TrackedSum {
    let (r, v, h) = (&rd.r, &rd.v, &rd.frame.h);
    let mut s = TrackedSum::new();
    for j in 0..rd.dim() {
        s.add(r[(i, j)] * v[(i, j)]);
        s.add(r[(i, j)] * h[i] / h[j] / 12.0);
    }
    s.add(c * h[i] * h[i] * 2.0);
    s
}

/// `θ_ij h_j/h_i + θ_ji h_i/h_j − [12 r_ij² + Σ_l(…) − 48C r_ij h_i h_j]`.
pub fn theta_pair_sum(rd: &RotationData, c: Complex64, i: usize, j: usize) -> TrackedSum {
    let (r, h, th) = (&rd.r, &rd.frame.h, &rd.theta);
    let mut rhs = TrackedSum::new();
    rhs.add(r[(i, j)] * r[(i, j)] * 12.0);
    l_sum(rd, i, j, &mut rhs);
    rhs.sub(c * r[(i, j)] * h[i] * h[j] * 48.0);
    let mut s = TrackedSum::new();
    s.add(th[(i, j)] * h[j] / h[i]);
    s.add(th[(j, i)] * h[i] / h[j]);
    s.sub(rhs.value);
    s.scale = s.scale.max(rhs.scale);
    s
}

/// `2 Σ_{i≠k} θ_ki/h_i` minus its closed form in `r`, `h` and `C`, for index `k`.
pub fn theta_row_sum(rd: &RotationData, c: Complex64, k: usize) -> TrackedSum {
    let n = rd.dim();
    let (r, h, th) = (&rd.r, &rd.frame.h, &rd.theta);
    let mut s = TrackedSum::new();
    for i in 0..n {
        if i != k {
            s.add(th[(k, i)] / h[i] * 2.0);
        }
    }
    for i in 0..n {
        let rik2 = r[(i, k)] * r[(i, k)];
        s.sub(h[k] * rik2 * 7.0 / (h[i] * h[i]));
        s.add(rik2 * 6.0 / h[k]);
        s.add(h[k] * h[k] * r[(i, i)] * r[(i, k)] * 2.0 / (h[i] * h[i] * h[i]));
        for j in 0..n {
            s.sub(h[k] * h[k] * r[(i, j)] * r[(j, k)] / (h[i] * h[j] * h[j]));
            s.add(h[k] * r[(i, k)] * r[(j, k)] / (h[i] * h[j]));
        }
        s.add(c * r[(i, k)] * h[k] * h[k] / h[i] * 24.0);
    }
    s
}

pub fn c2_identity_residuals(rd: &RotationData, c: Complex64) -> C2Residuals {
    let n = rd.dim();
    let mut out = C2Residuals::default();
    for i in 0..n {
        out.one_point = out.one_point.max(one_point_sum(rd, c, i).relative());
        out.theta_row = out.theta_row.max(theta_row_sum(rd, c, i).relative());
        for j in 0..n {
            if i != j {
                out.theta_pair = out.theta_pair.max(theta_pair_sum(rd, c, i, j).relative());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Point};
    use crate::rotation::rotation_data;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qh_at_origin() {
        let rd = rotation_data(&builtin::qh_p1(), &Point::origin(2)).unwrap();
        let g = genus_one(&rd).unwrap();
        assert!((g.phi1[0] - c(1.0 / 48.0, 0.0)).norm() < 1e-12);
        assert!((g.phi1[1] - c(-1.0 / 48.0, 0.0)).norm() < 1e-12);
        assert!(g.phi2[(0, 1)].norm() < 1e-12);
        assert!((g.c_estimate - c(-1.0 / 24.0, 0.0)).norm() < 1e-12);
        assert!(g.c_residual < 1e-12);
    }

    #[test]
    fn qh_eq12_sides_at_origin() {
        let rd = rotation_data(&builtin::qh_p1(), &Point::origin(2)).unwrap();
        let (h, th) = (&rd.frame.h, &rd.theta);
        let lhs = th[(0, 1)] * h[1] / h[0] + th[(1, 0)] * h[0] / h[1];
        assert!((lhs - c(-1.0 / 32.0, 0.0)).norm() < 1e-14);
        let s = theta_pair_sum(&rd, c(-1.0 / 24.0, 0.0), 0, 1);
        assert!(s.value.norm() < 1e-14);
    }

    #[test]
    fn a1_is_trivial() {
        let rd = rotation_data(&builtin::a1(), &Point::real(&[0.4])).unwrap();
        let g = genus_one(&rd).unwrap();
        assert_eq!(g.phi1, vec![c(0.0, 0.0)]);
        assert_eq!(g.c_estimate, c(0.0, 0.0));
        assert_eq!(g.c_residual, 0.0);
        assert_eq!(c2_identity_residuals(&rd, g.c_estimate), C2Residuals::default());
    }

    #[test]
    fn c2_holds_on_builtins() {
        for (m, want) in [(builtin::qh_p1(), Some(-1.0 / 24.0)), (builtin::a2(), None), (builtin::a3(), None)] {
            for x in [[0.3, -0.5, 0.8], [-0.6, 0.9, 0.2]] {
                let p = Point::new(x[..m.dimension()].iter().map(|&v| c(v, -0.2)).collect());
                let rd = rotation_data(&m, &p).unwrap();
                let g = genus_one(&rd).unwrap();
                assert!(g.c_residual < 1e-9, "{}", m.name());
                assert!(g.phi2.max_abs() < 1e-9, "{}", m.name());
                if let Some(w) = want {
                    assert!((g.c_estimate - c(w, 0.0)).norm() < 1e-10);
                }
                let res = c2_identity_residuals(&rd, g.c_estimate);
                assert!(
                    res.one_point < 1e-9 && res.theta_pair < 1e-9 && res.theta_row < 1e-9,
                    "{}: {res:?}",
                    m.name()
                );
            }
        }
    }

    #[test]
    fn point_functions_are_gauge_even() {
        let m = builtin::a3();
        let p = Point::new(vec![c(0.2, 0.1), c(-0.4, 0.0), c(0.7, -0.1)]);
        let rd = rotation_data(&m, &p).unwrap();
        let g = genus_one(&rd).unwrap();
        let flips = [-1i8, 1, -1];
        let f = crate::frame::gauge_transform(&rd.frame, &flips, &[0, 1, 2]);
        let s = |i: usize| flips[i] as f64;
        let r = Square::from_fn(3, |i, j| rd.r[(i, j)] * s(i) * s(j));
        let flipped = RotationData::from_parts(f, r);
        let g2 = genus_one(&flipped).unwrap();
        for i in 0..3 {
            assert!((g.phi1[i] - g2.phi1[i]).norm() < 1e-10);
            for j in 0..3 {
                assert!((g.phi2[(i, j)] - g2.phi2[(i, j)]).norm() < 1e-10);
            }
        }
        assert!((g.c_estimate - g2.c_estimate).norm() < 1e-12);
    }
}
