//! Dense complex eigen-decomposition via the complex Schur form.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

const MAX_SWEEPS: usize = 10_000;

/// Eigenvalues and unit-norm right eigenvectors (as columns), in solver order.
///
/// Returns `None` if the QR iteration does not converge or produces
/// non-finite output.
pub fn eigen_decompose(a: &DMatrix<Complex64>) -> Option<(Vec<Complex64>, DMatrix<Complex64>)> {
    let n = a.nrows();
    let schur = Schur::try_new(a.clone(), f64::EPSILON, MAX_SWEEPS)?;
    let (q, t) = schur.unpack();
    let values: Vec<Complex64> = (0..n).map(|k| t[(k, k)]).collect();
    let scale = t.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(f64::MIN_POSITIVE);
    let mut vecs = DMatrix::zeros(n, n);
    for k in 0..n {
        // (T − λ_k) y = 0 with y_k = 1, y_j = 0 for j > k.
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        y[k] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (l, yl) in y.iter().enumerate().take(k + 1).skip(j + 1) {
                acc += t[(j, l)] * yl;
            }
            let mut d = t[(j, j)] - values[k];
            if d.norm() < f64::EPSILON * scale {
                d = Complex64::new(f64::EPSILON * scale, 0.0);
            }
            y[j] = -acc / d;
        }
        let mut v = &q * DVector::from_vec(y);
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        v /= Complex64::new(norm, 0.0);
        vecs.set_column(k, &v);
    }
    values.iter().all(|z| z.is_finite()).then_some((values, vecs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenpairs_of_nonsymmetric_matrix() {
        let c = |x: f64, y: f64| Complex64::new(x, y);
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(2.0, 1.0),
                c(0.0, 0.0),
                c(0.5, 0.0),
                c(-1.0, 0.0),
                c(3.0, 0.0),
                c(0.0, 2.0),
                c(1.0, 0.0),
                c(0.25, 0.0),
            ],
        );
        let (vals, vecs) = eigen_decompose(&a).unwrap();
        for k in 0..3 {
            let v = vecs.column(k).into_owned();
            let r = &a * &v - v * vals[k];
            assert!(r.norm() < 1e-12, "pair {k}: {}", r.norm());
        }
    }

    #[test]
    fn rotation_has_imaginary_spectrum() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let a = DMatrix::from_row_slice(2, 2, &[c(0.0), c(-1.0), c(1.0), c(0.0)]);
        let (mut vals, _) = eigen_decompose(&a).unwrap();
        vals.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((vals[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((vals[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }
}
