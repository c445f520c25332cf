//! Seeded sampling of semisimple points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{FrobeniusModel, Point};
use crate::frame::FrameOptions;
use crate::rotation::{rotation_data_with, RotationData};

/// Draws per requested point before giving up.
pub const OVERSAMPLING: usize = 10;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SamplingError {
    #[error("box has {got} coordinates, model has {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("only {accepted} of {wanted} points were semisimple after {attempts} draws")]
    Exhausted { wanted: usize, accepted: usize, attempts: usize },
}

/// A product of complex rectangles `[re.0, re.1] + i[im.0, im.1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingBox {
    pub re: Vec<(f64, f64)>,
    pub im: Vec<(f64, f64)>,
}

impl SamplingBox {
    /// Real points with every coordinate in `[−1, 1]`.
    pub fn unit(n: usize) -> Self {
        Self {
            re: vec![(-1.0, 1.0); n],
            im: vec![(0.0, 0.0); n],
        }
    }

    pub fn with_imaginary(mut self, half_width: f64) -> Self {
        self.im = vec![(-half_width, half_width); self.re.len()];
        self
    }

    pub fn dim(&self) -> usize {
        self.re.len()
    }

    pub fn draw(&self, rng: &mut impl Rng) -> Point {
        let pick = |rng: &mut dyn rand::RngCore, (a, b): (f64, f64)| if a == b { a } else { rng.random_range(a..b) };
        Point::new(
            self.re
                .iter()
                .zip(&self.im)
                .map(|(&re, &im)| {
                    let x = pick(rng, re);
                    Complex64::new(x, pick(rng, im))
                })
                .collect(),
        )
    }
}

/// `Π_{i<j} (u_i − u_j)²`.
pub fn discriminant(u: &[Complex64]) -> Complex64 {
    let mut d = Complex64::new(1.0, 0.0);
    for i in 0..u.len() {
        for j in 0..i {
            let x = u[i] - u[j];
            d *= x * x;
        }
    }
    d
}

/// Draws `n` semisimple points with their rotation data.
///
/// Points failing the frame or rotation construction, or with
/// `|discriminant(u)| < δ`, are discarded; at most `OVERSAMPLING · n` draws
/// are made.
pub fn sample_points(
    model: &FrobeniusModel,
    bx: &SamplingBox,
    n: usize,
    seed: u64,
    opts: &FrameOptions,
) -> Result<Vec<(Point, RotationData)>, SamplingError> {
    if bx.dim() != model.dimension() || bx.im.len() != bx.dim() {
        return Err(SamplingError::Dimension {
            got: bx.dim(),
            expected: model.dimension(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let budget = OVERSAMPLING * n.max(1);
    let mut attempts = 0;
    while out.len() < n && attempts < budget {
        attempts += 1;
        let p = bx.draw(&mut rng);
        if let Ok(rd) = rotation_data_with(model, &p, opts) {
            if discriminant(&rd.frame.u).norm() >= opts.delta {
                out.push((p, rd));
            }
        }
    }
    if out.len() < n {
        return Err(SamplingError::Exhausted {
            wanted: n,
            accepted: out.len(),
            attempts,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    #[test]
    fn deterministic_for_a_seed() {
        let m = builtin::a3();
        let bx = SamplingBox::unit(3).with_imaginary(0.3);
        let a = sample_points(&m, &bx, 5, 7, &FrameOptions::default()).unwrap();
        let b = sample_points(&m, &bx, 5, 7, &FrameOptions::default()).unwrap();
        assert_eq!(a.iter().map(|x| &x.0).collect::<Vec<_>>(), b.iter().map(|x| &x.0).collect::<Vec<_>>());
        for (p, _) in &a {
            assert!(p.0.iter().all(|z| z.re.abs() <= 1.0 && z.im.abs() <= 0.3));
        }
    }

    #[test]
    fn exhausted_on_a_caustic_box() {
        // t₂ = 0 is the caustic of A₂
        let bx = SamplingBox {
            re: vec![(-1.0, 1.0), (0.0, 0.0)],
            im: vec![(0.0, 0.0); 2],
        };
        let err = sample_points(&builtin::a2(), &bx, 3, 1, &FrameOptions::default()).unwrap_err();
        assert_eq!(
            err,
            SamplingError::Exhausted {
                wanted: 3,
                accepted: 0,
                attempts: 30
            }
        );
    }

    #[test]
    fn discriminant_of_three_points() {
        let u = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)];
        assert_eq!(discriminant(&u), Complex64::new(36.0, 0.0));
        assert_eq!(discriminant(&u[..1]), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn accepted_points_clear_the_discriminant() {
        let opts = FrameOptions::default();
        for (_, rd) in sample_points(&builtin::a3(), &SamplingBox::unit(3), 50, 3, &opts).unwrap() {
            assert!(discriminant(&rd.frame.u).norm() >= opts.delta);
        }
    }

    #[test]
    fn dimension_checked() {
        assert!(sample_points(&builtin::a2(), &SamplingBox::unit(3), 1, 0, &FrameOptions::default()).is_err());
    }
}
