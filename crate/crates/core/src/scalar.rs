//! Scalar abstraction shared by plain complex evaluation and jet evaluation.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::jet::Jet;

/// Field-like scalar used by every formula that must run both on plain
/// complex numbers and on truncated Taylor jets.
pub trait Scalar:
    Clone
    + Debug
    + From<Complex64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Order-0 part.
    fn value(&self) -> Complex64;

    fn exp(&self) -> Self;

    /// Multiplication by a complex constant.
    fn scale(&self, c: Complex64) -> Self;

    fn powu(&self, n: u32) -> Self {
        let mut acc = Self::from(Complex64::new(1.0, 0.0));
        for _ in 0..n {
            acc *= self.clone();
        }
        acc
    }

    fn zero() -> Self {
        Self::from(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        Self::from(Complex64::new(1.0, 0.0))
    }

    fn real(x: f64) -> Self {
        Self::from(Complex64::new(x, 0.0))
    }
}

impl Scalar for Complex64 {
    fn value(&self) -> Complex64 {
        *self
    }

    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }

    fn scale(&self, c: Complex64) -> Self {
        self * c
    }
}

impl Scalar for Jet {
    fn value(&self) -> Complex64 {
        self.coeff(0)
    }

    fn exp(&self) -> Self {
        Jet::exp(self)
    }

    fn scale(&self, c: Complex64) -> Self {
        Jet::scale(self, c)
    }
}

/// Principal square root with the cut resolved upward: on the negative real
/// axis (up to rounding noise in the imaginary part) the root with positive
/// imaginary part is returned.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.re < 0.0 && z.im.abs() <= 64.0 * f64::EPSILON * z.re.abs() {
        return Complex64::new(0.0, (-z.re).sqrt());
    }
    z.sqrt()
}

/// Running sum that remembers the largest summand magnitude.
///
/// Identities in this crate are checked by cancellation, so residuals are
/// reported relative to the largest term that entered the sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrackedSum {
    pub value: Complex64,
    pub scale: f64,
}

impl TrackedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: Complex64) {
        self.value += term;
        self.scale = self.scale.max(term.norm());
    }

    pub fn sub(&mut self, term: Complex64) {
        self.add(-term);
    }

    /// Merges another sum, keeping the larger scale.
    pub fn absorb(&mut self, other: TrackedSum) {
        self.value += other.value;
        self.scale = self.scale.max(other.scale);
    }

    /// `a·self`, with the scale multiplied by `|a|`.
    pub fn scaled(&self, a: Complex64) -> TrackedSum {
        TrackedSum {
            value: self.value * a,
            scale: self.scale * a.norm(),
        }
    }

    /// `|sum| / max |term|`, or 0 for an empty (all-zero) sum.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.norm()
        } else {
            self.value.norm() / self.scale
        }
    }
}

impl FromIterator<Complex64> for TrackedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = TrackedSum::new();
        for t in iter {
            s.add(t);
        }
        s
    }
}

/// `|a - b| / max(|a|, |b|)`, 0 when both vanish.
pub fn relative_difference(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_on_the_cut_takes_upper_branch() {
        let h = principal_sqrt(Complex64::new(-0.5, -1e-18));
        assert!(h.re.abs() < 1e-15);
        assert!((h.im - 0.5f64.sqrt()).abs() < 1e-15);
        let h = principal_sqrt(Complex64::new(-0.5, -1e-3));
        assert!(h.im < 0.0);
    }

    #[test]
    fn tracked_sum_relative() {
        let s: TrackedSum = [1.0, -1.0, 1e-12].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        assert!((s.relative() - 1e-12).abs() < 1e-20);
        assert_eq!(TrackedSum::new().relative(), 0.0);
    }
}
