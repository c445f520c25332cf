//! Truncated Taylor jets in one parameter.
//!
//! A [`Jet`] of order `k` stores `f(0), f'(0), f''(0)/2, ..., f^(k)(0)/k!` for a
//! scalar function of a single parameter `s`. Arithmetic propagates the
//! coefficients exactly (forward-mode, Taylor mode), so derivatives come out
//! at working precision without any step size.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Highest supported order.
pub const MAX_ORDER: usize = 3;

const LEN: usize = MAX_ORDER + 1;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    c: [Complex64; LEN],
    order: u8,
}

impl Jet {
    /// A constant (order 0 jet). Combines with jets of any order.
    pub fn constant(v: Complex64) -> Self {
        let mut c = [ZERO; LEN];
        c[0] = v;
        Jet { c, order: 0 }
    }

    /// The parameter itself shifted by `v`: `v + s`.
    pub fn variable(v: Complex64, order: usize) -> Self {
        Self::from_coeffs(&[v, Complex64::new(1.0, 0.0)], order)
    }

    /// Builds a jet from leading coefficients; missing ones are zero.
    ///
    /// # Panics
    ///
    /// Panics if `order > MAX_ORDER`.
    pub fn from_coeffs(coeffs: &[Complex64], order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut c = [ZERO; LEN];
        for (dst, src) in c.iter_mut().zip(coeffs.iter()).take(order + 1) {
            *dst = *src;
        }
        Jet { c, order: order as u8 }
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Taylor coefficient `k` (zero beyond the order).
    pub fn coeff(&self, k: usize) -> Complex64 {
        if k <= self.order() {
            self.c[k]
        } else {
            ZERO
        }
    }

    /// Overwrites coefficient `k`, which must not exceed the order.
    pub fn set_coeff(&mut self, k: usize, v: Complex64) {
        assert!(k <= self.order(), "coefficient {k} beyond order {}", self.order);
        self.c[k] = v;
    }

    /// Drops coefficients above `order`.
    pub fn truncated(&self, order: usize) -> Self {
        Jet::from_coeffs(self.coeffs(), order.min(self.order()))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c[..=self.order()]
    }

    /// `k`-th derivative at the base point.
    pub fn derivative(&self, k: usize) -> Complex64 {
        let fact: f64 = (1..=k).map(|x| x as f64).product();
        self.coeff(k) * fact
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        for v in out.c.iter_mut() {
            *v *= s;
        }
        out
    }

    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut e = [ZERO; LEN];
        e[0] = self.c[0].exp();
        for k in 1..=n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += self.c[j] * e[k - j] * (j as f64);
            }
            e[k] = acc / (k as f64);
        }
        Jet { c: e, order: self.order }
    }

    /// Square root continuing the given root of the order-0 part.
    ///
    /// The branch is fixed by `root0`, which must satisfy `root0² ≈ self(0)`.
    pub fn sqrt_with_root(&self, root0: Complex64) -> Self {
        let n = self.order();
        let mut h = [ZERO; LEN];
        h[0] = root0;
        for k in 1..=n {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= h[j] * h[k - j];
            }
            h[k] = acc / (root0 * 2.0);
        }
        Jet { c: h, order: self.order }
    }

    fn join_order(a: &Jet, b: &Jet) -> u8 {
        a.order.max(b.order)
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs()).finish()
    }
}

impl From<Complex64> for Jet {
    fn from(v: Complex64) -> Self {
        Jet::constant(v)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut out = self;
        out.order = Jet::join_order(&self, &rhs);
        for k in 0..LEN {
            out.c[k] += rhs.c[k];
        }
        out
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let mut out = self;
        out.order = Jet::join_order(&self, &rhs);
        for k in 0..LEN {
            out.c[k] -= rhs.c[k];
        }
        out
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = Jet::join_order(&self, &rhs);
        let n = order as usize;
        let mut c = [ZERO; LEN];
        for (k, ck) in c.iter_mut().enumerate().take(n + 1) {
            for j in 0..=k {
                *ck += self.c[j] * rhs.c[k - j];
            }
        }
        Jet { c, order }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let order = Jet::join_order(&self, &rhs);
        let n = order as usize;
        let mut q = [ZERO; LEN];
        for k in 0..=n {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= rhs.c[j] * q[k - j];
            }
            q[k] = acc / rhs.c[0];
        }
        Jet { c: q, order }
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        *self = *self - rhs;
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, rhs: Jet) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_variable() {
        let s = Jet::variable(c(0.0, 0.0), 3);
        let e = s.exp();
        assert!((e.coeff(0) - 1.0).norm() < 1e-15);
        assert!((e.coeff(1) - 1.0).norm() < 1e-15);
        assert!((e.coeff(2) - 0.5).norm() < 1e-15);
        assert!((e.coeff(3) - 1.0 / 6.0).norm() < 1e-15);
    }

    #[test]
    fn sqrt_keeps_branch() {
        // g(s) = -1/2 + s, root i/√2
        let g = Jet::from_coeffs(&[c(-0.5, 0.0), c(1.0, 0.0)], 2);
        let h = g.sqrt_with_root(c(0.0, 0.5f64.sqrt()));
        let back = h * h;
        for k in 0..=2 {
            assert!((back.coeff(k) - g.coeff(k)).norm() < 1e-15);
        }
        assert!(h.coeff(0).im > 0.0);
    }

    #[test]
    fn constants_promote() {
        let s = Jet::variable(c(2.0, 0.0), 2);
        let k = Jet::constant(c(3.0, 0.0));
        let p = s * k + k;
        assert_eq!(p.order(), 2);
        assert!((p.coeff(0) - 9.0).norm() < 1e-15);
        assert!((p.coeff(1) - 3.0).norm() < 1e-15);
    }

    fn arb_jet() -> impl Strategy<Value = Jet> {
        proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 3)
            .prop_map(|v| Jet::from_coeffs(&v.iter().map(|&(a, b)| c(a, b)).collect::<Vec<_>>(), 2))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_jet(), b in arb_jet(), d in arb_jet()) {
            let l = a * (b + d);
            let r = a * b + a * d;
            for k in 0..=2 {
                prop_assert!((l.coeff(k) - r.coeff(k)).norm() < 1e-12);
            }
            let ab = a * b;
            let ba = b * a;
            for k in 0..=2 {
                prop_assert!((ab.coeff(k) - ba.coeff(k)).norm() < 1e-12);
            }
        }

        #[test]
        fn division_inverts_multiplication(a in arb_jet(), b in arb_jet()) {
            prop_assume!(b.coeff(0).norm() > 0.1);
            let q = (a * b) / b;
            for k in 0..=2 {
                prop_assert!((q.coeff(k) - a.coeff(k)).norm() < 1e-9 * (1.0 + a.coeff(k).norm()));
            }
        }

        #[test]
        fn exp_is_a_homomorphism(a in arb_jet(), b in arb_jet()) {
            let l = (a + b).exp();
            let r = a.exp() * b.exp();
            for k in 0..=2 {
                prop_assert!((l.coeff(k) - r.coeff(k)).norm() < 1e-9 * (1.0 + l.coeff(k).norm()));
            }
        }

        #[test]
        fn order_zero_is_plain_evaluation(a in arb_jet(), b in arb_jet()) {
            let j = (a * b - a.exp()) / (b + Jet::constant(c(5.0, 0.0)));
            let v = (a.value() * b.value() - a.value().exp()) / (b.value() + 5.0);
            prop_assert!((j.value() - v).norm() < 1e-12 * (1.0 + v.norm()));
        }
    }
}
