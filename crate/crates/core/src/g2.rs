//! Genus-2 G-function coefficients in canonical coordinates.
//!
//! With `x = t₀¹`,
//!
//! ```text
//! G⁽²⁾ = Σ_i G_i(u, u_x) u_xx^i + Σ_{i≠j} G_ij(u) (u_x^j)³ / u_x^i
//!      + ½ Σ_{i,j} P_ij(u) u_x^i u_x^j + Σ_i Q_i(u) (u_x^i)².
//! ```
//!
//! Sums are written with `γ` (zero diagonal); derivatives use
//! `∂_k h_i = r_ik h_k` with the full `r`, and `∂_k γ_ij` from the closed-form
//! derivative of `r`. Every coefficient is a [`TrackedSum`] so residuals can be
//! judged against the largest summand.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{FrobeniusModel, Point};
use crate::genus::GenusOneData;
use crate::matrix::Square;
use crate::rotation::{rotation_data, RotationData, RotationError};
use crate::scalar::TrackedSum;

type C = Complex64;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum G2Error {
    #[error(transparent)]
    Rotation(#[from] RotationError),
    #[error("u_x^{0} vanishes")]
    ZeroJetDenominator(usize),
    #[error("jet has {got} entries, expected {expected}")]
    JetLength { got: usize, expected: usize },
}

/// Denominator `D` of the `Q_i` double-sum term `h_l γ_ik ∂_iγ_il / (D h_i² h_k)`.
///
/// Only `D = 1440` makes `½P_ii + Q_i` vanish; `D = 144` is kept to show that
/// the family detects a wrong coefficient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum QDoubleSum {
    #[default]
    Over1440,
    Over144,
}

impl QDoubleSum {
    fn denominator(self) -> f64 {
        match self {
            QDoubleSum::Over1440 => 1440.0,
            QDoubleSum::Over144 => 144.0,
        }
    }
}

/// `G_i` as an affine function of the ratios `u_{k,x} / u_{i,x}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GiExpansion {
    /// Part independent of the jet; includes `G_{i,2}` and the `k = i` ratio (which is 1).
    pub constant: TrackedSum,
    /// `ratios[k]` multiplies `u_{k,x} / u_{i,x}`; entry `i` is zero.
    pub ratios: Vec<TrackedSum>,
}

impl GiExpansion {
    pub fn evaluate(&self, i: usize, ux: &[C]) -> TrackedSum {
        let mut s = self.constant;
        for (k, coeff) in self.ratios.iter().enumerate() {
            if k != i {
                s.absorb(coeff.scaled(ux[k] / ux[i]));
            }
        }
        s
    }

    fn max_relative(&self, i: usize) -> f64 {
        self.ratios
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, c)| c.relative())
            .fold(self.constant.relative(), f64::max)
    }
}

/// The vanishing combinations: `P_ij + P_ji` (`i ≠ j`) and `½P_ii + Q_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Combos {
    pub p_sym: Square<TrackedSum>,
    pub pq: Vec<TrackedSum>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct G2Coefficients {
    pub g_i: Vec<GiExpansion>,
    /// Off-diagonal; the diagonal is empty.
    pub g_ij: Square<TrackedSum>,
    pub p_ij: Square<TrackedSum>,
    pub q_i: Vec<TrackedSum>,
    pub combos: Combos,
}

/// Largest relative residual in each vanishing family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyResiduals {
    pub g_i: f64,
    pub g_ij: f64,
    pub p_sym: f64,
    pub pq: f64,
}

impl FamilyResiduals {
    pub fn max(&self) -> f64 {
        self.g_i.max(self.g_ij).max(self.p_sym).max(self.pq)
    }

    pub fn merge(&self, o: &FamilyResiduals) -> FamilyResiduals {
        FamilyResiduals {
            g_i: self.g_i.max(o.g_i),
            g_ij: self.g_ij.max(o.g_ij),
            p_sym: self.p_sym.max(o.p_sym),
            pq: self.pq.max(o.pq),
        }
    }
}

impl G2Coefficients {
    pub fn dim(&self) -> usize {
        self.q_i.len()
    }

    pub fn combos_from(p_ij: &Square<TrackedSum>, q_i: &[TrackedSum]) -> Combos {
        let n = q_i.len();
        let p_sym = Square::from_fn(n, |i, j| {
            if i == j {
                TrackedSum::new()
            } else {
                let mut s = p_ij[(i, j)];
                s.absorb(p_ij[(j, i)]);
                s
            }
        });
        let pq = (0..n)
            .map(|i| {
                let mut s = p_ij[(i, i)].scaled(C::new(0.5, 0.0));
                s.absorb(q_i[i]);
                s
            })
            .collect();
        Combos { p_sym, pq }
    }

    pub fn families(&self) -> FamilyResiduals {
        let n = self.dim();
        let mut f = FamilyResiduals::default();
        for i in 0..n {
            f.g_i = f.g_i.max(self.g_i[i].max_relative(i));
            f.pq = f.pq.max(self.combos.pq[i].relative());
            for j in 0..n {
                if i != j {
                    f.g_ij = f.g_ij.max(self.g_ij[(i, j)].relative());
                    f.p_sym = f.p_sym.max(self.combos.p_sym[(i, j)].relative());
                }
            }
        }
        f
    }
}

/// `∂_k h_i = r_ik h_k`.
pub fn partial_h(rd: &RotationData, k: usize, i: usize) -> C {
    rd.r[(i, k)] * rd.frame.h[k]
}

/// `∂_k γ_ij`: `r_ik r_jk + δ_ki θ_ij + δ_kj θ_ji` for `i ≠ j`, zero on the diagonal.
pub fn partial_gamma(rd: &RotationData, k: usize, i: usize, j: usize) -> C {
    if i == j {
        return C::new(0.0, 0.0);
    }
    let mut v = rd.r[(i, k)] * rd.r[(j, k)];
    if k == i {
        v += rd.theta[(i, j)];
    }
    if k == j {
        v += rd.theta[(j, i)];
    }
    v
}

struct Ctx<'a> {
    rd: &'a RotationData,
    n: usize,
}

impl Ctx<'_> {
    fn h(&self, i: usize) -> C {
        self.rd.frame.h[i]
    }
    fn u(&self, i: usize) -> C {
        self.rd.frame.u[i]
    }
    fn g(&self, i: usize, j: usize) -> C {
        self.rd.gamma[(i, j)]
    }
    fn bh(&self, i: usize) -> C {
        self.rd.big_h[i]
    }
    fn dh(&self, k: usize, i: usize) -> C {
        partial_h(self.rd, k, i)
    }
    fn dg(&self, k: usize, i: usize, j: usize) -> C {
        partial_gamma(self.rd, k, i, j)
    }
    /// `∂_k(h_k⁻¹ γ_ik)`
    fn dkinv(&self, k: usize, i: usize) -> C {
        let hk = self.h(k);
        -self.dh(k, k) * self.g(i, k) / (hk * hk) + self.dg(k, i, k) / hk
    }
    /// `∂_i(h_i γ_il)`
    fn dihg(&self, i: usize, l: usize) -> C {
        self.dh(i, i) * self.g(i, l) + self.h(i) * self.dg(i, i, l)
    }
}

fn pw(z: C, n: i32) -> C {
    z.powi(n)
}

fn g_i(cx: &Ctx, i: usize) -> GiExpansion {
    let n = cx.n;
    let (hi, hbi) = (cx.h(i), cx.bh(i));
    let mut co = vec![TrackedSum::new(); n];
    let mut c0 = TrackedSum::new();
    // G_{i,1}: ∂_x f / u_{i,x} = Σ_l (u_{l,x}/u_{i,x}) ∂_l f
    for (l, col) in co.iter_mut().enumerate() {
        col.add(cx.dh(l, i) * hbi / (60.0 * pw(hi, 3)));
        col.add(-7.0 * cx.dh(i, i) * cx.dh(l, i) / (5760.0 * pw(hi, 4)));
    }
    for k in 0..n {
        let (hk, gik) = (cx.h(k), cx.g(i, k));
        co[k].add(gik * cx.bh(k) / (120.0 * hi * hk));
        for (l, col) in co.iter_mut().enumerate() {
            col.add(-gik * cx.dh(l, i) / (5760.0 * hi * hi * hk));
            col.add(cx.dg(l, i, k) / (5760.0 * hi * hk));
        }
        co[k].add(-gik * cx.dh(k, k) / (1152.0 * hi * hk * hk));
        co[k].add(cx.dg(i, i, k) * hk / (1920.0 * pw(hi, 3)));
        co[k].add(cx.dg(k, i, k) / (2880.0 * hi * hk));
        co[k].add(-7.0 * gik * gik / (1152.0 * hi * hi));
    }
    for k in 0..n {
        for l in 0..n {
            let hl = cx.h(l);
            co[k].add(-cx.h(k) * cx.g(i, l) * cx.g(k, l) / (1920.0 * hi * hl * hl));
        }
    }
    // G_{i,2}
    let dii = cx.dh(i, i);
    c0.add(-3.0 * dii * hbi / (40.0 * pw(hi, 3)));
    c0.add(19.0 * dii * dii / (2880.0 * pw(hi, 4)));
    for k in 0..n {
        let (hk, gik, dkk) = (cx.h(k), cx.g(i, k), cx.dh(k, k));
        for t in [
            gik * hbi / (120.0 * hi * hk),
            7.0 * gik * cx.bh(k) / (120.0 * hi * hk),
            -4.0 * gik * dii / (5760.0 * hi * hi * hk),
            -7.0 * gik * dkk / (2880.0 * hi * hk * hk),
            gik * dkk / (384.0 * pw(hi, 3)),
            -cx.dg(k, i, k) * hk / (384.0 * pw(hi, 3)),
            cx.dg(i, i, k) / (2880.0 * hi * hk),
            7.0 * cx.dg(k, i, k) / (2880.0 * hi * hk),
            gik * hi * dkk / (2880.0 * pw(hk, 4)),
            -19.0 * gik * gik / (720.0 * hi * hi),
            gik * gik / (1440.0 * hk * hk),
        ] {
            c0.add(t);
        }
        for l in 0..n {
            let hl = cx.h(l);
            c0.add(-hi * cx.g(i, l) * cx.g(k, l) / (2880.0 * hk * hl * hl));
        }
    }
    c0.absorb(co[i]);
    co[i] = TrackedSum::new();
    GiExpansion { constant: c0, ratios: co }
}

fn g_ij(cx: &Ctx, i: usize, j: usize) -> TrackedSum {
    let (hi, hj, gij) = (cx.h(i), cx.h(j), cx.g(i, j));
    let mut a = TrackedSum::new();
    a.add(-gij * gij * cx.bh(j) / (120.0 * hj * hj));
    a.add(pw(gij, 3) / (480.0 * hi * hj));
    a.add(-gij / 5760.0 * (cx.dg(i, i, j) / (hi * hi)));
    a.add(-gij / 5760.0 * (cx.dg(j, i, j) / (hj * hj)));
    a.add(gij * gij / 5760.0 * cx.dh(i, i) / pw(hi, 3));
    a.add(gij * gij / 5760.0 * 3.0 * cx.dh(j, j) / pw(hj, 3));
    for k in 0..cx.n {
        let hk = cx.h(k);
        a.add(gij * cx.g(i, k) * cx.g(j, k) / (5760.0 * hk * hk));
        a.add(gij * gij / (5760.0 * hk) * (cx.g(j, k) / hj));
        a.add(-gij * gij / (5760.0 * hk) * (cx.g(i, k) / hi));
    }
    a
}

fn p_ij(cx: &Ctx, i: usize, j: usize) -> TrackedSum {
    let n = cx.n;
    let (hi, hj) = (cx.h(i), cx.h(j));
    let (hbi, hbj) = (cx.bh(i), cx.bh(j));
    let gij = cx.g(i, j);
    let (dii, djj) = (cx.dh(i, i), cx.dh(j, j));
    let diij = cx.dg(i, i, j);
    let mut a = TrackedSum::new();
    for t in [
        -2.0 * gij * hbi * hbj / (5.0 * hi * hj),
        gij * djj * hbi / (20.0 * hi * hj * hj),
        gij * hi * djj * hbj / (20.0 * pw(hj, 4)),
        -19.0 * gij * gij * hbj / (30.0 * hj * hj),
        -diij * hbj / (60.0 * hi * hj),
        41.0 * pw(gij, 3) / (240.0 * hi * hj),
        -41.0 * gij * diij / (1440.0 * hi * hi),
        diij * djj / (1440.0 * hi * hj * hj),
        79.0 * gij * gij * djj / (1440.0 * pw(hj, 3)),
        -gij * dii * djj / (720.0 * hi * hi * hj * hj),
        -gij * hi * djj * djj / (288.0 * pw(hj, 5)),
    ] {
        a.add(t);
    }
    for k in 0..n {
        let hk = cx.h(k);
        let (gik, gjk) = (cx.g(i, k), cx.g(j, k));
        let (hbk, dkk) = (cx.bh(k), cx.dh(k, k));
        let diik = cx.dg(i, i, k);
        for t in [
            gij * gik * hbj / (60.0 * hj * hk),
            -gik * gjk * hi * hj * hbk / (30.0 * pw(hk, 4)),
            -gij * gjk * hi * hbj / (60.0 * hj * hj * hk),
            gik * gjk * hi * hbj / (60.0 * hj * hk * hk),
            -7.0 * gij * gjk * hi * hbk / (60.0 * hj * hj * hk),
            -gij * gik * djj / (720.0 * hj * hj * hk),
            gij * gjk * hi * djj / (240.0 * pw(hj, 3) * hk),
            -gik * gjk * hi * djj / (1440.0 * hj * hj * hk * hk),
            gij * gjk * hi * dkk / (720.0 * pw(hk, 4)),
            gik * gjk * hi * hj * dkk / (288.0 * pw(hk, 5)),
            gjk * diij / (1440.0 * hi * hk),
            -hj * hk * gij * diik / (360.0 * pw(hi, 4)),
            -hj * (3.0 * gik * diij + 2.0 * gij * diik) / (1440.0 * hi * hi * hk),
            -7.0 * hj * gij * cx.dkinv(k, i) / (1440.0 * hi * hi),
            -hi * hj * gik * cx.dg(k, j, k) / (480.0 * pw(hk, 4)),
            gij * gij * gjk / (120.0 * hj * hk),
            7.0 * hi * gij * gjk * gjk / (160.0 * pw(hj, 3)),
            11.0 * gij * gik * gjk / (2880.0 * hk * hk),
            hj * gik * gik * gjk / (96.0 * pw(hk, 3)),
        ] {
            a.add(t);
        }
        for l in 0..n {
            let hl = cx.h(l);
            let w = hi * hj * cx.g(i, l) * cx.g(j, l) / (720.0 * hk * hl * hl);
            a.add(w * (cx.g(k, l) / hl));
            a.add(-w * (gjk / (2.0 * hj)));
            a.add(-hi * gij * cx.g(j, l) * cx.g(k, l) / (720.0 * hk * hl * hl));
        }
    }
    a
}

fn q_i(cx: &Ctx, i: usize, d: QDoubleSum) -> TrackedSum {
    let n = cx.n;
    let hi = cx.h(i);
    let hbi = cx.bh(i);
    let dii = cx.dh(i, i);
    let qf = d.denominator();
    let mut a = TrackedSum::new();
    a.add(4.0 * pw(hbi, 3) / (5.0 * hi * hi));
    a.add(-7.0 * dii * hbi * hbi / (10.0 * pw(hi, 3)));
    a.add(7.0 * dii * dii * hbi / (48.0 * pw(hi, 4)));
    a.add(-pw(dii, 3) / (120.0 * pw(hi, 5)));
    for k in 0..n {
        let hk = cx.h(k);
        let gik = cx.g(i, k);
        let (hbk, dkk) = (cx.bh(k), cx.dh(k, k));
        let (diik, dkik) = (cx.dg(i, i, k), cx.dg(k, i, k));
        let dkinv = cx.dkinv(k, i);
        for t in [
            7.0 * gik * hbi * hbk / (10.0 * hi * hk),
            -gik * dii * hbi / (120.0 * hi * hi * hk),
            7.0 * dkinv * hbi / (240.0 * hi),
            -7.0 * gik * dii * hbk / (80.0 * hi * hi * hk),
            (2.0 * hbi + 7.0 * hbk) * diik / (240.0 * hi * hk),
            -31.0 * gik * gik * hbi / (144.0 * hi * hi),
            gik * dii * dii / (720.0 * pw(hi, 3) * hk),
            253.0 * gik * gik * dii / (5760.0 * pw(hi, 3)),
            -diik * dii / (960.0 * hi * hi * hk),
            -gik * gik * dkk / (2880.0 * pw(hk, 3)),
            -7.0 * dkinv * dii / (1920.0 * hi * hi),
            -7.0 * diik * dkk / (5760.0 * hi * hk * hk),
            -41.0 * diik * dii * hk / (5760.0 * pw(hi, 4)),
            cx.dihg(i, k) * dkk / (2880.0 * pw(hk, 4)),
            -113.0 * gik * diik / (5760.0 * hi * hi),
            (3.0 * diik + dkik) * gik / (1440.0 * hk * hk),
            -pw(gik, 3) / (240.0 * hi * hk),
        ] {
            a.add(t);
        }
        if k != i {
            let uik = cx.u(i) - cx.u(k);
            for t in [
                gik * hbk / (576.0 * uik * hi * hk),
                gik * hk * hbi / (576.0 * uik * pw(hi, 3)),
                -diik * hk / (576.0 * uik * pw(hi, 3)),
                -dkik / (576.0 * uik * hi * hk),
            ] {
                a.add(t);
            }
        }
        for l in 0..n {
            let hl = cx.h(l);
            let (gil, gkl) = (cx.g(i, l), cx.g(k, l));
            let diil = cx.dg(i, i, l);
            let ukl = cx.u(k) - cx.u(l);
            for t in [
                -gkl * cx.dihg(i, l) / (2880.0 * hk * hl * hl),
                gil * gil * gkl / (2880.0 * hk * hl),
                -gik * gil * gil / (240.0 * hi * hk),
                -gkl * diik / (2880.0 * hi * hl),
                ukl * gik * gkl * diil / (144.0 * hi * hi),
                hl * gik * diil / (qf * hi * hi * hk),
                hl * (cx.u(i) - cx.u(k)) * gik * gik * diil / (40.0 * pw(hi, 3)),
            ] {
                a.add(t);
            }
            if l != i {
                a.add(-ukl * gik * cx.dg(l, k, l) / (1152.0 * (cx.u(i) - cx.u(l)) * hi * hl));
            }
            if k != i {
                a.add(hk * ukl * gkl * diil / (1152.0 * (cx.u(i) - cx.u(k)) * pw(hi, 3)));
            }
        }
    }
    a
}

pub fn g2_from_rotation(rd: &RotationData, d: QDoubleSum) -> G2Coefficients {
    let n = rd.dim();
    let cx = Ctx { rd, n };
    let g_i_all = (0..n).map(|i| g_i(&cx, i)).collect();
    let g_ij_all = Square::from_fn(n, |i, j| if i == j { TrackedSum::new() } else { g_ij(&cx, i, j) });
    let p = Square::from_fn(n, |i, j| p_ij(&cx, i, j));
    let q: Vec<TrackedSum> = (0..n).map(|i| q_i(&cx, i, d)).collect();
    let combos = G2Coefficients::combos_from(&p, &q);
    G2Coefficients {
        g_i: g_i_all,
        g_ij: g_ij_all,
        p_ij: p,
        q_i: q,
        combos,
    }
}

pub fn g2_coefficients(model: &FrobeniusModel, p: &Point) -> Result<G2Coefficients, G2Error> {
    let rd = rotation_data(model, p)?;
    Ok(g2_from_rotation(&rd, QDoubleSum::Over1440))
}

/// `(r_ij / (240 h_i h_j)) φ_ij + (r_ij² / 240)(φ_i/h_i² − φ_j/h_j²)`, off-diagonal.
pub fn gij_via_genus1(rd: &RotationData, g1: &GenusOneData) -> Square<C> {
    let n = rd.dim();
    let (r, h) = (&rd.r, &rd.frame.h);
    Square::from_fn(n, |i, j| {
        if i == j {
            return C::new(0.0, 0.0);
        }
        let a = r[(i, j)] / (240.0 * h[i] * h[j]) * g1.phi2[(i, j)];
        let b = r[(i, j)] * r[(i, j)] / 240.0 * (g1.phi1[i] / (h[i] * h[i]) - g1.phi1[j] / (h[j] * h[j]));
        a + b
    })
}

/// First and second `x`-derivatives of the canonical coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetPoint {
    pub ux: Vec<C>,
    pub uxx: Vec<C>,
}

/// Evaluates `G⁽²⁾` at a jet; the scale is the largest summand magnitude.
pub fn g2_assemble(coeffs: &G2Coefficients, jet: &JetPoint) -> Result<TrackedSum, G2Error> {
    let n = coeffs.dim();
    for got in [jet.ux.len(), jet.uxx.len()] {
        if got != n {
            return Err(G2Error::JetLength { got, expected: n });
        }
    }
    if let Some(i) = jet.ux.iter().position(|z| *z == C::new(0.0, 0.0)) {
        return Err(G2Error::ZeroJetDenominator(i));
    }
    let ux = &jet.ux;
    let mut s = TrackedSum::new();
    for i in 0..n {
        s.absorb(coeffs.g_i[i].evaluate(i, ux).scaled(jet.uxx[i]));
        s.absorb(coeffs.q_i[i].scaled(ux[i] * ux[i]));
        for j in 0..n {
            if i != j {
                s.absorb(coeffs.g_ij[(i, j)].scaled(pw(ux[j], 3) / ux[i]));
            }
            s.absorb(coeffs.p_ij[(i, j)].scaled(ux[i] * ux[j] * 0.5));
        }
    }
    Ok(s)
}

/// Expresses coefficients in canonical indices relabelled by `perm`: new index
/// `a` is old index `perm[a]`, as in [`gauge_transform`](crate::frame::gauge_transform).
///
/// Sign flips of `h` need no counterpart; every coefficient is even in each `h_i`.
pub fn relabel(coeffs: &G2Coefficients, perm: &[usize]) -> G2Coefficients {
    let n = coeffs.dim();
    let g_i = (0..n)
        .map(|a| {
            let old = &coeffs.g_i[perm[a]];
            GiExpansion {
                constant: old.constant,
                ratios: (0..n).map(|b| old.ratios[perm[b]]).collect(),
            }
        })
        .collect();
    let g_ij = Square::from_fn(n, |a, b| coeffs.g_ij[(perm[a], perm[b])]);
    let p = Square::from_fn(n, |a, b| coeffs.p_ij[(perm[a], perm[b])]);
    let q: Vec<TrackedSum> = (0..n).map(|a| coeffs.q_i[perm[a]]).collect();
    let combos = G2Coefficients::combos_from(&p, &q);
    G2Coefficients {
        g_i,
        g_ij,
        p_ij: p,
        q_i: q,
        combos,
    }
}

/// Largest `|a − b|` over all coefficients, relative to the larger scale of each pair.
pub fn max_coefficient_difference(a: &G2Coefficients, b: &G2Coefficients) -> f64 {
    let n = a.dim();
    let d = |x: &TrackedSum, y: &TrackedSum| {
        let s = x.scale.max(y.scale);
        if s == 0.0 {
            0.0
        } else {
            (x.value - y.value).norm() / s
        }
    };
    let mut m = 0.0f64;
    for i in 0..n {
        m = m.max(d(&a.g_i[i].constant, &b.g_i[i].constant));
        m = m.max(d(&a.q_i[i], &b.q_i[i]));
        for j in 0..n {
            m = m.max(d(&a.g_i[i].ratios[j], &b.g_i[i].ratios[j]));
            m = m.max(d(&a.g_ij[(i, j)], &b.g_ij[(i, j)]));
            m = m.max(d(&a.p_ij[(i, j)], &b.p_ij[(i, j)]));
        }
    }
    m
}
