//! Seeded verification campaigns.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use frobenius_core::g2::{gij_via_genus1, max_coefficient_difference, relabel};
use frobenius_core::rotation::{algebraic_residuals, structure_residuals};
use frobenius_core::sampling::{sample_points, SamplingBox};
use frobenius_core::{
    c2_identity_residuals, g2_from_rotation, gauge_transform, genus_one, FrameOptions, FrobeniusModel, Point, QDoubleSum, RotationData, Square,
};

/// Points at the start of the campaign that also get the gauge checks.
const GAUGE_POINTS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub points: usize,
    pub seed: u64,
    pub tol: f64,
    pub jet_tol: f64,
    pub delta: f64,
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            points: 100,
            seed: 0,
            tol: 1e-8,
            jet_tol: 1e-6,
            delta: 1e-6,
            re: (-1.0, 1.0),
            im: (0.0, 0.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    /// Points where the check could not be evaluated.
    pub failures: usize,
    pub passed: bool,
    /// First point attaining `max_residual`, or the first failure.
    pub worst_point: Option<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub model: String,
    pub dimension: usize,
    pub config: VerifyConfig,
    pub sampled: usize,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
    pub error: Option<String>,
}

impl VerifyReport {
    pub fn failed(model: &str, config: &VerifyConfig, error: String) -> Self {
        VerifyReport {
            model: model.to_string(),
            dimension: 0,
            config: config.clone(),
            sampled: 0,
            checks: Vec::new(),
            passed: false,
            error: Some(error),
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy)]
enum Tol {
    Main,
    Jet,
}

const CHECKS: [(&str, Tol); 12] = [
    ("wdvv", Tol::Main),
    ("frame", Tol::Main),
    ("structure_algebraic", Tol::Main),
    ("structure_jet", Tol::Jet),
    ("genus1_fit", Tol::Main),
    ("genus1_identities", Tol::Main),
    ("g2_g_i", Tol::Main),
    ("g2_g_ij", Tol::Main),
    ("g2_p_sym", Tol::Main),
    ("g2_pq", Tol::Main),
    ("g2_g_ij_genus1", Tol::Main),
    ("gauge", Tol::Main),
];

/// Per-check residual at one point: `None` when not evaluated there, NaN when
/// the evaluation failed.
type Row = [Option<f64>; CHECKS.len()];

fn gij_cross(rd: &RotationData, g_ij: &Square<frobenius_core::TrackedSum>) -> f64 {
    let Ok(g1) = genus_one(rd) else { return f64::NAN };
    let alt = gij_via_genus1(rd, &g1);
    let n = rd.dim();
    let mut m = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let a = g_ij[(i, j)];
                let scale = a.scale.max(alt[(i, j)].norm());
                if scale > 0.0 {
                    m = m.max((a.value - alt[(i, j)]).norm() / scale);
                }
            }
        }
    }
    m
}

/// Worst change of the coefficients under single sign flips, reversal and a
/// cyclic shift of the canonical indices.
fn gauge_change(rd: &RotationData) -> f64 {
    let n = rd.dim();
    let base = g2_from_rotation(rd, QDoubleSum::Over1440);
    let fam = base.families();
    let id: Vec<usize> = (0..n).collect();
    let mut gauges: Vec<(Vec<i8>, Vec<usize>)> = (0..n)
        .map(|i| {
            let mut f = vec![1i8; n];
            f[i] = -1;
            (f, id.clone())
        })
        .collect();
    gauges.push((vec![1; n], id.iter().rev().copied().collect()));
    gauges.push((vec![1; n], (0..n).map(|a| (a + 1) % n).collect()));
    let mut worst = 0.0f64;
    for (flips, perm) in gauges {
        let frame = gauge_transform(&rd.frame, &flips, &perm);
        let r = Square::from_fn(n, |a, b| rd.r[(perm[a], perm[b])] * (flips[a] * flips[b]) as f64);
        let moved = g2_from_rotation(&RotationData::from_parts(frame, r), QDoubleSum::Over1440);
        let mf = moved.families();
        let fam_change = [(fam.g_i, mf.g_i), (fam.g_ij, mf.g_ij), (fam.p_sym, mf.p_sym), (fam.pq, mf.pq)]
            .iter()
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        worst = worst.max(max_coefficient_difference(&moved, &relabel(&base, &perm))).max(fam_change);
    }
    worst
}

fn evaluate(model: &FrobeniusModel, p: &Point, rd: &RotationData, gauge: bool) -> (Row, Option<Complex64>) {
    let mut row: Row = [None; CHECKS.len()];
    row[0] = Some(model.wdvv_residual(p));
    let fr = rd.frame.residuals(model, p);
    row[1] = Some(fr.idempotency.max(fr.completeness).max(fr.orthogonality));
    let a = algebraic_residuals(rd);
    row[2] = Some(
        a.r_symmetry
            .max(a.theta_symmetry)
            .max(a.omega_symmetry)
            .max(a.string_equation)
            .max(a.hamiltonian_forms),
    );
    row[3] = Some(match structure_residuals(model, p, rd) {
        Ok(s) => s.r_derivative.max(s.theta_derivative).max(s.h_derivative),
        Err(_) => f64::NAN,
    });
    let c = match genus_one(rd) {
        Ok(g1) => {
            let r = c2_identity_residuals(rd, g1.c_estimate);
            row[4] = Some(g1.c_residual);
            row[5] = Some(r.one_point.max(r.theta_pair).max(r.theta_row));
            Some(g1.c_estimate)
        }
        Err(_) => {
            row[4] = Some(f64::NAN);
            row[5] = Some(f64::NAN);
            None
        }
    };
    let co = g2_from_rotation(rd, QDoubleSum::Over1440);
    let f = co.families();
    row[6] = Some(f.g_i);
    row[7] = Some(f.g_ij);
    row[8] = Some(f.p_sym);
    row[9] = Some(f.pq);
    row[10] = Some(gij_cross(rd, &co.g_ij));
    if gauge {
        row[11] = Some(gauge_change(rd));
    }
    (row, c)
}

fn summarize(name: &str, tolerance: f64, values: impl Iterator<Item = (Option<f64>, Vec<Complex64>)>) -> CheckReport {
    let mut max_residual = 0.0f64;
    let mut worst_point = None;
    let mut failures = 0;
    let mut first_failure = None;
    for (v, p) in values {
        match v {
            Some(x) if x.is_nan() => {
                failures += 1;
                first_failure.get_or_insert(p);
            }
            Some(x) if worst_point.is_none() || x > max_residual => {
                max_residual = max_residual.max(x);
                worst_point = Some(p);
            }
            _ => {}
        }
    }
    CheckReport {
        name: name.to_string(),
        max_residual,
        tolerance,
        failures,
        passed: failures == 0 && max_residual <= tolerance,
        worst_point: first_failure.or(worst_point),
    }
}

/// Samples `config.points` semisimple points and evaluates every check.
///
/// Points are drawn sequentially from the seed; the checks run in parallel
/// and are collected in draw order, so the report does not depend on the
/// thread count.
pub fn verify(model: &FrobeniusModel, config: &VerifyConfig) -> VerifyReport {
    let n = model.dimension();
    let bx = SamplingBox {
        re: vec![config.re; n],
        im: vec![config.im; n],
    };
    let opts = FrameOptions { delta: config.delta };
    let pts = match sample_points(model, &bx, config.points, config.seed, &opts) {
        Ok(p) => p,
        Err(e) => {
            let mut r = VerifyReport::failed(model.name(), config, e.to_string());
            r.dimension = n;
            return r;
        }
    };
    let rows: Vec<(Row, Option<Complex64>)> = pts
        .par_iter()
        .enumerate()
        .map(|(k, (p, rd))| evaluate(model, p, rd, k < GAUGE_POINTS))
        .collect();

    let tol = |t: Tol| match t {
        Tol::Main => config.tol,
        Tol::Jet => config.jet_tol,
    };
    let mut checks: Vec<CheckReport> = CHECKS
        .iter()
        .enumerate()
        .map(|(k, (name, t))| summarize(name, tol(*t), rows.iter().zip(&pts).map(|((row, _), (p, _))| (row[k], p.0.clone()))))
        .collect();

    // C must be one constant over the whole campaign.
    let first = rows.iter().find_map(|(_, c)| *c);
    let spread = rows
        .iter()
        .zip(&pts)
        .map(|((_, c), (p, _))| (c.zip(first).map(|(c, c0)| (c - c0).norm()).or(Some(f64::NAN)), p.0.clone()));
    checks.push(summarize("genus1_constant", config.tol, spread));

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        model: model.name().to_string(),
        dimension: n,
        config: config.clone(),
        sampled: pts.len(),
        checks,
        passed,
        error: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobenius_core::builtin;

    fn small(points: usize) -> VerifyConfig {
        VerifyConfig {
            points,
            seed: 5,
            ..Default::default()
        }
    }

    #[test]
    fn a2_passes() {
        let r = verify(&builtin::a2(), &small(8));
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.sampled, 8);
        assert_eq!(r.checks.len(), CHECKS.len() + 1);
    }

    #[test]
    fn corrupted_fails_wdvv() {
        let r = verify(&builtin::a3_corrupted(), &small(8));
        assert!(!r.passed);
        assert!(!r.check("wdvv").unwrap().passed);
        assert!(!r.check("g2_pq").unwrap().passed);
    }

    #[test]
    fn worst_point_is_reported() {
        let r = verify(&builtin::a3(), &small(6));
        for c in &r.checks {
            assert_eq!(c.worst_point.as_ref().map(Vec::len), Some(3), "{}", c.name);
        }
    }

    #[test]
    fn summarize_takes_first_maximum() {
        let p = |x: f64| vec![Complex64::new(x, 0.0)];
        let c = summarize(
            "x",
            1.0,
            [(Some(0.5), p(1.0)), (None, p(2.0)), (Some(0.5), p(3.0)), (Some(0.1), p(4.0))].into_iter(),
        );
        assert_eq!(c.max_residual, 0.5);
        assert_eq!(c.worst_point, Some(p(1.0)));
        let c = summarize("x", 1.0, [(Some(0.1), p(1.0)), (Some(f64::NAN), p(2.0))].into_iter());
        assert_eq!((c.failures, c.passed), (1, false));
        assert_eq!(c.worst_point, Some(p(2.0)));
    }

    #[test]
    fn exhausted_sampling_is_an_error() {
        let cfg = VerifyConfig { re: (0.0, 0.0), ..small(2) };
        let r = verify(&builtin::a2(), &cfg);
        assert!(!r.passed && r.error.is_some());
    }
}
