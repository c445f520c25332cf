//! Acceptance criteria, one line each. Runs as a plain binary so every line is
//! printed regardless of outcome.

use std::process::ExitCode;
use std::time::Instant;

use frobenius_core::g2::{max_coefficient_difference, relabel};
use frobenius_core::genus::{c2_identity_residuals, genus_one};
use frobenius_core::gwcomb::{ade_triples, run_selection, SelectionBounds};
use frobenius_core::rotation::structure_residuals;
use frobenius_core::sampling::{sample_points, SamplingBox};
use frobenius_core::{
    builtin, g2_from_rotation, gauge_transform, rotation_data, FrameOptions, FrobeniusModel, Point, QDoubleSum, RotationData, Square,
};
use num_complex::Complex64;

const SEED: u64 = 20_240_611;
const POINTS: usize = 100;
const STRUCTURE_POINTS: usize = 20;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn points(m: &FrobeniusModel, n: usize) -> Vec<(Point, RotationData)> {
    sample_points(m, &SamplingBox::unit(m.dimension()), n, SEED, &FrameOptions::default()).expect("sampling")
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion_1() -> Outcome {
    let mut worst = Vec::new();
    let mut pass = true;
    for m in builtin::vanishing_models() {
        let mx = points(&m, POINTS)
            .iter()
            .map(|(_, rd)| g2_from_rotation(rd, QDoubleSum::Over1440).families().max())
            .fold(0.0, f64::max);
        pass &= mx < 1e-7;
        worst.push(format!("{} {mx:.1e}", m.name()));
    }
    Outcome {
        pass,
        detail: format!("max family residual < 1e-7 at {POINTS} points: {}", worst.join(", ")),
    }
}

fn gij_cross_worst(m: &FrobeniusModel) -> f64 {
    let mut mx = 0.0f64;
    for (_, rd) in points(m, POINTS) {
        let co = g2_from_rotation(&rd, QDoubleSum::Over1440);
        let alt = frobenius_core::g2::gij_via_genus1(&rd, &genus_one(&rd).unwrap());
        for i in 0..rd.dim() {
            for j in 0..rd.dim() {
                if i != j {
                    let a = co.g_ij[(i, j)];
                    let scale = a.scale.max(alt[(i, j)].norm());
                    if scale > 0.0 {
                        mx = mx.max((a.value - alt[(i, j)]).norm() / scale);
                    }
                }
            }
        }
    }
    mx
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for m in [builtin::a1(), builtin::qh_p1(), builtin::a2(), builtin::a3()] {
        let mx = gij_cross_worst(&m);
        pass &= mx < 1e-8;
        parts.push(format!("{} {mx:.1e}", m.name()));
    }
    let corrupted = gij_cross_worst(&builtin::a3_corrupted());
    Outcome {
        pass,
        detail: format!(
            "G_ij against genus-1 formula < 1e-8: {} (a3-corrupted, not a Frobenius manifold: {corrupted:.1e})",
            parts.join(", ")
        ),
    }
}

fn criterion_3() -> Outcome {
    let rd = rotation_data(&builtin::qh_p1(), &Point::origin(2)).unwrap();
    let g1 = genus_one(&rd).unwrap();
    let s = 0.5f64.sqrt();
    let e8 = 1.0 / 8.0;
    let checks: Vec<(&str, Complex64, Complex64)> = vec![
        ("u1", rd.frame.u[0], c(-2.0, 0.0)),
        ("u2", rd.frame.u[1], c(2.0, 0.0)),
        ("h1", rd.frame.h[0], c(0.0, s)),
        ("h2", rd.frame.h[1], c(s, 0.0)),
        ("r11", rd.r[(0, 0)], c(e8, 0.0)),
        ("r12", rd.r[(0, 1)], c(0.0, -e8)),
        ("r21", rd.r[(1, 0)], c(0.0, -e8)),
        ("r22", rd.r[(1, 1)], c(-e8, 0.0)),
        ("theta12", rd.theta[(0, 1)], c(0.0, -1.0 / 64.0)),
        ("omega12", rd.omega[(0, 1)], c(0.0, -1.0 / 128.0)),
        ("H1", rd.big_h[0], c(1.0 / 32.0, 0.0)),
        ("H2", rd.big_h[1], c(-1.0 / 32.0, 0.0)),
        ("phi1", g1.phi1[0], c(1.0 / 48.0, 0.0)),
        ("phi2", g1.phi1[1], c(-1.0 / 48.0, 0.0)),
        ("phi12", g1.phi2[(0, 1)], c(0.0, 0.0)),
    ];
    let bad: Vec<_> = checks
        .iter()
        .filter(|(_, got, want)| (got - want).norm() >= 1e-12)
        .map(|(n, _, _)| *n)
        .collect();
    let worst = checks.iter().map(|(_, g, w)| (g - w).norm()).fold(0.0, f64::max);
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{} golden values at the origin within 1e-12, worst {worst:.1e}; failing: {bad:?}",
            checks.len()
        ),
    }
}

fn criterion_4() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for m in [builtin::a1(), builtin::qh_p1(), builtin::a2(), builtin::a3()] {
        let (mut alg, mut jet) = (0.0f64, 0.0f64);
        for (p, rd) in points(&m, STRUCTURE_POINTS) {
            let s = structure_residuals(&m, &p, &rd).unwrap();
            let a = s.algebraic;
            alg = alg
                .max(a.r_symmetry)
                .max(a.theta_symmetry)
                .max(a.omega_symmetry)
                .max(a.string_equation)
                .max(a.hamiltonian_forms);
            jet = jet.max(s.r_derivative).max(s.theta_derivative).max(s.h_derivative);
        }
        pass &= alg < 1e-10 && jet < 1e-6;
        parts.push(format!("{} algebraic {alg:.1e} jet {jet:.1e}", m.name()));
    }
    Outcome {
        pass,
        detail: format!("algebraic < 1e-10, jet < 1e-6 at {STRUCTURE_POINTS} points: {}", parts.join(", ")),
    }
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let qh = points(&builtin::qh_p1(), POINTS);
    let cs: Vec<Complex64> = qh.iter().map(|(_, rd)| genus_one(rd).unwrap().c_estimate).collect();
    let target = c(-1.0 / 24.0, 0.0);
    let dev = cs.iter().map(|z| (z - target).norm()).fold(0.0, f64::max);
    let spread = cs.iter().flat_map(|a| cs.iter().map(move |b| (a - b).norm())).fold(0.0, f64::max);
    pass &= dev < 1e-9 && spread < 1e-8;
    let mut parts = Vec::new();
    for m in builtin::vanishing_models() {
        let mut mx = 0.0f64;
        for (_, rd) in points(&m, POINTS) {
            let g1 = genus_one(&rd).unwrap();
            let r = c2_identity_residuals(&rd, g1.c_estimate);
            mx = mx.max(r.one_point).max(r.theta_pair).max(r.theta_row);
        }
        pass &= mx < 1e-9;
        parts.push(format!("{} {mx:.1e}", m.name()));
    }
    Outcome {
        pass,
        detail: format!(
            "C on qh-p1 off by {dev:.1e}, spread {spread:.1e}; genus-1 identities < 1e-9: {}",
            parts.join(", ")
        ),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for m in builtin::vanishing_models() {
        let n = m.dimension();
        for (_, rd) in points(&m, STRUCTURE_POINTS) {
            let base = g2_from_rotation(&rd, QDoubleSum::Over1440);
            let fam = base.families();
            let mut gauges: Vec<(Vec<i8>, Vec<usize>)> = (0..n)
                .map(|i| {
                    let mut f = vec![1i8; n];
                    f[i] = -1;
                    (f, (0..n).collect())
                })
                .collect();
            gauges.extend(permutations(n).into_iter().map(|p| (vec![1i8; n], p)));
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
                cases += 1;
            }
        }
    }
    Outcome {
        pass: worst < 1e-9,
        detail: format!("{cases} sign flips and relabellings, worst relative change {worst:.1e} (< 1e-9)"),
    }
}

fn criterion_7() -> Outcome {
    let triples = ade_triples(6);
    let bounds = SelectionBounds::default();
    let mut checked = 0u64;
    let mut disagreements = 0u64;
    let mut bad_values = Vec::new();
    for x in &triples {
        let rep = run_selection(x, &bounds).unwrap();
        checked += rep.checked;
        disagreements += rep.disagreements;
        if rep.values != ["<Δ02>_{1,0}"] {
            bad_values.push(format!("{x}: {:?}", rep.values));
        }
        for e in &rep.examples {
            eprintln!("  {x} {e}");
        }
    }
    Outcome {
        pass: triples.len() == 29 && disagreements == 0 && bad_values.is_empty(),
        detail: format!(
            "{} ADE triples, {checked} correlators, {disagreements} disagreements; -1/24 exactly once per orbifold{}",
            triples.len(),
            if bad_values.is_empty() {
                String::new()
            } else {
                format!(" except {bad_values:?}")
            }
        ),
    }
}

fn criterion_8() -> Outcome {
    let m = builtin::a3_corrupted();
    let pts = points(&m, POINTS);
    let wdvv: Vec<f64> = pts.iter().map(|(p, _)| m.wdvv_residual(p)).collect();
    let fams: Vec<f64> = pts
        .iter()
        .map(|(_, rd)| g2_from_rotation(rd, QDoubleSum::Over1440).families().max())
        .collect();
    let worst = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    let above = |v: &[f64]| v.iter().filter(|x| **x > 1e-3).count();
    Outcome {
        pass: worst(&wdvv) > 1e-3 && worst(&fams) > 1e-3,
        detail: format!(
            "a3-corrupted at {POINTS} points: worst WDVV residual {:.1e} ({} points > 1e-3), worst family {:.1e} ({} points > 1e-3)",
            worst(&wdvv),
            above(&wdvv),
            worst(&fams),
            above(&fams)
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("genus-2 families vanish", criterion_1),
        ("G_ij genus-1 cross formula", criterion_2),
        ("golden values for P1 at the origin", criterion_3),
        ("structure identities", criterion_4),
        ("genus-1 constant and identities", criterion_5),
        ("gauge invariance", criterion_6),
        ("orbifold selection rules", criterion_7),
        ("negative control", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {}. {name}: {} ({:.1}s)", k + 1, o.detail, t.elapsed().as_secs_f64());
        failed += !o.pass as u32;
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() as u32 - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
