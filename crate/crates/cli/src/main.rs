use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use frobenius_cli::{
    eval_g2, frame_report, parse_orders, parse_point, parse_range, resolve_model, selection_report, verify, VerifyConfig, VerifyReport, EXIT_FAILED,
    EXIT_MODEL, EXIT_NOT_ADE,
};
use frobenius_core::gwcomb::{GwError, SelectionBounds};
use frobenius_core::QDoubleSum;

#[derive(Parser)]
#[command(name = "frobenius", version, about = "Numerical checks on semisimple Frobenius manifolds")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Semisimplicity threshold on the canonical coordinates.
    #[arg(long, env = "FROBENIUS_DELTA", default_value_t = 1e-6, global = true)]
    delta: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Denominator {
    #[value(name = "1440")]
    D1440,
    #[value(name = "144")]
    D144,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity over a seeded random campaign.
    Verify {
        /// Built-in name (a1, qh-p1, a2, a3, a3-corrupted) or a model file.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "FROBENIUS_TOL", default_value_t = 1e-8)]
        tol: f64,
        /// Tolerance for checks against derivative jets.
        #[arg(long, env = "FROBENIUS_JET_TOL", default_value_t = 1e-6)]
        jet_tol: f64,
        /// Real part range `lo,hi` for every coordinate.
        #[arg(long, value_parser = parse_range, default_value = "-1,1", allow_hyphen_values = true)]
        re: (f64, f64),
        /// Imaginary part range `lo,hi` for every coordinate.
        #[arg(long, value_parser = parse_range, default_value = "0,0", allow_hyphen_values = true)]
        im: (f64, f64),
    },
    /// Compare the selection-rule prover with the independent oracle.
    Selection {
        /// Orbifold orders `a,b,c`.
        #[arg(long, value_parser = parse_orders)]
        orbifold: [u32; 3],
        #[arg(long, default_value_t = 5)]
        max_k: u32,
        #[arg(long, default_value_t = 5)]
        max_d: u32,
        #[arg(long, default_value_t = 2)]
        max_level: u32,
        #[arg(long, default_value_t = 2)]
        max_genus: u32,
    },
    /// Genus-2 coefficients at one point.
    EvalG2 {
        #[arg(long)]
        model: String,
        /// Comma-separated coordinates, e.g. `0.3+0.1i,-0.5`.
        #[arg(long, value_parser = coords, allow_hyphen_values = true)]
        point: Coords,
        #[arg(long, value_parser = coords, allow_hyphen_values = true)]
        ux: Option<Coords>,
        #[arg(long, value_parser = coords, allow_hyphen_values = true)]
        uxx: Option<Coords>,
        /// Denominator of the `Q_i` double-sum term.
        #[arg(long, value_enum, default_value_t = Denominator::D1440)]
        q_double_sum: Denominator,
    },
    /// Canonical frame and rotation data at one point.
    Frame {
        #[arg(long)]
        model: String,
        #[arg(long, value_parser = coords, allow_hyphen_values = true)]
        point: Coords,
    },
}

/// A comma-separated point; a newtype so clap takes it as one value.
#[derive(Clone, Debug, PartialEq)]
struct Coords(Vec<Complex64>);

fn coords(s: &str) -> Result<Coords, String> {
    parse_point(s).map(Coords)
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn fmt_c(z: Complex64) -> String {
    format!("{:+.6e}{:+.6e}i", z.re, z.im)
}

fn print_verify(r: &VerifyReport) {
    println!("model {} (dim {}), {} points, seed {}", r.model, r.dimension, r.sampled, r.config.seed);
    for c in &r.checks {
        let tag = if c.passed { "ok  " } else { "FAIL" };
        println!(
            "{tag} {:<22} {:.3e} <= {:.1e}  failures {}",
            c.name, c.max_residual, c.tolerance, c.failures
        );
    }
    if let Some(e) = &r.error {
        println!("error: {e}");
    }
    println!("{}", if r.passed { "passed" } else { "failed" });
}

fn code(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = matches!(cli.format, Format::Json);
    let start = Instant::now();
    match cli.command {
        Command::Verify {
            model,
            points,
            seed,
            tol,
            jet_tol,
            re,
            im,
        } => {
            let config = VerifyConfig {
                points,
                seed,
                tol,
                jet_tol,
                delta: cli.delta,
                re,
                im,
            };
            let (report, status) = match resolve_model(&model) {
                Ok(m) => {
                    let r = verify(&m, &config);
                    let s = code(r.passed);
                    (r, s)
                }
                Err(e) => (VerifyReport::failed(&model, &config, e.to_string()), ExitCode::from(EXIT_MODEL)),
            };
            if json {
                emit(&report);
            } else {
                print_verify(&report);
            }
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            eprintln!(
                "verify {}: {} in {:.2}s{}",
                report.model,
                if report.passed { "passed" } else { "failed" },
                start.elapsed().as_secs_f64(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", failed.join(", "))
                }
            );
            status
        }
        Command::Selection {
            orbifold,
            max_k,
            max_d,
            max_level,
            max_genus,
        } => {
            let bounds = SelectionBounds {
                max_k,
                max_d,
                max_level,
                max_genus,
            };
            match selection_report(orbifold, &bounds) {
                Ok(run) => {
                    if json {
                        emit(&run);
                    } else {
                        let r = &run.report;
                        println!(
                            "{}: {} correlators, {} zero, {} valued, {} unknown",
                            run.orbifold, r.checked, r.zero, r.value, r.unknown
                        );
                        println!("dimension {} divisor {} disagreements {}", r.by_dimension, r.by_divisor, r.disagreements);
                        for v in &r.values {
                            println!("value {v}");
                        }
                        for e in &r.examples {
                            println!("disagreement {e}");
                        }
                    }
                    eprintln!(
                        "selection {}: {} disagreements in {:.2}s",
                        run.orbifold,
                        run.report.disagreements,
                        start.elapsed().as_secs_f64()
                    );
                    code(run.passed)
                }
                Err(e @ GwError::NotAde(_)) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_NOT_ADE)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_FAILED)
                }
            }
        }
        Command::EvalG2 {
            model,
            point,
            ux,
            uxx,
            q_double_sum,
        } => {
            let m = match resolve_model(&model) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_MODEL);
                }
            };
            let d = match q_double_sum {
                Denominator::D1440 => QDoubleSum::Over1440,
                Denominator::D144 => QDoubleSum::Over144,
            };
            match eval_g2(&m, &point.0, d, ux.map(|c| c.0), uxx.map(|c| c.0), cli.delta) {
                Ok(r) => {
                    if json {
                        emit(&r);
                    } else {
                        let f = r.families;
                        println!(
                            "{} at {:?} ({:?})",
                            r.model,
                            r.point.iter().map(|z| fmt_c(*z)).collect::<Vec<_>>(),
                            r.q_double_sum
                        );
                        println!("families g_i {:.3e} g_ij {:.3e} p_sym {:.3e} pq {:.3e}", f.g_i, f.g_ij, f.p_sym, f.pq);
                        for (i, q) in r.coefficients.q_i.iter().enumerate() {
                            println!("Q_{} = {}", i + 1, fmt_c(q.value));
                        }
                        if let Some(v) = r.value {
                            println!("G2 = {} (relative {:.3e})", fmt_c(v), r.value_relative.unwrap_or(0.0));
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_FAILED)
                }
            }
        }
        Command::Frame { model, point } => {
            let m = match resolve_model(&model) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_MODEL);
                }
            };
            match frame_report(&m, &point.0, cli.delta) {
                Ok(r) => {
                    if json {
                        emit(&r);
                    } else {
                        println!("{} at {:?}", r.model, r.point.iter().map(|z| fmt_c(*z)).collect::<Vec<_>>());
                        for i in 0..r.u.len() {
                            println!(
                                "u_{0} = {1}  h_{0} = {2}  H_{0} = {3}",
                                i + 1,
                                fmt_c(r.u[i]),
                                fmt_c(r.h[i]),
                                fmt_c(r.big_h[i])
                            );
                        }
                        for i in 0..r.u.len() {
                            let row: Vec<String> = (0..r.u.len()).map(|j| fmt_c(r.r[(i, j)])).collect();
                            println!("r_{}* = {}", i + 1, row.join("  "));
                        }
                        let x = r.residuals;
                        println!("residuals {:.1e} {:.1e} {:.1e}", x.idempotency, x.completeness, x.orthogonality);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_FAILED)
                }
            }
        }
    }
}
