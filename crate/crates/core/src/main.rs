//! Command-line front end: scalar/matrix Mittag-Leffler evaluation,
//! condition estimates, FDE solutions and Gramians.

use clap::{Args, Parser, Subcommand};
use mlfun::error::{MlError, Result};
use mlfun::fde::{
    companion_from_multiterm, gramian, solve_linear_fde_cached, solve_poly_source_cached,
    trapezoidal_pi, Forcing, GramianKind, MlSchurCache,
};
use mlfun::io::{
    format_f64, parse_complex, parse_fde_problem, read_matrix, write_matrix_csv,
    FdeProblem,
};
use mlfun::{cond_estimate, ml_derivative, ml_matrix, MLParams, MatrixMLRequest};
use num_complex::Complex64;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mlfun", version, about = "Mittag-Leffler functions of scalar and matrix arguments", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate E_{a,b}(z) (k = 0 unless given)
    Eval(EvalArgs),
    /// Evaluate the k-th derivative of E_{a,b} at z
    Deriv(EvalArgs),
    /// Evaluate E_{a,b}(A) for a dense matrix from a file
    Matfun(MatfunArgs),
    /// Estimate condition numbers of the matrix evaluation
    Cond(CondArgs),
    /// Solve a linear-system or multiterm FDE
    Fde(FdeArgs),
    /// Controllability/observability Gramian of a fractional system
    Gramian(GramianArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    /// Complex argument as "a+bi"
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Derivative order
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Target accuracy (overrides ML_TAU)
    #[arg(long)]
    tau: Option<f64>,
}

#[derive(Args)]
struct MatfunArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    /// Input matrix (dense CSV with a+bi tokens, or Matrix Market array)
    #[arg(long)]
    input: std::path::PathBuf,
    /// Output matrix file (dense CSV)
    #[arg(long)]
    output: std::path::PathBuf,
    #[arg(long)]
    tau: Option<f64>,
    /// Eigenvalue clustering tolerance
    #[arg(long, default_value_t = mlfun::DEFAULT_DELTA)]
    delta: f64,
    /// Reference matrix file: report ||E-~E||_F/(1+||E||_F) against it
    #[arg(long = "paper-metric")]
    paper_metric: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct CondArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    input: std::path::PathBuf,
    #[arg(long, default_value_t = 5)]
    probes: usize,
}

#[derive(Args)]
struct FdeArgs {
    /// Problem file (JSON; see README for the schema)
    #[arg(long)]
    problem: std::path::PathBuf,
    /// Solution method
    #[arg(long, value_parser = ["closed", "pi"])]
    method: String,
    /// Time grid "start:step:end" (closed method)
    #[arg(long)]
    t: Option<String>,
    /// Step size (pi method; grid runs from 0 to the end of --t)
    #[arg(long)]
    h: Option<f64>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct GramianArgs {
    /// Gramian kind
    #[arg(long, value_parser = ["controllability", "observability"])]
    kind: String,
    /// System matrix A
    #[arg(long)]
    matrix: std::path::PathBuf,
    /// Input factor B (controllability) or output factor C (observability)
    #[arg(long)]
    factor: std::path::PathBuf,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 64)]
    nodes: usize,
    /// Output matrix file (stdout CSV when omitted)
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

fn effective_tau(flag: Option<f64>) -> Result<f64> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("ML_TAU") {
        Ok(s) => s
            .parse::<f64>()
            .map_err(|_| MlError::ParseError(format!("ML_TAU={s:?} is not a number"))),
        Err(_) => Ok(mlfun::DEFAULT_TAU),
    }
}

fn read_real_matrix(path: &std::path::Path) -> Result<ndarray::Array2<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| MlError::ParseError(format!("{}: {e}", path.display())))?;
    let m = read_matrix(&text)?;
    if m.iter().any(|z| z.im != 0.0) {
        return Err(MlError::InvalidArgument(format!(
            "{}: expected a real matrix",
            path.display()
        )));
    }
    Ok(m.map(|z| z.re))
}

fn parse_grid(spec: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(MlError::ParseError(format!("grid must be start:step:end, got {spec:?}")));
    }
    let nums: Result<Vec<f64>> = parts
        .iter()
        .map(|s| s.parse::<f64>().map_err(|_| MlError::ParseError(format!("bad grid number {s:?}"))))
        .collect();
    let nums = nums?;
    if !(nums[1] > 0.0) || nums[2] < nums[0] {
        return Err(MlError::ParseError(format!("degenerate grid {spec:?}")));
    }
    Ok((nums[0], nums[1], nums[2]))
}

/// Exit code 2 signals a result delivered with a degraded accuracy estimate.
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Eval(a) | Cmd::Deriv(a) => {
            let tau = effective_tau(a.tau)?;
            let z = parse_complex(&a.z)?;
            let p = MLParams::new(a.alpha, a.beta)?;
            let ev = ml_derivative(z, a.k, p, tau)?;
            println!(
                "{{\"value_re\": {}, \"value_im\": {}, \"method\": \"{}\", \"err_estimate\": {}}}",
                format_f64(ev.value.re),
                format_f64(ev.value.im),
                ev.method.as_str(),
                format_f64(ev.err_estimate)
            );
            Ok(ev.degraded(tau))
        }
        Cmd::Matfun(a) => {
            let tau = effective_tau(a.tau)?;
            let text = std::fs::read_to_string(&a.input)
                .map_err(|e| MlError::ParseError(format!("{}: {e}", a.input.display())))?;
            let m = read_matrix(&text)?;
            if m.nrows() != m.ncols() {
                return Err(MlError::DimensionError(format!(
                    "input is {}x{}, need a square matrix",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let req = MatrixMLRequest {
                a: m,
                params: MLParams::new(a.alpha, a.beta)?,
                tau,
                delta: a.delta,
            };
            let r = ml_matrix(&req)?;
            std::fs::write(&a.output, write_matrix_csv(&r.value))
                .map_err(|e| MlError::ParseError(format!("{}: {e}", a.output.display())))?;
            let blocks: Vec<String> = r
                .block_orders
                .iter()
                .map(|(s, n, t)| format!("{{\"start\": {s}, \"size\": {n}, \"terms\": {t}}}"))
                .collect();
            let metric = match &a.paper_metric {
                Some(refpath) => {
                    let reftext = std::fs::read_to_string(refpath)
                        .map_err(|e| MlError::ParseError(format!("{}: {e}", refpath.display())))?;
                    let reference = read_matrix(&reftext)?;
                    if reference.dim() != r.value.dim() {
                        return Err(MlError::DimensionError("reference shape mismatch".into()));
                    }
                    let dn = (&r.value - &reference).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                    let rn = reference.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                    format!(", \"paper_metric\": {}", format_f64(dn / (1.0 + rn)))
                }
                None => String::new(),
            };
            let dust = match r.discarded_imag {
                Some(d) => format!(", \"discarded_imag\": {}", format_f64(d)),
                None => String::new(),
            };
            println!(
                "{{\"max_derivative_order\": {}, \"err_estimate\": {}, \"blocks\": [{}]{}{}}}",
                r.max_derivative_order,
                format_f64(r.err_estimate),
                blocks.join(", "),
                dust,
                metric
            );
            let scale = 1.0 + r.value.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            Ok(r.err_estimate > tau * scale)
        }
        Cmd::Cond(a) => {
            let m = read_real_matrix(&a.input)?;
            let p = MLParams::new(a.alpha, a.beta)?;
            let r = cond_estimate(&mlfun::linalg::complexify(&m), p, a.probes)?;
            println!(
                "{{\"kappa_abs\": {}, \"kappa_rel\": {}, \"norm\": \"frobenius\", \"probes\": {}}}",
                format_f64(r.kappa_abs),
                format_f64(r.kappa_rel),
                r.probes
            );
            Ok(false)
        }
        Cmd::Fde(a) => {
            let text = std::fs::read_to_string(&a.problem)
                .map_err(|e| MlError::ParseError(format!("{}: {e}", a.problem.display())))?;
            let problem = parse_fde_problem(&text)?;
            let mut out = String::new();
            match a.method.as_str() {
                "closed" => {
                    let grid = a.t.as_deref().ok_or_else(|| {
                        MlError::ParseError("--t start:step:end is required for the closed method".into())
                    })?;
                    let (start, step, end) = parse_grid(grid)?;
                    let steps = ((end - start) / step).round() as usize;
                    match &problem {
                        FdeProblem::Multiterm(mt) => {
                            let cs = companion_from_multiterm(mt)?;
                            let cache = MlSchurCache::new(&cs.system.a, cs.system.alpha)?;
                            out.push_str("t,y\n");
                            for j in 0..=steps {
                                let t = start + step * j as f64;
                                let y = solve_poly_source_cached(&cs.system, t, &cache)?;
                                out.push_str(&format!("{},{}\n", format_f64(t), format_f64(y[cs.readout])));
                            }
                        }
                        FdeProblem::System(sys) => {
                            let cache = MlSchurCache::new(&sys.a, sys.alpha)?;
                            let n = sys.a.nrows();
                            let header: Vec<String> = (0..n).map(|i| format!("y{i}")).collect();
                            out.push_str(&format!("t,{}\n", header.join(",")));
                            for j in 0..=steps {
                                let t = start + step * j as f64;
                                let y = match &sys.forcing {
                                    Forcing::None => solve_linear_fde_cached(sys, t, &cache)?,
                                    Forcing::Polynomial { .. } => solve_poly_source_cached(sys, t, &cache)?,
                                    Forcing::Sampled(_) => {
                                        return Err(MlError::InvalidArgument(
                                            "sampled forcing is not expressible in the problem file".into(),
                                        ))
                                    }
                                };
                                let row: Vec<String> = y.iter().map(|&v| format_f64(v)).collect();
                                out.push_str(&format!("{},{}\n", format_f64(t), row.join(",")));
                            }
                        }
                    }
                }
                "pi" => {
                    let h = a.h.ok_or_else(|| {
                        MlError::ParseError("--h is required for the pi method".into())
                    })?;
                    let end = match a.t.as_deref() {
                        Some(grid) => {
                            let (start, _, end) = parse_grid(grid)?;
                            if start != 0.0 {
                                return Err(MlError::InvalidArgument(
                                    "the pi method starts at t = 0".into(),
                                ));
                            }
                            end
                        }
                        None => 1.0,
                    };
                    let mt = match &problem {
                        FdeProblem::Multiterm(mt) => mt,
                        FdeProblem::System(_) => {
                            return Err(MlError::InvalidArgument(
                                "the pi comparator handles multiterm problems".into(),
                            ))
                        }
                    };
                    let y = trapezoidal_pi(mt, h, end)?;
                    out.push_str(&format!("# h={}\n", format_f64(h)));
                    out.push_str("t,y\n");
                    for (j, v) in y.iter().enumerate() {
                        out.push_str(&format!("{},{}\n", format_f64(j as f64 * h), format_f64(*v)));
                    }
                }
                _ => unreachable!("clap restricts the method values"),
            }
            match &a.output {
                Some(path) => std::fs::write(path, out)
                    .map_err(|e| MlError::ParseError(format!("{}: {e}", path.display())))?,
                None => print!("{out}"),
            }
            Ok(false)
        }
        Cmd::Gramian(a) => {
            let kind = match a.kind.as_str() {
                "controllability" => GramianKind::Controllability,
                "observability" => GramianKind::Observability,
                _ => unreachable!(),
            };
            let m = read_real_matrix(&a.matrix)?;
            let f = read_real_matrix(&a.factor)?;
            let g = gramian(kind, &m, &f, a.alpha, a.t, a.nodes)?;
            let csv = write_matrix_csv(&g.matrix.map(|&v| Complex64::new(v, 0.0)));
            match &a.output {
                Some(path) => std::fs::write(path, csv)
                    .map_err(|e| MlError::ParseError(format!("{}: {e}", path.display())))?,
                None => print!("{csv}"),
            }
            println!(
                "{{\"min_eigenvalue\": {}, \"quad_error_estimate\": {}}}",
                format_f64(g.min_eigenvalue),
                format_f64(g.quad_error_estimate)
            );
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version through the error path as well
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
