//! `biharm` — solves, eigenvalue tables, convergence studies and
//! verification suites for the discrete biharmonic calculus on `[0,1]`.
//!
//! Exit codes: 0 success, 1 verification/threshold failure, 2 usage or
//! input error.

mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use biharmonic::grid::{Grid, GridFunction, HomogeneousGridFunction};
use biharmonic::kernel::{greens_kernel, solve_biharmonic, KernelMatrix};
use biharmonic::spectra::{convergence_study, ContinuousSpectrum, DiscreteSpectrum};
use biharmonic::spline::CubicSpline;
use biharmonic::verify::{run_all, VerifyConfig};
use output::{fmt_sig12, json_sig12};

const EXIT_VERIFY_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "biharm",
    about = "Discrete biharmonic calculus on [0,1]: solves, spectra, convergence studies, verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve u'''' = f with clamped boundary conditions on a uniform grid.
    Solve(SolveArgs),
    /// Sample the clamped cubic spline of grid data (value and first two
    /// derivatives) at uniform points.
    Spline(SplineArgs),
    /// Dump the discrete resolvent matrix, or the continuous kernel on a
    /// probe grid.
    Kernel(KernelArgs),
    /// Emit continuous eigenvalues and their discrete approximations.
    Eigs(EigsArgs),
    /// Fit the convergence rate of discrete eigenvalues over a grid sweep.
    Converge(ConvergeArgs),
    /// Run the verification suites (identities, positivity, traces, ...).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted. Relative paths are resolved
    /// against $BIHARM_OUT_DIR if that is set.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SolveArgs {
    /// Number of grid intervals.
    #[arg(long = "N", visible_alias = "n")]
    n: usize,
    /// Named forcing function.
    #[arg(long, value_enum, conflicts_with = "forcing_file")]
    forcing: Option<Forcing>,
    /// File with one forcing value per line (N+1 node values).
    #[arg(long, required_unless_present = "forcing")]
    forcing_file: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Forcing {
    /// f ≡ 24, exact solution x²(1-x)².
    Const24,
    /// f = -8π⁴ cos 2πx, exact solution (1 - cos 2πx)/2.
    Cos2pi,
    /// f ≡ 0.
    Zero,
}

#[derive(Args)]
struct SplineArgs {
    /// Number of grid intervals.
    #[arg(long = "N", visible_alias = "n")]
    n: usize,
    /// File with N+1 node values (endpoints must be exactly 0); the
    /// spline interpolates these directly.
    #[arg(long, conflicts_with_all = ["forcing"], required_unless_present = "forcing")]
    values_file: Option<PathBuf>,
    /// Solve this named forcing first and spline the solution.
    #[arg(long, value_enum)]
    forcing: Option<Forcing>,
    /// Number of uniform sample points in [0,1] (including endpoints).
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct KernelArgs {
    /// Number of grid intervals.
    #[arg(long = "N", visible_alias = "n")]
    n: usize,
    /// Use the generating-polynomial closed form instead of sampling the
    /// continuous kernel.
    #[arg(long)]
    closed_form: bool,
    /// Sample the continuous kernel on a (M+1)×(M+1) uniform probe grid
    /// instead of dumping the discrete matrix.
    #[arg(long)]
    probe: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct EigsArgs {
    /// Grid sizes, e.g. `10,20,30` or `10..60` or `10..60:10`.
    #[arg(long = "N", visible_alias = "n")]
    n: String,
    /// Eigenvalue indices (1-based), same list syntax.
    #[arg(long, default_value = "1,2,3,4")]
    k: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Grid sizes for the sweep (at least 3), e.g. `10..60`.
    #[arg(long = "N", visible_alias = "n")]
    n: String,
    /// Eigenvalue indices (1-based).
    #[arg(long, default_value = "1")]
    k: String,
    /// Acceptable slope band `lo,hi`; the command fails (exit 1) if any
    /// fitted slope falls outside.
    #[arg(long, default_value = "-4.3,-3.7", allow_hyphen_values = true)]
    band: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Grid sizes exercised by the suites.
    #[arg(long = "N", visible_alias = "n", default_value = "4,8,16,32")]
    n: String,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Total random cases per randomized suite.
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    /// Explicit tail eigenvalues for the Hilbert-Schmidt inequality.
    #[arg(long, default_value_t = 200)]
    tail_terms: usize,
    /// Negative control: corrupt the kernel sign so positivity must fail.
    #[arg(long)]
    inject_sign_flip: bool,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Spline(args) => cmd_spline(args),
        Command::Kernel(args) => cmd_kernel(args),
        Command::Eigs(args) => cmd_eigs(args),
        Command::Converge(args) => cmd_converge(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

/// Expands `a`, `a..b` and `a..b:step` tokens separated by commas.
fn parse_usize_list(spec: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        if let Some((range, step)) = token.split_once(':') {
            let (a, b) = parse_range(range)?;
            let step: usize = step
                .parse()
                .map_err(|_| format!("bad step in '{token}'"))?;
            if step == 0 {
                return Err(format!("zero step in '{token}'"));
            }
            let mut v = a;
            while v <= b {
                out.push(v);
                v += step;
            }
        } else if token.contains("..") {
            let (a, b) = parse_range(token)?;
            out.extend(a..=b);
        } else {
            out.push(token.parse().map_err(|_| format!("bad integer '{token}'"))?);
        }
    }
    if out.is_empty() {
        return Err(format!("empty list '{spec}'"));
    }
    Ok(out)
}

fn parse_range(token: &str) -> Result<(usize, usize), String> {
    let (a, b) = token
        .split_once("..")
        .ok_or_else(|| format!("bad range '{token}'"))?;
    let a: usize = a.parse().map_err(|_| format!("bad range start '{token}'"))?;
    let b: usize = b.parse().map_err(|_| format!("bad range end '{token}'"))?;
    if a > b {
        return Err(format!("descending range '{token}'"));
    }
    Ok((a, b))
}

fn resolve_output(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("BIHARM_OUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

fn emit(out: &OutputArgs, content: &str) -> Result<(), String> {
    match &out.output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let path = resolve_output(path);
            std::fs::write(&path, content)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, String> {
    let grid = Grid::new(args.n).map_err(|e| e.to_string())?;

    let (forcing, exact): (GridFunction, Option<Box<dyn Fn(f64) -> f64>>) =
        if let Some(name) = args.forcing {
            let pi = std::f64::consts::PI;
            match name {
                Forcing::Const24 => (
                    GridFunction::sample(grid, |_| 24.0),
                    Some(Box::new(|x: f64| (x * (1.0 - x)) * (x * (1.0 - x)))),
                ),
                Forcing::Cos2pi => (
                    GridFunction::sample(grid, move |x| {
                        -8.0 * pi.powi(4) * (2.0 * pi * x).cos()
                    }),
                    Some(Box::new(move |x: f64| 0.5 * (1.0 - (2.0 * pi * x).cos()))),
                ),
                Forcing::Zero => (
                    GridFunction::sample(grid, |_| 0.0),
                    Some(Box::new(|_| 0.0)),
                ),
            }
        } else {
            let path = args.forcing_file.as_ref().expect("clap enforces presence");
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let values: Vec<f64> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| {
                    l.parse::<f64>()
                        .map_err(|_| format!("bad forcing value '{l}' in {}", path.display()))
                })
                .collect::<Result<_, _>>()?;
            let f = GridFunction::new(grid, values).map_err(|e| e.to_string())?;
            (f, None)
        };

    let u = solve_biharmonic(&forcing);

    let content = match args.out.format {
        Format::Csv => {
            let mut s = String::new();
            if exact.is_some() {
                s.push_str("x,u,u_exact,error\n");
            } else {
                s.push_str("x,u\n");
            }
            for j in 0..=grid.n_intervals() {
                let x = grid.node(j);
                match &exact {
                    Some(f) => {
                        let e = f(x);
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            fmt_sig12(x),
                            fmt_sig12(u.value(j)),
                            fmt_sig12(e),
                            fmt_sig12(u.value(j) - e)
                        );
                    }
                    None => {
                        let _ = writeln!(s, "{},{}", fmt_sig12(x), fmt_sig12(u.value(j)));
                    }
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = (0..=grid.n_intervals())
                .map(|j| {
                    let x = grid.node(j);
                    let mut row = serde_json::json!({
                        "x": json_sig12(x),
                        "u": json_sig12(u.value(j)),
                    });
                    if let Some(f) = &exact {
                        let e = f(x);
                        row["u_exact"] = json_sig12(e);
                        row["error"] = json_sig12(u.value(j) - e);
                    }
                    row
                })
                .collect();
            let doc = serde_json::json!({ "n": grid.n_intervals(), "rows": rows });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_eigs(args: EigsArgs) -> Result<ExitCode, String> {
    let ns = parse_usize_list(&args.n)?;
    let ks = parse_usize_list(&args.k)?;
    if ks.iter().any(|&k| k < 1) {
        return Err("eigenvalue indices start at 1".into());
    }
    let k_max = *ks.iter().max().expect("non-empty");
    let n_min = *ns.iter().min().expect("non-empty");
    if n_min < 2 {
        return Err("grid sizes must be at least 2".into());
    }
    if k_max > n_min - 1 {
        return Err(format!(
            "index k={k_max} exceeds the {} discrete eigenvalues of the coarsest grid N={n_min}",
            n_min - 1
        ));
    }

    let cont = ContinuousSpectrum::compute(k_max).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for &n in &ns {
        let grid = Grid::new(n).map_err(|e| e.to_string())?;
        let disc = DiscreteSpectrum::compute(grid).map_err(|e| e.to_string())?;
        let vals: Vec<f64> = ks.iter().map(|&k| disc.lambda(k)).collect();
        rows.push((n, vals));
    }
    let exact: Vec<f64> = ks.iter().map(|&k| cont.lambda(k)).collect();

    let content = match args.out.format {
        Format::Csv => {
            let mut s = String::from("case");
            for k in &ks {
                let _ = write!(s, ",k={k}");
            }
            s.push('\n');
            let _ = write!(s, "exact");
            for v in &exact {
                let _ = write!(s, ",{}", fmt_sig12(*v));
            }
            s.push('\n');
            for (n, vals) in &rows {
                let _ = write!(s, "N={n}");
                for v in vals {
                    let _ = write!(s, ",{}", fmt_sig12(*v));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let doc = serde_json::json!({
                "k": ks,
                "exact": exact.iter().map(|v| json_sig12(*v)).collect::<Vec<_>>(),
                "rows": rows.iter().map(|(n, vals)| serde_json::json!({
                    "n": n,
                    "lambda_h": vals.iter().map(|v| json_sig12(*v)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_converge(args: ConvergeArgs) -> Result<ExitCode, String> {
    let ns = parse_usize_list(&args.n)?;
    let ks = parse_usize_list(&args.k)?;
    if ns.len() < 3 {
        return Err("convergence fit needs at least 3 grid sizes".into());
    }
    let band = {
        let (lo, hi) = args
            .band
            .split_once(',')
            .ok_or_else(|| format!("bad band '{}'", args.band))?;
        let lo: f64 = lo.trim().parse().map_err(|_| format!("bad band '{}'", args.band))?;
        let hi: f64 = hi.trim().parse().map_err(|_| format!("bad band '{}'", args.band))?;
        if lo > hi {
            return Err(format!("empty band '{}'", args.band));
        }
        (lo, hi)
    };

    let report = convergence_study(&ks, &ns).map_err(|e| e.to_string())?;
    let slope_of = |k: usize| -> f64 {
        report
            .slopes
            .iter()
            .find(|f| f.k == k)
            .expect("slope for every requested k")
            .slope
    };

    let content = match args.out.format {
        Format::Csv => {
            let mut s = String::from("k,n,lambda,lambda_h,abs_error,rel_error,slope\n");
            for row in &report.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    row.k,
                    row.n,
                    fmt_sig12(row.lambda),
                    fmt_sig12(row.lambda_h),
                    fmt_sig12(row.abs_err),
                    fmt_sig12(row.rel_err),
                    fmt_sig12(slope_of(row.k))
                );
            }
            s
        }
        Format::Json => {
            let doc = serde_json::json!({
                "rows": report.rows.iter().map(|r| serde_json::json!({
                    "k": r.k,
                    "n": r.n,
                    "lambda": json_sig12(r.lambda),
                    "lambda_h": json_sig12(r.lambda_h),
                    "abs_error": json_sig12(r.abs_err),
                    "rel_error": json_sig12(r.rel_err),
                })).collect::<Vec<_>>(),
                "slopes": report.slopes.iter().map(|f| serde_json::json!({
                    "k": f.k,
                    "slope": json_sig12(f.slope),
                })).collect::<Vec<_>>(),
                "band": { "low": band.0, "high": band.1 },
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    };
    emit(&args.out, &content)?;

    let mut ok = true;
    for fit in &report.slopes {
        if fit.slope < band.0 || fit.slope > band.1 {
            eprintln!(
                "slope check failed: k={} slope {:.4} outside [{}, {}]",
                fit.k, fit.slope, band.0, band.1
            );
            ok = false;
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILURE)
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let ns = parse_usize_list(&args.n)?;
    if ns.iter().any(|&n| n < 2) {
        return Err("grid sizes must be at least 2".into());
    }
    let config = VerifyConfig {
        ns,
        seed: args.seed,
        cases: args.cases,
        tail_terms: args.tail_terms,
        inject_sign_flip: args.inject_sign_flip,
    };
    let results = run_all(&config).map_err(|e| e.to_string())?;

    let mut all_passed = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} {name}: cases={cases} worst={worst} tol={tol}{detail}",
            name = r.name,
            cases = r.cases,
            worst = fmt_sig12(r.worst),
            tol = fmt_sig12(r.tolerance),
            detail = if r.passed {
                String::new()
            } else {
                format!(" ({})", r.detail)
            }
        );
        all_passed &= r.passed;
    }

    if args.out.output.is_some() {
        let content = match args.out.format {
            Format::Csv => {
                let mut s = String::from("suite,passed,cases,worst,tolerance,detail\n");
                for r in &results {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},\"{}\"",
                        r.name,
                        r.passed,
                        r.cases,
                        fmt_sig12(r.worst),
                        fmt_sig12(r.tolerance),
                        r.detail.replace('"', "'")
                    );
                }
                s
            }
            Format::Json => {
                let doc = serde_json::json!({
                    "all_passed": all_passed,
                    "seed": args.seed,
                    "suites": results.iter().map(|r| serde_json::json!({
                        "name": r.name,
                        "passed": r.passed,
                        "cases": r.cases,
                        "worst": json_sig12(r.worst),
                        "tolerance": json_sig12(r.tolerance),
                        "detail": r.detail,
                    })).collect::<Vec<_>>(),
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
            }
        };
        emit(&args.out, &content)?;
    }

    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILURE)
    })
}
