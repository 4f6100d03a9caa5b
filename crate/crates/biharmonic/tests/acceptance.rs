//! Acceptance suite: one test per release criterion, each printing a
//! single PASS line with the measured margins (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::f64::consts::PI;
use std::time::Instant;

use biharmonic::grid::{Grid, GridFunction};
use biharmonic::kernel::solve_biharmonic;
use biharmonic::spectra::{
    convergence_study, hs_inequality_check, least_squares_slope, trace_gamma, trace_gamma_h,
    trace_gamma_h_closed_form, ContinuousSpectrum, DiscreteSpectrum,
};
use biharmonic::verify::{
    energy_identity_suite, hermitian_spline_suite, jump_identity_suite, kernel_equalities_suite,
    positivity_suite, VerifyConfig,
};

const TABLE_TRUE: [f64; 4] = [500.563902, 3803.537080, 14617.630131, 39943.799006];
const TABLE_ROWS: [(usize, [f64; 4]); 6] = [
    (10, [500.521885, 3800.689969, 14567.617771, 39493.816015]),
    (20, [500.561614, 3803.398598, 14615.468848, 39926.599754]),
    (30, [500.563462, 3803.511145, 14617.236978, 39940.722654]),
    (40, [500.563764, 3803.529031, 14617.509451, 39942.881883]),
    (50, [500.563845, 3803.533813, 14617.581402, 39943.430972]),
    (60, [500.563874, 3803.535512, 14617.606815, 39943.623511]),
];

/// The (N=30, k=4) reference entry misprints one digit: the scheme's own
/// definition of the discrete eigenvalues yields 39940.772654 (confirmed
/// by two independent eigensolvers to twelve digits), while the table
/// prints 39940.722654. The corrected value is asserted and the mismatch
/// against the printed digits is reported by the test.
const TABLE_MISPRINT: (usize, usize, f64) = (30, 4, 39940.772654);

fn acceptance_config(ns: Vec<usize>) -> VerifyConfig {
    VerifyConfig {
        ns,
        seed: 42,
        cases: 1000,
        tail_terms: 200,
        inject_sign_flip: false,
    }
}

#[test]
fn criterion_01_continuous_eigenvalues() {
    let start = Instant::now();
    let spec = ContinuousSpectrum::compute(4).unwrap();
    let elapsed = start.elapsed();

    let exact_first = 500.5639017404;
    assert!(
        (spec.lambda(1) - exact_first).abs() <= 1e-6,
        "lambda_1 = {:.10} vs {exact_first}",
        spec.lambda(1)
    );
    let mut worst = 0.0f64;
    for (k, want) in TABLE_TRUE.iter().enumerate() {
        let err = (spec.lambda(k + 1) - want).abs();
        worst = worst.max(err);
        assert!(err <= 1e-4, "k={}: {} vs {want}", k + 1, spec.lambda(k + 1));
    }
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 01 PASS: lambda_1..4 match the reference values (worst {worst:.2e}, {} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_02_table_reproduction() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (n, row) in TABLE_ROWS {
        let disc = DiscreteSpectrum::compute(Grid::new(n).unwrap()).unwrap();
        for (k, printed) in row.iter().enumerate() {
            let got = disc.lambda(k + 1);
            let tol = 1e-3f64.max(1e-6 * printed.abs());
            if (n, k + 1) == (TABLE_MISPRINT.0, TABLE_MISPRINT.1) {
                let corrected = TABLE_MISPRINT.2;
                assert!(
                    (got - corrected).abs() <= tol,
                    "N={n} k={}: {got} vs corrected {corrected}",
                    k + 1
                );
                // The printed digits must stay inconsistent with the
                // scheme; if they ever match, the correction above is
                // stale and needs a fresh look.
                assert!(
                    (got - printed).abs() > tol,
                    "N={n} k={}: computed value now matches the printed digits",
                    k + 1
                );
                println!(
                    "criterion 02 NOTE: table entry N={n}, k={} printed as {printed} has a one-digit misprint; the scheme's value is {got:.6}"
                , k + 1);
                continue;
            }
            let err = (got - printed).abs();
            assert!(err <= tol, "N={n} k={}: {got} vs printed {printed}", k + 1);
            worst = worst.max(err);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 02 PASS: table reproduced, 23 printed entries + 1 corrected misprint (worst abs {worst:.2e}, {} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_03_optimal_rate() {
    let ns: Vec<usize> = (10..=60).collect();
    let report = convergence_study(&[1, 2, 3, 4], &ns).unwrap();
    for fit in &report.slopes {
        assert!(
            (-4.3..=-3.7).contains(&fit.slope),
            "k={}: slope {:.4} outside [-4.3, -3.7]",
            fit.k,
            fit.slope
        );
    }
    let slopes: Vec<String> = report
        .slopes
        .iter()
        .map(|f| format!("k={}: {:.3}", f.k, f.slope))
        .collect();
    println!(
        "criterion 03 PASS: eigenvalue-error slopes in band ({})",
        slopes.join(", ")
    );
}

#[test]
fn criterion_04_one_sided_first_eigenvalue() {
    let lambda1 = ContinuousSpectrum::compute(1).unwrap().lambda(1);
    let mut ns: Vec<usize> = (10..=60).collect();
    ns.extend([2, 4, 8, 64, 96, 128]);
    let mut worst = f64::NEG_INFINITY;
    for n in ns {
        let disc = DiscreteSpectrum::compute(Grid::new(n).unwrap()).unwrap();
        let excess = disc.lambda(1) - lambda1;
        worst = worst.max(excess);
        assert!(excess <= 1e-9, "N={n}: lambda_h1 exceeds lambda_1 by {excess:e}");
    }
    println!(
        "criterion 04 PASS: first discrete eigenvalue never exceeds the continuous one (max excess {worst:.2e})"
    );
}

#[test]
fn criterion_05_traces() {
    assert_eq!(trace_gamma(), 1.0 / 420.0, "gamma must be exactly 1/420");

    let mut worst_closed = 0.0f64;
    let mut worst_eig = 0.0f64;
    for n in 2..=128 {
        let grid = Grid::new(n).unwrap();
        let direct = trace_gamma_h(grid);
        let closed = trace_gamma_h_closed_form(grid);
        let dev = (direct - closed).abs();
        worst_closed = worst_closed.max(dev);
        assert!(dev <= 1e-15, "N={n}: direct {direct} vs closed {closed}");

        let disc = DiscreteSpectrum::compute(grid).unwrap();
        let eig_sum: f64 = disc.resolvent_eigenvalues().iter().sum();
        let rel = (eig_sum - direct).abs() / direct;
        worst_eig = worst_eig.max(rel);
        assert!(rel <= 1e-12, "N={n}: eigenvalue sum off by {rel:e} relative");
    }
    println!(
        "criterion 05 PASS: traces (closed-form dev {worst_closed:.2e}, eigen-sum rel dev {worst_eig:.2e})"
    );
}

#[test]
fn criterion_06_jump_identity() {
    let suite = jump_identity_suite(&acceptance_config(vec![4, 8, 16, 32, 64])).unwrap();
    assert!(
        suite.passed,
        "jump identity: worst {:e} > {:e} ({})",
        suite.worst, suite.tolerance, suite.detail
    );
    println!(
        "criterion 06 PASS: third-derivative jumps match h*delta_x4 over {} cases (worst rel {:.2e})",
        suite.cases, suite.worst
    );
}

#[test]
fn criterion_07_energy_identity() {
    let suite = energy_identity_suite(&acceptance_config(vec![4, 8, 16, 32, 64])).unwrap();
    assert!(
        suite.passed,
        "energy identity: worst {:e} > {:e} ({})",
        suite.worst, suite.tolerance, suite.detail
    );
    println!(
        "criterion 07 PASS: spline energies match the discrete quadratic form over {} pairs (worst rel {:.2e})",
        suite.cases, suite.worst
    );
}

#[test]
fn criterion_08_hermitian_spline_derivative() {
    let suite = hermitian_spline_suite(&acceptance_config(vec![4, 8, 16, 32, 64])).unwrap();
    assert!(
        suite.passed,
        "spline nodal derivative: worst {:e} > {:e} ({})",
        suite.worst, suite.tolerance, suite.detail
    );
    println!(
        "criterion 08 PASS: spline nodal derivatives equal the Hermitian derivative (worst {:.2e})",
        suite.worst
    );
}

#[test]
fn criterion_09_kernel_equalities() {
    let suite = kernel_equalities_suite(&acceptance_config(vec![4, 8, 16, 32, 64])).unwrap();
    assert!(
        suite.passed,
        "kernel equalities: worst scaled deviation {:e} ({})",
        suite.worst, suite.detail
    );
    println!(
        "criterion 09 PASS: kernel assemblies, inverse identity and boundary moments agree (worst scaled {:.2e})",
        suite.worst
    );
}

#[test]
fn criterion_10_positivity() {
    let suite = positivity_suite(&acceptance_config(vec![4, 8, 16, 32, 64])).unwrap();
    assert!(
        suite.passed,
        "positivity: worst negative excursion {:e} ({})",
        suite.worst, suite.detail
    );
    println!(
        "criterion 10 PASS: {} nonnegative forcings produced solutions with min entry >= -1e-15",
        suite.cases
    );
}

#[test]
fn criterion_11_solver_accuracy() {
    let ns = [8usize, 16, 32, 64, 128];
    let mut points = Vec::new();
    for &n in &ns {
        let grid = Grid::new(n).unwrap();
        let f = GridFunction::sample(grid, |x| -8.0 * PI.powi(4) * (2.0 * PI * x).cos());
        let u = solve_biharmonic(&f);
        let mut err = 0.0f64;
        for j in 0..=n {
            let exact = 0.5 * (1.0 - (2.0 * PI * grid.node(j)).cos());
            err = err.max((u.value(j) - exact).abs());
        }
        points.push(((n as f64).ln(), err.ln()));
    }
    let slope = -least_squares_slope(&points);
    assert!(
        (3.7..=4.3).contains(&slope),
        "solver error decays with slope {slope:.4}, outside [3.7, 4.3]"
    );
    println!("criterion 11 PASS: cosine forcing solved at fourth order (slope {slope:.3})");
}

#[test]
fn criterion_12_hs_inequality() {
    let mut ratios = Vec::new();
    for n in [4usize, 8, 16, 32] {
        let grid = Grid::new(n).unwrap();
        let report = hs_inequality_check(grid, 200).unwrap();
        assert!(
            report.holds_lower,
            "N={n}: left {:e} > right {:e}",
            report.left_low(),
            report.right_squared
        );
        assert!(report.holds_upper, "N={n}: upper enclosure violated");
        ratios.push((n, report.right_squared * (n * n) as f64));
    }
    // Right side obeys C·h²: the scaled values plateau instead of growing.
    for (n, r) in &ratios {
        assert!(*r <= 2e-5, "N={n}: ratio {r:e}");
    }
    let last = ratios[ratios.len() - 1].1;
    let prev = ratios[ratios.len() - 2].1;
    assert!(
        (last - prev).abs() <= 0.1 * last,
        "ratio not settling: {prev:e} -> {last:e}"
    );
    let formatted: Vec<String> = ratios
        .iter()
        .map(|(n, r)| format!("N={n}: {r:.3e}"))
        .collect();
    println!(
        "criterion 12 PASS: Hilbert-Schmidt inequality holds; right/h^2 plateau ({})",
        formatted.join(", ")
    );
}
