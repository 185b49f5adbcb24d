//! One function per experiment, each returning artifacts and checks without
//! touching the filesystem.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use equiconv::asymptotics::{residual_scan, uniform_bound, Lemma, TGrid};
use equiconv::eigensolver::EigenDecomposition;
use equiconv::expansion::{equiconv_experiment, PiecewiseFunction};
use equiconv::kernels::kernel_diff_scan;
use equiconv::operator::OperatorSpec;

use crate::config::{summability, Experiment, RunConfig};
use crate::{Artifact, Check, CliError, ExperimentOutput};

pub fn execute(config: &RunConfig) -> Result<ExperimentOutput, CliError> {
    match config.experiment {
        Experiment::Spectrum => spectrum(config),
        Experiment::Eigfun => eigfun(config),
        Experiment::Asymptotics => asymptotics(config),
        Experiment::KernelDiff => kernel_diff(config),
        Experiment::Equiconv => equiconv(config),
        Experiment::Selftest => Ok(crate::selftest::run_suite(config.seed).into_output()),
    }
}

fn solve(config: &RunConfig) -> Result<(OperatorSpec<f64>, EigenDecomposition<f64>), CliError> {
    let spec = config.operator_spec()?;
    let decomp = EigenDecomposition::solve(&spec, config.basis_size, config.quad_points())?;
    Ok((spec, decomp))
}

fn spectrum(config: &RunConfig) -> Result<ExperimentOutput, CliError> {
    let p = config.spectrum.clone().unwrap_or_default();
    let (spec, d) = solve(config)?;
    let csv: String = d
        .to_csv()
        .lines()
        .take(p.n_max + 2)
        .flat_map(|l| [l, "\n"])
        .collect();
    let mu = &d.eigenvalues()[..=p.n_max];
    let mut checks = vec![Check::at_least(
        "eigenvalues_increasing",
        mu.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min),
        0.0,
    )];
    let ab = config.alpha + config.beta;
    if spec.perturbation().is_constant() {
        let worst = mu
            .iter()
            .enumerate()
            .map(|(n, &m)| {
                let exact = 4.0 * n as f64 * (n as f64 + ab + 1.0);
                (m - exact).abs() / exact.max(1.0)
            })
            .fold(0.0, f64::max);
        checks.push(Check::at_most("closed_form_relative_error", worst, 1e-8));
    } else {
        let (lo, hi) = spec.neg_chi_bounds();
        let mu_j = d.basis().mu_j();
        let slack = mu
            .iter()
            .zip(mu_j)
            .map(|(&m, &j)| (m - (j + lo)).min(j + hi - m))
            .fold(f64::INFINITY, f64::min);
        checks.push(Check::at_least("eigenvalue_bracket_slack", slack, -1e-8));
    }
    Ok(ExperimentOutput {
        artifacts: vec![Artifact {
            name: "spectrum.csv".into(),
            body: csv,
        }],
        checks,
    })
}

fn eigfun(config: &RunConfig) -> Result<ExperimentOutput, CliError> {
    let p = config.eigfun.clone().unwrap_or_default();
    let (spec, d) = solve(config)?;
    let count = p.n_max + 1;
    let mut csv = String::from("t");
    for n in 0..count {
        let _ = write!(csv, ",u_{n}");
    }
    csv.push('\n');
    let mut sine_err: f64 = 0.0;
    let chebyshev = spec.perturbation().is_constant() && config.alpha == 0.5 && config.beta == 0.5;
    for i in 0..p.grid_points {
        let t = FRAC_PI_2 * i as f64 / (p.grid_points - 1) as f64;
        let u = d.eigenfunctions_at(count, t)?;
        let _ = write!(csv, "{t:e}");
        for (n, v) in u.iter().enumerate() {
            let _ = write!(csv, ",{v:e}");
            if chebyshev {
                let exact = 2.0 / PI.sqrt() * (2.0 * (n + 1) as f64 * t).sin();
                sine_err = sine_err.max((v - exact).abs());
            }
        }
        csv.push('\n');
    }
    let coarse = uniform_bound(&d, count, 400)?;
    let fine = uniform_bound(&d, count, 800)?;
    let mut checks = vec![Check::at_most(
        "uniform_bound_refinement_change",
        (fine - coarse).abs() / coarse,
        0.1,
    )];
    if chebyshev {
        checks.push(Check::at_most("sine_oracle_sup_error", sine_err, 1e-6));
    }
    Ok(ExperimentOutput {
        artifacts: vec![Artifact {
            name: "eigfun.csv".into(),
            body: csv,
        }],
        checks,
    })
}

fn asymptotics(config: &RunConfig) -> Result<ExperimentOutput, CliError> {
    let p = config.asymptotics.clone().unwrap_or_default();
    let (_, d) = solve(config)?;
    let grid = match &p.t_values {
        Some(ts) => TGrid::Absolute(ts.clone()),
        None => TGrid::PerN { points: p.t_points },
    };
    let mut csv = String::from("lemma,n,t_max_at,raw_residual,scaled_residual\n");
    let mut checks = Vec::new();
    for tag in &p.lemmas {
        let lemma = Lemma::from_tag(tag).expect("lemma tags validated with the config");
        let report = residual_scan(&d, lemma, p.n_min..=p.n_max, &grid)?;
        csv.extend(report.to_csv().lines().skip(1).flat_map(|l| [l, "\n"]));
        let value = if report.rows.iter().all(|r| r.scaled_residual.is_finite()) {
            report.halves_ratio()
        } else {
            f64::INFINITY
        };
        checks.push(Check::at_most(format!("halves_ratio_{tag}"), value, p.halves_factor));
    }
    Ok(ExperimentOutput {
        artifacts: vec![Artifact {
            name: "asymptotics.csv".into(),
            body: csv,
        }],
        checks,
    })
}

fn kernel_diff(config: &RunConfig) -> Result<ExperimentOutput, CliError> {
    let p = config.kernel_diff.clone().unwrap_or_default();
    let (_, d) = solve(config)?;
    let r = summability(p.summability, p.theta)?;
    let y_grid: Vec<f64> = (1..=p.y_points)
        .map(|i| FRAC_PI_2 * i as f64 / (p.y_points + 1) as f64)
        .collect();
    let n_list: Vec<usize> = (p.n_min..=p.n_max).collect();
    let mut csv = String::from("x,N,max_abs_diff,argmax_y\n");
    let mut checks = Vec::new();
    let mut constants = Vec::new();
    for &x in &p.x_list {
        let report = kernel_diff_scan(&d, &r, x, &n_list, &y_grid)?;
        for row in &report.rows {
            let _ = writeln!(csv, "{x:e},{},{:e},{:e}", row.big_n, row.max_abs_diff, row.argmax_y);
        }
        checks.push(Check::at_most(
            format!("quartile_ratio_x={x}"),
            report.quartile_ratio(),
            p.quartile_factor,
        ));
        constants.push(report.overall_max() / (1.0 / x + 1.0 / (FRAC_PI_2 - x)));
    }
    let c_max = constants.iter().copied().fold(0.0, f64::max);
    let c_min = constants.iter().copied().fold(f64::INFINITY, f64::min);
    checks.push(Check::at_most("endpoint_constant_spread", c_max / c_min, p.spread_factor));
    let mut fit = String::from("x,C_x\n");
    for (x, c) in p.x_list.iter().zip(&constants) {
        let _ = writeln!(fit, "{x:e},{c:e}");
    }
    Ok(ExperimentOutput {
        artifacts: vec![
            Artifact {
                name: "kernel_diff.csv".into(),
                body: csv,
            },
            Artifact {
                name: "kernel_diff_fit.csv".into(),
                body: fit,
            },
        ],
        checks,
    })
}

fn equiconv(config: &RunConfig) -> Result<ExperimentOutput, CliError> {
    let p = config.equiconv.clone().unwrap_or_default();
    let (_, d) = solve(config)?;
    let f: PiecewiseFunction<f64> = p.function.parse()?;
    let r = summability(p.summability, p.theta)?;
    let n_list: Vec<usize> = (p.n_min..=p.n_max).collect();
    let report = equiconv_experiment(&f, &d, &r, &n_list, (p.gamma[0], p.gamma[1]), p.grid_points)?;
    let ratio = report
        .decay_ratio((p.early[0], p.early[1]), (p.late[0], p.late[1]))
        .unwrap_or(f64::INFINITY);
    Ok(ExperimentOutput {
        artifacts: vec![
            Artifact {
                name: "equiconv.csv".into(),
                body: report.to_csv(),
            },
            Artifact {
                name: "equiconv_trace.csv".into(),
                body: report.trace_csv(),
            },
        ],
        checks: vec![Check::at_most("late_over_early_max", ratio, p.decay_factor)],
    })
}
