use std::io::Write;
use std::path::Path;

use log::info;
use num_complex::Complex64;
use resolvent_inv::io::{
    matrix_from_pairs, to_pair, write_signal_csv, AdmissibilityReportWire, Pair, PlanWire, SeriesWire,
};
use resolvent_inv::series::evaluate_f;
use resolvent_inv::{
    apply_inverse_plan, caratheodory_counterexample, check_admissible, convergence_sweep, even_kernel_series,
    filter_inverse_plan_with_tol, filter_to_series, invert_filter_with_plan, invert_to_plan,
    solve_convolution_even_kernel, solve_integral_first_kind, DenseMatrixOperator64, EvenKernelTerm64, InversionPlan64,
    MultiplierOperator64, RegularizerConfig64, ResolventSeries64, SpectrumDescriptor64,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::problem::{pairs_to_vec, LoadedProblem, ProblemFile};

#[derive(Serialize)]
struct CheckOutput {
    kind: &'static str,
    series: SeriesWire,
    #[serde(flatten)]
    report: AdmissibilityReportWire,
}

/// Pretty JSON followed by a newline.
pub fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn dense(series: &SeriesWire, matrix: &[Vec<Pair>]) -> CliResult<(ResolventSeries64, DenseMatrixOperator64)> {
    let s = series.to_series()?;
    let op = DenseMatrixOperator64::new(matrix_from_pairs(matrix)?)?;
    Ok((s, op))
}

fn convolution_terms(terms: &[resolvent_inv::io::EvenKernelTermWire]) -> Vec<EvenKernelTerm64> {
    terms.iter().map(|t| t.to_term()).collect()
}

/// The series under test and the spectrum it is checked against.
fn series_and_spectrum(problem: &ProblemFile, tol: f64) -> CliResult<(ResolventSeries64, SpectrumDescriptor64)> {
    Ok(match problem {
        ProblemFile::Series(p) => (p.series.to_series()?, p.spectrum.to_descriptor()),
        ProblemFile::Filter(p) => (
            filter_to_series(&p.filter.to_spec()?, tol)?.0,
            SpectrumDescriptor64::UnitCircle,
        ),
        ProblemFile::Integral(p) => (p.kernel.to_series()?, SpectrumDescriptor64::ImaginaryAxis),
        ProblemFile::Convolution(p) => (
            even_kernel_series(&convolution_terms(&p.terms))?,
            SpectrumDescriptor64::HalfLinePositiveReals,
        ),
        ProblemFile::Matrix(p) => {
            let (s, op) = dense(&p.series, &p.matrix)?;
            (s, SpectrumDescriptor64::PointSet(op.eigenvalues().to_vec()))
        }
        ProblemFile::Sweep(p) => {
            let (s, op) = dense(&p.series, &p.matrix)?;
            (s, SpectrumDescriptor64::PointSet(op.eigenvalues().to_vec()))
        }
    })
}

/// Admissibility report as JSON, and whether the problem is admissible.
pub fn check(lp: &LoadedProblem, margin: f64, tol: f64) -> CliResult<(String, bool)> {
    let (series, spectrum) = series_and_spectrum(&lp.problem, tol)?;
    let mut report = check_admissible(&series, &spectrum, margin);
    if matches!(lp.problem, ProblemFile::Integral(_)) {
        // The resolvent of d/dt exists only for Re α > 0, so the hull must lie
        // strictly in the right half-plane, not merely off the axis.
        let lo = report.hull.vertices().iter().fold(f64::INFINITY, |m, v| m.min(v.re));
        report.separation_distance = lo.max(0.0);
        report.separation_ok = lo > margin;
    }
    let ok = report.admissible();
    info!("{}: admissible = {ok}", lp.problem.kind());
    let out = CheckOutput {
        kind: lp.problem.kind(),
        series: SeriesWire::from_series(&series),
        report: AdmissibilityReportWire::from_report(&report),
    };
    Ok((to_json(&out), ok))
}

fn fmt_c(z: Complex64) -> String {
    format!("{:e}{:+e}i", z.re, z.im)
}

fn print_plan(plan: &InversionPlan64) {
    eprintln!("gamma = {}", fmt_c(plan.gamma));
    eprintln!("beta = {}", fmt_c(plan.beta));
    let poles: Vec<String> = plan
        .remainder
        .groups
        .iter()
        .map(|g| format!("{} (order {})", fmt_c(g.pole), g.multiplicity()))
        .collect();
    eprintln!("remainder poles = [{}]", poles.join(", "));
}

fn require_admissible(series: &ResolventSeries64, spectrum: &SpectrumDescriptor64, margin: f64) -> CliResult<()> {
    let report = check_admissible(series, spectrum, margin);
    if !report.theorem_mode_ok {
        return Err(CliError::Inadmissible(
            "coefficients are not real and nonnegative".into(),
        ));
    }
    if !report.separation_ok {
        return Err(CliError::Inadmissible(format!(
            "pole hull is within {:e} of the spectrum (margin {margin:e})",
            report.separation_distance
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct InvertSummary<'a> {
    kind: &'static str,
    samples: usize,
    output: &'a str,
    plan: PlanWire,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary_residual: Option<f64>,
}

/// Solves the problem for the input signal and writes the solution as CSV.
pub fn invert(
    lp: &LoadedProblem,
    input: Option<&Path>,
    output: Option<&Path>,
    margin: f64,
    tol: f64,
    n: Option<usize>,
) -> CliResult<()> {
    let y = lp.signal(input)?;
    let mut boundary_residual = None;
    let (x, plan) = match &lp.problem {
        ProblemFile::Series(p) => {
            let s = p.series.to_series()?;
            let spectrum: SpectrumDescriptor64 = p.spectrum.to_descriptor();
            let SpectrumDescriptor64::PointSet(points) = &spectrum else {
                return Err(CliError::Schema(
                    "invert on a series problem needs a point_set spectrum".into(),
                ));
            };
            require_admissible(&s, &spectrum, margin)?;
            let op = MultiplierOperator64::new(points.clone())?;
            let plan = invert_to_plan(&s)?;
            (apply_inverse_plan(&plan, &op, &y)?, plan)
        }
        ProblemFile::Matrix(p) => {
            let (s, op) = dense(&p.series, &p.matrix)?;
            require_admissible(&s, &SpectrumDescriptor64::PointSet(op.eigenvalues().to_vec()), margin)?;
            let plan = invert_to_plan(&s)?;
            (apply_inverse_plan(&plan, &op, &y)?, plan)
        }
        ProblemFile::Filter(p) => {
            let plan = filter_inverse_plan_with_tol(&p.filter.to_spec()?, tol)?;
            (invert_filter_with_plan(&plan, &y)?, plan)
        }
        ProblemFile::Integral(p) => {
            let mut grid = p.grid;
            if let Some(n) = n {
                grid.n = n;
            }
            let sol = solve_integral_first_kind(&p.kernel.to_series()?, &y, &grid.to_grid()?)?;
            eprintln!("boundary residual |y(L)| = {:e}", sol.boundary_residual);
            boundary_residual = Some(sol.boundary_residual);
            (sol.x, sol.plan)
        }
        ProblemFile::Convolution(p) => {
            let terms = convolution_terms(&p.terms);
            let plan = invert_to_plan(&even_kernel_series(&terms)?)?;
            (solve_convolution_even_kernel(&terms, &y, p.period)?, plan)
        }
        ProblemFile::Sweep(_) => {
            return Err(CliError::Schema("sweep problems are run with the sweep command".into()));
        }
    };
    print_plan(&plan);
    match output {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
            write_signal_csv(std::io::BufWriter::new(f), &x)?;
            let summary = InvertSummary {
                kind: lp.problem.kind(),
                samples: x.len(),
                output: &path.display().to_string(),
                plan: PlanWire::from_plan(&plan),
                boundary_residual,
            };
            print!("{}", to_json(&summary));
        }
        None => write_signal_csv(std::io::stdout().lock(), &x)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    output: &'a str,
    records: usize,
    first_error: f64,
    final_error: f64,
    decreased: bool,
}

/// Runs the regularization sweep; fails with `CheckFailed` when the error
/// did not drop from the first to the last alpha.
pub fn sweep(lp: &LoadedProblem, output: Option<&Path>) -> CliResult<()> {
    let (series, matrix, x_true, grid) = match &lp.problem {
        ProblemFile::Sweep(p) => (&p.series, &p.matrix, Some(&p.x_true), Some(&p.alpha_grid)),
        ProblemFile::Matrix(p) => (&p.series, &p.matrix, p.x_true.as_ref(), p.alpha_grid.as_ref()),
        other => {
            return Err(CliError::Schema(format!(
                "sweep needs a matrix or sweep problem, got {}",
                other.kind()
            )))
        }
    };
    let (s, op) = dense(series, matrix)?;
    let x = match x_true {
        Some(v) => pairs_to_vec(v),
        None => vec![Complex64::new(1.0, 0.0); op.matrix().rows()],
    };
    let config = match grid {
        Some(g) => RegularizerConfig64::tikhonov(g.clone())?,
        None => RegularizerConfig64::log_spaced(1e-2, 1e-10, 9)?,
    };
    let report = convergence_sweep(&s, &op, &x, &config)?;
    match output {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
            report.write_csv(std::io::BufWriter::new(f))?;
            let summary = SweepSummary {
                output: &path.display().to_string(),
                records: report.records.len(),
                first_error: report.records[0].error,
                final_error: report.final_error(),
                decreased: report.decreased,
            };
            print!("{}", to_json(&summary));
        }
        None => report.write_csv(std::io::stdout().lock())?,
    }
    std::io::stdout().flush().ok();
    if report.decreased {
        Ok(())
    } else {
        Err(CliError::CheckFailed("reconstruction error did not decrease".into()))
    }
}

/// Parses `re,im` or a bare real.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("cannot parse {t:?} as a number"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im, got {s:?}")),
    }
}

#[derive(Serialize)]
struct CounterexampleOutput {
    lambda: Pair,
    series: SeriesWire,
    f_lambda_abs: f64,
}

pub fn counterexample(poles: &[Complex64], lambda: Complex64) -> CliResult<String> {
    let s = caratheodory_counterexample(poles, lambda)?;
    let value = evaluate_f(&s, lambda)?.norm();
    Ok(to_json(&CounterexampleOutput {
        lambda: to_pair(lambda),
        series: SeriesWire::from_series(&s),
        f_lambda_abs: value,
    }))
}
