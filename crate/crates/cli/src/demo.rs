//! Self-contained demonstrations. Each builds a problem with known
//! solution, optionally writes it out as problem and signal files, solves it
//! and reports the reconstruction error.

use std::f64::consts::PI;
use std::path::Path;

use clap::ValueEnum;
use num_complex::Complex64 as C;
use resolvent_inv::io::{
    matrix_to_pairs, to_pair, write_signal_file, EvenKernelTermWire, FilterWire, GridWire, SeriesWire,
};
use resolvent_inv::linalg::{vec_norm, vec_sub};
use resolvent_inv::{
    apply_f, apply_inverse_plan, convergence_sweep, convolution_forward, forward_filter, integral_forward,
    invert_filter, invert_to_plan, solve_convolution_even_kernel, solve_integral_first_kind, DenseMatrixOperator64,
    EvenKernelTerm64, FilterSpec64, GridSpec64, Matrix64, RegularizerConfig64, ResolventSeries64,
};
use serde::Serialize;

use crate::commands::to_json;
use crate::error::{CliError, CliResult};
use crate::problem::{ConvolutionProblem, FilterProblem, IntegralProblem, MatrixProblem, ProblemFile, SweepProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoKind {
    Matrix,
    Filter,
    Integral,
    Convolution,
    Sweep,
}

impl DemoKind {
    fn name(self) -> &'static str {
        match self {
            Self::Matrix => "matrix",
            Self::Filter => "filter",
            Self::Integral => "integral",
            Self::Convolution => "convolution",
            Self::Sweep => "sweep",
        }
    }
}

#[derive(Serialize)]
struct DemoReport {
    kind: &'static str,
    n: usize,
    relative_error: f64,
    files: Vec<String>,
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn rel(a: &[C], b: &[C]) -> f64 {
    vec_norm(&vec_sub(a, b)) / vec_norm(b)
}

fn demo_matrix(n: usize, seed: f64, diag: f64) -> Matrix64 {
    Matrix64::from_fn(n, n, |i, j| {
        let (i, j) = (i as f64, j as f64);
        let re = 0.3 * (1.7 * i + 0.9 * j + seed).sin();
        let im = 0.2 * (0.6 * i - 1.3 * j + seed).cos();
        c(re + if i == j { diag } else { 0.0 }, im)
    })
}

fn demo_vector(n: usize) -> Vec<C> {
    (0..n)
        .map(|k| c((0.7 * k as f64).cos(), (0.3 * k as f64).sin()))
        .collect()
}

fn periodic_signal(n: usize) -> Vec<C> {
    (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            c((3.0 * t).sin() + 0.5 * (7.0 * t).cos(), 0.25 * (2.0 * t).sin())
        })
        .collect()
}

struct Writer<'a> {
    dir: Option<&'a Path>,
    files: Vec<String>,
}

impl Writer<'_> {
    fn problem(&mut self, name: &str, p: &ProblemFile) -> CliResult<()> {
        if let Some(dir) = self.dir {
            let path = dir.join(name);
            std::fs::write(&path, to_json(p)).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
            self.files.push(name.to_string());
        }
        Ok(())
    }

    fn signal(&mut self, name: &str, v: &[C]) -> CliResult<()> {
        if let Some(dir) = self.dir {
            write_signal_file(&dir.join(name), v)?;
            self.files.push(name.to_string());
        }
        Ok(())
    }
}

pub fn run(kind: DemoKind, n: Option<usize>, dir: Option<&Path>) -> CliResult<String> {
    if let Some(d) = dir {
        std::fs::create_dir_all(d).map_err(|e| CliError::Schema(format!("{}: {e}", d.display())))?;
    }
    let mut w = Writer { dir, files: Vec::new() };
    let name = kind.name();
    let (y_file, x_file) = (format!("{name}_y.csv"), format!("{name}_x.csv"));
    let (size, err) = match kind {
        DemoKind::Matrix => {
            let n = n.unwrap_or(4);
            let series = ResolventSeries64::from_pairs(&[
                (c(1.0, 0.0), c(4.0, 1.0)),
                (c(2.0, 0.0), c(5.0, -1.0)),
                (c(0.5, 0.0), c(6.0, 0.0)),
            ])?;
            let a = demo_matrix(n, 0.4, 0.0);
            let op = DenseMatrixOperator64::new(a.clone())?;
            let x = demo_vector(n);
            let y = apply_f(&series, &op, &x)?;
            let back = apply_inverse_plan(&invert_to_plan(&series)?, &op, &y)?;
            w.problem(
                &format!("{name}.json"),
                &ProblemFile::Matrix(MatrixProblem {
                    series: SeriesWire::from_series(&series),
                    matrix: matrix_to_pairs(&a),
                    signal: Some(y_file.clone()),
                    x_true: None,
                    alpha_grid: None,
                }),
            )?;
            w.signal(&y_file, &y)?;
            w.signal(&x_file, &x)?;
            (n, rel(&back, &x))
        }
        DemoKind::Filter => {
            let n = n.unwrap_or(64);
            let spec = FilterSpec64::new(vec![c(-0.5, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0)])?;
            let x = periodic_signal(n);
            let y = forward_filter(&spec, &x)?;
            let back = invert_filter(&spec, &y)?;
            w.problem(
                &format!("{name}.json"),
                &ProblemFile::Filter(FilterProblem {
                    filter: FilterWire::from_spec(&spec),
                    signal: Some(y_file.clone()),
                }),
            )?;
            w.signal(&y_file, &y)?;
            w.signal(&x_file, &x)?;
            (n, rel(&back, &x))
        }
        DemoKind::Integral => {
            let n = n.unwrap_or(1000);
            let kernel = ResolventSeries64::from_pairs(&[(c(1.0, 0.0), c(1.0, 0.0)), (c(1.0, 0.0), c(2.0, 0.0))])?;
            let grid = GridSpec64::new(0.0, 10.0, n)?;
            let x: Vec<C> = grid
                .points()
                .iter()
                .map(|&t| c((-(t - 5.0) * (t - 5.0)).exp(), 0.0))
                .collect();
            let y = integral_forward(&kernel, &x, &grid)?;
            let back = solve_integral_first_kind(&kernel, &y, &grid)?.x;
            w.problem(
                &format!("{name}.json"),
                &ProblemFile::Integral(IntegralProblem {
                    kernel: SeriesWire::from_series(&kernel),
                    grid: GridWire::from_grid(&grid),
                    signal: Some(y_file.clone()),
                }),
            )?;
            w.signal(&y_file, &y)?;
            w.signal(&x_file, &x)?;
            (n, rel(&back, &x))
        }
        DemoKind::Convolution => {
            let n = n.unwrap_or(128);
            let period = 2.0 * PI;
            // b = i·a/(2β) makes the mapped coefficient −2i·b·β equal a > 0.
            let mk = |a: f64, beta: C| EvenKernelTerm64::new(c(0.0, 1.0) * a / (2.0 * beta), beta);
            let terms = [mk(1.0, c(0.0, -1.0)), mk(0.5, c(0.5, -1.5))];
            let x = periodic_signal(n);
            let y = convolution_forward(&terms, &x, period)?;
            let back = solve_convolution_even_kernel(&terms, &y, period)?;
            w.problem(
                &format!("{name}.json"),
                &ProblemFile::Convolution(ConvolutionProblem {
                    terms: terms.iter().map(EvenKernelTermWire::from_term).collect(),
                    period,
                    signal: Some(y_file.clone()),
                }),
            )?;
            w.signal(&y_file, &y)?;
            w.signal(&x_file, &x)?;
            (n, rel(&back, &x))
        }
        DemoKind::Sweep => {
            let n = n.unwrap_or(8);
            let series = ResolventSeries64::from_pairs(&[(c(1.0, 0.0), c(6.0, 1.0)), (c(2.0, 0.0), c(7.0, -2.0))])?;
            let a = demo_matrix(n, 1.1, 1.5);
            let op = DenseMatrixOperator64::new(a.clone())?;
            let x = demo_vector(n);
            let config = RegularizerConfig64::log_spaced(1e-2, 1e-10, 9)?;
            let report = convergence_sweep(&series, &op, &x, &config)?;
            w.problem(
                &format!("{name}.json"),
                &ProblemFile::Sweep(SweepProblem {
                    series: SeriesWire::from_series(&series),
                    matrix: matrix_to_pairs(&a),
                    x_true: x.iter().copied().map(to_pair).collect(),
                    alpha_grid: config.alpha_grid().to_vec(),
                }),
            )?;
            (n, report.final_error() / vec_norm(&x))
        }
    };
    Ok(to_json(&DemoReport {
        kind: name,
        n: size,
        relative_error: err,
        files: w.files,
    }))
}
