//! Problem files: a JSON object whose `kind` selects the payload.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use resolvent_inv::io::{
    from_pair, read_signal_file, EvenKernelTermWire, FilterWire, GridWire, Pair, SeriesWire, SpectrumWire,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemFile {
    Series(SeriesProblem),
    Filter(FilterProblem),
    Integral(IntegralProblem),
    Convolution(ConvolutionProblem),
    Matrix(MatrixProblem),
    Sweep(SweepProblem),
}

/// A series against an abstract spectrum. A point-set spectrum doubles as a
/// diagonal operator for `invert`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesProblem {
    pub series: SeriesWire,
    pub spectrum: SpectrumWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterProblem {
    pub filter: FilterWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<String>,
}

/// `∫ₜ^∞ k(s − t) x(s) ds = y(t)` with `k(t) = Σ aⱼ e^{−αⱼt}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralProblem {
    pub kernel: SeriesWire,
    pub grid: GridWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvolutionProblem {
    pub terms: Vec<EvenKernelTermWire>,
    pub period: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixProblem {
    pub series: SeriesWire,
    pub matrix: Vec<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<String>,
    /// Used by `sweep`; defaults to the all-ones vector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_true: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_grid: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepProblem {
    pub series: SeriesWire,
    pub matrix: Vec<Vec<Pair>>,
    pub x_true: Vec<Pair>,
    pub alpha_grid: Vec<f64>,
}

/// A parsed problem plus the directory that relative signal paths resolve
/// against.
pub struct LoadedProblem {
    pub problem: ProblemFile,
    pub base: PathBuf,
}

impl ProblemFile {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Series(_) => "series",
            Self::Filter(_) => "filter",
            Self::Integral(_) => "integral",
            Self::Convolution(_) => "convolution",
            Self::Matrix(_) => "matrix",
            Self::Sweep(_) => "sweep",
        }
    }

    fn signal(&self) -> Option<&str> {
        match self {
            Self::Series(p) => p.signal.as_deref(),
            Self::Filter(p) => p.signal.as_deref(),
            Self::Integral(p) => p.signal.as_deref(),
            Self::Convolution(p) => p.signal.as_deref(),
            Self::Matrix(p) => p.signal.as_deref(),
            Self::Sweep(_) => None,
        }
    }
}

pub fn load(path: &Path) -> CliResult<LoadedProblem> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    let problem: ProblemFile =
        serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(LoadedProblem { problem, base })
}

impl LoadedProblem {
    /// The input signal: `--input` if given, else the file's `signal` path.
    pub fn signal(&self, input: Option<&Path>) -> CliResult<Vec<Complex64>> {
        let path = match (input, self.problem.signal()) {
            (Some(p), _) => p.to_path_buf(),
            (None, Some(s)) => self.base.join(s),
            (None, None) => {
                return Err(CliError::Schema(
                    "no input signal: pass --input or set \"signal\" in the problem file".into(),
                ))
            }
        };
        Ok(read_signal_file(&path)?)
    }
}

pub fn pairs_to_vec(pairs: &[Pair]) -> Vec<Complex64> {
    pairs.iter().copied().map(from_pair).collect()
}
