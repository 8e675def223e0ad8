//! JSON and CSV wire formats. Complex numbers travel as `[re, im]` pairs of
//! `f64` regardless of the working precision.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SpectrumDescriptor;
use crate::linalg::Matrix;
use crate::operators::{EvenKernelTerm, GridSpec};
use crate::rational::{FilterSpec, InversionPlan};
use crate::scalar::{lit, to_f64, Scalar};
use crate::series::{AdmissibilityReport, ResolventSeries, Term};

pub type Pair = [f64; 2];

pub fn to_pair<T: Scalar>(z: Complex<T>) -> Pair {
    [to_f64(z.re), to_f64(z.im)]
}

pub fn from_pair<T: Scalar>(p: Pair) -> Complex<T> {
    Complex::new(lit(p[0]), lit(p[1]))
}

fn fmt_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermWire {
    pub a: Pair,
    pub alpha: Pair,
}

/// `{"terms": [{"a": [re, im], "alpha": [re, im]}, ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesWire {
    pub terms: Vec<TermWire>,
}

impl SeriesWire {
    pub fn from_series<T: Scalar>(s: &ResolventSeries<T>) -> Self {
        Self {
            terms: s
                .terms()
                .iter()
                .map(|t| TermWire {
                    a: to_pair(t.coeff),
                    alpha: to_pair(t.pole),
                })
                .collect(),
        }
    }

    pub fn to_series<T: Scalar>(&self) -> Result<ResolventSeries<T>> {
        ResolventSeries::new(
            self.terms
                .iter()
                .map(|t| Term::new(from_pair(t.a), from_pair(t.alpha)))
                .collect(),
        )
    }
}

/// `{"c": [[re, im], ...], "b": [[re, im], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterWire {
    pub c: Vec<Pair>,
    pub b: Vec<Pair>,
}

impl FilterWire {
    pub fn from_spec<T: Scalar>(f: &FilterSpec<T>) -> Self {
        Self {
            c: f.c().iter().copied().map(to_pair).collect(),
            b: f.b().iter().copied().map(to_pair).collect(),
        }
    }

    pub fn to_spec<T: Scalar>(&self) -> Result<FilterSpec<T>> {
        FilterSpec::new(
            self.c.iter().copied().map(from_pair).collect(),
            self.b.iter().copied().map(from_pair).collect(),
        )
    }
}

/// `{"t0": ..., "L": ..., "n": ...}`
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridWire {
    pub t0: f64,
    #[serde(rename = "L")]
    pub length: f64,
    pub n: usize,
}

impl GridWire {
    pub fn from_grid<T: Scalar>(g: &GridSpec<T>) -> Self {
        Self {
            t0: to_f64(g.t0),
            length: to_f64(g.length),
            n: g.n,
        }
    }

    pub fn to_grid<T: Scalar>(&self) -> Result<GridSpec<T>> {
        GridSpec::new(lit(self.t0), lit(self.length), self.n)
    }
}

/// One even-kernel term `b e^{−iβ|t|}`: `{"b": [re, im], "beta": [re, im]}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvenKernelTermWire {
    pub b: Pair,
    pub beta: Pair,
}

impl EvenKernelTermWire {
    pub fn from_term<T: Scalar>(t: &EvenKernelTerm<T>) -> Self {
        Self {
            b: to_pair(t.b),
            beta: to_pair(t.beta),
        }
    }

    pub fn to_term<T: Scalar>(&self) -> EvenKernelTerm<T> {
        EvenKernelTerm::new(from_pair(self.b), from_pair(self.beta))
    }
}

/// Row-major matrix of `[re, im]` pairs.
pub fn matrix_from_pairs<T: Scalar>(rows: &[Vec<Pair>]) -> Result<Matrix<T>> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().copied().map(from_pair).collect())
            .collect(),
    )
}

pub fn matrix_to_pairs<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<Pair>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(to_pair).collect())
        .collect()
}

/// Spectrum as it appears in problem files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpectrumWire {
    PointSet { points: Vec<Pair> },
    UnitCircle,
    HalfLinePositiveReals,
    ImaginaryAxis,
}

impl SpectrumWire {
    pub fn to_descriptor<T: Scalar>(&self) -> SpectrumDescriptor<T> {
        match self {
            Self::PointSet { points } => SpectrumDescriptor::PointSet(points.iter().copied().map(from_pair).collect()),
            Self::UnitCircle => SpectrumDescriptor::UnitCircle,
            Self::HalfLinePositiveReals => SpectrumDescriptor::HalfLinePositiveReals,
            Self::ImaginaryAxis => SpectrumDescriptor::ImaginaryAxis,
        }
    }
}

/// Reads a signal from CSV text: one `re,im` row per sample, an optional
/// `re,im` header, and a missing second column read as zero.
pub fn read_signal_csv<T: Scalar, R: Read>(input: R) -> Result<Vec<Complex<T>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(fmt_err)?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parse = |f: &str| -> Result<f64> {
            f.parse::<f64>()
                .map_err(|_| Error::Format(format!("row {}: cannot parse {f:?} as a number", i + 1)))
        };
        let re_field = rec.get(0).unwrap_or("");
        if i == 0 && re_field.parse::<f64>().is_err() {
            continue; // header
        }
        if rec.len() > 2 {
            return Err(Error::Format(format!("row {}: expected at most two columns", i + 1)));
        }
        let re = parse(re_field)?;
        let im = match rec.get(1) {
            Some(f) if !f.is_empty() => parse(f)?,
            _ => 0.0,
        };
        out.push(from_pair([re, im]));
    }
    if out.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(out)
}

/// Writes a signal as CSV with header `re,im`.
pub fn write_signal_csv<T: Scalar, W: Write>(out: W, signal: &[Complex<T>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["re", "im"]).map_err(fmt_err)?;
    for z in signal {
        let [re, im] = to_pair(*z);
        w.write_record(&[format!("{re:e}"), format!("{im:e}")])
            .map_err(fmt_err)?;
    }
    w.flush().map_err(fmt_err)
}

/// Parses a JSON array of `[re, im]` pairs.
pub fn read_signal_json<T: Scalar>(text: &str) -> Result<Vec<Complex<T>>> {
    let pairs: Vec<Pair> = serde_json::from_str(text).map_err(fmt_err)?;
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(pairs.into_iter().map(from_pair).collect())
}

/// Reads a signal file, choosing JSON when the content starts with `[`.
pub fn read_signal_file<T: Scalar>(path: &Path) -> Result<Vec<Complex<T>>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('[') {
        read_signal_json(&text)
    } else {
        read_signal_csv(text.as_bytes())
    }
}

pub fn write_signal_file<T: Scalar>(path: &Path, signal: &[Complex<T>]) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    write_signal_csv(std::io::BufWriter::new(f), signal)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDiagnosticWire {
    pub pole: Pair,
    pub coeff_abs: f64,
    pub distance: f64,
    /// `null` when the pole sits on the spectrum.
    pub resolvent_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReportWire {
    pub admissible: bool,
    pub theorem_mode: bool,
    pub hull_vertices: Vec<Pair>,
    pub separated: bool,
    pub separation_distance: f64,
    pub summability_value: Option<f64>,
    pub terms: Vec<TermDiagnosticWire>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl AdmissibilityReportWire {
    pub fn from_report<T: Scalar>(r: &AdmissibilityReport<T>) -> Self {
        Self {
            admissible: r.admissible(),
            theorem_mode: r.theorem_mode_ok,
            hull_vertices: r.hull.vertices().iter().copied().map(to_pair).collect(),
            separated: r.separation_ok,
            separation_distance: to_f64(r.separation_distance),
            summability_value: finite(to_f64(r.summability_value)),
            terms: r
                .terms
                .iter()
                .map(|t| TermDiagnosticWire {
                    pole: to_pair(t.pole),
                    coeff_abs: to_f64(t.coeff_abs),
                    distance: to_f64(t.distance),
                    resolvent_bound: finite(to_f64(t.resolvent_bound)),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleGroupWire {
    pub pole: Pair,
    /// Coefficients of `(pole − z)^{−k}`, `k = 1, 2, …`.
    pub coeffs: Vec<Pair>,
}

/// `γ`, `β` and the remainder's partial fractions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanWire {
    pub gamma: Pair,
    pub beta: Pair,
    pub remainder: Vec<PoleGroupWire>,
}

impl PlanWire {
    pub fn from_plan<T: Scalar>(p: &InversionPlan<T>) -> Self {
        Self {
            gamma: to_pair(p.gamma),
            beta: to_pair(p.beta),
            remainder: p
                .remainder
                .groups
                .iter()
                .map(|g| PoleGroupWire {
                    pole: to_pair(g.pole),
                    coeffs: g.coeffs.iter().copied().map(to_pair).collect(),
                })
                .collect(),
        }
    }
}
