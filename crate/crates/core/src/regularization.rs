//! Tikhonov regularization of `f(A)x = y` when `A` has a bounded inverse
//! `K`.
//!
//! Writing `f(A)⁻¹ = γ + βA + h(A)` and replacing the unbounded `A = K⁻¹`
//! by the Tikhonov family `R⁰_α = (αI + K*K)⁻¹K*` gives the regularizer
//! `R_α = γ + βR⁰_α + h(A)`, which converges pointwise to the left inverse
//! as `α → 0` on exact data.

use std::io::Write;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{vec_norm, vec_sub, Cholesky, Matrix};
use crate::operators::{apply_f, apply_remainder, DenseMatrixOperator};
use crate::rational::{invert_to_plan, InversionPlan};
use crate::scalar::{to_f64, Scalar};
use crate::series::ResolventSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RegularizerVariant {
    Tikhonov,
}

/// Regularization parameters, largest first.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularizerConfig<T: Scalar> {
    alpha_grid: Vec<T>,
    variant: RegularizerVariant,
}

impl<T: Scalar> RegularizerConfig<T> {
    pub fn tikhonov(alpha_grid: Vec<T>) -> Result<Self> {
        if alpha_grid.is_empty() {
            return Err(Error::EmptyInput);
        }
        if alpha_grid.iter().any(|&a| a <= T::zero() || !a.is_finite()) {
            return Err(Error::InvalidParameter(
                "alpha values must be positive and finite".into(),
            ));
        }
        if alpha_grid.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidParameter("alpha grid must be strictly decreasing".into()));
        }
        Ok(Self {
            alpha_grid,
            variant: RegularizerVariant::Tikhonov,
        })
    }

    /// `count` values spaced logarithmically from `from` down to `to`.
    pub fn log_spaced(from: T, to: T, count: usize) -> Result<Self> {
        if count < 2 || from <= to || to <= T::zero() || from.is_nan() || to.is_nan() {
            return Err(Error::InvalidParameter(
                "need from > to > 0 and at least two values".into(),
            ));
        }
        let (lf, lt) = (from.ln(), to.ln());
        let steps = T::from_usize(count - 1).unwrap();
        Self::tikhonov(
            (0..count)
                .map(|i| (lf + (lt - lf) * T::from_usize(i).unwrap() / steps).exp())
                .collect(),
        )
    }

    pub fn alpha_grid(&self) -> &[T] {
        &self.alpha_grid
    }

    pub fn variant(&self) -> RegularizerVariant {
        self.variant
    }
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "regularization parameter must be positive, got {}",
            to_f64(alpha)
        )))
    }
}

/// Cholesky factor of `αI + K*K`. Fails with `NotPositiveDefinite` only if
/// rounding destroys definiteness.
pub fn tikhonov_normal_factor<T: Scalar>(k: &Matrix<T>, alpha: T) -> Result<Cholesky<T>> {
    check_alpha(alpha)?;
    let gram = k.adjoint().matmul(k).shift_diagonal(Complex::new(alpha, T::zero()));
    Cholesky::factor(&gram)
}

/// Whether `αI + K*K` factors as positive definite.
pub fn is_positive_definite<T: Scalar>(k: &Matrix<T>, alpha: T) -> bool {
    tikhonov_normal_factor(k, alpha).is_ok()
}

/// Solves `(αI + K*K)x = K*y`.
pub fn tikhonov_apply<T: Scalar>(k: &Matrix<T>, alpha: T, y: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    if y.len() != k.rows() {
        return Err(Error::DimensionMismatch {
            expected: k.rows(),
            got: y.len(),
        });
    }
    let chol = tikhonov_normal_factor(k, alpha)?;
    Ok(chol.solve(&k.adjoint().mul_vec(y)))
}

/// Inverse of `A`, mapping singularity to a hypothesis failure.
fn bounded_inverse<T: Scalar>(a: &DenseMatrixOperator<T>) -> Result<Matrix<T>> {
    a.matrix()
        .inverse()
        .map_err(|_| Error::HypothesisViolation("A must have a bounded inverse".into()))
}

fn combine<T: Scalar>(
    plan: &InversionPlan<T>,
    a: &DenseMatrixOperator<T>,
    k: &Matrix<T>,
    alpha: T,
    y: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let reg = tikhonov_apply(k, alpha, y)?;
    let mut out = apply_remainder(plan, a, y)?;
    for ((o, &yi), &ri) in out.iter_mut().zip(y).zip(&reg) {
        *o = *o + plan.gamma * yi + plan.beta * ri;
    }
    Ok(out)
}

/// `R_α y = γy + β(αI + K*K)⁻¹K*y + h(A)y` with `K = A⁻¹`.
pub fn regularized_plan_apply<T: Scalar>(
    plan: &InversionPlan<T>,
    a: &DenseMatrixOperator<T>,
    alpha: T,
    y: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    check_alpha(alpha)?;
    let k = bounded_inverse(a)?;
    combine(plan, a, &k, alpha, y)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRecord<T: Scalar> {
    pub alpha: T,
    /// `‖R_α y − x_true‖`.
    pub error: T,
    /// `‖f(A) R_α y − y‖`.
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport<T: Scalar> {
    /// Ordered like the alpha grid (descending).
    pub records: Vec<SweepRecord<T>>,
    /// Final error below the first.
    pub decreased: bool,
}

impl<T: Scalar> SweepReport<T> {
    /// Whether every step of the grid lowered the error.
    pub fn strictly_decreasing(&self) -> bool {
        self.records.windows(2).all(|w| w[1].error < w[0].error)
    }

    pub fn final_error(&self) -> T {
        self.records.last().map_or(T::zero(), |r| r.error)
    }

    /// CSV with header `alpha,error,residual`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["alpha", "error", "residual"])
            .map_err(|e| Error::Format(e.to_string()))?;
        for r in &self.records {
            w.write_record(&[
                format!("{:e}", to_f64(r.alpha)),
                format!("{:e}", to_f64(r.error)),
                format!("{:e}", to_f64(r.residual)),
            ])
            .map_err(|e| Error::Format(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Error and residual of `R_α y` against `x_true` over the alpha grid, for
/// arbitrary (possibly perturbed) data `y`.
pub fn sweep_with_data<T: Scalar>(
    series: &ResolventSeries<T>,
    plan: &InversionPlan<T>,
    a: &DenseMatrixOperator<T>,
    x_true: &[Complex<T>],
    y: &[Complex<T>],
    config: &RegularizerConfig<T>,
) -> Result<SweepReport<T>> {
    let k = bounded_inverse(a)?;
    let mut records = Vec::with_capacity(config.alpha_grid.len());
    for &alpha in &config.alpha_grid {
        let x = combine(plan, a, &k, alpha, y)?;
        let fx = apply_f(series, a, &x)?;
        records.push(SweepRecord {
            alpha,
            error: vec_norm(&vec_sub(&x, x_true)),
            residual: vec_norm(&vec_sub(&fx, y)),
        });
    }
    let decreased = match (records.first(), records.last()) {
        (Some(f), Some(l)) => records.len() == 1 || l.error < f.error || f.error == T::zero(),
        _ => false,
    };
    Ok(SweepReport { records, decreased })
}

/// Sweep on exact data `y = f(A) x_true`.
pub fn convergence_sweep<T: Scalar>(
    series: &ResolventSeries<T>,
    a: &DenseMatrixOperator<T>,
    x_true: &[Complex<T>],
    config: &RegularizerConfig<T>,
) -> Result<SweepReport<T>> {
    let plan = invert_to_plan(series)?;
    let y = apply_f(series, a, x_true)?;
    sweep_with_data(series, &plan, a, x_true, &y, config)
}
