use num_complex::Complex;

use super::{apply_f, apply_inverse_plan, check_dim, GridDerivativeOperator, GridSpec};
use crate::error::{Error, Result};
use crate::rational::{invert_to_plan, InversionPlan};
use crate::scalar::{to_f64, Scalar};
use crate::series::ResolventSeries;

/// Output of [`solve_integral_first_kind`].
#[derive(Clone, Debug)]
pub struct IntegralSolution<T: Scalar> {
    pub x: Vec<Complex<T>>,
    /// `|y(t₀ + L)|`. The infinite upper limit is truncated at the grid end,
    /// so this should be small relative to `max |y|`.
    pub boundary_residual: T,
    pub plan: InversionPlan<T>,
}

fn check_kernel<T: Scalar>(kernel: &ResolventSeries<T>) -> Result<()> {
    if let Some(t) = kernel.terms().iter().find(|t| t.pole.re <= T::zero()) {
        return Err(Error::UnsupportedKernel(format!(
            "exponent {}{:+}i must have positive real part",
            to_f64(t.pole.re),
            to_f64(t.pole.im)
        )));
    }
    kernel.require_theorem_mode()
}

/// `y(t) = ∫ₜ^{t₀+L} k(s − t) x(s) ds` for `k(t) = Σ aⱼ e^{−αⱼt}`, where the
/// kernel is passed as the series `{(aⱼ, αⱼ)}`.
pub fn integral_forward<T: Scalar>(
    kernel: &ResolventSeries<T>,
    x: &[Complex<T>],
    grid: &GridSpec<T>,
) -> Result<Vec<Complex<T>>> {
    if let Some(t) = kernel.terms().iter().find(|t| t.pole.re <= T::zero()) {
        return Err(Error::UnsupportedKernel(format!(
            "exponent {}{:+}i must have positive real part",
            to_f64(t.pole.re),
            to_f64(t.pole.im)
        )));
    }
    let d = GridDerivativeOperator::new(*grid);
    apply_f(kernel, &d, x)
}

/// Solves `∫ₜ^∞ k(s − t) x(s) ds = y(t)` on the grid.
///
/// The equation reads `f(D)x = y` with `D = d/dt`, hence
/// `x = γy + βy′ + h(D)y`.
pub fn solve_integral_first_kind<T: Scalar>(
    kernel: &ResolventSeries<T>,
    y: &[Complex<T>],
    grid: &GridSpec<T>,
) -> Result<IntegralSolution<T>> {
    check_kernel(kernel)?;
    check_dim(grid.n, y)?;
    let plan = invert_to_plan(kernel)?;
    let d = GridDerivativeOperator::new(*grid);
    let x = apply_inverse_plan(&plan, &d, y)?;
    Ok(IntegralSolution {
        x,
        boundary_residual: y[y.len() - 1].norm(),
        plan,
    })
}
