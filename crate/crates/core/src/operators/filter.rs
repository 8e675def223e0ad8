use num_complex::Complex;

use super::{apply_inverse_plan, PeriodicShiftOperator};
use crate::error::{Error, Result};
use crate::fft;
use crate::geometry::{convex_hull, hull_separated_from, SpectrumDescriptor};
use crate::poly::DEFAULT_ROOT_TOL;
use crate::rational::{filter_to_series, invert_to_plan, FilterSpec, InversionPlan};
use crate::scalar::{lit, to_f64, Scalar};

const TRANSFER_TOL: f64 = 1e-10;

/// Runs the recursion `Σ cₖ y(n+k) = Σ bₗ x(n+l)` on a periodic signal by
/// dividing `q(ωₖ)/p(ωₖ)` into each DFT bin.
pub fn forward_filter<T: Scalar>(spec: &FilterSpec<T>, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = x.len();
    let (p, q) = (spec.p(), spec.q());
    let floor = lit::<T>(TRANSFER_TOL) * p.coeff_norm();
    let mut spectrum = fft::forward(x);
    for (k, v) in spectrum.iter_mut().enumerate() {
        let w = fft::root_of_unity::<T>(k, n);
        let pw = p.eval(w);
        if pw.norm() <= floor {
            return Err(Error::SingularTransfer { bin: k });
        }
        *v = *v * q.eval(w) / pw;
    }
    Ok(fft::inverse(&spectrum))
}

/// Builds the inversion plan of the filter series `f` with `q/p = −z f(z)`.
///
/// Requires positive `aⱼ` and a pole hull that stays off the unit circle.
pub fn filter_inverse_plan<T: Scalar>(spec: &FilterSpec<T>) -> Result<InversionPlan<T>> {
    filter_inverse_plan_with_tol(spec, lit(DEFAULT_ROOT_TOL))
}

/// [`filter_inverse_plan`] with an explicit root-clustering tolerance.
pub fn filter_inverse_plan_with_tol<T: Scalar>(spec: &FilterSpec<T>, tol: T) -> Result<InversionPlan<T>> {
    let (series, report) = filter_to_series(spec, tol)?;
    if !report.theorem_mode {
        return Err(Error::HypothesisViolation(format!(
            "filter series coefficients must be positive (min Re a = {:e}, max |Im a|/|a| = {:e})",
            to_f64(report.min_real_coeff),
            to_f64(report.max_imag_ratio)
        )));
    }
    let hull = convex_hull(&series.poles())?;
    let sep = hull_separated_from(&hull, &SpectrumDescriptor::UnitCircle, T::zero());
    if !sep.separated {
        return Err(Error::IllPosedConfiguration {
            distance: to_f64(sep.distance),
        });
    }
    invert_to_plan(&series)
}

/// Recovers the input of a periodic recursive filter from its output:
/// `x = (γ + βT + h(T))(−T⁻¹y)`.
pub fn invert_filter<T: Scalar>(spec: &FilterSpec<T>, y: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    invert_filter_with_plan(&filter_inverse_plan(spec)?, y)
}

/// Applies a plan from [`filter_inverse_plan`] to the output signal `y`.
pub fn invert_filter_with_plan<T: Scalar>(plan: &InversionPlan<T>, y: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let shift = PeriodicShiftOperator::new(y.len())?;
    let rhs: Vec<Complex<T>> = shift.apply_inverse(y).into_iter().map(|v| -v).collect();
    apply_inverse_plan(plan, &shift, &rhs)
}
