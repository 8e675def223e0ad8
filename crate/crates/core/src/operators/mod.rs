//! Concrete realizations of the operator `A` and the application of `f(A)`
//! and of its left inverse to vectors.
//!
//! Every backend implements [`OperatorHandle`]: apply `A`, prepare a solver
//! for `(αI − A)⁻¹`, and describe the spectrum. Iterated resolvent powers
//! reuse one prepared solver per pole.

mod convolution;
mod dense;
mod filter;
mod grid;
mod integral;
mod multiplier;
mod shift;

pub use convolution::{convolution_forward, even_kernel_series, solve_convolution_even_kernel, EvenKernelTerm};
pub use dense::DenseMatrixOperator;
pub use filter::{
    filter_inverse_plan, filter_inverse_plan_with_tol, forward_filter, invert_filter, invert_filter_with_plan,
};
pub use grid::{GridDerivativeOperator, GridSpec};
pub use integral::{integral_forward, solve_integral_first_kind, IntegralSolution};
pub use multiplier::MultiplierOperator;
pub use shift::PeriodicShiftOperator;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::SpectrumDescriptor;
use crate::rational::InversionPlan;
use crate::scalar::{lit, to_f64, Scalar};
use crate::series::ResolventSeries;

/// Relative distance below which a pole counts as lying on the spectrum.
pub const SINGULAR_TOL: f64 = 1e-10;

/// A prepared `(αI − A)⁻¹`.
pub trait ResolventSolver<T: Scalar> {
    fn solve(&self, v: &[Complex<T>]) -> Vec<Complex<T>>;
}

impl<T: Scalar, F: Fn(&[Complex<T>]) -> Vec<Complex<T>>> ResolventSolver<T> for F {
    fn solve(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        self(v)
    }
}

/// Abstraction over a (discretized) closed operator `A`.
pub trait OperatorHandle<T: Scalar>: Send + Sync {
    fn dim(&self) -> usize;

    fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>>;

    /// Prepares `(αI − A)⁻¹`, failing if `α` is (numerically) in the spectrum.
    fn factor_resolvent(&self, alpha: Complex<T>) -> Result<Box<dyn ResolventSolver<T> + '_>>;

    fn spectrum(&self) -> SpectrumDescriptor<T>;

    fn resolvent_solve(&self, alpha: Complex<T>, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        check_dim(self.dim(), v)?;
        Ok(self.factor_resolvent(alpha)?.solve(v))
    }
}

pub(crate) fn check_dim<T: Scalar>(n: usize, v: &[Complex<T>]) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    Ok(())
}

pub(crate) fn singular(alpha: Complex<f64>, distance: f64) -> Error {
    Error::SingularResolvent {
        re: alpha.re,
        im: alpha.im,
        distance,
    }
}

fn guard_pole<T: Scalar>(spectrum: &SpectrumDescriptor<T>, pole: Complex<T>, scale: T) -> Result<()> {
    let d = spectrum.distance_to(pole);
    if d < lit::<T>(SINGULAR_TOL) * scale {
        return Err(singular(Complex::new(to_f64(pole.re), to_f64(pole.im)), to_f64(d)));
    }
    Ok(())
}

fn axpy<T: Scalar>(out: &mut [Complex<T>], a: Complex<T>, x: &[Complex<T>]) {
    for (o, &xi) in out.iter_mut().zip(x) {
        *o = *o + a * xi;
    }
}

/// `f(A)v = Σ aⱼ (αⱼI − A)⁻¹ v`.
pub fn apply_f<T: Scalar, O: OperatorHandle<T> + ?Sized>(
    series: &ResolventSeries<T>,
    op: &O,
    v: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    check_dim(op.dim(), v)?;
    let s = series.normalized();
    let spectrum = op.spectrum();
    let scale = s.scale();
    for t in s.terms() {
        guard_pole(&spectrum, t.pole, scale)?;
    }
    let mut out = vec![Complex::zero(); v.len()];
    for t in s.terms() {
        let r = op.factor_resolvent(t.pole)?;
        axpy(&mut out, t.coeff, &r.solve(v));
    }
    Ok(out)
}

/// `h(A)v = Σⱼ Σₖ cⱼₖ (zⱼI − A)^{−k} v`, by `k` successive solves per pole.
pub fn apply_remainder<T: Scalar, O: OperatorHandle<T> + ?Sized>(
    plan: &InversionPlan<T>,
    op: &O,
    v: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    check_dim(op.dim(), v)?;
    let spectrum = op.spectrum();
    let scale = plan.remainder.groups.iter().fold(T::one(), |m, g| m.max(g.pole.norm()));
    for g in &plan.remainder.groups {
        guard_pole(&spectrum, g.pole, scale)?;
    }
    let mut out = vec![Complex::zero(); v.len()];
    for g in &plan.remainder.groups {
        let r = op.factor_resolvent(g.pole)?;
        let mut w = v.to_vec();
        for &c in &g.coeffs {
            w = r.solve(&w);
            axpy(&mut out, c, &w);
        }
    }
    Ok(out)
}

/// `(γI + βA + h(A)) v`, the left inverse of `f(A)` applied to `v`.
pub fn apply_inverse_plan<T: Scalar, O: OperatorHandle<T> + ?Sized>(
    plan: &InversionPlan<T>,
    op: &O,
    v: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let mut out = apply_remainder(plan, op, v)?;
    axpy(&mut out, plan.gamma, v);
    if !plan.beta.is_zero() {
        axpy(&mut out, plan.beta, &op.apply(v));
    }
    Ok(out)
}
