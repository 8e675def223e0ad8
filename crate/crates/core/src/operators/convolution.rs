use num_complex::Complex;

use super::{apply_f, apply_inverse_plan, MultiplierOperator};
use crate::error::{Error, Result};
use crate::fft;
use crate::geometry::{convex_hull, hull_separated_from, SpectrumDescriptor};
use crate::rational::invert_to_plan;
use crate::scalar::{lit, to_f64, Scalar};
use crate::series::{ResolventSeries, Term};

/// One term `bⱼ e^{−iβⱼ|t|}` of an even kernel, with `Im βⱼ < 0` so that
/// the term decays.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvenKernelTerm<T: Scalar> {
    pub b: Complex<T>,
    pub beta: Complex<T>,
}

impl<T: Scalar> EvenKernelTerm<T> {
    pub fn new(b: Complex<T>, beta: Complex<T>) -> Self {
        Self { b, beta }
    }

    pub fn eval(&self, t: T) -> Complex<T> {
        let i = Complex::new(T::zero(), T::one());
        self.b * (-i * self.beta * t.abs()).exp()
    }
}

/// Maps the kernel to the series `{(−2i bⱼβⱼ, βⱼ²)}` in the variable `ξ²`.
pub fn even_kernel_series<T: Scalar>(terms: &[EvenKernelTerm<T>]) -> Result<ResolventSeries<T>> {
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(t) = terms.iter().find(|t| t.beta.im >= T::zero()) {
        return Err(Error::UnsupportedKernel(format!(
            "beta = {}{:+}i must have negative imaginary part",
            to_f64(t.beta.re),
            to_f64(t.beta.im)
        )));
    }
    let minus_two_i = Complex::new(T::zero(), lit(-2.0));
    ResolventSeries::new(
        terms
            .iter()
            .map(|t| Term::new(minus_two_i * t.b * t.beta, t.beta * t.beta))
            .collect(),
    )
}

/// Fourier symbol `ξ_k² = (2πk/period)²` of `−d²/dt²` on the DFT grid.
fn laplacian_symbol<T: Scalar>(n: usize, period: T) -> Vec<Complex<T>> {
    let w = lit::<T>(2.0) * T::PI() / period;
    (0..n)
        .map(|k| {
            let xi = w * lit::<T>(fft::signed_index(k, n));
            Complex::new(xi * xi, T::zero())
        })
        .collect()
}

fn check_period<T: Scalar>(period: T) -> Result<()> {
    if period <= T::zero() || !period.is_finite() {
        return Err(Error::InvalidParameter("period must be positive and finite".into()));
    }
    Ok(())
}

/// `y(t) = ∫ k(s − t) x(s) ds` for `period`-periodic samples, computed as
/// `ŷ = f(ξ²) x̂` on the DFT grid.
pub fn convolution_forward<T: Scalar>(
    terms: &[EvenKernelTerm<T>],
    x: &[Complex<T>],
    period: T,
) -> Result<Vec<Complex<T>>> {
    check_period(period)?;
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let series = even_kernel_series(terms)?;
    let op = MultiplierOperator::new(laplacian_symbol(x.len(), period))?;
    Ok(fft::inverse(&apply_f(&series, &op, &fft::forward(x))?))
}

/// Solves the even-kernel convolution equation `∫ k(s − t) x(s) ds = y(t)`
/// on `period`-periodic samples.
///
/// On the Fourier side the operator is `f(ξ²)`, so `x̂ = (γ + βξ² + h(ξ²)) ŷ`.
/// The pole hull `conv{βⱼ²}` must avoid the nonnegative reals.
pub fn solve_convolution_even_kernel<T: Scalar>(
    terms: &[EvenKernelTerm<T>],
    y: &[Complex<T>],
    period: T,
) -> Result<Vec<Complex<T>>> {
    check_period(period)?;
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    let series = even_kernel_series(terms)?;
    series.require_theorem_mode()?;
    let hull = convex_hull(&series.poles())?;
    let sep = hull_separated_from(&hull, &SpectrumDescriptor::HalfLinePositiveReals, T::zero());
    if !sep.separated {
        return Err(Error::IllPosedConfiguration {
            distance: to_f64(sep.distance),
        });
    }
    let plan = invert_to_plan(&series)?;
    let op = MultiplierOperator::new(laplacian_symbol(y.len(), period))?;
    Ok(fft::inverse(&apply_inverse_plan(&plan, &op, &fft::forward(y))?))
}
