use num_complex::Complex;
use num_traits::Zero;

use super::{OperatorHandle, ResolventSolver};
use crate::error::{Error, Result};
use crate::geometry::SpectrumDescriptor;
use crate::scalar::{lit, Scalar};

/// Uniform grid `t₀, t₀ + Δ, …, t₀ + L` with `n` points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec<T: Scalar> {
    pub t0: T,
    pub length: T,
    pub n: usize,
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(t0: T, length: T, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 3 points, got {n}"
            )));
        }
        if length <= T::zero() || !length.is_finite() || !t0.is_finite() {
            return Err(Error::InvalidParameter(
                "grid length must be positive and finite".into(),
            ));
        }
        Ok(Self { t0, length, n })
    }

    pub fn step(&self) -> T {
        self.length / lit::<T>((self.n - 1) as f64)
    }

    pub fn point(&self, i: usize) -> T {
        self.t0 + self.step() * lit::<T>(i as f64)
    }

    pub fn points(&self) -> Vec<T> {
        (0..self.n).map(|i| self.point(i)).collect()
    }
}

/// `D = d/dt` sampled on a uniform grid over `[t₀, t₀ + L]`.
///
/// The resolvent is `(αI − D)⁻¹x(t) = ∫ₜ^{t₀+L} e^{−α(s−t)} x(s) ds`, the
/// exact resolvent of `D` with the condition `u(t₀ + L) = 0`, evaluated by
/// integrating the piecewise-linear interpolant of `x` exactly on each cell.
/// `apply` uses second-order central differences with second-order
/// one-sided stencils at both ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridDerivativeOperator<T: Scalar> {
    grid: GridSpec<T>,
}

impl<T: Scalar> GridDerivativeOperator<T> {
    pub fn new(grid: GridSpec<T>) -> Self {
        Self { grid }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }
}

/// `φ₀(z) = (1 − e^{−z})/z` and `φ₁(z) = (1 − (1 + z)e^{−z})/z²`.
fn cell_weights<T: Scalar>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    if z.norm() < lit(0.5) {
        let mut phi0 = Complex::zero();
        let mut phi1 = Complex::zero();
        let mut pow = Complex::new(T::one(), T::zero());
        let mut fact = T::one(); // (m + 1)!
        for m in 0..24 {
            let mf = lit::<T>(m as f64);
            fact = fact * (mf + T::one());
            phi0 = phi0 + pow / fact;
            phi1 = phi1 + pow * (mf + T::one()) / (fact * (mf + lit(2.0)));
            pow = -pow * z;
        }
        (phi0, phi1)
    } else {
        let e = (-z).exp();
        let one = Complex::new(T::one(), T::zero());
        ((one - e) / z, (one - (one + z) * e) / (z * z))
    }
}

impl<T: Scalar> OperatorHandle<T> for GridDerivativeOperator<T> {
    fn dim(&self) -> usize {
        self.grid.n
    }

    fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = v.len();
        let inv2h = T::one() / (lit::<T>(2.0) * self.grid.step());
        let (three, four) = (lit::<T>(3.0), lit::<T>(4.0));
        let mut out = vec![Complex::zero(); n];
        out[0] = (v[0] * (-three) + v[1] * four - v[2]) * inv2h;
        for i in 1..n - 1 {
            out[i] = (v[i + 1] - v[i - 1]) * inv2h;
        }
        out[n - 1] = (v[n - 1] * three - v[n - 2] * four + v[n - 3]) * inv2h;
        out
    }

    fn factor_resolvent(&self, alpha: Complex<T>) -> Result<Box<dyn ResolventSolver<T> + '_>> {
        let h = self.grid.step();
        let z = alpha * h;
        let (phi0, phi1) = cell_weights(z);
        let w_left = (phi0 - phi1) * h;
        let w_right = phi1 * h;
        let decay = (-z).exp();
        Ok(Box::new(move |x: &[Complex<T>]| {
            let n = x.len();
            let mut out = vec![Complex::zero(); n];
            for i in (0..n - 1).rev() {
                out[i] = w_left * x[i] + w_right * x[i + 1] + decay * out[i + 1];
            }
            out
        }))
    }

    fn spectrum(&self) -> SpectrumDescriptor<T> {
        SpectrumDescriptor::ImaginaryAxis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_closed_form_weights_agree_at_switchover() {
        for z in [
            Complex::new(0.49, 0.0),
            Complex::new(0.3, 0.39),
            Complex::new(-0.2, 0.45),
        ] {
            let (s0, s1) = cell_weights::<f64>(z);
            let e = (-z).exp();
            let c0 = (1.0 - e) / z;
            let c1 = (1.0 - (1.0 + z) * e) / (z * z);
            assert!((s0 - c0).norm() < 1e-14 && (s1 - c1).norm() < 1e-13);
        }
    }

    #[test]
    fn resolvent_of_linear_function_is_exact() {
        // x(s) = s on [0, 2]: ∫ₜ² e^{−(s−t)} s ds = t + 1 − 3e^{−(2−t)}
        let grid = GridSpec::new(0.0, 2.0, 41).unwrap();
        let d = GridDerivativeOperator::new(grid);
        let x: Vec<Complex<f64>> = grid.points().iter().map(|&t| Complex::new(t, 0.0)).collect();
        let r = d.resolvent_solve(Complex::new(1.0, 0.0), &x).unwrap();
        for (i, &t) in grid.points().iter().enumerate() {
            let want = t + 1.0 - 3.0 * (-(2.0 - t)).exp();
            assert!((r[i].re - want).abs() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn derivative_is_exact_on_quadratics() {
        let grid = GridSpec::new(-1.0, 3.0, 31).unwrap();
        let d = GridDerivativeOperator::new(grid);
        let x: Vec<Complex<f64>> = grid.points().iter().map(|&t| Complex::new(t * t - t, 0.0)).collect();
        let dx = d.apply(&x);
        for (i, &t) in grid.points().iter().enumerate() {
            assert!((dx[i].re - (2.0 * t - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn tiny_grids_rejected() {
        assert!(GridSpec::new(0.0, 1.0, 2).is_err());
        assert!(GridSpec::new(0.0, 0.0, 10).is_err());
    }
}
