use num_complex::Complex;

use super::{singular, OperatorHandle, ResolventSolver};
use crate::error::{Error, Result};
use crate::fft;
use crate::geometry::SpectrumDescriptor;
use crate::scalar::{lit, to_f64, Scalar};

/// Cyclic shift `x(k) ↦ x(k + 1 mod n)` on length-`n` periodic signals.
///
/// Unitary; its eigenvalues are the `n`-th roots of unity. Resolvents are
/// applied through the DFT, where the shift acts as multiplication by
/// `e^{2πik/n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodicShiftOperator {
    n: usize,
}

impl PeriodicShiftOperator {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(Self { n })
    }

    /// `T⁻¹x(k) = x(k − 1 mod n)`.
    pub fn apply_inverse<T: Scalar>(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = v.len();
        (0..n).map(|k| v[(k + n - 1) % n]).collect()
    }

    pub fn symbol<T: Scalar>(&self) -> Vec<Complex<T>> {
        (0..self.n).map(|k| fft::root_of_unity(k, self.n)).collect()
    }
}

impl<T: Scalar> OperatorHandle<T> for PeriodicShiftOperator {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = v.len();
        (0..n).map(|k| v[(k + 1) % n]).collect()
    }

    fn factor_resolvent(&self, alpha: Complex<T>) -> Result<Box<dyn ResolventSolver<T> + '_>> {
        let symbol: Vec<Complex<T>> = self.symbol();
        let mut inv = Vec::with_capacity(self.n);
        for &w in &symbol {
            let d = alpha - w;
            if d.norm() <= T::epsilon() * lit(16.0) {
                return Err(singular(
                    Complex::new(to_f64(alpha.re), to_f64(alpha.im)),
                    to_f64(d.norm()),
                ));
            }
            inv.push(d.inv());
        }
        Ok(Box::new(move |v: &[Complex<T>]| {
            let spec = fft::forward(v);
            let scaled: Vec<Complex<T>> = spec.iter().zip(&inv).map(|(a, b)| a * b).collect();
            fft::inverse(&scaled)
        }))
    }

    fn spectrum(&self) -> SpectrumDescriptor<T> {
        SpectrumDescriptor::PointSet(self.symbol())
    }
}
