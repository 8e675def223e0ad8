use num_complex::Complex;

use super::{singular, OperatorHandle, ResolventSolver};
use crate::error::{Error, Result};
use crate::geometry::SpectrumDescriptor;
use crate::scalar::{to_f64, Scalar};

/// Diagonal operator `(Av)ₖ = sₖvₖ`, e.g. a differential operator in its
/// Fourier basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierOperator<T: Scalar> {
    symbol: Vec<Complex<T>>,
}

impl<T: Scalar> MultiplierOperator<T> {
    pub fn new(symbol: Vec<Complex<T>>) -> Result<Self> {
        if symbol.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self { symbol })
    }

    pub fn symbol(&self) -> &[Complex<T>] {
        &self.symbol
    }
}

impl<T: Scalar> OperatorHandle<T> for MultiplierOperator<T> {
    fn dim(&self) -> usize {
        self.symbol.len()
    }

    fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        self.symbol.iter().zip(v).map(|(s, x)| s * x).collect()
    }

    fn factor_resolvent(&self, alpha: Complex<T>) -> Result<Box<dyn ResolventSolver<T> + '_>> {
        let mut inv = Vec::with_capacity(self.symbol.len());
        for &s in &self.symbol {
            let d = alpha - s;
            if d.norm() <= T::epsilon() * alpha.norm().max(s.norm()).max(T::one()) {
                return Err(singular(
                    Complex::new(to_f64(alpha.re), to_f64(alpha.im)),
                    to_f64(d.norm()),
                ));
            }
            inv.push(d.inv());
        }
        Ok(Box::new(move |v: &[Complex<T>]| {
            inv.iter().zip(v).map(|(a, b)| a * b).collect()
        }))
    }

    fn spectrum(&self) -> SpectrumDescriptor<T> {
        SpectrumDescriptor::PointSet(self.symbol.clone())
    }
}
