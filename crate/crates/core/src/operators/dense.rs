use num_complex::Complex;

use super::{check_dim, singular, OperatorHandle, ResolventSolver};
use crate::error::{Error, Result};
use crate::geometry::SpectrumDescriptor;
use crate::linalg::Matrix;
use crate::scalar::{to_f64, Scalar};

/// A square complex matrix as an operator; eigenvalues are computed once at
/// construction and serve as its spectrum.
#[derive(Clone, Debug)]
pub struct DenseMatrixOperator<T: Scalar> {
    matrix: Matrix<T>,
    eigenvalues: Vec<Complex<T>>,
}

impl<T: Scalar> DenseMatrixOperator<T> {
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                got: matrix.cols(),
            });
        }
        if matrix.rows() == 0 {
            return Err(Error::EmptyInput);
        }
        let eigenvalues = matrix.eigenvalues()?;
        Ok(Self { matrix, eigenvalues })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eigenvalues
    }

    /// `(αI − A)` as an explicit matrix.
    pub fn shifted(&self, alpha: Complex<T>) -> Matrix<T> {
        self.matrix
            .scale(Complex::new(-T::one(), T::zero()))
            .shift_diagonal(alpha)
    }
}

impl<T: Scalar> OperatorHandle<T> for DenseMatrixOperator<T> {
    fn dim(&self) -> usize {
        self.matrix.rows()
    }

    fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        self.matrix.mul_vec(v)
    }

    fn factor_resolvent(&self, alpha: Complex<T>) -> Result<Box<dyn ResolventSolver<T> + '_>> {
        let lu = self.shifted(alpha).lu().map_err(|_| {
            let d = SpectrumDescriptor::PointSet(self.eigenvalues.clone()).distance_to(alpha);
            singular(Complex::new(to_f64(alpha.re), to_f64(alpha.im)), to_f64(d))
        })?;
        let n = self.dim();
        Ok(Box::new(move |v: &[Complex<T>]| {
            debug_assert!(check_dim(n, v).is_ok());
            lu.solve(v)
        }))
    }

    fn spectrum(&self) -> SpectrumDescriptor<T> {
        SpectrumDescriptor::PointSet(self.eigenvalues.clone())
    }
}
