//! Thin wrapper over `rustfft` with the conventions used by the periodic
//! backends: `X_k = Σ x_m e^{−2πikm/n}` forward, `1/n`-normalised inverse.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::scalar::{lit, Scalar};

pub(crate) fn forward<T: Scalar>(x: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut buf = x.to_vec();
    if buf.is_empty() {
        return buf;
    }
    FftPlanner::<T>::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

pub(crate) fn inverse<T: Scalar>(x: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut buf = x.to_vec();
    if buf.is_empty() {
        return buf;
    }
    let n = buf.len();
    FftPlanner::<T>::new().plan_fft_inverse(n).process(&mut buf);
    let s = T::one() / lit::<T>(n as f64);
    buf.iter_mut().for_each(|v| *v = *v * s);
    buf
}

/// `e^{2πik/n}`, the eigenvalue of the cyclic shift on DFT bin `k`.
pub(crate) fn root_of_unity<T: Scalar>(k: usize, n: usize) -> Complex<T> {
    let theta = lit::<T>(2.0) * T::PI() * lit::<T>(k as f64) / lit::<T>(n as f64);
    Complex::from_polar(T::one(), theta)
}

/// Signed frequency index of bin `k`: `0, 1, …, n/2, −(n/2 − 1), …, −1`.
pub(crate) fn signed_index(k: usize, n: usize) -> f64 {
    if k <= n / 2 {
        k as f64
    } else {
        k as f64 - n as f64
    }
}
