//! Small dense complex linear algebra: LU with partial pivoting, Cholesky,
//! Hessenberg/QR eigenvalues and condition numbers.
//!
//! Matrices here are desk-sized (filter orders, test operators up to a few
//! dozen rows), so the routines are straightforward row-major loops.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_diagonal(d: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::EmptyInput);
        }
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex<T>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    /// `s·I + self`.
    pub fn shift_diagonal(&self, s: Complex<T>) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = m[(i, i)] + s;
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |s: Complex<T>, (a, b)| s + a * b)
            })
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |s, i| s + self[(i, j)].norm()))
            .fold(T::zero(), T::max)
    }

    pub fn norm_frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt()
    }

    pub fn lu(&self) -> Result<Lu<T>> {
        Lu::factor(self)
    }

    pub fn inverse(&self) -> Result<Self> {
        let lu = self.lu()?;
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        let mut e = vec![Complex::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = Complex::zero());
            e[j] = Complex::new(T::one(), T::zero());
            let col = lu.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Ok(inv)
    }

    /// 1-norm condition number `‖A‖₁‖A⁻¹‖₁`; infinite for singular input.
    pub fn cond_1(&self) -> T {
        match self.inverse() {
            Ok(inv) => self.norm_1() * inv.norm_1(),
            Err(_) => T::infinity(),
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<Complex<T>>> {
        eigenvalues(self)
    }
}

/// LU factorization with partial pivoting, `P·A = L·U`.
#[derive(Clone, Debug)]
pub struct Lu<T: Scalar> {
    n: usize,
    lu: Vec<Complex<T>>,
    perm: Vec<usize>,
    min_pivot: T,
    max_pivot: T,
}

impl<T: Scalar> Lu<T> {
    pub fn factor(a: &Matrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows,
                got: a.cols,
            });
        }
        let n = a.rows;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.norm_1().max(T::min_positive_value());
        let mut min_pivot = T::infinity();
        let mut max_pivot = T::zero();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= T::epsilon() * scale * lit(1e-3) || !pmax.is_finite() {
                return Err(Error::SingularMatrix);
            }
            min_pivot = min_pivot.min(pmax);
            max_pivot = max_pivot.max(pmax);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let m = lu[i * n + k] / pivot;
                lu[i * n + k] = m;
                if m.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] = lu[i * n + j] - m * u;
                }
            }
        }
        Ok(Self {
            n,
            lu,
            perm,
            min_pivot,
            max_pivot,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Ratio of extreme pivot magnitudes; a cheap conditioning hint.
    pub fn pivot_ratio(&self) -> T {
        self.max_pivot / self.min_pivot
    }

    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s = s - self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s = s - self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }
}

/// Cholesky factorization `A = L·Lᴴ` of a Hermitian positive definite matrix.
#[derive(Clone, Debug)]
pub struct Cholesky<T: Scalar> {
    n: usize,
    l: Vec<Complex<T>>,
}

impl<T: Scalar> Cholesky<T> {
    pub fn factor(a: &Matrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows,
                got: a.cols,
            });
        }
        let n = a.rows;
        let mut l = vec![Complex::zero(); n * n];
        for j in 0..n {
            let mut d = a[(j, j)].re;
            for k in 0..j {
                d = d - l[j * n + k].norm_sqr();
            }
            if d <= T::zero() || d.is_nan() {
                return Err(Error::NotPositiveDefinite);
            }
            let djj = d.sqrt();
            l[j * n + j] = Complex::new(djj, T::zero());
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s = s - l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / djj;
            }
        }
        Ok(Self { n, l })
    }

    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s = s - self.l[i * n + k] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s = s - self.l[k * n + i].conj() * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        y
    }
}

/// Parlett–Reinsch balancing by powers of two; eigenvalues are unchanged.
pub fn balance<T: Scalar>(a: &mut Matrix<T>) {
    let n = a.rows;
    let radix = lit::<T>(2.0);
    let radix2 = radix * radix;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c = c + a[(j, i)].l1_norm();
                    r = r + a[(i, j)].l1_norm();
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f = f * radix;
                c = c * radix2;
            }
            g = r * radix;
            while c > g {
                f = f / radix;
                c = c / radix2;
            }
            if (c + r) / f < lit::<T>(0.95) * s {
                converged = false;
                let fi = Complex::new(T::one() / f, T::zero());
                let ff = Complex::new(f, T::zero());
                for j in 0..n {
                    a[(i, j)] = a[(i, j)] * fi;
                }
                for j in 0..n {
                    a[(j, i)] = a[(j, i)] * ff;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let n = a.rows;
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).fold(T::zero(), |s, i| s + h[(i, k)].norm_sqr()).sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] = v[0] - alpha;
        let vnorm = v.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt();
        if vnorm == T::zero() {
            continue;
        }
        v.iter_mut().for_each(|x| *x = *x / vnorm);
        let two = Complex::new(lit::<T>(2.0), T::zero());
        // H <- (I - 2vvᴴ) H
        for j in 0..n {
            let s = v.iter().enumerate().fold(Complex::zero(), |s: Complex<T>, (idx, vi)| {
                s + vi.conj() * h[(k + 1 + idx, j)]
            });
            for (idx, vi) in v.iter().enumerate() {
                h[(k + 1 + idx, j)] = h[(k + 1 + idx, j)] - two * vi * s;
            }
        }
        // H <- H (I - 2vvᴴ)
        for i in 0..n {
            let s = v
                .iter()
                .enumerate()
                .fold(Complex::zero(), |s: Complex<T>, (idx, vi)| s + h[(i, k + 1 + idx)] * vi);
            for (idx, vi) in v.iter().enumerate() {
                h[(i, k + 1 + idx)] = h[(i, k + 1 + idx)] - two * s * vi.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex::zero();
        }
    }
    h
}

/// Eigenvalues of a square complex matrix by Hessenberg reduction and the
/// single-shift complex QR iteration with Wilkinson shifts.
pub fn eigenvalues<T: Scalar>(a: &Matrix<T>) -> Result<Vec<Complex<T>>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            got: a.cols,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(a);
    let mut eigs = vec![Complex::zero(); n];
    let eps = T::epsilon();
    let half = lit::<T>(0.5);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n.max(4);
    loop {
        if hi == 0 {
            eigs[0] = h[(0, 0)];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].l1_norm();
            let diag = h[(lo, lo)].l1_norm() + h[(lo - 1, lo - 1)].l1_norm();
            if sub <= eps * diag || sub < T::min_positive_value() {
                h[(lo, lo - 1)] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_total {
            return Err(Error::NoConvergence);
        }

        let a11 = h[(hi - 1, hi - 1)];
        let a12 = h[(hi - 1, hi)];
        let a21 = h[(hi, hi - 1)];
        let a22 = h[(hi, hi)];
        let mu = if iter.is_multiple_of(11) {
            // exceptional shift to break cycles
            a22 + Complex::new(h[(hi, hi - 1)].norm() * lit(0.75), T::zero())
        } else {
            let m = (a11 + a22) * half;
            let disc = ((a11 - a22) * (a11 - a22) * lit::<T>(0.25) + a12 * a21).sqrt();
            let (r1, r2) = (m + disc, m - disc);
            if (r1 - a22).norm() <= (r2 - a22).norm() {
                r1
            } else {
                r2
            }
        };

        for i in lo..=hi {
            h[(i, i)] = h[(i, i)] - mu;
        }
        let mut rots: Vec<(Complex<T>, Complex<T>)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (c, s) = if r == T::zero() {
                (Complex::new(T::one(), T::zero()), Complex::zero())
            } else {
                (x / r, y / r)
            };
            for j in k..=hi {
                let u = h[(k, j)];
                let w = h[(k + 1, j)];
                h[(k, j)] = c.conj() * u + s.conj() * w;
                h[(k + 1, j)] = -s * u + c * w;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            for i in lo..=(k + 2).min(hi) {
                let u = h[(i, k)];
                let w = h[(i, k + 1)];
                h[(i, k)] = u * c + w * s;
                h[(i, k + 1)] = -u * s.conj() + w * c.conj();
            }
        }
        for i in lo..=hi {
            h[(i, i)] = h[(i, i)] + mu;
        }
    }
    Ok(eigs)
}

pub fn vec_norm<T: Scalar>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt()
}

pub fn vec_sub<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
