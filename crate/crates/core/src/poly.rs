//! Dense univariate polynomials with complex coefficients and their roots.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{balance, eigenvalues, Matrix};
use crate::scalar::{lit, Scalar};

/// Default relative clustering radius for multiplicity detection.
pub const DEFAULT_ROOT_TOL: f64 = 1e-8;

/// Polynomial with ascending coefficients; the highest stored coefficient is
/// nonzero unless the polynomial is zero (empty coefficient list).
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T: Scalar> {
    coeffs: Vec<Complex<T>>,
}

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root<T: Scalar> {
    pub value: Complex<T>,
    pub multiplicity: usize,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1·z`.
    pub fn linear(c0: Complex<T>, c1: Complex<T>) -> Self {
        Self::new(vec![c0, c1])
    }

    /// `lead · Π (z - rⱼ)`.
    pub fn from_roots(roots: &[Complex<T>], lead: Complex<T>) -> Self {
        let one = Complex::new(T::one(), T::zero());
        roots
            .iter()
            .fold(Self::constant(lead), |p, &r| p.mul(&Self::linear(-r, one)))
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs.last().copied().unwrap_or_else(Complex::zero)
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * lit::<T>(k as f64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
                        + other.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(Complex::new(T::one(), T::zero())), |p, _| p.mul(self))
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd] / lead;
            quot[k] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j] - c * dj;
            }
            rem[k + dd] = Complex::zero();
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Drops leading coefficients below `tol · max|cₖ|`.
    pub fn trimmed(&self, tol: T) -> Self {
        let max = self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| x.norm() <= tol * max) {
            c.pop();
        }
        Self::new(c)
    }

    pub fn coeff_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// Roots with multiplicities; see [`poly_roots`].
    pub fn roots(&self, tol: T) -> Result<Vec<Root<T>>> {
        poly_roots(self, tol)
    }
}

/// Eigenvalues of the balanced companion matrix, Newton-polished.
fn raw_roots<T: Scalar>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let c = p.coeffs();
    let lead = c[d];
    match d {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-c[0] / lead]),
        _ => {}
    }
    let mut comp = Matrix::<T>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = Complex::new(T::one(), T::zero());
    }
    for i in 0..d {
        comp[(i, d - 1)] = -c[i] / lead;
    }
    balance(&mut comp);
    let mut roots = eigenvalues(&comp)?;
    let dp = p.derivative();
    for r in roots.iter_mut() {
        newton_polish(p, &dp, r);
    }
    Ok(roots)
}

fn newton_polish<T: Scalar>(p: &Polynomial<T>, dp: &Polynomial<T>, r: &mut Complex<T>) {
    let mut best = p.eval(*r).norm();
    for _ in 0..8 {
        let d = dp.eval(*r);
        if d.is_zero() || best == T::zero() {
            break;
        }
        let cand = *r - p.eval(*r) / d;
        let val = p.eval(cand).norm();
        if val < best {
            *r = cand;
            best = val;
        } else {
            break;
        }
    }
}

/// All complex roots of `p` with multiplicities.
///
/// Roots closer than `tol · scale` (with `scale = max(1, max|root|)`) are
/// merged into their centroid. Near-coincident pairs that survive that pass
/// are merged as well when the merged point is a numerically exact multiple
/// root (checked on the derivative). Multiplicities always sum to the degree.
pub fn poly_roots<T: Scalar>(p: &Polynomial<T>, tol: T) -> Result<Vec<Root<T>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let raw = raw_roots(p)?;
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    let scale = raw.iter().fold(T::one(), |m, r| m.max(r.norm()));
    let mut clusters: Vec<(Complex<T>, usize)> = raw.iter().map(|&r| (r, 1usize)).collect();
    merge_clusters(&mut clusters, tol * scale);

    // Multiple roots are only resolved to ~eps^(1/m) by the eigen-solver.
    let suspicious = T::epsilon().powf(lit(1.0 / 3.0)) * scale * lit(10.0);
    if suspicious > tol * scale {
        let mut derivs = vec![p.clone()];
        loop {
            let mut merged = false;
            'outer: for i in 0..clusters.len() {
                for j in i + 1..clusters.len() {
                    let (a, ma) = clusters[i];
                    let (b, mb) = clusters[j];
                    if (a - b).norm() > suspicious {
                        continue;
                    }
                    let m = ma + mb;
                    while derivs.len() < m {
                        let next = derivs.last().unwrap().derivative();
                        derivs.push(next);
                    }
                    let centroid = (a * lit::<T>(ma as f64) + b * lit::<T>(mb as f64)) / lit::<T>(m as f64);
                    if let Some(c) = confirm_multiple_root(&derivs[..m], centroid) {
                        clusters[i] = (c, m);
                        clusters.remove(j);
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }
    }

    Ok(clusters
        .into_iter()
        .map(|(value, multiplicity)| Root { value, multiplicity })
        .collect())
}

fn merge_clusters<T: Scalar>(clusters: &mut Vec<(Complex<T>, usize)>, radius: T) {
    loop {
        let mut pair = None;
        'search: for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                if (clusters[i].0 - clusters[j].0).norm() <= radius {
                    pair = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = pair else { break };
        let (a, ma) = clusters[i];
        let (b, mb) = clusters[j];
        let m = ma + mb;
        clusters[i] = (
            (a * lit::<T>(ma as f64) + b * lit::<T>(mb as f64)) / lit::<T>(m as f64),
            m,
        );
        clusters.remove(j);
    }
}

/// A root of multiplicity `m` is a simple root of `p^(m-1)`: polish there and
/// accept if every lower derivative vanishes to working precision.
fn confirm_multiple_root<T: Scalar>(derivs: &[Polynomial<T>], start: Complex<T>) -> Option<Complex<T>> {
    let m = derivs.len();
    let top = &derivs[m - 1];
    let dtop = top.derivative();
    let mut c = start;
    newton_polish(top, &dtop, &mut c);
    let eps = T::epsilon();
    for d in &derivs[..m - 1] {
        let mag = d
            .coeffs()
            .iter()
            .enumerate()
            .fold(T::zero(), |s, (k, a)| s + a.norm() * c.norm().powi(k as i32));
        if d.eval(c).norm() > lit::<T>(1e3) * eps * mag {
            return None;
        }
    }
    Some(c)
}
