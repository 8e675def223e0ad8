//! Finite resolvent series `f(z) = Σ aⱼ/(αⱼ − z)` and the scalar side of the
//! left-inverse construction.
//!
//! Infinite series are represented by truncations; [`check_admissible`]
//! reports the summability value of the truncation only, and controlling the
//! tail is up to the caller.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, hull_separated_from, point_segment_distance, HullPolygon, SpectrumDescriptor};
use crate::rational::series_to_rational;
use crate::scalar::{lit, to_f64, CompensatedSum, Scalar};

/// One term `a/(α − z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term<T: Scalar> {
    pub coeff: Complex<T>,
    pub pole: Complex<T>,
}

impl<T: Scalar> Term<T> {
    pub fn new(coeff: Complex<T>, pole: Complex<T>) -> Self {
        Self { coeff, pole }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolventSeries<T: Scalar> {
    terms: Vec<Term<T>>,
}

impl<T: Scalar> ResolventSeries<T> {
    /// Builds a series, rejecting empty input and coincident poles.
    pub fn new(terms: Vec<Term<T>>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyInput);
        }
        if terms.iter().any(|t| {
            !(t.coeff.re.is_finite() && t.coeff.im.is_finite() && t.pole.re.is_finite() && t.pole.im.is_finite())
        }) {
            return Err(Error::InvalidParameter("non-finite series term".into()));
        }
        let scale = pole_scale(&terms);
        let tol = lit::<T>(1e-12) * scale;
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if (terms[i].pole - terms[j].pole).norm() <= tol {
                    return Err(Error::DuplicatePole { first: i, second: j });
                }
            }
        }
        Ok(Self { terms })
    }

    /// Convenience constructor from `(a, α)` pairs.
    pub fn from_pairs(pairs: &[(Complex<T>, Complex<T>)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, p)| Term::new(a, p)).collect())
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn poles(&self) -> Vec<Complex<T>> {
        self.terms.iter().map(|t| t.pole).collect()
    }

    /// Copy with zero-coefficient terms removed (possibly empty).
    pub fn normalized(&self) -> Self {
        Self {
            terms: self.terms.iter().copied().filter(|t| !t.coeff.is_zero()).collect(),
        }
    }

    /// `max(1, max|αⱼ|)`, the reference magnitude for relative tolerances.
    pub fn scale(&self) -> T {
        pole_scale(&self.terms)
    }

    pub fn coeff_sum(&self) -> Complex<T> {
        let mut acc = CompensatedSum::new();
        for t in &self.terms {
            acc.add(t.coeff);
        }
        acc.value()
    }

    /// True when every coefficient is real and nonnegative (to `1e-12`
    /// relative) and the coefficients have positive sum.
    pub fn is_theorem_mode(&self) -> bool {
        let norm = self.terms.iter().fold(T::zero(), |m, t| m.max(t.coeff.norm()));
        if norm == T::zero() {
            return false;
        }
        let tol = lit::<T>(1e-12) * norm;
        self.terms.iter().all(|t| t.coeff.im.abs() <= tol && t.coeff.re >= -tol) && self.coeff_sum().re > T::zero()
    }

    /// Rejects series outside theorem mode with a typed error.
    pub fn require_theorem_mode(&self) -> Result<()> {
        if self.is_theorem_mode() {
            Ok(())
        } else {
            Err(Error::HypothesisViolation(
                "coefficients must be real, nonnegative and not all zero".into(),
            ))
        }
    }

    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        evaluate_f(self, z)
    }
}

fn pole_scale<T: Scalar>(terms: &[Term<T>]) -> T {
    terms.iter().fold(T::one(), |m, t| m.max(t.pole.norm()))
}

/// `Σ aⱼ/(αⱼ − z)` with compensated summation.
pub fn evaluate_f<T: Scalar>(series: &ResolventSeries<T>, z: Complex<T>) -> Result<Complex<T>> {
    let guard = T::epsilon() * lit(4.0) * series.scale();
    let mut acc = CompensatedSum::new();
    for (index, t) in series.terms.iter().enumerate() {
        if t.coeff.is_zero() {
            continue;
        }
        let d = t.pole - z;
        if d.norm() <= guard {
            return Err(Error::PoleEvaluation {
                index,
                re: to_f64(t.pole.re),
                im: to_f64(t.pole.im),
            });
        }
        acc.add(t.coeff / d);
    }
    Ok(acc.value())
}

/// `γ = Σaⱼαⱼ / (Σaⱼ)²` and `β = −1/Σaⱼ`.
pub fn gamma_beta<T: Scalar>(series: &ResolventSeries<T>) -> Result<(Complex<T>, Complex<T>)> {
    let sum = series.coeff_sum();
    let norm = series.terms.iter().fold(T::zero(), |s, t| s + t.coeff.norm());
    if sum.norm() <= T::epsilon() * norm || sum.is_zero() {
        return Err(Error::DegenerateSeries);
    }
    let mut moment = CompensatedSum::new();
    for t in &series.terms {
        moment.add(t.coeff * t.pole);
    }
    let one = Complex::new(T::one(), T::zero());
    Ok((moment.value() / (sum * sum), -one / sum))
}

/// `h(z) = 1/f(z) − γ − βz`.
pub fn evaluate_h<T: Scalar>(series: &ResolventSeries<T>, z: Complex<T>) -> Result<Complex<T>> {
    let (gamma, beta) = gamma_beta(series)?;
    let f = evaluate_f(series, z)?;
    let mag = series
        .terms
        .iter()
        .filter(|t| !t.coeff.is_zero())
        .fold(T::zero(), |s, t| s + t.coeff.norm() / (t.pole - z).norm());
    if f.norm() <= T::epsilon() * mag {
        return Err(Error::ZeroOfSeries {
            re: to_f64(z.re),
            im: to_f64(z.im),
        });
    }
    Ok(f.inv() - gamma - beta * z)
}

/// Per-term admissibility diagnostic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermDiagnostic<T: Scalar> {
    pub pole: Complex<T>,
    pub coeff_abs: T,
    pub distance: T,
    /// `|aⱼ| / dist(αⱼ, σ(A))`, an upper bound on the term's operator norm.
    pub resolvent_bound: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport<T: Scalar> {
    pub theorem_mode_ok: bool,
    pub hull: HullPolygon<T>,
    pub separation_ok: bool,
    pub separation_distance: T,
    /// `Σ |aⱼ| / dist(αⱼ, σ(A))`; infinite when some pole lies on the spectrum.
    pub summability_value: T,
    pub terms: Vec<TermDiagnostic<T>>,
}

impl<T: Scalar> AdmissibilityReport<T> {
    /// Both the coefficient and the hull-separation hypotheses hold.
    pub fn admissible(&self) -> bool {
        self.theorem_mode_ok && self.separation_ok
    }
}

/// Diagnoses the hypotheses of the left-inverse construction; never fails.
pub fn check_admissible<T: Scalar>(
    series: &ResolventSeries<T>,
    spectrum: &SpectrumDescriptor<T>,
    margin: T,
) -> AdmissibilityReport<T> {
    let normalized = series.normalized();
    let source = if normalized.is_empty() { series } else { &normalized };
    let hull = convex_hull(&source.poles()).expect("series has at least one term");
    let sep = hull_separated_from(&hull, spectrum, margin);
    let terms: Vec<TermDiagnostic<T>> = normalized
        .terms
        .iter()
        .map(|t| {
            let distance = spectrum.distance_to(t.pole);
            let coeff_abs = t.coeff.norm();
            let resolvent_bound = if distance > T::zero() {
                coeff_abs / distance
            } else {
                T::infinity()
            };
            TermDiagnostic {
                pole: t.pole,
                coeff_abs,
                distance,
                resolvent_bound,
            }
        })
        .collect();
    let summability_value = terms.iter().fold(T::zero(), |s, d| s + d.resolvent_bound);
    AdmissibilityReport {
        theorem_mode_ok: normalized.is_theorem_mode(),
        hull,
        separation_ok: sep.separated,
        separation_distance: sep.distance,
        summability_value,
        terms,
    }
}

/// All zeros of `f` (with multiplicity), i.e. the roots of the numerator of
/// its common-denominator form. A single-term series has none.
pub fn zeros_of_f<T: Scalar>(series: &ResolventSeries<T>) -> Result<Vec<Complex<T>>> {
    let s = series.normalized();
    if s.len() < 2 {
        return Ok(Vec::new());
    }
    let r = series_to_rational(&s)?;
    let roots = r.num.roots(lit(crate::poly::DEFAULT_ROOT_TOL))?;
    Ok(roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect())
}

/// Builds a series with nonnegative coefficients on at most three of the
/// given poles that vanishes at `lambda`.
///
/// `lambda` is written as a convex combination `Σ kᵥαᵥ` (choosing, among
/// all containing triples and segments, the one whose smallest barycentric
/// weight is largest) and the coefficients are `aᵥ = kᵥ|αᵥ − λ|²`, so that
/// `conj f(λ) = Σ kᵥ(αᵥ − λ) = 0`.
pub fn caratheodory_counterexample<T: Scalar>(poles: &[Complex<T>], lambda: Complex<T>) -> Result<ResolventSeries<T>> {
    if poles.is_empty() {
        return Err(Error::EmptyInput);
    }
    let scale = poles.iter().fold(T::one(), |m, p| m.max(p.norm())).max(lambda.norm());
    let tol = lit::<T>(1e-12) * scale;
    if let Some(index) = poles.iter().position(|&p| (p - lambda).norm() <= tol) {
        return Err(Error::TargetIsPole { index });
    }
    let hull = convex_hull(poles)?;
    let distance = hull.distance(lambda);
    if distance > tol {
        return Err(Error::OutsideHull {
            distance: to_f64(distance),
        });
    }

    let mut best: Option<(T, Vec<(usize, T)>)> = None;
    let mut consider = |score: T, weights: Vec<(usize, T)>| {
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, weights));
        }
    };
    let n = poles.len();
    let wtol = lit::<T>(1e-12);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (poles[i], poles[j]);
            let ab = b - a;
            let len2 = ab.norm_sqr();
            if len2 > T::zero() && point_segment_distance(lambda, a, b) <= tol {
                let t = ((lambda - a).re * ab.re + (lambda - a).im * ab.im) / len2;
                let t = t.max(T::zero()).min(T::one());
                consider((T::one() - t).min(t), vec![(i, T::one() - t), (j, t)]);
            }
            for (k, &c) in poles.iter().enumerate().skip(j + 1) {
                let area = (b - a).re * (c - a).im - (b - a).im * (c - a).re;
                if area.abs() <= tol * scale {
                    continue;
                }
                let w = |p: Complex<T>, q: Complex<T>| {
                    ((p - lambda).re * (q - lambda).im - (p - lambda).im * (q - lambda).re) / area
                };
                let (ka, kb, kc) = (w(b, c), w(c, a), w(a, b));
                let m = ka.min(kb).min(kc);
                if m >= -wtol {
                    consider(m, vec![(i, ka), (j, kb), (k, kc)]);
                }
            }
        }
    }
    let Some((_, weights)) = best else {
        return Err(Error::OutsideHull {
            distance: to_f64(distance),
        });
    };
    let clamped: Vec<(usize, T)> = weights
        .into_iter()
        .map(|(i, k)| (i, k.max(T::zero())))
        .filter(|&(_, k)| k > wtol)
        .collect();
    let total = clamped.iter().fold(T::zero(), |s, &(_, k)| s + k);
    let terms = clamped
        .into_iter()
        .map(|(i, k)| {
            let k = k / total;
            Term::new(Complex::new(k * (poles[i] - lambda).norm_sqr(), T::zero()), poles[i])
        })
        .collect();
    ResolventSeries::new(terms)
}
