//! Rational functions, partial fractions, and the executable left inverse.
//!
//! Partial fractions use the `(pole − z)^k` convention throughout:
//! `h(z) = Σⱼ Σₖ cⱼₖ / (zⱼ − z)^k`. [`PoleGroup::z_minus_pole_coeffs`]
//! converts to the `(z − pole)^k` convention.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::convex_hull;
use crate::linalg::{vec_norm, vec_sub, Matrix};
use crate::poly::{poly_roots, Polynomial, Root, DEFAULT_ROOT_TOL};
use crate::scalar::{lit, scaled_tol, to_f64, Scalar};
use crate::series::{evaluate_f, gamma_beta, ResolventSeries, Term};

/// `num(z) / den(z)`; common factors are only cancelled by [`Self::reduce`].
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<T: Scalar> {
    pub num: Polynomial<T>,
    pub den: Polynomial<T>,
}

impl<T: Scalar> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { num, den })
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn is_strictly_proper(&self) -> bool {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => true,
            (Some(n), Some(d)) => n < d,
            _ => false,
        }
    }

    /// Cancels numerator and denominator roots that agree to `tol · scale`.
    pub fn reduce(&self, tol: T) -> Result<Self> {
        if self.num.is_zero() {
            return Self::new(
                Polynomial::zero(),
                Polynomial::constant(Complex::new(T::one(), T::zero())),
            );
        }
        let mut nr = flatten(&poly_roots(&self.num, lit(DEFAULT_ROOT_TOL)).or_else(|e| match e {
            Error::ZeroPolynomial => Ok(Vec::new()),
            e => Err(e),
        })?);
        let mut dr = flatten(&poly_roots(&self.den, lit(DEFAULT_ROOT_TOL))?);
        let scale = nr.iter().chain(&dr).fold(T::one(), |m, r| m.max(r.norm()));
        let mut i = 0;
        while i < nr.len() {
            if let Some(j) = dr.iter().position(|d| (*d - nr[i]).norm() <= tol * scale) {
                dr.remove(j);
                nr.remove(i);
            } else {
                i += 1;
            }
        }
        Self::new(
            Polynomial::from_roots(&nr, self.num.leading()),
            Polynomial::from_roots(&dr, self.den.leading()),
        )
    }
}

fn flatten<T: Scalar>(roots: &[Root<T>]) -> Vec<Complex<T>> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect()
}

/// Coefficients `c₁..c_m` of `Σₖ cₖ/(pole − z)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleGroup<T: Scalar> {
    pub pole: Complex<T>,
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> PoleGroup<T> {
    pub fn multiplicity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let inv = (self.pole - z).inv();
        let mut pow = inv;
        let mut sum = Complex::zero();
        for &c in &self.coeffs {
            sum = sum + c * pow;
            pow = pow * inv;
        }
        sum
    }

    /// Coefficients `dₖ` with `Σₖ dₖ/(z − pole)^k` equal to this group.
    pub fn z_minus_pole_coeffs(&self) -> Vec<Complex<T>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { -c } else { c })
            .collect()
    }
}

/// `γ + βz + Σⱼ Σₖ cⱼₖ/(zⱼ − z)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractionForm<T: Scalar> {
    pub gamma: Complex<T>,
    pub beta: Complex<T>,
    pub groups: Vec<PoleGroup<T>>,
}

impl<T: Scalar> PartialFractionForm<T> {
    pub fn empty() -> Self {
        Self {
            gamma: Complex::zero(),
            beta: Complex::zero(),
            groups: Vec::new(),
        }
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.groups
            .iter()
            .fold(self.gamma + self.beta * z, |s, g| s + g.eval(z))
    }

    /// Pole-group part only, without the affine terms.
    pub fn eval_proper(&self, z: Complex<T>) -> Complex<T> {
        self.groups.iter().fold(Complex::zero(), |s, g| s + g.eval(z))
    }

    pub fn poles(&self) -> Vec<Complex<T>> {
        self.groups.iter().map(|g| g.pole).collect()
    }
}

/// Common-denominator form `Σ aⱼ Π_{i≠j}(αᵢ − z) / Π(αⱼ − z)`.
pub fn series_to_rational<T: Scalar>(series: &ResolventSeries<T>) -> Result<RationalFunction<T>> {
    let terms = series.terms();
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let minus_one = Complex::new(-T::one(), T::zero());
    let factor = |alpha: Complex<T>| Polynomial::linear(alpha, minus_one);
    let den = terms
        .iter()
        .fold(Polynomial::constant(Complex::new(T::one(), T::zero())), |p, t| {
            p.mul(&factor(t.pole))
        });
    let mut num = Polynomial::zero();
    for (j, t) in terms.iter().enumerate() {
        let others = terms
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .fold(Polynomial::constant(t.coeff), |p, (_, s)| p.mul(&factor(s.pole)));
        num = num.add(&others);
    }
    RationalFunction::new(num, den)
}

/// `p(c + ρw)` as a polynomial in `w`.
fn affine_substitute<T: Scalar>(p: &Polynomial<T>, center: Complex<T>, radius: T) -> Polynomial<T> {
    let lin = Polynomial::linear(center, Complex::new(radius, T::zero()));
    p.coeffs().iter().rev().fold(Polynomial::zero(), |acc, &c| {
        acc.mul(&lin).add(&Polynomial::constant(c))
    })
}

/// Partial-fraction expansion of `r`.
///
/// The polynomial part must be at most affine. Pole coefficients come from a
/// single linear solve in a centred, rescaled monomial basis; the solve is
/// rejected with [`Error::IllConditioned`] when its condition number or the
/// pointwise reconstruction error is too large for the working precision.
pub fn partial_fractions<T: Scalar>(r: &RationalFunction<T>) -> Result<PartialFractionForm<T>> {
    let (quot, rem) = r.num.div_rem(&r.den)?;
    if let Some(d) = quot.degree() {
        if d >= 2 {
            return Err(Error::UnsupportedShape { degree: d });
        }
    }
    let coeff = |k: usize| quot.coeffs().get(k).copied().unwrap_or_else(Complex::zero);
    let mut form = PartialFractionForm {
        gamma: coeff(0),
        beta: coeff(1),
        groups: Vec::new(),
    };
    if rem.is_zero() {
        return Ok(form);
    }
    let roots = poly_roots(&r.den, lit(DEFAULT_ROOT_TOL))?;
    let d: usize = roots.iter().map(|r| r.multiplicity).sum();

    let n_roots = lit::<T>(roots.len() as f64);
    let center = roots.iter().fold(Complex::zero(), |s, r| s + r.value) / n_roots;
    let spread = roots.iter().fold(T::zero(), |m, r| m.max((r.value - center).norm()));
    let scale = roots.iter().fold(T::one(), |m, r| m.max(r.value.norm()));
    let radius = if spread > lit::<T>(1e-6) * scale {
        spread
    } else {
        T::one()
    };

    let w_roots: Vec<(Complex<T>, usize)> = roots
        .iter()
        .map(|r| ((r.value - center) / radius, r.multiplicity))
        .collect();
    let num_w = affine_substitute(&rem, center, radius);
    let lead_w = r.den.leading() * radius.powi(d as i32);

    let one = Complex::new(T::one(), T::zero());
    let mut basis: Vec<Polynomial<T>> = Vec::with_capacity(d);
    for (j, &(wj, mj)) in w_roots.iter().enumerate() {
        let others = w_roots
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .fold(Polynomial::constant(lead_w), |p, (_, &(wi, mi))| {
                p.mul(&Polynomial::linear(-wi, one).pow(mi))
            });
        for k in 1..=mj {
            let sign = if k % 2 == 0 { one } else { -one };
            basis.push(others.mul(&Polynomial::linear(-wj, one).pow(mj - k)).scale(sign));
        }
    }
    let m = Matrix::from_fn(d, d, |row, col| {
        basis[col].coeffs().get(row).copied().unwrap_or_else(Complex::zero)
    });
    let rhs: Vec<Complex<T>> = (0..d)
        .map(|k| num_w.coeffs().get(k).copied().unwrap_or_else(Complex::zero))
        .collect();
    let lu = m.lu().map_err(|_| Error::IllConditioned {
        cond: f64::INFINITY,
        residual: f64::INFINITY,
    })?;
    let sol = lu.solve(&rhs);
    let cond = m.cond_1();

    let mut idx = 0;
    for (root, &(_, mj)) in roots.iter().zip(&w_roots) {
        let coeffs = (1..=mj).map(|k| sol[idx + k - 1] * radius.powi(k as i32)).collect();
        idx += mj;
        form.groups.push(PoleGroup {
            pole: root.value,
            coeffs,
        });
    }

    // pointwise reconstruction on a circle enclosing all poles
    let ring = spread * lit(2.0) + scale;
    let mut residual = T::zero();
    for k in 0..16 {
        let theta = lit::<T>(2.0) * T::PI() * lit::<T>(k as f64 + 0.37) / lit(16.0);
        let z = center + Complex::from_polar(ring, theta);
        let exact = rem.eval(z) / r.den.eval(z);
        let got = form.eval_proper(z);
        residual = residual.max((got - exact).norm() / exact.norm().max(T::min_positive_value()));
    }
    if cond * T::epsilon() > lit(1e-3) || residual > scaled_tol::<T>(1e-8) || !residual.is_finite() {
        return Err(Error::IllConditioned {
            cond: to_f64(cond),
            residual: to_f64(residual),
        });
    }
    Ok(form)
}

/// Executable left inverse `γ + βA + h(A)` with `h` in partial-fraction form.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionPlan<T: Scalar> {
    pub gamma: Complex<T>,
    pub beta: Complex<T>,
    /// Strictly proper remainder; its affine part is zero.
    pub remainder: PartialFractionForm<T>,
}

impl<T: Scalar> InversionPlan<T> {
    /// `h(z)` in partial-fraction form.
    pub fn eval_remainder(&self, z: Complex<T>) -> Complex<T> {
        self.remainder.eval_proper(z)
    }

    /// `γ + βz + h(z)`, which equals `1/f(z)` away from the zeros of `f`.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.gamma + self.beta * z + self.eval_remainder(z)
    }

    pub fn remainder_poles(&self) -> Vec<Complex<T>> {
        self.remainder.poles()
    }
}

/// Number of self-check points used by [`invert_to_plan`].
const PLAN_CHECK_POINTS: usize = 50;

/// Builds the left inverse of `f(A)` for a theorem-mode series.
///
/// `γ` and `β` come from the closed formulas; the remainder is the proper
/// part of `den/num`, expanded in partial fractions over the zeros of `f`.
/// Before returning, the polynomial-division affine part is compared against
/// the closed formulas, the partial-fraction remainder is compared against
/// the closed rational remainder, and `(γ + βz + h(z))·f(z) = 1` is checked
/// on 50 points surrounding the pole hull.
pub fn invert_to_plan<T: Scalar>(series: &ResolventSeries<T>) -> Result<InversionPlan<T>> {
    let s = series.normalized();
    if s.is_empty() {
        return Err(Error::DegenerateSeries);
    }
    s.require_theorem_mode()?;
    let (gamma, beta) = gamma_beta(&s)?;
    if s.len() == 1 {
        return Ok(InversionPlan {
            gamma,
            beta,
            remainder: PartialFractionForm::empty(),
        });
    }
    let f = series_to_rational(&s)?;
    if f.num.is_zero() {
        return Err(Error::DegenerateSeries);
    }
    let (quot, rem) = f.den.div_rem(&f.num)?;
    let scale = s.scale();
    let tol = scaled_tol::<T>(1e-8);
    let q = |k: usize| quot.coeffs().get(k).copied().unwrap_or_else(Complex::zero);
    let affine_gap = (q(0) - gamma).norm() + (q(1) - beta).norm() * scale;
    if quot.degree().unwrap_or(0) > 1 || affine_gap > tol * (gamma.norm() + beta.norm() * scale) {
        return Err(Error::ValidationFailed {
            what: "affine part of 1/f disagrees with the closed formulas",
            error: to_f64(affine_gap),
        });
    }
    let remainder_rf = RationalFunction::new(rem, f.num.clone())?;
    let mut remainder = partial_fractions(&remainder_rf)?;
    remainder.gamma = Complex::zero();
    remainder.beta = Complex::zero();
    let plan = InversionPlan { gamma, beta, remainder };

    let hull = convex_hull(&s.poles())?;
    let center = hull.centroid();
    let ring = hull.radius() * lit(1.5) + scale * lit(0.25);
    let check_tol = scaled_tol::<T>(1e-9);
    let mut worst = T::zero();
    let mut worst_dual = T::zero();
    for k in 0..PLAN_CHECK_POINTS {
        // golden-angle spacing on two radii
        let theta = lit::<T>(2.399_963_229_728_653 * k as f64);
        let r = if k % 2 == 0 { ring } else { ring * lit(2.5) };
        let z = center + Complex::from_polar(r, theta);
        let fz = evaluate_f(&s, z)?;
        let h_pf = plan.eval_remainder(z);
        let h_rat = remainder_rf.eval(z);
        worst_dual = worst_dual.max(((h_pf - h_rat) * fz).norm());
        worst = worst.max(((gamma + beta * z + h_pf) * fz - Complex::new(T::one(), T::zero())).norm());
    }
    if worst_dual > check_tol {
        return Err(Error::ValidationFailed {
            what: "partial-fraction and rational remainders disagree",
            error: to_f64(worst_dual),
        });
    }
    if worst > check_tol {
        return Err(Error::ValidationFailed {
            what: "(γ + βz + h(z))·f(z) ≠ 1",
            error: to_f64(worst),
        });
    }
    Ok(plan)
}

/// Coefficients of the difference equation `Σₖ cₖ y(n+k) = Σₗ bₗ x(n+l)`,
/// `k = 0..N`, `l = 1..N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterSpec<T: Scalar> {
    c: Vec<Complex<T>>,
    b: Vec<Complex<T>>,
}

impl<T: Scalar> FilterSpec<T> {
    pub fn new(c: Vec<Complex<T>>, b: Vec<Complex<T>>) -> Result<Self> {
        if c.len() < 2 {
            return Err(Error::MalformedFilter("order N must be at least 1".into()));
        }
        if b.len() != c.len() - 1 {
            return Err(Error::MalformedFilter(format!(
                "expected {} input coefficients b_1..b_N, got {}",
                c.len() - 1,
                b.len()
            )));
        }
        if c.last().is_some_and(|x| x.is_zero()) {
            return Err(Error::MalformedFilter("leading output coefficient c_N is zero".into()));
        }
        Ok(Self { c, b })
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    pub fn c(&self) -> &[Complex<T>] {
        &self.c
    }

    pub fn b(&self) -> &[Complex<T>] {
        &self.b
    }

    /// Characteristic polynomial `p(z) = Σ cₖ zᵏ`.
    pub fn p(&self) -> Polynomial<T> {
        Polynomial::new(self.c.clone())
    }

    /// `q(z) = Σₗ bₗ zˡ` (no constant term).
    pub fn q(&self) -> Polynomial<T> {
        let mut coeffs = vec![Complex::zero()];
        coeffs.extend(self.b.iter().copied());
        Polynomial::new(coeffs)
    }

    /// Transfer function `q/p`.
    pub fn transfer(&self) -> RationalFunction<T> {
        RationalFunction {
            num: self.q(),
            den: self.p(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterSeriesReport<T: Scalar> {
    /// All `aⱼ` real and positive (to `1e-12` relative).
    pub theorem_mode: bool,
    /// `max |Im aⱼ| / |aⱼ|`.
    pub max_imag_ratio: T,
    pub min_real_coeff: T,
}

/// Rewrites the transfer function as `q(z)/p(z) = −z f(z)` with
/// `f(z) = Σ aⱼ/(zⱼ − z)` over the (distinct) roots `zⱼ` of `p`, where
/// `aⱼ = q̃(zⱼ)/p′(zⱼ)` and `q̃ = q/z`.
pub fn filter_to_series<T: Scalar>(
    spec: &FilterSpec<T>,
    tol: T,
) -> Result<(ResolventSeries<T>, FilterSeriesReport<T>)> {
    let p = spec.p();
    let dp = p.derivative();
    let q_tilde = Polynomial::new(spec.b.clone());
    let roots = poly_roots(&p, tol)?;
    if let Some(r) = roots.iter().find(|r| r.multiplicity > 1) {
        return Err(Error::RepeatedRoot {
            re: to_f64(r.value.re),
            im: to_f64(r.value.im),
        });
    }
    let terms: Vec<Term<T>> = roots
        .iter()
        .map(|r| Term::new(q_tilde.eval(r.value) / dp.eval(r.value), r.value))
        .collect();
    let series = ResolventSeries::new(terms).map_err(|e| match e {
        Error::DuplicatePole { .. } => Error::RepeatedRoot {
            re: f64::NAN,
            im: f64::NAN,
        },
        e => e,
    })?;
    let max_imag_ratio = series.terms().iter().fold(T::zero(), |m, t| {
        m.max(t.coeff.im.abs() / t.coeff.norm().max(T::min_positive_value()))
    });
    let min_real_coeff = series.terms().iter().fold(T::infinity(), |m, t| m.min(t.coeff.re));
    let theorem_mode = series.is_theorem_mode() && min_real_coeff > T::zero();
    Ok((
        series,
        FilterSeriesReport {
            theorem_mode,
            max_imag_ratio,
            min_real_coeff,
        },
    ))
}

/// Relative distance between two coefficient vectors; used by the tests.
#[doc(hidden)]
pub fn coeff_distance<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    let n = a.len().max(b.len());
    let pad = |v: &[Complex<T>]| -> Vec<Complex<T>> {
        (0..n)
            .map(|i| v.get(i).copied().unwrap_or_else(Complex::zero))
            .collect()
    };
    let (pa, pb) = (pad(a), pad(b));
    vec_norm(&vec_sub(&pa, &pb)) / vec_norm(&pa).max(vec_norm(&pb)).max(T::min_positive_value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{evaluate_h, zeros_of_f};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn re(x: f64) -> C {
        c(x, 0.0)
    }

    fn series(pairs: &[(f64, C)]) -> ResolventSeries<f64> {
        ResolventSeries::new(pairs.iter().map(|&(a, p)| Term::new(re(a), p)).collect()).unwrap()
    }

    /// Residue of `g` at `z0` by the trapezoidal rule on a small circle.
    fn contour_residue(g: impl Fn(C) -> C, z0: C, radius: f64) -> C {
        let n = 256;
        let mut s = C::new(0.0, 0.0);
        for k in 0..n {
            let w = C::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            s += g(z0 + w) * w;
        }
        s / n as f64
    }

    #[test]
    fn two_term_series_to_rational() {
        let r = series_to_rational(&series(&[(1.0, re(1.0)), (1.0, re(-1.0))])).unwrap();
        assert!(coeff_distance(r.num.coeffs(), &[re(0.0), re(-2.0)]) < 1e-15);
        // (1 − z)(−1 − z) = −1 + z²
        assert!(coeff_distance(r.den.coeffs(), &[re(-1.0), re(0.0), re(1.0)]) < 1e-15);
    }

    #[test]
    fn single_term_rational_form() {
        let (a, alpha) = (c(2.0, 1.0), c(-1.0, 3.0));
        let r = series_to_rational(&ResolventSeries::from_pairs(&[(a, alpha)]).unwrap()).unwrap();
        assert_eq!(r.num.coeffs(), &[a]);
        assert_eq!(r.den.coeffs(), &[alpha, re(-1.0)]);
    }

    #[test]
    fn rational_form_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let terms: Vec<Term<f64>> = (0..4)
            .map(|k| {
                Term::new(
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    c(k as f64, rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let s = ResolventSeries::new(terms).unwrap();
        let r = series_to_rational(&s).unwrap();
        for _ in 0..20 {
            let z = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let want = evaluate_f(&s, z).unwrap();
            assert!((r.eval(z) - want).norm() <= 1e-11 * want.norm());
        }
    }

    #[test]
    fn simple_poles_by_residue_formula() {
        // 2z / ((z − 1)(z + 1)) = 1/(z − 1) + 1/(z + 1) = −1/(1 − z) − 1/(−1 − z)
        let r = RationalFunction::new(
            Polynomial::new(vec![re(0.0), re(2.0)]),
            Polynomial::new(vec![re(-1.0), re(0.0), re(1.0)]),
        )
        .unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.gamma, re(0.0));
        assert_eq!(pf.beta, re(0.0));
        assert_eq!(pf.groups.len(), 2);
        for g in &pf.groups {
            // residue oracle num(zⱼ)/den'(zⱼ), negated for the (pole − z) convention
            let residue = r.num.eval(g.pole) / r.den.derivative().eval(g.pole);
            assert_eq!(g.multiplicity(), 1);
            assert!((g.coeffs[0] + residue).norm() < 1e-13);
            assert!((g.coeffs[0] - re(-1.0)).norm() < 1e-13);
            assert!((g.z_minus_pole_coeffs()[0] - re(1.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn elementary_fractions() {
        let alpha = c(0.5, -2.0);
        let lin = Polynomial::linear(alpha, re(-1.0));
        let pf =
            partial_fractions(&RationalFunction::new(Polynomial::constant(re(1.0)), lin.clone()).unwrap()).unwrap();
        assert_eq!(pf.groups.len(), 1);
        assert!((pf.groups[0].pole - alpha).norm() < 1e-14);
        assert!((pf.groups[0].coeffs[0] - re(1.0)).norm() < 1e-14);

        let sq = RationalFunction::new(Polynomial::constant(re(1.0)), lin.pow(2)).unwrap();
        let pf = partial_fractions(&sq).unwrap();
        assert_eq!(pf.groups.len(), 1);
        assert_eq!(pf.groups[0].multiplicity(), 2);
        assert!(pf.groups[0].coeffs[0].norm() < 1e-10);
        assert!((pf.groups[0].coeffs[1] - re(1.0)).norm() < 1e-10);
    }

    #[test]
    fn improper_input_splits_affine_part() {
        // (z² + 1)/(z − 2) = z + 2 + 5/(z − 2)
        let r = RationalFunction::new(
            Polynomial::new(vec![re(1.0), re(0.0), re(1.0)]),
            Polynomial::new(vec![re(-2.0), re(1.0)]),
        )
        .unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert!((pf.gamma - re(2.0)).norm() < 1e-14 && (pf.beta - re(1.0)).norm() < 1e-14);
        assert!((pf.groups[0].coeffs[0] - re(-5.0)).norm() < 1e-13);

        let cubic = RationalFunction::new(
            Polynomial::new(vec![re(0.0), re(0.0), re(0.0), re(1.0)]),
            Polynomial::new(vec![re(-2.0), re(1.0)]),
        )
        .unwrap();
        assert_eq!(partial_fractions(&cubic), Err(Error::UnsupportedShape { degree: 2 }));
    }

    #[test]
    fn random_proper_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..40 {
            let d = 1 + trial % 8;
            // well-separated poles on a jittered circle
            let poles: Vec<C> = (0..d)
                .map(|k| {
                    C::from_polar(
                        1.0 + rng.gen_range(0.0..0.3),
                        2.0 * std::f64::consts::PI * k as f64 / d as f64,
                    )
                })
                .collect();
            let den = Polynomial::from_roots(&poles, c(rng.gen_range(0.5..2.0), 0.3));
            let num = Polynomial::new(
                (0..d)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            );
            let r = RationalFunction::new(num, den).unwrap();
            let pf = partial_fractions(&r).unwrap();
            for _ in 0..100 {
                let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                if poles.iter().any(|p| (p - z).norm() < 0.05) {
                    continue;
                }
                let exact = r.eval(z);
                assert!(
                    (pf.eval(z) - exact).norm() <= 1e-10 * exact.norm().max(1.0),
                    "trial {trial}"
                );
            }
        }
    }

    #[test]
    fn plan_for_single_term() {
        let alpha = c(2.0, -1.0);
        let plan = invert_to_plan(&series(&[(1.0, alpha)])).unwrap();
        assert_eq!(plan.gamma, alpha);
        assert_eq!(plan.beta, re(-1.0));
        assert!(plan.remainder.groups.is_empty());
    }

    #[test]
    fn plan_for_poles_one_and_three() {
        let s = series(&[(1.0, re(1.0)), (1.0, re(3.0))]);
        let plan = invert_to_plan(&s).unwrap();
        assert!((plan.gamma - re(1.0)).norm() < 1e-15);
        assert!((plan.beta - re(-0.5)).norm() < 1e-15);
        assert_eq!(plan.remainder.groups.len(), 1);
        let g = &plan.remainder.groups[0];
        assert!((g.pole - re(2.0)).norm() < 1e-14);
        // oracle: numerical residue of 1/f − γ − βz at the zero of f
        let h = |z: C| evaluate_h(&s, z).unwrap();
        let residue = contour_residue(h, re(2.0), 0.1);
        assert!((g.coeffs[0] + residue).norm() < 1e-12, "{:?} vs {residue}", g.coeffs[0]);
        // 1/f = (1 − z)(3 − z)/(4 − 2z) = 1 − z/2 − (1/2)/(2 − z)
        assert!((g.coeffs[0] - re(-0.5)).norm() < 1e-13);
    }

    #[test]
    fn plan_for_symmetric_poles() {
        let plan = invert_to_plan(&series(&[(1.0, re(1.0)), (1.0, re(-1.0))])).unwrap();
        assert!(plan.gamma.norm() < 1e-15);
        assert!((plan.beta - re(-0.5)).norm() < 1e-15);
        let g = &plan.remainder.groups[0];
        assert!(g.pole.norm() < 1e-15);
        // 1/f = −z/2 + 1/(2z): +1/2 in the (z − pole) convention, −1/2 in (pole − z)
        assert!((g.coeffs[0] - re(-0.5)).norm() < 1e-14);
        assert!((g.z_minus_pole_coeffs()[0] - re(0.5)).norm() < 1e-14);
    }

    #[test]
    fn plan_rejects_non_theorem_mode() {
        let s = ResolventSeries::from_pairs(&[(re(1.0), re(1.0)), (re(-2.0), re(3.0))]).unwrap();
        assert!(matches!(invert_to_plan(&s), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn plan_poles_are_zeros_of_f() {
        let s = series(&[(0.7, c(0.0, 1.0)), (1.3, c(1.0, -0.5)), (0.4, c(-1.0, 0.2))]);
        let plan = invert_to_plan(&s).unwrap();
        let zeros = zeros_of_f(&s).unwrap();
        assert_eq!(plan.remainder_poles().len(), zeros.len());
        for p in plan.remainder_poles() {
            assert!(zeros.iter().any(|z| (z - p).norm() < 1e-12));
        }
    }

    #[test]
    fn plan_is_polynomial_identity() {
        // num(f)·num(g) − den(f)·den(g) ≡ 0 with g = γ + βz + h rebuilt over a common denominator
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let n = rng.gen_range(2..7);
            let s = ResolventSeries::new(
                (0..n)
                    .map(|k| {
                        Term::new(
                            re(rng.gen_range(0.1..1.0)),
                            c(k as f64 * 0.4 + rng.gen_range(0.0..0.2), rng.gen_range(-1.0..1.0)),
                        )
                    })
                    .collect(),
            )
            .unwrap();
            let f = series_to_rational(&s).unwrap();
            let plan = invert_to_plan(&s).unwrap();
            let one = re(1.0);
            let mut g_den = Polynomial::constant(one);
            for grp in &plan.remainder.groups {
                g_den = g_den.mul(&Polynomial::linear(grp.pole, -one).pow(grp.multiplicity()));
            }
            let mut g_num = Polynomial::linear(plan.gamma, plan.beta).mul(&g_den);
            for grp in &plan.remainder.groups {
                let m = grp.multiplicity();
                let rest = plan
                    .remainder
                    .groups
                    .iter()
                    .filter(|o| o.pole != grp.pole)
                    .fold(Polynomial::constant(one), |p, o| {
                        p.mul(&Polynomial::linear(o.pole, -one).pow(o.multiplicity()))
                    });
                for (k, &ck) in grp.coeffs.iter().enumerate() {
                    let kk = k + 1;
                    let part = rest.mul(&Polynomial::linear(grp.pole, -one).pow(m - kk)).scale(ck);
                    g_num = g_num.add(&part);
                }
            }
            let lhs = f.num.mul(&g_num);
            let rhs = f.den.mul(&g_den);
            let diff = lhs.sub(&rhs);
            let norm = rhs.coeff_norm();
            assert!(diff.coeff_norm() <= 1e-9 * norm * s.scale());
        }
    }

    #[test]
    fn first_order_filter_series() {
        let (c0, c1, b1) = (c(0.3, 0.1), c(2.0, 0.0), c(1.0, -1.0));
        let spec = FilterSpec::new(vec![c0, c1], vec![b1]).unwrap();
        let (s, _) = filter_to_series(&spec, DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s.terms()[0].pole + c0 / c1).norm() < 1e-15);
        assert!((s.terms()[0].coeff - b1 / c1).norm() < 1e-15);
    }

    #[test]
    fn second_order_filter_series_by_residues() {
        let spec = FilterSpec::new(vec![re(-2.0), re(3.0), re(-1.0)], vec![re(1.0), re(1.0)]).unwrap();
        let (s, report) = filter_to_series(&spec, DEFAULT_ROOT_TOL).unwrap();
        let q = spec.q();
        let p = spec.p();
        for t in s.terms() {
            // aⱼ = Res_{zⱼ} q(z)/(z p(z))
            let g = |z: C| q.eval(z) / (z * p.eval(z));
            let res = contour_residue(g, t.pole, 0.2);
            assert!((t.coeff - res).norm() < 1e-12);
        }
        let mut poles: Vec<f64> = s.poles().iter().map(|p| p.re).collect();
        poles.sort_by(f64::total_cmp);
        assert!((poles[0] - 1.0).abs() < 1e-14 && (poles[1] - 2.0).abs() < 1e-14);
        // a = (−2, 3): not theorem mode
        assert!(!report.theorem_mode);
    }

    #[test]
    fn repeated_filter_root_rejected() {
        // p = (z − 0.5)²
        let spec = FilterSpec::new(vec![re(0.25), re(-1.0), re(1.0)], vec![re(1.0), re(1.0)]).unwrap();
        assert!(matches!(
            filter_to_series(&spec, DEFAULT_ROOT_TOL),
            Err(Error::RepeatedRoot { .. })
        ));
    }

    #[test]
    fn malformed_filters() {
        assert!(FilterSpec::new(vec![re(1.0), re(0.0)], vec![re(1.0)]).is_err());
        assert!(FilterSpec::new(vec![re(1.0)], vec![]).is_err());
        assert!(FilterSpec::new(vec![re(1.0), re(1.0)], vec![re(1.0), re(2.0)]).is_err());
    }

    #[test]
    fn filter_series_reproduces_transfer_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let n = rng.gen_range(1..6);
            let cs: Vec<C> = (0..=n)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let bs: Vec<C> = (0..n)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let spec = FilterSpec::new(cs, bs).unwrap();
            let (s, _) = filter_to_series(&spec, DEFAULT_ROOT_TOL).unwrap();
            let tf = spec.transfer();
            for _ in 0..50 {
                let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                if s.poles().iter().any(|p| (p - z).norm() < 1e-2) {
                    continue;
                }
                let want = tf.eval(z);
                let got = -z * evaluate_f(&s, z).unwrap();
                assert!((got - want).norm() <= 1e-10 * want.norm().max(1e-3));
            }
        }
    }

    #[test]
    fn reduce_cancels_common_factor() {
        let common = Polynomial::linear(re(-1.0), re(1.0));
        let r = RationalFunction::new(
            common.mul(&Polynomial::linear(re(2.0), re(1.0))),
            common.mul(&Polynomial::linear(re(-3.0), re(1.0))),
        )
        .unwrap();
        let red = r.reduce(1e-8).unwrap();
        assert_eq!(red.num.degree(), Some(1));
        assert_eq!(red.den.degree(), Some(1));
        let z = c(0.3, 0.7);
        assert!((red.eval(z) - r.eval(z)).norm() < 1e-13);
    }
}
