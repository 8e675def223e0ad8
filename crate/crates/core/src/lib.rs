//! Left inverses of resolvent-series operators and solvers for the
//! first-kind equations they model.
//!
//! A series `f(z) = Σ aⱼ/(αⱼ − z)` with positive `aⱼ` has the left inverse
//! `1/f(z) = γ + βz + h(z)`, where `h` is a proper rational function whose
//! poles lie in the convex hull of the `αⱼ`. When that hull avoids the
//! spectrum of a closed operator `A`, the same formula inverts
//! `f(A) = Σ aⱼ(αⱼ − A)⁻¹`.
//!
//! * [`series`] holds the series, its admissibility checks and the
//!   counterexample for poles inside the hull.
//! * [`rational`] builds the [`InversionPlan`] `(γ, β, h)` and converts
//!   recursive filters to series.
//! * [`operators`] applies `f(A)` and the plan for dense matrices, Fourier
//!   multipliers, the grid derivative and the periodic shift, and solves the
//!   exponential-kernel integral equation, the even-kernel convolution
//!   equation and periodic filter inversion.
//! * [`regularization`] provides the Tikhonov family for ill-posed cases.
//!
//! Everything is generic over the real scalar (`f32` or `f64`); the `…64`
//! aliases below fix `f64`.
//!
//! ```
//! use num_complex::Complex64 as C;
//! use resolvent_inv::{invert_to_plan, ResolventSeries64};
//!
//! let f = ResolventSeries64::from_pairs(&[(C::new(1.0, 0.0), C::new(1.0, 0.0)),
//!                                         (C::new(1.0, 0.0), C::new(3.0, 0.0))]).unwrap();
//! let plan = invert_to_plan(&f).unwrap();
//! let z = C::new(0.3, 2.0);
//! assert!((plan.eval(z) * f.evaluate(z).unwrap() - 1.0).norm() < 1e-12);
//! ```

pub mod error;
mod fft;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod rational;
pub mod regularization;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use geometry::{convex_hull, hull_separated_from, HullPolygon, Separation, SpectrumDescriptor};
pub use linalg::Matrix;
pub use operators::{
    apply_f, apply_inverse_plan, apply_remainder, convolution_forward, even_kernel_series, filter_inverse_plan,
    filter_inverse_plan_with_tol, forward_filter, integral_forward, invert_filter, invert_filter_with_plan,
    solve_convolution_even_kernel, solve_integral_first_kind, DenseMatrixOperator, EvenKernelTerm,
    GridDerivativeOperator, GridSpec, IntegralSolution, MultiplierOperator, OperatorHandle, PeriodicShiftOperator,
};
pub use poly::Polynomial;
pub use rational::{filter_to_series, invert_to_plan, FilterSpec, InversionPlan, PartialFractionForm};
pub use regularization::{convergence_sweep, regularized_plan_apply, tikhonov_apply, RegularizerConfig, SweepReport};
pub use scalar::Scalar;
pub use series::{caratheodory_counterexample, check_admissible, AdmissibilityReport, ResolventSeries, Term};

pub type ResolventSeries64 = ResolventSeries<f64>;
pub type Term64 = Term<f64>;
pub type InversionPlan64 = InversionPlan<f64>;
pub type PartialFractionForm64 = PartialFractionForm<f64>;
pub type FilterSpec64 = FilterSpec<f64>;
pub type Polynomial64 = Polynomial<f64>;
pub type Matrix64 = Matrix<f64>;
pub type HullPolygon64 = HullPolygon<f64>;
pub type SpectrumDescriptor64 = SpectrumDescriptor<f64>;
pub type AdmissibilityReport64 = AdmissibilityReport<f64>;
pub type DenseMatrixOperator64 = DenseMatrixOperator<f64>;
pub type MultiplierOperator64 = MultiplierOperator<f64>;
pub type GridSpec64 = GridSpec<f64>;
pub type GridDerivativeOperator64 = GridDerivativeOperator<f64>;
pub type EvenKernelTerm64 = EvenKernelTerm<f64>;
pub type IntegralSolution64 = IntegralSolution<f64>;
pub type RegularizerConfig64 = RegularizerConfig<f64>;
pub type SweepReport64 = SweepReport<f64>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
