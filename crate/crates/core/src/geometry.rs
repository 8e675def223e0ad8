//! Convex geometry of finite point sets in the complex plane.
//!
//! Hulls are small (one vertex per pole), so everything here favours exact
//! case analysis over asymptotic speed. Degenerate hulls are first class: a
//! single point has one vertex and a segment has two.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Convex polygon with counterclockwise vertices and no three consecutive
/// collinear vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct HullPolygon<T: Scalar> {
    vertices: Vec<Complex<T>>,
}

/// Geometric description of an operator spectrum.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumDescriptor<T: Scalar> {
    /// Finite, nonempty set of eigenvalues.
    PointSet(Vec<Complex<T>>),
    /// The unit circle `|z| = 1`.
    UnitCircle,
    /// The closed ray `[0, ∞)`.
    HalfLinePositiveReals,
    /// The line `Re z = 0`.
    ImaginaryAxis,
}

/// Outcome of a hull/spectrum separation test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Separation<T: Scalar> {
    pub separated: bool,
    pub distance: T,
}

#[inline]
fn cross<T: Scalar>(a: Complex<T>, b: Complex<T>) -> T {
    a.re * b.im - a.im * b.re
}

#[inline]
fn dot<T: Scalar>(a: Complex<T>, b: Complex<T>) -> T {
    a.re * b.re + a.im * b.im
}

/// Distance from `z` to the closed segment `[a, b]`.
pub fn point_segment_distance<T: Scalar>(z: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == T::zero() {
        return (z - a).norm();
    }
    let t = (dot(z - a, ab) / len2).max(T::zero()).min(T::one());
    (z - (a + ab * t)).norm()
}

fn segments_intersect<T: Scalar>(p1: Complex<T>, p2: Complex<T>, q1: Complex<T>, q2: Complex<T>) -> bool {
    let d1 = cross(q2 - q1, p1 - q1);
    let d2 = cross(q2 - q1, p2 - q1);
    let d3 = cross(p2 - p1, q1 - p1);
    let d4 = cross(p2 - p1, q2 - p1);
    let zero = T::zero();
    if ((d1 > zero && d2 < zero) || (d1 < zero && d2 > zero)) && ((d3 > zero && d4 < zero) || (d3 < zero && d4 > zero))
    {
        return true;
    }
    // touching and collinear cases
    (d1 == zero && point_segment_distance(p1, q1, q2) == zero)
        || (d2 == zero && point_segment_distance(p2, q1, q2) == zero)
        || (d3 == zero && point_segment_distance(q1, p1, p2) == zero)
        || (d4 == zero && point_segment_distance(q2, p1, p2) == zero)
}

fn segment_segment_distance<T: Scalar>(p1: Complex<T>, p2: Complex<T>, q1: Complex<T>, q2: Complex<T>) -> T {
    if segments_intersect(p1, p2, q1, q2) {
        return T::zero();
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}

/// Monotone-chain convex hull.
///
/// Points closer than `1e-12·scale` are merged and vertices whose turn is
/// below the same relative tolerance are dropped, where
/// `scale = max(1, max |p|)`.
pub fn convex_hull<T: Scalar>(points: &[Complex<T>]) -> Result<HullPolygon<T>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
        return Err(Error::InvalidParameter("non-finite hull input".into()));
    }
    let scale = points.iter().fold(T::one(), |m, p| m.max(p.norm()));
    let tol = lit::<T>(1e-12) * scale;
    let cross_tol = tol * scale;

    let mut pts: Vec<Complex<T>> = points.to_vec();
    pts.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    pts.dedup_by(|a, b| (*a - *b).norm() <= tol);

    if pts.len() == 1 {
        return Ok(HullPolygon { vertices: pts });
    }

    let mut hull: Vec<Complex<T>> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex<T>>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if cross(b - a, p - a) <= cross_tol {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull.dedup_by(|a, b| (*a - *b).norm() <= tol);
    if hull.len() > 1 && (hull[0] - hull[hull.len() - 1]).norm() <= tol {
        hull.pop();
    }
    Ok(HullPolygon { vertices: hull })
}

impl<T: Scalar> HullPolygon<T> {
    pub fn vertices(&self) -> &[Complex<T>] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    fn edges(&self) -> impl Iterator<Item = (Complex<T>, Complex<T>)> + '_ {
        let n = self.vertices.len();
        let count = match n {
            1 => 1,
            2 => 1,
            _ => n,
        };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// True if `z` lies in the closed polygon (only meaningful for ≥ 3 vertices).
    fn polygon_contains(&self, z: Complex<T>) -> bool {
        self.vertices.len() >= 3 && self.edges().all(|(a, b)| cross(b - a, z - a) >= T::zero())
    }

    /// Euclidean distance from `z` to the hull as a set; zero inside.
    pub fn distance(&self, z: Complex<T>) -> T {
        if self.polygon_contains(z) {
            return T::zero();
        }
        self.edges()
            .map(|(a, b)| point_segment_distance(z, a, b))
            .fold(T::infinity(), T::min)
    }

    /// Set distance between two convex hulls.
    pub fn distance_to_hull(&self, other: &HullPolygon<T>) -> T {
        if self.vertices.iter().any(|&v| other.polygon_contains(v))
            || other.vertices.iter().any(|&v| self.polygon_contains(v))
        {
            return T::zero();
        }
        let mut best = T::infinity();
        for (a, b) in self.edges() {
            for (c, d) in other.edges() {
                best = best.min(segment_segment_distance(a, b, c, d));
            }
        }
        best
    }

    pub fn max_modulus(&self) -> T {
        self.vertices.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn centroid(&self) -> Complex<T> {
        let n = lit::<T>(self.vertices.len() as f64);
        self.vertices
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |s, &v| s + v)
            / n
    }

    /// Radius of the smallest disc about [`Self::centroid`] containing the hull.
    pub fn radius(&self) -> T {
        let c = self.centroid();
        self.vertices.iter().fold(T::zero(), |m, &v| m.max((v - c).norm()))
    }
}

/// Free-function form of [`HullPolygon::distance`].
pub fn hull_distance<T: Scalar>(hull: &HullPolygon<T>, z: Complex<T>) -> T {
    hull.distance(z)
}

impl<T: Scalar> SpectrumDescriptor<T> {
    /// Distance from a single point to the spectrum set.
    pub fn distance_to(&self, z: Complex<T>) -> T {
        match self {
            SpectrumDescriptor::PointSet(pts) => pts.iter().map(|&p| (z - p).norm()).fold(T::infinity(), T::min),
            SpectrumDescriptor::UnitCircle => (z.norm() - T::one()).abs(),
            SpectrumDescriptor::HalfLinePositiveReals => {
                if z.re >= T::zero() {
                    z.im.abs()
                } else {
                    z.norm()
                }
            }
            SpectrumDescriptor::ImaginaryAxis => z.re.abs(),
        }
    }
}

/// Exact separation test between a hull and a spectrum.
///
/// Returns the set distance and whether it exceeds `margin`. Circle, ray and
/// axis variants are resolved analytically from the vertices and edges.
pub fn hull_separated_from<T: Scalar>(
    hull: &HullPolygon<T>,
    spectrum: &SpectrumDescriptor<T>,
    margin: T,
) -> Separation<T> {
    let zero = T::zero();
    let distance = match spectrum {
        SpectrumDescriptor::PointSet(pts) => pts.iter().map(|&p| hull.distance(p)).fold(T::infinity(), T::min),
        SpectrumDescriptor::UnitCircle => {
            let outer = hull.max_modulus();
            if outer < T::one() {
                T::one() - outer
            } else {
                let inner = hull.distance(Complex::new(zero, zero));
                if inner > T::one() {
                    inner - T::one()
                } else {
                    zero
                }
            }
        }
        SpectrumDescriptor::ImaginaryAxis => {
            let lo = hull.vertices.iter().fold(T::infinity(), |m, v| m.min(v.re));
            let hi = hull.vertices.iter().fold(T::neg_infinity(), |m, v| m.max(v.re));
            if lo > zero {
                lo
            } else if hi < zero {
                -hi
            } else {
                zero
            }
        }
        SpectrumDescriptor::HalfLinePositiveReals => {
            // The nearest ray point never lies beyond the hull's largest real part.
            let reach = hull.vertices.iter().fold(zero, |m, v| m.max(v.re)) + T::one();
            let ray = HullPolygon {
                vertices: vec![Complex::new(zero, zero), Complex::new(reach, zero)],
            };
            hull.distance_to_hull(&ray)
        }
    };
    Separation {
        separated: distance > margin,
        distance,
    }
}
