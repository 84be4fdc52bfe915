//! Uniquely geodesic metric spaces with nonpositive curvature in the sense of
//! Busemann.
//!
//! Every space implements [`GeodesicSpace`]: a metric, the constant-speed
//! geodesic between two points, and (optionally) a detector for point sets
//! that lie on a single geodesic segment. Three concrete spaces are provided:
//!
//! * [`Euclidean`]: `R^d` with the Euclidean norm,
//! * [`MetricTree`]: finite trees with positive edge lengths (the tripod is
//!   [`MetricTree::tripod`]),
//! * [`HalfPlane`]: the hyperbolic upper half-plane.
//!
//! [`AnySpace`] / [`SpacePoint`] wrap the three behind one serializable type
//! for configuration files and the command line.

mod any;
mod euclidean;
mod halfplane;
mod hull;
mod tree;

pub use any::{AnySpace, PointDoc, SpaceDoc, SpacePoint};
pub use euclidean::{Euclidean, Vector};
pub use halfplane::{HalfPlane, HalfPlanePoint, Mobius};
pub use hull::convex_hull_diameter_probe;
pub use tree::{MetricTree, TreeAutomorphism, TreeDoc, TreePoint};

use crate::error::{domain, Result};

/// A point set lying on one geodesic segment `[start, end]`, with the
/// arclength coordinate of every point measured from `start`.
#[derive(Debug, Clone)]
pub struct Chart<P> {
    pub start: P,
    pub end: P,
    pub length: f64,
    pub coords: Vec<f64>,
}

/// A complete, uniquely geodesic metric space.
///
/// The geometric operations are infallible on points accepted by
/// [`check_point`](GeodesicSpace::check_point); the checked entry points
/// ([`distance`], [`midpoint`], [`geodesic_point`]) validate first.
pub trait GeodesicSpace: Send + Sync {
    type Point: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    /// Rejects points that do not belong to this space instance.
    fn check_point(&self, p: &Self::Point) -> Result<()>;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> f64;

    /// The point at arclength `t * d(p, q)` from `p` on the geodesic to `q`.
    /// `t` must lie in `[0, 1]`.
    fn geodesic_point(&self, p: &Self::Point, q: &Self::Point, t: f64) -> Self::Point;

    fn midpoint(&self, p: &Self::Point, q: &Self::Point) -> Self::Point {
        self.geodesic_point(p, q, 0.5)
    }

    /// Returns a chart when all `points` lie on a single geodesic segment.
    ///
    /// The default uses betweenness, which is exact in trees; smooth spaces
    /// override it with a direct test.
    fn collinear_chart(&self, points: &[Self::Point]) -> Option<Chart<Self::Point>> {
        betweenness_chart(self, points, 1e-12)
    }
}

/// Checked distance.
pub fn distance<S: GeodesicSpace + ?Sized>(space: &S, p: &S::Point, q: &S::Point) -> Result<f64> {
    space.check_point(p)?;
    space.check_point(q)?;
    Ok(space.distance(p, q))
}

/// Checked midpoint.
pub fn midpoint<S: GeodesicSpace + ?Sized>(
    space: &S,
    p: &S::Point,
    q: &S::Point,
) -> Result<S::Point> {
    space.check_point(p)?;
    space.check_point(q)?;
    Ok(space.midpoint(p, q))
}

/// Checked geodesic interpolation; `t` outside `[0, 1]` is a domain error.
pub fn geodesic_point<S: GeodesicSpace + ?Sized>(
    space: &S,
    p: &S::Point,
    q: &S::Point,
    t: f64,
) -> Result<S::Point> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("geodesic parameter t = {t} is outside [0, 1]")));
    }
    space.check_point(p)?;
    space.check_point(q)?;
    Ok(space.geodesic_point(p, q, t))
}

/// Largest pairwise distance (0 for fewer than two points).
pub fn diameter<S: GeodesicSpace + ?Sized>(space: &S, points: &[S::Point]) -> f64 {
    let mut best = 0.0_f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(space.distance(p, q));
        }
    }
    best
}

/// Extreme pair of a set that is expected to be collinear: the point farthest
/// from `points[0]`, then the point farthest from that one. Exact for sets on
/// one geodesic; only a heuristic otherwise.
pub(crate) fn extreme_pair<S: GeodesicSpace + ?Sized>(space: &S, points: &[S::Point]) -> (usize, usize) {
    let farthest = |from: usize| {
        let mut best = (from, 0.0_f64);
        for (i, p) in points.iter().enumerate() {
            let d = space.distance(&points[from], p);
            if d > best.1 {
                best = (i, d);
            }
        }
        best.0
    };
    let a = farthest(0);
    let b = farthest(a);
    (a, b)
}

pub(crate) fn betweenness_chart<S: GeodesicSpace + ?Sized>(
    space: &S,
    points: &[S::Point],
    rel_tol: f64,
) -> Option<Chart<S::Point>> {
    if points.is_empty() {
        return None;
    }
    let (a, b) = extreme_pair(space, points);
    let length = space.distance(&points[a], &points[b]);
    let slack = rel_tol * (1.0 + length);
    let mut coords = Vec::with_capacity(points.len());
    for p in points {
        let da = space.distance(&points[a], p);
        let db = space.distance(p, &points[b]);
        if da + db - length > slack {
            return None;
        }
        coords.push(da);
    }
    Some(Chart { start: points[a].clone(), end: points[b].clone(), length, coords })
}

/// Weighted mean of a chart's coordinates, mapped back onto the segment.
pub(crate) fn chart_mean<S: GeodesicSpace + ?Sized>(
    space: &S,
    chart: &Chart<S::Point>,
    weights: &[f64],
) -> S::Point {
    if chart.length == 0.0 {
        return chart.start.clone();
    }
    let total: f64 = weights.iter().sum();
    let mean: f64 =
        chart.coords.iter().zip(weights).map(|(c, w)| c * w).sum::<f64>() / total;
    let t = (mean / chart.length).clamp(0.0, 1.0);
    space.geodesic_point(&chart.start, &chart.end, t)
}
