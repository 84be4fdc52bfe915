use smallvec::SmallVec;

use super::{extreme_pair, Chart, GeodesicSpace};
use crate::error::{domain, Result};

/// Coordinates of a Euclidean point; inline up to dimension 4.
pub type Vector = SmallVec<[f64; 4]>;

/// `R^d` with the Euclidean norm. Geodesics are straight segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Euclidean {
    dim: usize,
}

impl Euclidean {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(domain("Euclidean dimension must be at least 1"));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, coords: &[f64]) -> Result<Vector> {
        let p: Vector = coords.iter().copied().collect();
        self.check_point(&p)?;
        Ok(p)
    }

    /// Weighted arithmetic mean, the barycenter of a normed space.
    pub fn weighted_mean(&self, points: &[Vector], weights: &[f64]) -> Vector {
        let total: f64 = weights.iter().sum();
        let mut out: Vector = SmallVec::from_elem(0.0, self.dim);
        for (p, w) in points.iter().zip(weights) {
            for (o, x) in out.iter_mut().zip(p) {
                *o += w * x;
            }
        }
        out.iter_mut().for_each(|o| *o /= total);
        out
    }
}

impl GeodesicSpace for Euclidean {
    type Point = Vector;

    fn check_point(&self, p: &Vector) -> Result<()> {
        if p.len() != self.dim {
            return Err(domain(format!(
                "point of dimension {} does not belong to R^{}",
                p.len(),
                self.dim
            )));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(domain("Euclidean coordinates must be finite"));
        }
        Ok(())
    }

    fn distance(&self, p: &Vector, q: &Vector) -> f64 {
        p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    fn geodesic_point(&self, p: &Vector, q: &Vector, t: f64) -> Vector {
        if t == 0.0 {
            return p.clone();
        }
        if t == 1.0 {
            return q.clone();
        }
        p.iter().zip(q).map(|(a, b)| a + t * (b - a)).collect()
    }

    fn midpoint(&self, p: &Vector, q: &Vector) -> Vector {
        p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    // Rank test: every point within 1e-12 (relative) of the line through the
    // extreme pair.
    fn collinear_chart(&self, points: &[Vector]) -> Option<Chart<Vector>> {
        if points.is_empty() {
            return None;
        }
        let (a, b) = extreme_pair(self, points);
        let start = &points[a];
        let length = self.distance(start, &points[b]);
        if length == 0.0 {
            return Some(Chart {
                start: start.clone(),
                end: start.clone(),
                length,
                coords: vec![0.0; points.len()],
            });
        }
        let dir: Vector = points[b].iter().zip(start).map(|(x, y)| (x - y) / length).collect();
        let slack = 1e-12 * (1.0 + length);
        let mut coords = Vec::with_capacity(points.len());
        for p in points {
            let rel: Vector = p.iter().zip(start).map(|(x, y)| x - y).collect();
            let s: f64 = rel.iter().zip(&dir).map(|(r, u)| r * u).sum();
            let perp2: f64 = rel.iter().zip(&dir).map(|(r, u)| (r - s * u) * (r - s * u)).sum();
            if perp2.sqrt() > slack {
                return None;
            }
            coords.push(s.clamp(0.0, length));
        }
        Some(Chart { start: start.clone(), end: points[b].clone(), length, coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{distance, geodesic_point};

    #[test]
    fn pythagorean_distance() {
        let e = Euclidean::new(2).unwrap();
        let d = distance(&e, &e.point(&[0.0, 0.0]).unwrap(), &e.point(&[3.0, 4.0]).unwrap());
        assert_eq!(d.unwrap(), 5.0);
    }

    #[test]
    fn midpoint_and_quarter_point() {
        let e = Euclidean::new(2).unwrap();
        let o = e.point(&[0.0, 0.0]).unwrap();
        assert_eq!(e.midpoint(&o, &e.point(&[2.0, 0.0]).unwrap()).as_slice(), &[1.0, 0.0]);
        let q = geodesic_point(&e, &o, &e.point(&[4.0, 0.0]).unwrap(), 0.25).unwrap();
        assert_eq!(q.as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn rejects_wrong_dimension_and_bad_t() {
        let e = Euclidean::new(2).unwrap();
        let p: Vector = SmallVec::from_slice(&[1.0, 2.0, 3.0]);
        assert!(e.check_point(&p).is_err());
        let o = e.point(&[0.0, 0.0]).unwrap();
        assert!(geodesic_point(&e, &o, &o, 1.5).is_err());
        assert!(Euclidean::new(0).is_err());
    }

    #[test]
    fn collinear_detection() {
        let e = Euclidean::new(2).unwrap();
        let pts: Vec<Vector> =
            [[0.0, 0.0], [1.0, 1.0], [3.0, 3.0]].iter().map(|c| e.point(c).unwrap()).collect();
        let chart = e.collinear_chart(&pts).unwrap();
        assert!((chart.length - 18f64.sqrt()).abs() < 1e-12);
        let bent: Vec<Vector> =
            [[0.0, 0.0], [1.0, 1.0], [3.0, 2.0]].iter().map(|c| e.point(c).unwrap()).collect();
        assert!(e.collinear_chart(&bent).is_none());
    }
}
