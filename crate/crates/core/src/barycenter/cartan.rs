use super::{check_tol, RationalMeasure};
use crate::error::{Error, Result};
use crate::spaces::{AnySpace, Euclidean, GeodesicSpace, HalfPlane, MetricTree, SpacePoint, TreePoint, Vector};

/// Spaces with an implemented minimizer of `p -> sum w_i d(p, a_i)^2`.
pub trait CartanSpace: GeodesicSpace {
    fn cartan(&self, atoms: &[Self::Point], weights: &[f64], tol: f64) -> Result<Self::Point>;
}

/// Cartan barycenter: the minimizer of the weighted sum of squared distances
/// to the atoms.
///
/// Closed form in Euclidean space; in trees a 1-D search along every edge
/// to `tol` (bisection on the sign of the derivative). The half-plane is not
/// supported.
pub fn cartan_barycenter<S: CartanSpace + ?Sized>(
    space: &S,
    measure: &RationalMeasure<S::Point>,
    tol: f64,
) -> Result<S::Point> {
    check_tol(tol)?;
    for p in measure.atoms() {
        space.check_point(p)?;
    }
    space.cartan(measure.atoms(), &measure.weights_f64(), tol)
}

impl CartanSpace for Euclidean {
    fn cartan(&self, atoms: &[Vector], weights: &[f64], _tol: f64) -> Result<Vector> {
        Ok(self.weighted_mean(atoms, weights))
    }
}

impl CartanSpace for MetricTree {
    fn cartan(&self, atoms: &[TreePoint], weights: &[f64], tol: f64) -> Result<TreePoint> {
        let energy = |p: &TreePoint| -> f64 {
            atoms.iter().zip(weights).map(|(a, w)| w * self.distance(p, a).powi(2)).sum()
        };
        let mut best: Option<(f64, TreePoint)> = None;
        let mut consider = |p: TreePoint, f: f64| {
            if best.as_ref().is_none_or(|(g, _)| f < *g) {
                best = Some((f, p));
            }
        };
        // Vertices first so that ties resolve to a vertex.
        for v in 0..self.vertex_count() {
            let p = TreePoint::Vertex(v);
            consider(p, energy(&p));
        }
        for e in 0..self.edge_count() {
            let (upper, lower, len) = self.edge(e);
            let (pu, pv) = (TreePoint::Vertex(upper), TreePoint::Vertex(lower));
            // Distance from the point at offset s to an atom goes through
            // one of the two ends unless the atom sits on this edge.
            let ends: Vec<(f64, f64, Option<f64>)> = atoms
                .iter()
                .map(|a| match *a {
                    TreePoint::Edge { edge, offset } if edge == e => (0.0, 0.0, Some(offset)),
                    _ => (self.distance(&pu, a), self.distance(&pv, a), None),
                })
                .collect();
            let along = |s: f64| -> f64 {
                ends.iter()
                    .zip(weights)
                    .map(|(&(du, dv, on), w)| {
                        let d = match on {
                            Some(o) => (s - o).abs(),
                            None => (du + s).min(dv + len - s),
                        };
                        w * d * d
                    })
                    .sum()
            };
            // F is convex along the edge; bisect on the sign of F'. Comparing
            // values instead would stall near sqrt(eps) around the minimum.
            let slope = |s: f64| -> f64 {
                ends.iter()
                    .zip(weights)
                    .map(|(&(du, dv, on), w)| match on {
                        Some(o) => w * (s - o),
                        None if du + s <= dv + len - s => w * (du + s),
                        None => -w * (dv + len - s),
                    })
                    .sum()
            };
            let (mut lo, mut hi) = (0.0, len);
            for _ in 0..200 {
                if hi - lo <= tol {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if slope(mid) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let s = 0.5 * (lo + hi);
            if s > 0.0 && s < len {
                consider(TreePoint::Edge { edge: e, offset: s }, along(s));
            }
        }
        Ok(best.expect("a tree has at least one vertex").1)
    }
}

impl CartanSpace for HalfPlane {
    fn cartan(&self, _atoms: &[Self::Point], _weights: &[f64], _tol: f64) -> Result<Self::Point> {
        Err(Error::Unsupported("the Cartan barycenter is implemented for Euclidean spaces and trees only".into()))
    }
}

impl CartanSpace for AnySpace {
    fn cartan(&self, atoms: &[SpacePoint], weights: &[f64], tol: f64) -> Result<SpacePoint> {
        match self {
            AnySpace::Euclidean(s) => {
                let pts: Vec<Vector> = atoms
                    .iter()
                    .filter_map(|p| match p {
                        SpacePoint::Euclidean(v) => Some(v.clone()),
                        _ => None,
                    })
                    .collect();
                s.cartan(&pts, weights, tol).map(SpacePoint::Euclidean)
            }
            AnySpace::Tree(s) => {
                let pts: Vec<TreePoint> = atoms
                    .iter()
                    .filter_map(|p| match p {
                        SpacePoint::Tree(v) => Some(*v),
                        _ => None,
                    })
                    .collect();
                s.cartan(&pts, weights, tol).map(SpacePoint::Tree)
            }
            AnySpace::HalfPlane(s) => s.cartan(&[], weights, tol).map(SpacePoint::HalfPlane),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barycenter::parse_weight;

    #[test]
    fn euclidean_midpoint() {
        let e = Euclidean::new(2).unwrap();
        let m = RationalMeasure::uniform(&[e.point(&[0.0, 0.0]).unwrap(), e.point(&[2.0, 0.0]).unwrap()]).unwrap();
        assert_eq!(cartan_barycenter(&e, &m, 1e-12).unwrap().as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn tripod_half_quarter_quarter_is_the_center() {
        let t = MetricTree::tripod(1.0).unwrap();
        let w = |s| parse_weight(s).unwrap();
        let m = RationalMeasure::new(vec![
            (t.vertex("x").unwrap(), w("1/2")),
            (t.vertex("y").unwrap(), w("1/4")),
            (t.vertex("z").unwrap(), w("1/4")),
        ])
        .unwrap();
        let c = cartan_barycenter(&t, &m, 1e-12).unwrap();
        assert!(t.distance(&c, &t.vertex("o").unwrap()) < 1e-8);
        let x = t.vertex("x").unwrap();
        assert_eq!(cartan_barycenter(&t, &RationalMeasure::dirac(x), 1e-12).unwrap(), x);
    }

    #[test]
    fn tree_minimizer_inside_an_edge() {
        // 3/4 at x and 1/4 at y: the minimizer is at distance 1/2 from x.
        let t = MetricTree::tripod(1.0).unwrap();
        let w = |s| parse_weight(s).unwrap();
        let m = RationalMeasure::new(vec![(t.vertex("x").unwrap(), w("3/4")), (t.vertex("y").unwrap(), w("1/4"))]).unwrap();
        let c = cartan_barycenter(&t, &m, 1e-12).unwrap();
        assert!((t.distance(&c, &t.vertex("x").unwrap()) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn half_plane_is_unsupported() {
        let h = HalfPlane;
        let m = RationalMeasure::uniform(&[h.point(0.0, 1.0).unwrap(), h.point(1.0, 1.0).unwrap()]).unwrap();
        assert!(matches!(cartan_barycenter(&h, &m, 1e-9), Err(Error::Unsupported(_))));
    }
}
