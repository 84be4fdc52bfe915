use serde::{Deserialize, Serialize};

use super::{Chart, Euclidean, GeodesicSpace, HalfPlane, HalfPlanePoint, MetricTree, TreeDoc, TreePoint, Vector};
use crate::error::{domain, Result};

/// One of the concrete spaces, chosen at run time.
#[derive(Debug, Clone)]
pub enum AnySpace {
    Euclidean(Euclidean),
    Tree(MetricTree),
    HalfPlane(HalfPlane),
}

/// A point of an [`AnySpace`].
#[derive(Debug, Clone, PartialEq)]
pub enum SpacePoint {
    Euclidean(Vector),
    Tree(TreePoint),
    HalfPlane(HalfPlanePoint),
}

/// JSON description of a space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceDoc {
    Euclidean { dim: usize },
    Tree(TreeDoc),
    Tripod { ell: f64 },
    HalfPlane,
}

/// JSON form of a point: `{"space": "euclidean", "coords": [...]}`,
/// `{"space": "halfplane", "coords": [x, y]}`, or for trees
/// `{"space": "tree", "edge": [u, v], "offset": r}` (offset measured from `u`)
/// and `{"space": "tree", "vertex": "name"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointDoc {
    pub space: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

impl AnySpace {
    pub fn from_doc(doc: &SpaceDoc) -> Result<Self> {
        Ok(match doc {
            SpaceDoc::Euclidean { dim } => AnySpace::Euclidean(Euclidean::new(*dim)?),
            SpaceDoc::Tree(tree) => AnySpace::Tree(MetricTree::from_doc(tree)?),
            SpaceDoc::Tripod { ell } => AnySpace::Tree(MetricTree::tripod(*ell)?),
            SpaceDoc::HalfPlane => AnySpace::HalfPlane(HalfPlane),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnySpace::Euclidean(_) => "euclidean",
            AnySpace::Tree(_) => "tree",
            AnySpace::HalfPlane(_) => "halfplane",
        }
    }

    pub fn parse_point(&self, doc: &PointDoc) -> Result<SpacePoint> {
        if doc.space != self.kind() {
            return Err(domain(format!("point of space {:?} given for a {} space", doc.space, self.kind())));
        }
        let point = match self {
            AnySpace::Euclidean(_) => {
                let coords = doc.coords.as_ref().ok_or_else(|| domain("Euclidean point needs \"coords\""))?;
                SpacePoint::Euclidean(coords.iter().copied().collect())
            }
            AnySpace::HalfPlane(_) => match doc.coords.as_deref() {
                Some(&[x, y]) => SpacePoint::HalfPlane(HalfPlanePoint { x, y }),
                _ => return Err(domain("half-plane point needs \"coords\": [x, y]")),
            },
            AnySpace::Tree(tree) => match (&doc.vertex, &doc.edge, doc.offset) {
                (Some(v), None, _) => SpacePoint::Tree(tree.vertex(v)?),
                (None, Some((u, v)), Some(r)) => SpacePoint::Tree(tree.point_between(u, v, r)?),
                _ => return Err(domain("tree point needs either \"vertex\" or \"edge\" with \"offset\"")),
            },
        };
        self.check_point(&point)?;
        Ok(point)
    }

    pub fn point_doc(&self, p: &SpacePoint) -> PointDoc {
        let mut doc = PointDoc { space: self.kind().to_string(), coords: None, edge: None, offset: None, vertex: None };
        match (self, p) {
            (_, SpacePoint::Euclidean(v)) => doc.coords = Some(v.to_vec()),
            (_, SpacePoint::HalfPlane(h)) => doc.coords = Some(vec![h.x, h.y]),
            (AnySpace::Tree(tree), SpacePoint::Tree(t)) => match tree.edge_form(t) {
                Some((edge, offset)) => {
                    doc.edge = Some(edge);
                    doc.offset = Some(offset);
                }
                None => {
                    if let TreePoint::Vertex(v) = t {
                        doc.vertex = Some(tree.vertex_name(*v).to_string());
                    }
                }
            },
            (_, SpacePoint::Tree(_)) => {}
        }
        doc
    }
}

impl GeodesicSpace for AnySpace {
    type Point = SpacePoint;

    fn check_point(&self, p: &SpacePoint) -> Result<()> {
        match (self, p) {
            (AnySpace::Euclidean(s), SpacePoint::Euclidean(q)) => s.check_point(q),
            (AnySpace::Tree(s), SpacePoint::Tree(q)) => s.check_point(q),
            (AnySpace::HalfPlane(s), SpacePoint::HalfPlane(q)) => s.check_point(q),
            _ => Err(domain(format!("point does not belong to the {} space", self.kind()))),
        }
    }

    /// NaN for mismatched points; use the checked free functions on
    /// untrusted input.
    fn distance(&self, p: &SpacePoint, q: &SpacePoint) -> f64 {
        match (self, p, q) {
            (AnySpace::Euclidean(s), SpacePoint::Euclidean(a), SpacePoint::Euclidean(b)) => s.distance(a, b),
            (AnySpace::Tree(s), SpacePoint::Tree(a), SpacePoint::Tree(b)) => s.distance(a, b),
            (AnySpace::HalfPlane(s), SpacePoint::HalfPlane(a), SpacePoint::HalfPlane(b)) => s.distance(a, b),
            _ => f64::NAN,
        }
    }

    fn geodesic_point(&self, p: &SpacePoint, q: &SpacePoint, t: f64) -> SpacePoint {
        match (self, p, q) {
            (AnySpace::Euclidean(s), SpacePoint::Euclidean(a), SpacePoint::Euclidean(b)) => {
                SpacePoint::Euclidean(s.geodesic_point(a, b, t))
            }
            (AnySpace::Tree(s), SpacePoint::Tree(a), SpacePoint::Tree(b)) => SpacePoint::Tree(s.geodesic_point(a, b, t)),
            (AnySpace::HalfPlane(s), SpacePoint::HalfPlane(a), SpacePoint::HalfPlane(b)) => {
                SpacePoint::HalfPlane(s.geodesic_point(a, b, t))
            }
            _ => p.clone(),
        }
    }

    fn midpoint(&self, p: &SpacePoint, q: &SpacePoint) -> SpacePoint {
        match (self, p, q) {
            (AnySpace::Euclidean(s), SpacePoint::Euclidean(a), SpacePoint::Euclidean(b)) => SpacePoint::Euclidean(s.midpoint(a, b)),
            _ => self.geodesic_point(p, q, 0.5),
        }
    }

    fn collinear_chart(&self, points: &[SpacePoint]) -> Option<Chart<SpacePoint>> {
        fn lift<P: Clone>(chart: Chart<P>, wrap: impl Fn(P) -> SpacePoint) -> Chart<SpacePoint> {
            Chart { start: wrap(chart.start), end: wrap(chart.end), length: chart.length, coords: chart.coords }
        }
        match self {
            AnySpace::Euclidean(s) => {
                let pts: Option<Vec<Vector>> = points
                    .iter()
                    .map(|p| match p {
                        SpacePoint::Euclidean(v) => Some(v.clone()),
                        _ => None,
                    })
                    .collect();
                s.collinear_chart(&pts?).map(|c| lift(c, SpacePoint::Euclidean))
            }
            AnySpace::Tree(s) => {
                let pts: Option<Vec<TreePoint>> = points
                    .iter()
                    .map(|p| match p {
                        SpacePoint::Tree(v) => Some(*v),
                        _ => None,
                    })
                    .collect();
                s.collinear_chart(&pts?).map(|c| lift(c, SpacePoint::Tree))
            }
            AnySpace::HalfPlane(s) => {
                let pts: Option<Vec<HalfPlanePoint>> = points
                    .iter()
                    .map(|p| match p {
                        SpacePoint::HalfPlane(v) => Some(*v),
                        _ => None,
                    })
                    .collect();
                s.collinear_chart(&pts?).map(|c| lift(c, SpacePoint::HalfPlane))
            }
        }
    }
}
