use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{extreme_pair, Chart, GeodesicSpace};
use crate::error::{domain, Result};

/// The hyperbolic upper half-plane `{x + iy : y > 0}` with curvature -1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HalfPlane;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint {
    pub x: f64,
    pub y: f64,
}

impl HalfPlanePoint {
    fn from_z(z: Complex64) -> Self {
        Self { x: z.re, y: z.im }
    }
}

impl HalfPlane {
    pub fn point(&self, x: f64, y: f64) -> Result<HalfPlanePoint> {
        let p = HalfPlanePoint { x, y };
        self.check_point(&p)?;
        Ok(p)
    }
}

// Cayley map onto the unit disc, sending i to 0.
fn cayley(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    (z - i) / (z + i)
}

fn cayley_inv(w: Complex64) -> Complex64 {
    Complex64::i() * (1.0 + w) / (1.0 - w)
}

/// An isometry placing `p` at the disc center and the geodesic towards `q`
/// on the positive real diameter.
struct Frame {
    x0: f64,
    y0: f64,
    rot: Complex64,
}

impl Frame {
    fn new(p: &HalfPlanePoint, q: &HalfPlanePoint) -> Self {
        let mut frame = Self { x0: p.x, y0: p.y, rot: Complex64::new(1.0, 0.0) };
        let u = frame.to_disc(q);
        let r = u.norm();
        if r > 0.0 {
            frame.rot = u.conj() / r;
        }
        frame
    }

    fn to_disc(&self, p: &HalfPlanePoint) -> Complex64 {
        let z = Complex64::new((p.x - self.x0) / self.y0, p.y / self.y0);
        cayley(z) * self.rot
    }

    fn to_plane(&self, w: Complex64) -> HalfPlanePoint {
        let z = cayley_inv(w / self.rot);
        HalfPlanePoint { x: self.x0 + self.y0 * z.re, y: self.y0 * z.im }
    }
}

impl GeodesicSpace for HalfPlane {
    type Point = HalfPlanePoint;

    fn check_point(&self, p: &HalfPlanePoint) -> Result<()> {
        if !(p.x.is_finite() && p.y.is_finite()) {
            return Err(domain("half-plane coordinates must be finite"));
        }
        if p.y <= 0.0 {
            return Err(domain(format!("half-plane point needs y > 0, got y = {}", p.y)));
        }
        Ok(())
    }

    // 2 asinh(|p - q| / (2 sqrt(y1 y2))), the arcosh formula without its
    // cancellation near the diagonal.
    fn distance(&self, p: &HalfPlanePoint, q: &HalfPlanePoint) -> f64 {
        if p == q {
            return 0.0;
        }
        let euclid = (p.x - q.x).hypot(p.y - q.y);
        2.0 * (euclid / (2.0 * (p.y * q.y).sqrt())).asinh()
    }

    fn geodesic_point(&self, p: &HalfPlanePoint, q: &HalfPlanePoint, t: f64) -> HalfPlanePoint {
        if t <= 0.0 || p == q {
            return *p;
        }
        if t >= 1.0 {
            return *q;
        }
        if p.x == q.x {
            return HalfPlanePoint { x: p.x, y: p.y.powf(1.0 - t) * q.y.powf(t) };
        }
        let s = t * self.distance(p, q);
        let frame = Frame::new(p, q);
        frame.to_plane(Complex64::new((0.5 * s).tanh(), 0.0))
    }

    // Direct test: in the frame of the extreme pair every point must lie on
    // the real diameter, measured by sinh of its hyperbolic distance to it.
    fn collinear_chart(&self, points: &[HalfPlanePoint]) -> Option<Chart<HalfPlanePoint>> {
        if points.is_empty() {
            return None;
        }
        let (a, b) = extreme_pair(self, points);
        let (start, end) = (points[a], points[b]);
        let length = self.distance(&start, &end);
        if length == 0.0 {
            return Some(Chart { start, end, length, coords: vec![0.0; points.len()] });
        }
        let frame = Frame::new(&start, &end);
        let slack = 1e-12 * (1.0 + length);
        let mut coords = Vec::with_capacity(points.len());
        for p in points {
            if p.x == start.x && start.x == end.x {
                coords.push((p.y / start.y).ln().abs().clamp(0.0, length));
                continue;
            }
            let w = frame.to_disc(p);
            let sinh_off = 2.0 * w.im.abs() / (1.0 - w.norm_sqr());
            // Written this way so that NaN also rejects.
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(sinh_off <= slack) {
                return None;
            }
            let along = self.distance(&start, p);
            coords.push(if w.re < 0.0 { 0.0 } else { along.min(length) });
        }
        Some(Chart { start, end, length, coords })
    }
}

/// An isometry of the half-plane: `z -> (a z + b) / (c z + d)` with real
/// coefficients and `ad - bc > 0`, optionally preceded by the reflection
/// `x + iy -> -x + iy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub reflect: bool,
}

impl Mobius {
    pub fn new(a: f64, b: f64, c: f64, d: f64, reflect: bool) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0 && det.is_finite()) {
            return Err(domain(format!("Mobius map needs ad - bc > 0, got {det}")));
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s, reflect })
    }

    pub fn translation(b: f64) -> Self {
        Self { a: 1.0, b, c: 0.0, d: 1.0, reflect: false }
    }

    pub fn dilation(k: f64) -> Result<Self> {
        Self::new(k, 0.0, 0.0, 1.0, false)
    }

    /// Rotation by angle `theta` about the point `i`.
    pub fn rotation_about_i(theta: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        Self { a: c, b: s, c: -s, d: c, reflect: false }
    }

    pub fn reflection() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0, reflect: true }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        // Reflection R conjugates a real Mobius map M to R M R = M with b, c negated.
        let inner = if self.reflect {
            Mobius { a: other.a, b: -other.b, c: -other.c, d: other.d, reflect: other.reflect }
        } else {
            *other
        };
        Mobius {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
            reflect: self.reflect ^ other.reflect,
        }
    }

    pub fn apply(&self, p: &HalfPlanePoint) -> HalfPlanePoint {
        let x = if self.reflect { -p.x } else { p.x };
        let z = Complex64::new(x, p.y);
        let w = (self.a * z + self.b) / (self.c * z + self.d);
        // The image of a point with y > 0 keeps y > 0; guard against
        // underflow on extreme inputs.
        let mut out = HalfPlanePoint::from_z(w);
        if out.y <= 0.0 {
            out.y = f64::MIN_POSITIVE;
        }
        out
    }
}
