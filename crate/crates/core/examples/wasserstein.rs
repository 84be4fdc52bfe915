//! Exact W1 between rational measures, checked against enumeration.

use busemann::barycenter::{parse_weight, RationalMeasure};
use busemann::spaces::{HalfPlane, MetricTree};
use busemann::transport::{w1, w1_bruteforce};

fn main() -> busemann::Result<()> {
    let t = MetricTree::tripod(1.0)?;
    let [o, x, y, z] = ["o", "x", "y", "z"].map(|v| t.vertex(v).unwrap());
    let w = parse_weight;
    let a = RationalMeasure::new(vec![(x, w("1/2")?), (y, w("1/4")?), (z, w("1/4")?)])?;
    let b = RationalMeasure::new(vec![(o, w("1/2")?), (x, w("1/2")?)])?;
    println!("tripod: W1 = {}, brute force {}", w1(&t, &a, &b)?, w1_bruteforce(&t, &a, &b)?);

    let h = HalfPlane;
    let c = RationalMeasure::uniform(&[h.point(0.0, 1.0)?, h.point(1.0, 2.0)?, h.point(-1.0, 0.5)?])?;
    let d = RationalMeasure::new(vec![(h.point(0.0, 2.0)?, w("2/3")?), (h.point(0.5, 0.5)?, w("1/3")?)])?;
    println!("half-plane: W1 = {:.9}, brute force {:.9}", w1(&h, &c, &d)?, w1_bruteforce(&h, &c, &d)?);
    Ok(())
}
