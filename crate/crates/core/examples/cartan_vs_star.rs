//! Same measure, two barycenters: the Cartan mean sits at the center of the
//! tripod, `bar*` does not.

use busemann::barycenter::{bar_star, cartan_barycenter, parse_weight, RationalMeasure};
use busemann::spaces::{Euclidean, GeodesicSpace, MetricTree};

fn main() -> busemann::Result<()> {
    let t = MetricTree::tripod(1.0)?;
    let [o, x, y, z] = ["o", "x", "y", "z"].map(|v| t.vertex(v).unwrap());
    let w = parse_weight;
    let mu = RationalMeasure::new(vec![(x, w("1/2")?), (y, w("1/4")?), (z, w("1/4")?)])?;

    let cartan = cartan_barycenter(&t, &mu, 1e-12)?;
    let star = bar_star(&t, &mu, 1e-9)?;
    println!("Cartan: {:?}, {:.2e} from o", cartan, t.distance(&cartan, &o));
    println!("bar*:   {:?}, {:.6} from o", star.point, t.distance(&star.point, &o));

    // In a normed space both are the weighted mean.
    let e = Euclidean::new(2)?;
    let nu = RationalMeasure::new(vec![
        (e.point(&[0.0, 0.0])?, w("1/2")?),
        (e.point(&[4.0, 0.0])?, w("1/3")?),
        (e.point(&[0.0, 6.0])?, w("1/6")?),
    ])?;
    let a = cartan_barycenter(&e, &nu, 1e-12)?;
    let b = bar_star(&e, &nu, 1e-9)?;
    println!("R^2: Cartan {:?}, bar* {:?}", a.as_slice(), b.point.as_slice());
    Ok(())
}
