//! The inductive barycenter on the tripod, and why it is not intrinsic:
//! doubling every point moves it.

use busemann::barycenter::{bar_n, FiniteFamily};
use busemann::spaces::{GeodesicSpace, MetricTree};

fn main() -> busemann::Result<()> {
    let t = MetricTree::tripod(1.0)?;
    let [o, x, y, z] = ["o", "x", "y", "z"].map(|v| t.vertex(v).unwrap());

    let b4 = bar_n(&t, &FiniteFamily::new(vec![x, x, y, z])?, 1e-12)?;
    let b8 = bar_n(&t, &FiniteFamily::new(vec![x, x, x, x, y, y, z, z])?, 1e-12)?;
    println!("bar_4(x,x,y,z):         d(., x) = {:.12}  (5/6 = {:.12})", t.distance(&b4.point, &x), 5.0 / 6.0);
    println!("bar_8(x,x,x,x,y,y,z,z): d(., x) = {:.12}  (59/70 = {:.12})", t.distance(&b8.point, &x), 59.0 / 70.0);
    println!("d(bar_4, bar_8) = {:.6}", t.distance(&b4.point, &b8.point));
    println!("rounds: {:?} and {:?}, error bounds {:.1e} and {:.1e}", b4.rounds_per_level, b8.rounds_per_level, b4.level_error, b8.level_error);

    // Three distinct leaves: every round keeps the symmetry, so the center.
    let b3 = bar_n(&t, &FiniteFamily::new(vec![x, y, z])?, 1e-12)?;
    println!("bar_3(x,y,z) is {:.1e} from the center", t.distance(&b3.point, &o));
    Ok(())
}
