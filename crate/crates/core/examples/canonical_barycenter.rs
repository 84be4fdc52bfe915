//! `bar*` of a rational measure: the replication ladder and its gaps.

use busemann::barycenter::{bar_star_with, parse_weight, replication_gap_probe, RationalMeasure, StarOptions};
use busemann::spaces::{GeodesicSpace, MetricTree};

fn main() -> busemann::Result<()> {
    let t = MetricTree::tripod(1.0)?;
    let [o, x, y, z] = ["o", "x", "y", "z"].map(|v| t.vertex(v).unwrap());
    let mu = RationalMeasure::new(vec![(x, parse_weight("1/2")?), (y, parse_weight("1/4")?), (z, parse_weight("1/4")?)])?;

    for max_replication in [1, 4, 16, 64] {
        let opts = StarOptions { max_replication, ..StarOptions::default() };
        let r = bar_star_with(&t, &mu, 1e-9, &opts)?;
        println!(
            "k <= {max_replication:>2}: N = {:>3}, {:.9} from o, stop {:?}",
            r.expansion_size,
            t.distance(&r.point, &o),
            r.stop
        );
    }
    let r = bar_star_with(&t, &mu, 1e-9, &StarOptions::default())?;
    println!("default limits: N = {}, stop {:?}", r.expansion_size, r.stop);
    println!("doubling gaps: {:?}", r.cauchy_gaps);

    // Steps k -> k + l stay below D l / k.
    for g in replication_gap_probe(&t, &mu, 4, 3, 1e-10, &StarOptions::default())? {
        println!("k = {} l = {}: gap {:.6} <= {:.6}", g.k, g.l, g.gap, g.bound);
    }
    Ok(())
}
