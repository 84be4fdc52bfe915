//! `bar*` is 1-Lipschitz for W1: random measure pairs on a random tree.

use busemann::barycenter::{bar_star_with, RationalMeasure, StarOptions, Weight};
use busemann::spaces::{GeodesicSpace, MetricTree, TreePoint};
use busemann::transport::w1;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_measure(g: &mut ChaCha8Rng, t: &MetricTree) -> RationalMeasure<TreePoint> {
    let d = g.gen_range(2..=8u64);
    let mut left = d;
    let mut atoms = Vec::new();
    while left > 0 {
        let c = g.gen_range(1..=left);
        let e = g.gen_range(0..t.edge_count());
        let p = t.point_on_edge(e, g.gen_range(0.0..t.edge(e).2)).unwrap();
        atoms.push((p, Weight::new(c, d)));
        left -= c;
    }
    RationalMeasure::new(atoms).unwrap()
}

fn main() -> busemann::Result<()> {
    let mut g = ChaCha8Rng::seed_from_u64(5);
    let edges: Vec<(usize, usize, f64)> = (1..9).map(|i| (g.gen_range(0..i), i, g.gen_range(0.2..2.0))).collect();
    let t = MetricTree::new((0..9).map(|i| format!("v{i}")).collect(), &edges)?;
    let opts = StarOptions { max_expansion: 64, ..StarOptions::default() };
    println!("{:>12} {:>12}", "d(bar*,bar*)", "W1");
    for _ in 0..10 {
        let (a, b) = (random_measure(&mut g, &t), random_measure(&mut g, &t));
        let (ba, bb) = (bar_star_with(&t, &a, 1e-9, &opts)?, bar_star_with(&t, &b, 1e-9, &opts)?);
        println!("{:>12.6} {:>12.6}", t.distance(&ba.point, &bb.point), w1(&t, &a, &b)?);
    }
    Ok(())
}
