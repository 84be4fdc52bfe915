#![allow(dead_code)]

use busemann::barycenter::{RationalMeasure, Weight};
use busemann::spaces::{Euclidean, HalfPlane, HalfPlanePoint, MetricTree, TreePoint, Vector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree: vertex `i > 0` hangs below a uniformly chosen earlier vertex.
pub fn random_tree<R: Rng>(rng: &mut R, vertices: usize) -> MetricTree {
    let names = (0..vertices).map(|i| format!("v{i}")).collect();
    let edges: Vec<(usize, usize, f64)> =
        (1..vertices).map(|i| (rng.gen_range(0..i), i, rng.gen_range(0.1..2.0))).collect();
    MetricTree::new(names, &edges).unwrap()
}

pub fn tree_point<R: Rng>(rng: &mut R, tree: &MetricTree) -> TreePoint {
    if tree.edge_count() == 0 || rng.gen_bool(0.3) {
        TreePoint::Vertex(rng.gen_range(0..tree.vertex_count()))
    } else {
        let e = rng.gen_range(0..tree.edge_count());
        let len = tree.edge(e).2;
        tree.point_on_edge(e, rng.gen_range(0.0..len)).unwrap()
    }
}

pub fn euclid_point<R: Rng>(rng: &mut R, e: &Euclidean) -> Vector {
    let coords: Vec<f64> = (0..e.dim()).map(|_| rng.gen_range(-3.0..3.0)).collect();
    e.point(&coords).unwrap()
}

pub fn half_point<R: Rng>(rng: &mut R) -> HalfPlanePoint {
    HalfPlane.point(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0)).unwrap()
}

/// `m` positive integer counts summing to `d` with gcd 1 when `coprime`.
pub fn counts<R: Rng>(rng: &mut R, m: usize, d: u64, coprime: bool) -> Vec<u64> {
    assert!(m as u64 <= d);
    assert!(!coprime || m > 1 || d == 1, "a single atom has weight 1");
    loop {
        let mut cuts: Vec<u64> = (1..d).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<u64> = cuts[..m - 1].to_vec();
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(m);
        let mut prev = 0;
        for c in cuts.into_iter().chain(std::iter::once(d)) {
            out.push(c - prev);
            prev = c;
        }
        let g = out.iter().fold(0, |g, &c| num_integer::gcd(g, c));
        if !coprime || g == 1 {
            return out;
        }
    }
}

/// Counts for a measure of at most `max_atoms` atoms in lowest terms with
/// denominator at most `max_d`.
pub fn reduced_counts<R: Rng>(rng: &mut R, max_atoms: usize, max_d: u64) -> Vec<u64> {
    let m = rng.gen_range(1..=max_atoms.min(max_d as usize));
    if m == 1 {
        return vec![1];
    }
    let d = rng.gen_range(m as u64..=max_d);
    counts(rng, m, d, true)
}

/// Measure on `points` with weights `counts / d`.
pub fn measure<P: Clone + PartialEq>(points: Vec<P>, counts: &[u64]) -> RationalMeasure<P> {
    let d: u64 = counts.iter().sum();
    RationalMeasure::new(points.into_iter().zip(counts).map(|(p, &c)| (p, Weight::new(c, d))).collect()).unwrap()
}

/// Sum of edge lengths along the vertex path from `a` to `b`, found by a
/// breadth-first search, added in path order starting at `a`.
pub fn vertex_path_length(tree: &MetricTree, a: usize, b: usize) -> f64 {
    let n = tree.vertex_count();
    let mut prev: Vec<Option<(usize, f64)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([b]);
    seen[b] = true;
    while let Some(v) = queue.pop_front() {
        for e in 0..tree.edge_count() {
            let (x, y, len) = tree.edge(e);
            let w = if x == v { y } else if y == v { x } else { continue };
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, len));
                queue.push_back(w);
            }
        }
    }
    let mut total = 0.0;
    let mut v = a;
    while v != b {
        let (next, len) = prev[v].expect("connected");
        total += len;
        v = next;
    }
    total
}

/// Distance through the endpoints of the edges carrying the points.
pub fn brute_tree_distance(tree: &MetricTree, p: &TreePoint, q: &TreePoint) -> f64 {
    let ends = |pt: &TreePoint| -> Vec<(usize, f64)> {
        match *pt {
            TreePoint::Vertex(v) => vec![(v, 0.0)],
            TreePoint::Edge { edge, offset } => {
                let (u, v, len) = tree.edge(edge);
                vec![(u, offset), (v, len - offset)]
            }
        }
    };
    if let (TreePoint::Edge { edge: e1, offset: a }, TreePoint::Edge { edge: e2, offset: b }) = (p, q) {
        if e1 == e2 {
            return (a - b).abs();
        }
    }
    let mut best = f64::INFINITY;
    for (u, du) in ends(p) {
        for (v, dv) in ends(q) {
            best = best.min(du + vertex_path_length(tree, u, v) + dv);
        }
    }
    best
}
