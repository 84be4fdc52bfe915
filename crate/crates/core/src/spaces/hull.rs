use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{diameter, GeodesicSpace};
use crate::error::{domain, Result};

const GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Diameters of sampled approximations `B_0 ⊆ B_1 ⊆ ... ⊆ B_depth` of the
/// convex closure of `points`.
///
/// `B_{j+1}` is `B_j` plus `samples_per_level` points `geodesic_point(p, q, t)`
/// with `p, q` drawn from `B_j` and `t` drawn either from the grid
/// `{0, 1/4, 1/2, 3/4, 1}` or uniformly from `[0, 1]` (alternately). The
/// returned vector has `depth + 1` entries.
pub fn convex_hull_diameter_probe<S: GeodesicSpace + ?Sized>(
    space: &S,
    points: &[S::Point],
    depth: usize,
    samples_per_level: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Err(domain("hull probe needs a nonempty family"));
    }
    if depth == 0 {
        return Err(domain("hull probe depth must be at least 1"));
    }
    for p in points {
        space.check_point(p)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set: Vec<S::Point> = points.to_vec();
    let mut out = Vec::with_capacity(depth + 1);
    out.push(diameter(space, &set));
    for _ in 0..depth {
        let n = set.len();
        let mut added = Vec::with_capacity(samples_per_level);
        for s in 0..samples_per_level {
            let p = &set[rng.gen_range(0..n)];
            let q = &set[rng.gen_range(0..n)];
            let t = if s % 2 == 0 { GRID[rng.gen_range(0..GRID.len())] } else { rng.gen::<f64>() };
            added.push(space.geodesic_point(p, q, t));
        }
        set.extend(added);
        out.push(diameter(space, &set));
    }
    Ok(out)
}
