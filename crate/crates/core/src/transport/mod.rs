//! Wasserstein-1 distance between rational measures.
//!
//! Both measures are expanded to equal-weight lists of the same length `m`
//! (the common denominator of all weights); `W1` is then `1/m` times the
//! cost of an optimal assignment between the two lists.

mod hungarian;

pub use hungarian::{min_cost_assignment, CostMatrix};

use itertools::Itertools;
use num_integer::Integer;

use crate::barycenter::RationalMeasure;
use crate::error::{Error, Result};
use crate::spaces::GeodesicSpace;

/// Default cap on the common denominator.
pub const DEFAULT_DENOMINATOR_CAP: u64 = 64;

/// Largest expansion accepted by [`w1_bruteforce`].
pub const BRUTEFORCE_MAX: usize = 8;

fn expand_pair<P: Clone + PartialEq>(
    mu1: &RationalMeasure<P>,
    mu2: &RationalMeasure<P>,
    cap: u64,
) -> Result<(Vec<P>, Vec<P>)> {
    let m = mu1.denominator().lcm(&mu2.denominator());
    if m > cap {
        return Err(Error::Resource(format!("common denominator {m} exceeds the expansion cap {cap}")));
    }
    let list = |mu: &RationalMeasure<P>| -> Vec<P> {
        let k = (m / mu.denominator()) as usize;
        mu.expand(k).expect("nonempty measure").points().to_vec()
    };
    Ok((list(mu1), list(mu2)))
}

fn cost_matrix<S: GeodesicSpace + ?Sized>(space: &S, xs: &[S::Point], ys: &[S::Point]) -> Result<CostMatrix> {
    for p in xs.iter().chain(ys) {
        space.check_point(p)?;
    }
    CostMatrix::from_fn(xs.len(), |i, j| space.distance(&xs[i], &ys[j]))
}

/// `W1(mu1, mu2)` with the default denominator cap.
pub fn w1<S: GeodesicSpace + ?Sized>(
    space: &S,
    mu1: &RationalMeasure<S::Point>,
    mu2: &RationalMeasure<S::Point>,
) -> Result<f64> {
    w1_with_cap(space, mu1, mu2, DEFAULT_DENOMINATOR_CAP)
}

/// `W1(mu1, mu2)` by an exact assignment on the common-denominator expansion.
pub fn w1_with_cap<S: GeodesicSpace + ?Sized>(
    space: &S,
    mu1: &RationalMeasure<S::Point>,
    mu2: &RationalMeasure<S::Point>,
    cap: u64,
) -> Result<f64> {
    let (xs, ys) = expand_pair(mu1, mu2, cap)?;
    let costs = cost_matrix(space, &xs, &ys)?;
    let perm = min_cost_assignment(&costs);
    Ok(costs.assignment_cost(&perm) / xs.len() as f64)
}

/// `W1` as the minimum over all `m!` assignments; `m <= 8`.
pub fn w1_bruteforce<S: GeodesicSpace + ?Sized>(
    space: &S,
    mu1: &RationalMeasure<S::Point>,
    mu2: &RationalMeasure<S::Point>,
) -> Result<f64> {
    let (xs, ys) = expand_pair(mu1, mu2, u64::MAX)?;
    let m = xs.len();
    if m > BRUTEFORCE_MAX {
        return Err(Error::Resource(format!(
            "brute-force W1 enumerates at most {BRUTEFORCE_MAX}! assignments, expansion has {m} atoms"
        )));
    }
    let costs = cost_matrix(space, &xs, &ys)?;
    let best = (0..m).permutations(m).map(|p| costs.assignment_cost(&p)).fold(f64::INFINITY, f64::min);
    Ok(best / m as f64)
}
