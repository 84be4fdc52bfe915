use itertools::Itertools;

use super::inductive::Engine;
use super::{bar_n_with, check_tol, BarOptions, FiniteFamily};
use crate::error::{domain, Result};
use crate::spaces::GeodesicSpace;

/// Largest family accepted by the enumerating checks.
const MAX_CHECK_SIZE: usize = 8;

/// Both sides of an inequality `lhs <= rhs`, with the numerical error bound
/// of the barycenters involved.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    pub numerical_error: f64,
}

impl Inequality {
    /// `rhs - lhs`; nonnegative when the inequality holds exactly.
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// `lhs = d(x, bar_n(Q))` against `rhs`, the mean over all deletions of `l`
/// entries of `d(x, bar_{n-l}(reduced family))`.
pub fn leave_l_out_mean_bound_check<S: GeodesicSpace + ?Sized>(
    space: &S,
    x: &S::Point,
    family: &FiniteFamily<S::Point>,
    l: usize,
    tol: f64,
) -> Result<Inequality> {
    check_tol(tol)?;
    let n = family.len();
    if n > MAX_CHECK_SIZE {
        return Err(domain(format!("leave-l-out check enumerates families of at most {MAX_CHECK_SIZE} points")));
    }
    if l < 1 || l >= n {
        return Err(domain(format!("need 1 <= l < n, got l = {l}, n = {n}")));
    }
    space.check_point(x)?;
    for p in family.points() {
        space.check_point(p)?;
    }
    let (atoms, counts) = family.counts();
    let slot: Vec<usize> = family
        .points()
        .iter()
        .map(|p| atoms.iter().position(|a| a == p).expect("atom of its own family"))
        .collect();
    let mut engine = Engine::new(space, atoms, BarOptions::default());
    let full = engine.eval_root(&counts, tol)?;
    let mut err = full.err;
    let mut total = 0.0;
    let mut subsets = 0usize;
    // Every ordered deletion of l entries removes some l-subset, each
    // l-subset equally often, so the mean over subsets is the same.
    for removed in (0..n).combinations(l) {
        let mut reduced = counts.clone();
        for &i in &removed {
            reduced[slot[i]] -= 1;
        }
        let e = engine.eval_root(&reduced, tol)?;
        err = err.max(e.err);
        total += space.distance(x, &e.point);
        subsets += 1;
    }
    Ok(Inequality { lhs: space.distance(x, &full.point), rhs: total / subsets as f64, numerical_error: 2.0 * err })
}

/// `lhs = d(bar_n(X), bar_n(Y))` against `rhs = (1/n) sum d(x_i, y_i)`.
pub fn contraction_round_check<S: GeodesicSpace + ?Sized>(
    space: &S,
    xs: &FiniteFamily<S::Point>,
    ys: &FiniteFamily<S::Point>,
    tol: f64,
) -> Result<Inequality> {
    check_tol(tol)?;
    let n = xs.len();
    if ys.len() != n {
        return Err(domain(format!("families of different sizes {n} and {}", ys.len())));
    }
    if n > MAX_CHECK_SIZE {
        return Err(domain(format!("contraction check takes families of at most {MAX_CHECK_SIZE} points")));
    }
    let bx = bar_n_with(space, xs, tol, &BarOptions::default())?;
    let by = bar_n_with(space, ys, tol, &BarOptions::default())?;
    let rhs = xs.points().iter().zip(ys.points()).map(|(a, b)| space.distance(a, b)).sum::<f64>() / n as f64;
    Ok(Inequality {
        lhs: space.distance(&bx.point, &by.point),
        rhs,
        numerical_error: bx.level_error + by.level_error,
    })
}
