//! Barycenters of finite families and rational measures.
//!
//! * [`bar_n`]: the inductive barycenter of `n` points. For `n >= 3` every
//!   round replaces each point by the barycenter of the other `n - 1`; the
//!   rounds shrink the family onto a single point.
//! * [`bar_star`]: the canonical barycenter of a rational measure, the limit
//!   of `bar_{nk}(Q^k)` over replications `Q^k` of an equal-weight expansion.
//! * [`cartan_barycenter`]: the minimizer of the weighted sum of squared
//!   distances, for comparison.

mod cartan;
mod checks;
mod family;
mod inductive;
mod measure;
mod star;

pub use cartan::{cartan_barycenter, CartanSpace};
pub use checks::{contraction_round_check, leave_l_out_mean_bound_check, Inequality};
pub use family::FiniteFamily;
pub use inductive::{bar_n, bar_n_with};
pub use measure::{parse_weight, RationalMeasure, Weight};
pub use star::{bar_star, bar_star_family, bar_star_with, replication_gap_probe, ReplicationGap};

use serde::Serialize;

/// Limits for the inductive recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarOptions {
    /// Maximum number of elementary evaluations (midpoints, sub-barycenter
    /// requests) before giving up with [`Error::Resource`](crate::Error::Resource).
    /// The default is a few seconds of work: in the Euclidean plane or the
    /// half-plane it covers six points in general position at `tol = 1e-8`
    /// but not seven.
    pub work_budget: u64,
    /// Hard cap on rounds at any single level.
    pub max_rounds: usize,
}

impl Default for BarOptions {
    fn default() -> Self {
        Self { work_budget: 50_000_000, max_rounds: 200 }
    }
}

/// Limits for the replication ladder of [`bar_star`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarOptions {
    /// Largest accepted common denominator of the weights.
    pub denominator_cap: u64,
    /// Largest replication level `k`.
    pub max_replication: u64,
    /// Largest family size `n k` of a level after the first.
    pub max_expansion: u64,
    /// A level may spend at most this many times the work of the previous
    /// one (but always at least about a million evaluations). Cost grows
    /// exponentially with the family size in general position, so without
    /// this a hopeless level would burn the whole work budget.
    pub level_growth: u64,
    /// A level is skipped (and the ladder stops) when its multiplicity
    /// lattice `prod (k c_i + 1)` would exceed this many memo entries.
    pub entry_budget: u64,
    pub bar: BarOptions,
}

impl Default for StarOptions {
    fn default() -> Self {
        Self {
            denominator_cap: 64,
            max_replication: 256,
            max_expansion: 1 << 16,
            level_growth: 64,
            entry_budget: 1_000_000,
            bar: BarOptions::default(),
        }
    }
}

/// Why a computation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// `bar_n`: the working family collapsed below the tolerance.
    Converged,
    /// The atoms lie on one geodesic, where every level agrees exactly.
    Exact,
    /// Two consecutive replication levels agreed within the tolerance.
    Stabilized,
    /// The next level would exceed `max_replication` or `max_expansion`.
    Cap,
    /// The next level would exceed the entry or work budget.
    Budget,
}

/// A computed barycenter with convergence diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarycenterReport<P> {
    pub point: P,
    /// Top-level rounds of each computed replication level.
    pub rounds_per_level: Vec<usize>,
    /// Replication level `k` of the returned point (relative to the
    /// smallest equal-weight expansion).
    pub replication_level: u64,
    /// Distances between the points of consecutive computed levels.
    pub cauchy_gaps: Vec<f64>,
    pub tolerance_used: f64,
    /// Diameter of the atom set.
    pub initial_diameter: f64,
    /// Size `n k` of the family of the returned level.
    pub expansion_size: u64,
    pub stop: StopReason,
    /// Bound on the distance from the returned point to the exact value of
    /// the returned level (not to the replication limit).
    pub level_error: f64,
}

impl<P> BarycenterReport<P> {
    pub fn map_point<Q>(self, f: impl FnOnce(P) -> Q) -> BarycenterReport<Q> {
        BarycenterReport {
            point: f(self.point),
            rounds_per_level: self.rounds_per_level,
            replication_level: self.replication_level,
            cauchy_gaps: self.cauchy_gaps,
            tolerance_used: self.tolerance_used,
            initial_diameter: self.initial_diameter,
            expansion_size: self.expansion_size,
            stop: self.stop,
            level_error: self.level_error,
        }
    }
}

pub(crate) fn check_tol(tol: f64) -> crate::Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(crate::error::domain(format!("tolerance must be positive and finite, got {tol}")))
    }
}
