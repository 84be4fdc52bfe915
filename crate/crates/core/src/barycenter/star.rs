use num_integer::Integer;
use serde::Serialize;

use super::inductive::{on_big_stack, Engine};
use super::{check_tol, BarycenterReport, FiniteFamily, RationalMeasure, StarOptions, StopReason};
use crate::error::{domain, Error, Result};
use crate::spaces::{chart_mean, diameter, GeodesicSpace};

/// Canonical barycenter `bar*` of a rational measure with default limits.
pub fn bar_star<S: GeodesicSpace + ?Sized>(
    space: &S,
    measure: &RationalMeasure<S::Point>,
    tol: f64,
) -> Result<BarycenterReport<S::Point>> {
    bar_star_with(space, measure, tol, &StarOptions::default())
}

/// Canonical barycenter `bar*` of a rational measure.
///
/// The measure is expanded to its smallest equal-weight family `Q` of size
/// `n` (the common denominator), and `bar_{nk}(Q^k)` is computed for
/// `k = 1, 2, 4, ...`, each level to `tol / 8`. The ladder stops when two
/// consecutive levels agree within `tol / 2`, when the next level would
/// exceed `max_replication` or `max_expansion`, or when it does not fit the
/// entry or work budget. The first level is always attempted. Atoms on a
/// single geodesic short-circuit: every level is then the same weighted mean
/// along the geodesic.
pub fn bar_star_with<S: GeodesicSpace + ?Sized>(
    space: &S,
    measure: &RationalMeasure<S::Point>,
    tol: f64,
    opts: &StarOptions,
) -> Result<BarycenterReport<S::Point>> {
    check_tol(tol)?;
    for p in measure.atoms() {
        space.check_point(p)?;
    }
    let (n, counts) = measure.counts_capped(opts.denominator_cap)?;
    ladder(space, measure.atoms().to_vec(), counts, n, 1, tol, opts)
}

/// `bar*` started from a given equal-weight family instead of the smallest
/// expansion: a family that is `j` copies' worth of the smallest expansion
/// enters the ladder at level `k = j`.
pub fn bar_star_family<S: GeodesicSpace + ?Sized>(
    space: &S,
    family: &FiniteFamily<S::Point>,
    tol: f64,
    opts: &StarOptions,
) -> Result<BarycenterReport<S::Point>> {
    check_tol(tol)?;
    for p in family.points() {
        space.check_point(p)?;
    }
    let (atoms, counts) = family.counts();
    let j = counts.iter().fold(0u32, |g, &c| g.gcd(&c));
    let base: Vec<u64> = counts.iter().map(|&c| u64::from(c / j)).collect();
    let n: u64 = base.iter().sum();
    if n > opts.denominator_cap {
        return Err(Error::Resource(format!(
            "common denominator {n} exceeds the expansion cap {}",
            opts.denominator_cap
        )));
    }
    ladder(space, atoms, base, n, u64::from(j), tol, opts)
}

/// Work always granted to a new level regardless of `level_growth`.
const MIN_LEVEL_WORK: u64 = 1 << 20;

fn lattice_size(base: &[u64], k: u64) -> f64 {
    base.iter().map(|&c| (k * c + 1) as f64).product()
}

fn level_counts(base: &[u64], k: u64) -> Result<Vec<u32>> {
    base.iter()
        .map(|&c| u32::try_from(c * k).map_err(|_| Error::Resource("replicated family too large".into())))
        .collect()
}

fn ladder<S: GeodesicSpace + ?Sized>(
    space: &S,
    atoms: Vec<S::Point>,
    base: Vec<u64>,
    n: u64,
    k0: u64,
    tol: f64,
    opts: &StarOptions,
) -> Result<BarycenterReport<S::Point>> {
    let initial_diameter = diameter(space, &atoms);
    let mut report = BarycenterReport {
        point: atoms[0].clone(),
        rounds_per_level: Vec::new(),
        replication_level: k0,
        cauchy_gaps: Vec::new(),
        tolerance_used: tol,
        initial_diameter,
        expansion_size: n * k0,
        stop: StopReason::Exact,
        level_error: 0.0,
    };
    if atoms.len() == 1 {
        return Ok(report);
    }
    if let Some(chart) = space.collinear_chart(&atoms) {
        let w: Vec<f64> = base.iter().map(|&c| c as f64).collect();
        report.point = chart_mean(space, &chart, &w);
        return Ok(report);
    }
    // The first level always runs, bounded by the work budget only; the
    // entry budget decides how far up the ladder to go.
    let level_tol = tol / 8.0;
    let run = move || -> Result<BarycenterReport<S::Point>> {
        let mut engine = Engine::new(space, atoms, opts.bar);
        let first = engine.eval_root(&level_counts(&base, k0)?, level_tol)?;
        report.point = first.point;
        report.level_error = first.err;
        report.rounds_per_level.push(first.rounds);
        let mut k = k0;
        let mut last_work = engine.work();
        report.stop = loop {
            let next = 2 * k;
            if next > opts.max_replication || n * next > opts.max_expansion {
                break StopReason::Cap;
            }
            if lattice_size(&base, next) > opts.entry_budget as f64 {
                break StopReason::Budget;
            }
            let before = engine.work();
            engine.allow(last_work.saturating_mul(opts.level_growth).max(MIN_LEVEL_WORK));
            let eval = match engine.eval_root(&level_counts(&base, next)?, level_tol) {
                Ok(e) => e,
                Err(Error::Resource(_)) => break StopReason::Budget,
                Err(e) => return Err(e),
            };
            let gap = space.distance(&report.point, &eval.point);
            report.cauchy_gaps.push(gap);
            report.rounds_per_level.push(eval.rounds);
            report.point = eval.point;
            report.level_error = eval.err;
            last_work = engine.work() - before;
            k = next;
            if gap <= 0.5 * tol {
                break StopReason::Stabilized;
            }
        };
        report.replication_level = k;
        report.expansion_size = n * k;
        Ok(report)
    };
    if n * k0 > 24 {
        on_big_stack(run)
    } else {
        run()
    }
}

/// One explicitly probed replication step `k -> k + l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicationGap {
    pub k: u64,
    pub l: u64,
    /// `d(bar_{nk}(Q^k), bar_{n(k+l)}(Q^{k+l}))`.
    pub gap: f64,
    /// `D l / k` with `D` the diameter of the atoms.
    pub bound: f64,
    /// Sum of the error bounds of the two levels.
    pub numerical_error: f64,
}

/// Gaps between level `k` and levels `k + 1, ..., k + max_l` of the
/// replication sequence of a measure.
pub fn replication_gap_probe<S: GeodesicSpace + ?Sized>(
    space: &S,
    measure: &RationalMeasure<S::Point>,
    k: u64,
    max_l: u64,
    tol: f64,
    opts: &StarOptions,
) -> Result<Vec<ReplicationGap>> {
    check_tol(tol)?;
    if k < 1 || max_l < 1 {
        return Err(domain("replication probe needs k >= 1 and l >= 1"));
    }
    for p in measure.atoms() {
        space.check_point(p)?;
    }
    let (n, base) = measure.counts_capped(opts.denominator_cap)?;
    if lattice_size(&base, k + max_l) > opts.entry_budget as f64 {
        return Err(Error::Resource(format!("replication level {} exceeds the entry budget", k + max_l)));
    }
    let atoms = measure.atoms().to_vec();
    let d = diameter(space, &atoms);
    let run = move || -> Result<Vec<ReplicationGap>> {
        let mut engine = Engine::new(space, atoms, opts.bar);
        let first = engine.eval_root(&level_counts(&base, k)?, tol)?;
        let mut out = Vec::with_capacity(max_l as usize);
        for l in 1..=max_l {
            let other = engine.eval_root(&level_counts(&base, k + l)?, tol)?;
            out.push(ReplicationGap {
                k,
                l,
                gap: space.distance(&first.point, &other.point),
                bound: d * l as f64 / k as f64,
                numerical_error: first.err + other.err,
            });
        }
        Ok(out)
    };
    if n * (k + max_l) > 24 {
        on_big_stack(run)
    } else {
        run()
    }
}
