use std::io::Write;

use serde::Serialize;

use super::folner::folner_window;
use super::observable::{AsReal, Observable};
use super::system::{DynamicalSystem, State};
use crate::barycenter::{bar_star_with, BarycenterReport, FiniteFamily, RationalMeasure, StarOptions};
use crate::error::{domain, Result};
use crate::spaces::GeodesicSpace;

/// The equal-weight measure on the values of an observable along an orbit
/// window, with equal values merged.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeasure<P> {
    pub n: usize,
    /// `|F_n|`, the number of orbit points before merging.
    pub window_size: usize,
    pub measure: RationalMeasure<P>,
}

/// `mu_{n, phi}(omega) = (1/|F_n|) sum_{g in F_n} delta_{phi(T^g omega)}`.
pub fn empirical_measure<P: Clone + PartialEq>(
    system: &DynamicalSystem,
    phi: &Observable<P>,
    omega: &State,
    n: usize,
) -> Result<EmpiricalMeasure<P>> {
    system.check_state(omega)?;
    let window = folner_window(system.group(), n)?;
    let values = window
        .elements
        .iter()
        .map(|&g| phi.eval(&system.act(g, omega)))
        .collect::<Result<Vec<P>>>()?;
    let family = FiniteFamily::new(values)?;
    Ok(EmpiricalMeasure { n, window_size: window.elements.len(), measure: RationalMeasure::from_family(&family) })
}

fn widened(opts: &StarOptions, window_size: usize) -> StarOptions {
    StarOptions { denominator_cap: opts.denominator_cap.max(window_size as u64), ..*opts }
}

/// `bar*` of the empirical measure, with default limits.
pub fn ergodic_average<S: GeodesicSpace + ?Sized>(
    space: &S,
    system: &DynamicalSystem,
    phi: &Observable<S::Point>,
    omega: &State,
    n: usize,
    tol: f64,
) -> Result<BarycenterReport<S::Point>> {
    ergodic_average_with(space, system, phi, omega, n, tol, &StarOptions::default())
}

/// `bar*` of the empirical measure. The denominator cap is raised to
/// `|F_n|` since the atoms already carry equal weights.
pub fn ergodic_average_with<S: GeodesicSpace + ?Sized>(
    space: &S,
    system: &DynamicalSystem,
    phi: &Observable<S::Point>,
    omega: &State,
    n: usize,
    tol: f64,
    opts: &StarOptions,
) -> Result<BarycenterReport<S::Point>> {
    let mu = empirical_measure(system, phi, omega, n)?;
    bar_star_with(space, &mu.measure, tol, &widened(opts, mu.window_size))
}

/// The classical average `(1/|F_n|) sum phi(T^g omega)` of a real-valued
/// observable.
pub fn birkhoff_average<P: AsReal + Clone + PartialEq>(
    system: &DynamicalSystem,
    phi: &Observable<P>,
    omega: &State,
    n: usize,
) -> Result<f64> {
    system.check_state(omega)?;
    let window = folner_window(system.group(), n)?;
    let mut sum = 0.0;
    for &g in &window.elements {
        let v = phi.eval(&system.act(g, omega))?;
        sum += v.as_real().ok_or_else(|| domain("Birkhoff averages need a real-valued observable"))?;
    }
    Ok(sum / window.elements.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticRow<P> {
    pub n: usize,
    pub point: P,
    pub distance_to_candidate: f64,
    pub level_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable<P> {
    pub candidate: P,
    /// True when the candidate is `bar*` of the exact limit measure rather
    /// than the last grid value.
    pub exact_limit: bool,
    pub rows: Vec<DiagnosticRow<P>>,
}

impl<P> ConvergenceTable<P> {
    /// CSV with columns `n,point_serialized,distance_to_candidate`.
    pub fn write_csv<W: Write>(&self, out: W, serialize: impl Fn(&P) -> String) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "point_serialized", "distance_to_candidate"])?;
        for row in &self.rows {
            w.write_record([row.n.to_string(), serialize(&row.point), row.distance_to_candidate.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Ergodic averages along `n_grid` and their distances to the candidate
/// limit: `bar*` of the exact limit measure for finite-valued observables,
/// the last grid value otherwise.
pub fn convergence_diagnostics<S: GeodesicSpace + ?Sized>(
    space: &S,
    system: &DynamicalSystem,
    phi: &Observable<S::Point>,
    omega: &State,
    n_grid: &[usize],
    tol: f64,
    opts: &StarOptions,
) -> Result<ConvergenceTable<S::Point>> {
    if n_grid.is_empty() || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("n_grid must be nonempty and strictly ascending"));
    }
    let mut points = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        points.push(ergodic_average_with(space, system, phi, omega, n, tol, opts)?);
    }
    let (candidate, exact_limit) = match phi.limit_measure() {
        Some(limit) => (bar_star_with(space, &limit, tol, opts)?.point, true),
        None => (points.last().expect("nonempty grid").point.clone(), false),
    };
    let rows = n_grid
        .iter()
        .zip(points)
        .map(|(&n, r)| DiagnosticRow {
            n,
            distance_to_candidate: space.distance(&r.point, &candidate),
            level_error: r.level_error,
            point: r.point,
        })
        .collect();
    Ok(ConvergenceTable { candidate, exact_limit, rows })
}

/// A Monte-Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let m = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / m;
        let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0) } else { 0.0 };
        Self { mean, std_error: (var / m).sqrt(), samples: xs.len() }
    }
}

/// `d_1(phi, psi) = int d(phi(omega), psi(omega)) dP` by Monte-Carlo.
pub fn l1_distance<S: GeodesicSpace + ?Sized>(
    space: &S,
    system: &DynamicalSystem,
    phi: &Observable<S::Point>,
    psi: &Observable<S::Point>,
    samples: usize,
    seed: u64,
) -> Result<Estimate> {
    if samples == 0 {
        return Err(domain("Monte-Carlo estimate needs at least one sample"));
    }
    let ds = system
        .sample_states(samples, seed)
        .iter()
        .map(|w| Ok(space.distance(&phi.eval(w)?, &psi.eval(w)?)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(Estimate::from_samples(&ds))
}

/// Both sides of the integrated contraction
/// `int d(bar* mu_{n,phi}, bar* mu_{n,psi}) dP <= d_1(phi, psi)`, each by
/// Monte-Carlo over the same seeded draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionEstimate {
    pub n: usize,
    pub lhs: Estimate,
    pub d1: Estimate,
}

#[allow(clippy::too_many_arguments)]
pub fn l1_contraction_estimate<S: GeodesicSpace + ?Sized>(
    space: &S,
    system: &DynamicalSystem,
    phi: &Observable<S::Point>,
    psi: &Observable<S::Point>,
    n: usize,
    samples: usize,
    tol: f64,
    seed: u64,
    opts: &StarOptions,
) -> Result<ContractionEstimate> {
    if samples == 0 {
        return Err(domain("Monte-Carlo estimate needs at least one sample"));
    }
    let omegas = system.sample_states(samples, seed);
    let mut lhs = Vec::with_capacity(samples);
    let mut d1 = Vec::with_capacity(samples);
    for w in &omegas {
        let a = ergodic_average_with(space, system, phi, w, n, tol, opts)?;
        let b = ergodic_average_with(space, system, psi, w, n, tol, opts)?;
        lhs.push(space.distance(&a.point, &b.point));
        d1.push(space.distance(&phi.eval(w)?, &psi.eval(w)?));
    }
    Ok(ContractionEstimate { n, lhs: Estimate::from_samples(&lhs), d1: Estimate::from_samples(&d1) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailRow {
    pub lambda: f64,
    /// Fraction of draws with `sup_n d(...) >= lambda`.
    pub probability: f64,
    /// `probability * lambda / d_1`; zero when the probability is zero.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximalGapReport {
    /// `sup_{1 <= n <= max_n} d(bar* mu_{n,phi}, bar* mu_{n,psi})` per draw.
    pub sups: Vec<f64>,
    pub d1: Estimate,
    pub rows: Vec<TailRow>,
}

/// Number of points of the lambda grid of [`maximal_gap_probe`].
pub const LAMBDA_GRID: usize = 32;

/// Tail probabilities of the maximal gap between the ergodic averages of two
/// observables, against `d_1(phi, psi)`.
///
/// The grid is `lambda_j = j s / 16` for `j = 1..=32`, with `s` the largest
/// observed sup (1 when every sup is zero). `d_1` is estimated from the same
/// draws.
#[allow(clippy::too_many_arguments)]
pub fn maximal_gap_probe<S: GeodesicSpace + ?Sized>(
    space: &S,
    system: &DynamicalSystem,
    phi: &Observable<S::Point>,
    psi: &Observable<S::Point>,
    omega_samples: usize,
    max_n: usize,
    tol: f64,
    seed: u64,
    opts: &StarOptions,
) -> Result<MaximalGapReport> {
    if omega_samples == 0 || max_n == 0 {
        return Err(domain("maximal gap probe needs omega_samples >= 1 and max_n >= 1"));
    }
    let omegas = system.sample_states(omega_samples, seed);
    let mut sups = Vec::with_capacity(omega_samples);
    let mut pointwise = Vec::with_capacity(omega_samples);
    for w in &omegas {
        let mut sup: f64 = 0.0;
        for n in 1..=max_n {
            let a = ergodic_average_with(space, system, phi, w, n, tol, opts)?;
            let b = ergodic_average_with(space, system, psi, w, n, tol, opts)?;
            sup = sup.max(space.distance(&a.point, &b.point));
        }
        sups.push(sup);
        pointwise.push(space.distance(&phi.eval(w)?, &psi.eval(w)?));
    }
    let d1 = Estimate::from_samples(&pointwise);
    let top = sups.iter().copied().fold(0.0, f64::max);
    let scale = if top > 0.0 { top } else { 1.0 };
    let rows = (1..=LAMBDA_GRID)
        .map(|j| {
            let lambda = j as f64 * scale / 16.0;
            let hits = sups.iter().filter(|&&s| s >= lambda).count();
            let probability = hits as f64 / sups.len() as f64;
            let ratio = if hits == 0 { 0.0 } else { probability * lambda / d1.mean };
            TailRow { lambda, probability, ratio }
        })
        .collect();
    Ok(MaximalGapReport { sups, d1, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barycenter::parse_weight;
    use crate::ergodic::Partition;
    use crate::spaces::{Euclidean, MetricTree, Vector};

    fn identity() -> Observable<Vector> {
        Observable::map(|s: &State| match s {
            State::Circle(x) => Vector::from_slice(&[*x]),
            _ => Vector::from_slice(&[0.0]),
        })
    }

    #[test]
    fn quarter_rotation_orbit() {
        let t = DynamicalSystem::rotation(0.25).unwrap();
        let mu = empirical_measure(&t, &identity(), &State::Circle(0.0), 4).unwrap();
        assert_eq!(mu.window_size, 4);
        let xs: Vec<f64> = mu.measure.atoms().iter().map(|v| v[0]).collect();
        assert_eq!(xs, vec![0.0, 0.25, 0.5, 0.75]);
        assert!(mu.measure.weights().iter().all(|w| *w == parse_weight("1/4").unwrap()));
    }

    #[test]
    fn constant_observable() {
        let e = Euclidean::new(1).unwrap();
        let p = e.point(&[3.0]).unwrap();
        let phi = Observable::Constant(p.clone());
        let t = DynamicalSystem::golden_rotation();
        for n in [1, 7, 40] {
            let mu = empirical_measure(&t, &phi, &State::Circle(0.3), n).unwrap();
            assert_eq!(mu.measure.len(), 1);
            assert_eq!(ergodic_average(&e, &t, &phi, &State::Circle(0.3), n, 1e-9).unwrap().point, p);
            assert_eq!(birkhoff_average(&t, &phi, &State::Circle(0.3), n).unwrap(), 3.0);
        }
    }

    #[test]
    fn birkhoff_half_rotation() {
        let t = DynamicalSystem::rotation(0.5).unwrap();
        assert_eq!(birkhoff_average(&t, &identity(), &State::Circle(0.0), 2).unwrap(), 0.25);
        assert_eq!(birkhoff_average(&t, &identity(), &State::Circle(0.1), 1).unwrap(), 0.1);
    }

    #[test]
    fn birkhoff_rejects_non_real_values() {
        let e = Euclidean::new(2).unwrap();
        let phi = Observable::Constant(e.point(&[1.0, 2.0]).unwrap());
        let t = DynamicalSystem::golden_rotation();
        assert!(birkhoff_average(&t, &phi, &State::Circle(0.0), 3).is_err());
    }

    #[test]
    fn real_ergodic_average_is_the_birkhoff_average() {
        let e = Euclidean::new(1).unwrap();
        let t = DynamicalSystem::golden_rotation();
        for n in [1, 2, 5, 33, 100] {
            let a = ergodic_average(&e, &t, &identity(), &State::Circle(0.2), n, 1e-10).unwrap();
            let b = birkhoff_average(&t, &identity(), &State::Circle(0.2), n).unwrap();
            assert!((a.point[0] - b).abs() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn diagnostics_and_csv() {
        let tree = MetricTree::tripod(1.0).unwrap();
        let v = |s| tree.vertex(s).unwrap();
        let w = |s| parse_weight(s).unwrap();
        let phi = Observable::cells(Partition::Intervals(vec![w("1/2"), w("3/4")]), vec![v("x"), v("y"), v("z")]).unwrap();
        let t = DynamicalSystem::golden_rotation();
        let opts = StarOptions { max_replication: 4, ..StarOptions::default() };
        let table = convergence_diagnostics(&tree, &t, &phi, &State::Circle(0.1), &[4, 8], 1e-8, &opts).unwrap();
        assert!(table.exact_limit);
        assert_eq!(table.rows.len(), 2);
        let mut buf = Vec::new();
        table.write_csv(&mut buf, |p| format!("{p:?}")).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,point_serialized,distance_to_candidate\n4,"));
        assert!(convergence_diagnostics(&tree, &t, &phi, &State::Circle(0.1), &[8, 4], 1e-8, &opts).is_err());
    }

    #[test]
    fn maximal_probe_trivial_cases() {
        let e = Euclidean::new(1).unwrap();
        let t = DynamicalSystem::golden_rotation();
        let opts = StarOptions::default();
        let same = maximal_gap_probe(&e, &t, &identity(), &identity(), 5, 6, 1e-9, 1, &opts).unwrap();
        assert!(same.sups.iter().all(|&s| s == 0.0));
        assert!(same.rows.iter().all(|r| r.probability == 0.0 && r.ratio == 0.0));

        let p = Observable::Constant(e.point(&[0.0]).unwrap());
        let q = Observable::Constant(e.point(&[2.0]).unwrap());
        let r = maximal_gap_probe(&e, &t, &p, &q, 4, 3, 1e-9, 1, &opts).unwrap();
        assert!(r.sups.iter().all(|&s| s == 2.0));
        for row in &r.rows {
            let expect = if row.lambda <= 2.0 { 1.0 } else { 0.0 };
            assert_eq!(row.probability, expect);
        }
        assert_eq!(r.d1.mean, 2.0);
    }
}
