use std::collections::HashMap;

use smallvec::SmallVec;

use super::family::{merge_counts, FiniteFamily};
use super::{check_tol, BarOptions, BarycenterReport, StopReason};
use crate::error::{Error, Result};
use crate::spaces::{chart_mean, diameter, GeodesicSpace};

type Key = SmallVec<[u32; 8]>;

/// Result of one inductive evaluation.
#[derive(Debug, Clone)]
pub(crate) struct Eval<P> {
    pub point: P,
    /// Bound on the distance to the exact `bar_n` of the evaluated family.
    pub err: f64,
    pub rounds: usize,
}

struct Ctx<P> {
    atoms: Vec<P>,
    memo: HashMap<Key, Eval<P>>,
}

/// The leave-one-out recursion over multiplicity vectors.
///
/// A context is a list of distinct atoms; a family inside it is a vector of
/// multiplicities. Dropping one copy of an atom stays in the same context, so
/// the first round of every call shares one memo table per context. Later
/// rounds work on freshly computed points and open a new context, kept on a
/// stack and discarded when the round that created it finishes.
pub(crate) struct Engine<'a, S: GeodesicSpace + ?Sized> {
    space: &'a S,
    opts: BarOptions,
    floor: f64,
    work: u64,
    limit: u64,
    ctxs: Vec<Ctx<S::Point>>,
}

impl<'a, S: GeodesicSpace + ?Sized> Engine<'a, S> {
    pub fn new(space: &'a S, atoms: Vec<S::Point>, opts: BarOptions) -> Self {
        // Below this the diameter of a set of nearly equal points is
        // rounding noise.
        let floor = 64.0 * f64::EPSILON * (1.0 + diameter(space, &atoms));
        let limit = opts.work_budget;
        Self { space, opts, floor, work: 0, limit, ctxs: vec![Ctx { atoms, memo: HashMap::new() }] }
    }

    /// Work spent so far.
    pub fn work(&self) -> u64 {
        self.work
    }

    /// Allows at most `amount` more work (never beyond the overall budget).
    pub fn allow(&mut self, amount: u64) {
        self.limit = self.work.saturating_add(amount).min(self.opts.work_budget);
    }

    /// `bar_n` of the root-context family with these multiplicities.
    pub fn eval_root(&mut self, counts: &[u32], tol: f64) -> Result<Eval<S::Point>> {
        self.eval(0, counts, tol)
    }

    fn tick(&mut self, amount: u64) -> Result<()> {
        self.work += amount;
        if self.work > self.limit {
            return Err(Error::Resource(format!(
                "inductive barycenter exceeded its work budget after {} evaluations",
                self.work
            )));
        }
        Ok(())
    }

    fn eval(&mut self, ctx: usize, counts: &[u32], tol: f64) -> Result<Eval<S::Point>> {
        let tol = tol.max(self.floor);
        let active: SmallVec<[usize; 8]> =
            counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect();
        let n: u32 = counts.iter().sum();
        if active.len() == 1 {
            return Ok(Eval { point: self.ctxs[ctx].atoms[active[0]].clone(), err: 0.0, rounds: 0 });
        }
        self.tick(1)?;
        if n == 2 {
            let atoms = &self.ctxs[ctx].atoms;
            let point = self.space.midpoint(&atoms[active[0]], &atoms[active[1]]);
            return Ok(Eval { point, err: 0.0, rounds: 1 });
        }
        if let Some(hit) = self.ctxs[ctx].memo.get(counts) {
            if hit.err <= tol {
                return Ok(hit.clone());
            }
        }
        let result = self.rounds(ctx, &active, counts, n, tol)?;
        self.ctxs[ctx].memo.insert(Key::from_slice(counts), result.clone());
        Ok(result)
    }

    fn rounds(&mut self, ctx: usize, active: &[usize], counts: &[u32], n: u32, tol: f64) -> Result<Eval<S::Point>> {
        let space = self.space;
        let mut pts: Vec<S::Point> = active.iter().map(|&i| self.ctxs[ctx].atoms[i].clone()).collect();
        let mut weights: Key = active.iter().map(|&i| counts[i]).collect();
        self.tick(pts.len() as u64)?;
        if let Some(point) = collinear_mean(space, &pts, &weights) {
            return Ok(Eval { point, err: 0.0, rounds: 0 });
        }

        let mut diam = diameter(space, &pts);
        // Rounds contract the diameter by 1/(n-1); split the error budget
        // between the expected number of rounds and the final diameter.
        let expected = ((2.0 * diam / tol).ln() / f64::from(n - 1).ln()).ceil().max(1.0);
        let sub_tol = tol / (4.0 * (expected + 2.0));
        let mut err_acc = 0.0;
        let mut rounds = 0;
        let mut own: Option<usize> = None;
        let mut exact = None;

        while diam >= 0.5 * tol && rounds < self.opts.max_rounds {
            let (cur_ctx, cur_active, cur_counts): (usize, SmallVec<[usize; 8]>, Key) = match own {
                None => (ctx, active.iter().copied().collect(), Key::from_slice(counts)),
                Some(c) => (c, (0..pts.len()).collect(), weights.clone()),
            };
            let mut next = Vec::with_capacity(pts.len());
            let mut sub_err = 0.0;
            for (j, &i) in cur_active.iter().enumerate() {
                let mut reduced = cur_counts.clone();
                reduced[i] -= 1;
                let e = self.eval(cur_ctx, &reduced, sub_tol)?;
                sub_err += f64::from(weights[j]) * e.err;
                next.push((e.point, weights[j]));
            }
            err_acc += sub_err / f64::from(n);
            rounds += 1;
            if let Some(c) = own.take() {
                self.ctxs.truncate(c);
            }

            let (merged, merged_w) = merge_counts(next);
            pts = merged;
            weights = Key::from_vec(merged_w);
            if pts.len() == 1 {
                diam = 0.0;
                break;
            }
            if let Some(point) = collinear_mean(space, &pts, &weights) {
                exact = Some(point);
                diam = 0.0;
                break;
            }
            let new_diam = diameter(space, &pts);
            let stalled = rounds > 1 && new_diam >= diam;
            diam = new_diam;
            if stalled {
                break;
            }
            own = Some(self.ctxs.len());
            self.ctxs.push(Ctx { atoms: pts.clone(), memo: HashMap::new() });
        }
        if let Some(c) = own {
            self.ctxs.truncate(c);
        }
        let point = exact.unwrap_or_else(|| pts.swap_remove(0));
        Ok(Eval { point, err: err_acc + diam, rounds })
    }
}

fn collinear_mean<S: GeodesicSpace + ?Sized>(space: &S, pts: &[S::Point], weights: &[u32]) -> Option<S::Point> {
    let chart = space.collinear_chart(pts)?;
    let w: SmallVec<[f64; 8]> = weights.iter().map(|&c| f64::from(c)).collect();
    Some(chart_mean(space, &chart, &w))
}

/// Runs `f` on a thread with a large stack; deep recursions over families of
/// a few hundred points need more than the default.
pub(crate) fn on_big_stack<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(scope, f)
            .expect("spawn barycenter worker")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

/// Inductive barycenter `bar_n` of a family with default limits.
pub fn bar_n<S: GeodesicSpace + ?Sized>(
    space: &S,
    family: &FiniteFamily<S::Point>,
    tol: f64,
) -> Result<BarycenterReport<S::Point>> {
    bar_n_with(space, family, tol, &BarOptions::default())
}

/// Inductive barycenter `bar_n`.
///
/// One point is returned as is and two points give their midpoint. For
/// `n >= 3` rounds of simultaneous leave-one-out replacement run until the
/// family's diameter drops below `tol / 2`; `level_error` in the report
/// bounds the distance to the exact limit.
pub fn bar_n_with<S: GeodesicSpace + ?Sized>(
    space: &S,
    family: &FiniteFamily<S::Point>,
    tol: f64,
    opts: &BarOptions,
) -> Result<BarycenterReport<S::Point>> {
    check_tol(tol)?;
    for p in family.points() {
        space.check_point(p)?;
    }
    let n = family.len() as u64;
    let (atoms, counts) = family.counts();
    let initial_diameter = diameter(space, &atoms);
    let run = || {
        let mut engine = Engine::new(space, atoms.clone(), *opts);
        engine.eval_root(&counts, tol)
    };
    let eval = if n > 48 { on_big_stack(run) } else { run() }?;
    Ok(BarycenterReport {
        point: eval.point,
        rounds_per_level: vec![eval.rounds],
        replication_level: 1,
        cauchy_gaps: Vec::new(),
        tolerance_used: tol,
        initial_diameter,
        expansion_size: n,
        stop: StopReason::Converged,
        level_error: eval.err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{Euclidean, MetricTree, Vector};

    fn tripod_family(names: &[&str]) -> (MetricTree, FiniteFamily<crate::spaces::TreePoint>) {
        let t = MetricTree::tripod(1.0).unwrap();
        let pts = names.iter().map(|v| t.vertex(v).unwrap()).collect();
        (t, FiniteFamily::new(pts).unwrap())
    }

    #[test]
    fn one_and_two_points() {
        let e = Euclidean::new(2).unwrap();
        let p = e.point(&[1.0, 2.0]).unwrap();
        let q = e.point(&[3.0, 0.0]).unwrap();
        let r = bar_n(&e, &FiniteFamily::new(vec![p.clone()]).unwrap(), 1e-9).unwrap();
        assert_eq!(r.point, p);
        let r = bar_n(&e, &FiniteFamily::new(vec![p.clone(), q.clone()]).unwrap(), 1e-9).unwrap();
        assert_eq!(r.point, e.midpoint(&p, &q));
    }

    #[test]
    fn euclidean_triangle_gives_centroid() {
        let e = Euclidean::new(2).unwrap();
        let pts: Vec<Vector> = [[0.0, 0.0], [3.0, 0.0], [0.0, 3.0]].iter().map(|c| e.point(c).unwrap()).collect();
        let r = bar_n(&e, &FiniteFamily::new(pts).unwrap(), 1e-10).unwrap();
        assert!(e.distance(&r.point, &e.point(&[1.0, 1.0]).unwrap()) < 1e-8);
        assert!(r.level_error < 1e-10);
        assert!(r.rounds_per_level[0] > 1);
    }

    #[test]
    fn tripod_xxyz_lands_on_the_x_edge() {
        // Brute-force iteration of the rounds gives the point at 5/6 from x.
        let (t, q) = tripod_family(&["x", "x", "y", "z"]);
        let r = bar_n(&t, &q, 1e-10).unwrap();
        let x = t.vertex("x").unwrap();
        assert!((t.distance(&r.point, &x) - 5.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let (t, q) = tripod_family(&["x", "y", "z"]);
        assert!(bar_n(&t, &q, 0.0).is_err());
        assert!(bar_n(&t, &q, f64::NAN).is_err());
    }

    #[test]
    fn work_budget_is_enforced() {
        let e = Euclidean::new(2).unwrap();
        let pts: Vec<Vector> =
            [[0.0, 0.0], [3.0, 0.0], [0.0, 3.0], [1.0, 5.0], [2.0, 2.0]].iter().map(|c| e.point(c).unwrap()).collect();
        let opts = BarOptions { work_budget: 100, ..BarOptions::default() };
        let err = bar_n_with(&e, &FiniteFamily::new(pts).unwrap(), 1e-9, &opts).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }
}
