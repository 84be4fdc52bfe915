use std::fmt;
use std::sync::Arc;

use super::system::State;
use crate::barycenter::{RationalMeasure, Weight};
use crate::error::{domain, Result};
use crate::spaces::{SpacePoint, Vector};

/// A measurable partition of a state space into finitely many cells with
/// exactly known masses.
#[derive(Debug, Clone, PartialEq)]
pub enum Partition {
    /// Interior cut points `0 < c_1 < ... < c_{k-1} < 1` of the circle; cell
    /// `i` is `[c_i, c_{i+1})` with `c_0 = 0`, `c_k = 1`.
    Intervals(Vec<Weight>),
    /// Product of two interval partitions of the torus; cell `(i, j)` has
    /// index `i * (cells in y) + j`.
    Grid { x: Vec<Weight>, y: Vec<Weight> },
    /// Cell index of every state of a finite system.
    States(Vec<usize>),
}

fn check_cuts(cuts: &[Weight]) -> Result<()> {
    let zero = Weight::from_integer(0);
    let one = Weight::from_integer(1);
    let mut prev = zero;
    for &c in cuts {
        if c <= prev || c >= one {
            return Err(domain("cut points must increase strictly inside (0, 1)"));
        }
        prev = c;
    }
    Ok(())
}

fn interval_masses(cuts: &[Weight]) -> Vec<Weight> {
    let mut bounds = vec![Weight::from_integer(0)];
    bounds.extend_from_slice(cuts);
    bounds.push(Weight::from_integer(1));
    bounds.windows(2).map(|w| w[1] - w[0]).collect()
}

fn interval_cell(cuts: &[Weight], x: f64) -> usize {
    cuts.iter().take_while(|c| *c.numer() as f64 / *c.denom() as f64 <= x).count()
}

impl Partition {
    pub fn validate(&self) -> Result<()> {
        match self {
            Partition::Intervals(c) => check_cuts(c),
            Partition::Grid { x, y } => check_cuts(x).and(check_cuts(y)),
            Partition::States(cells) if cells.is_empty() => Err(domain("state partition of an empty set")),
            Partition::States(_) => Ok(()),
        }
    }

    pub fn cell_count(&self) -> usize {
        match self {
            Partition::Intervals(c) => c.len() + 1,
            Partition::Grid { x, y } => (x.len() + 1) * (y.len() + 1),
            Partition::States(cells) => cells.iter().max().map_or(0, |m| m + 1),
        }
    }

    /// Exact invariant measure of every cell.
    pub fn masses(&self) -> Vec<Weight> {
        match self {
            Partition::Intervals(c) => interval_masses(c),
            Partition::Grid { x, y } => {
                let (mx, my) = (interval_masses(x), interval_masses(y));
                mx.iter().flat_map(|a| my.iter().map(move |b| a * b)).collect()
            }
            Partition::States(cells) => {
                let mut counts = vec![0u64; self.cell_count()];
                for &c in cells {
                    counts[c] += 1;
                }
                counts.into_iter().map(|c| Weight::new(c, cells.len() as u64)).collect()
            }
        }
    }

    pub fn cell(&self, state: &State) -> Result<usize> {
        match (self, state) {
            (Partition::Intervals(c), State::Circle(x)) => Ok(interval_cell(c, *x)),
            (Partition::Grid { x, y }, State::Torus([a, b])) => {
                Ok(interval_cell(x, *a) * (y.len() + 1) + interval_cell(y, *b))
            }
            (Partition::States(cells), State::Finite(i)) if *i < cells.len() => Ok(cells[*i]),
            _ => Err(domain(format!("state {state:?} does not match the partition"))),
        }
    }
}

/// A map `phi` from states to points.
#[derive(Clone)]
pub enum Observable<P> {
    Constant(P),
    /// Finite-valued: cell `i` of the partition is mapped to `values[i]`.
    Cells { partition: Partition, values: Vec<P> },
    Map(Arc<dyn Fn(&State) -> P + Send + Sync>),
}

impl<P: fmt::Debug> fmt::Debug for Observable<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observable::Constant(p) => f.debug_tuple("Constant").field(p).finish(),
            Observable::Cells { partition, values } => {
                f.debug_struct("Cells").field("partition", partition).field("values", values).finish()
            }
            Observable::Map(_) => f.write_str("Map(..)"),
        }
    }
}

impl<P: Clone + PartialEq> Observable<P> {
    pub fn cells(partition: Partition, values: Vec<P>) -> Result<Self> {
        partition.validate()?;
        if values.len() != partition.cell_count() {
            return Err(domain(format!(
                "partition has {} cells but {} values were given",
                partition.cell_count(),
                values.len()
            )));
        }
        Ok(Observable::Cells { partition, values })
    }

    pub fn map(f: impl Fn(&State) -> P + Send + Sync + 'static) -> Self {
        Observable::Map(Arc::new(f))
    }

    pub fn eval(&self, state: &State) -> Result<P> {
        Ok(match self {
            Observable::Constant(p) => p.clone(),
            Observable::Cells { partition, values } => values[partition.cell(state)?].clone(),
            Observable::Map(f) => f(state),
        })
    }

    /// `phi_* P` for finite-valued observables: `sum lambda_i delta_{x_i}`
    /// with the exact cell masses. `None` for other kinds.
    pub fn limit_measure(&self) -> Option<RationalMeasure<P>> {
        match self {
            Observable::Constant(p) => Some(RationalMeasure::dirac(p.clone())),
            Observable::Cells { partition, values } => {
                let pairs = values
                    .iter()
                    .cloned()
                    .zip(partition.masses())
                    .filter(|(_, w)| *w.numer() > 0)
                    .collect();
                Some(RationalMeasure::new(pairs).expect("cell masses sum to 1"))
            }
            Observable::Map(_) => None,
        }
    }
}

/// Points that may be read as real numbers (one-dimensional Euclidean).
pub trait AsReal {
    fn as_real(&self) -> Option<f64>;
}

impl AsReal for f64 {
    fn as_real(&self) -> Option<f64> {
        Some(*self)
    }
}

impl AsReal for Vector {
    fn as_real(&self) -> Option<f64> {
        match self.as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }
}

impl AsReal for SpacePoint {
    fn as_real(&self) -> Option<f64> {
        match self {
            SpacePoint::Euclidean(v) => v.as_real(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barycenter::parse_weight;

    fn w(s: &str) -> Weight {
        parse_weight(s).unwrap()
    }

    #[test]
    fn interval_cells_and_masses() {
        let p = Partition::Intervals(vec![w("1/2"), w("3/4")]);
        assert_eq!(p.masses(), vec![w("1/2"), w("1/4"), w("1/4")]);
        assert_eq!(p.cell(&State::Circle(0.0)).unwrap(), 0);
        assert_eq!(p.cell(&State::Circle(0.5)).unwrap(), 1);
        assert_eq!(p.cell(&State::Circle(0.99)).unwrap(), 2);
        assert!(Partition::Intervals(vec![w("3/4"), w("1/2")]).validate().is_err());
    }

    #[test]
    fn grid_masses_multiply() {
        let p = Partition::Grid { x: vec![w("1/3")], y: vec![w("1/2")] };
        assert_eq!(p.masses(), vec![w("1/6"), w("1/6"), w("1/3"), w("1/3")]);
        assert_eq!(p.cell(&State::Torus([0.5, 0.25])).unwrap(), 2);
    }

    #[test]
    fn observable_limit_measure() {
        let phi = Observable::cells(Partition::Intervals(vec![w("1/2"), w("3/4")]), vec!['x', 'y', 'z']).unwrap();
        assert_eq!(phi.eval(&State::Circle(0.6)).unwrap(), 'y');
        let mu = phi.limit_measure().unwrap();
        assert_eq!(mu.weights(), &[w("1/2"), w("1/4"), w("1/4")]);
        assert!(Observable::cells(Partition::Intervals(vec![w("1/2")]), vec!['x']).is_err());
        assert!(Observable::map(|_| 0.0).limit_measure().is_none());
    }
}
