use num_integer::Integer;
use num_rational::Ratio;

use super::family::{merge_counts, FiniteFamily};
use crate::error::{domain, Error, Result};

pub type Weight = Ratio<u64>;

/// Parses an exact weight such as `"3/8"` or `"1"`.
pub fn parse_weight(s: &str) -> Result<Weight> {
    s.trim().parse::<Weight>().map_err(|e| domain(format!("bad weight {s:?}: {e}")))
}

/// A probability measure with finitely many atoms and positive rational
/// weights summing to exactly 1. Identical atoms are merged on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMeasure<P> {
    atoms: Vec<P>,
    weights: Vec<Weight>,
}

impl<P: Clone + PartialEq> RationalMeasure<P> {
    pub fn new(pairs: Vec<(P, Weight)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(domain("a measure needs at least one atom"));
        }
        let mut atoms: Vec<P> = Vec::with_capacity(pairs.len());
        let mut weights: Vec<Weight> = Vec::with_capacity(pairs.len());
        for (p, w) in pairs {
            if *w.numer() == 0 {
                return Err(domain("atom weights must be positive"));
            }
            match atoms.iter().position(|a| *a == p) {
                Some(i) => weights[i] += w,
                None => {
                    atoms.push(p);
                    weights.push(w);
                }
            }
        }
        let total: Weight = weights.iter().copied().sum();
        if total != Weight::from_integer(1) {
            return Err(domain(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { atoms, weights })
    }

    pub fn dirac(p: P) -> Self {
        Self { atoms: vec![p], weights: vec![Weight::from_integer(1)] }
    }

    /// Equal weights `1/n` on the listed points (duplicates merged).
    pub fn uniform(points: &[P]) -> Result<Self> {
        let n = points.len() as u64;
        if n == 0 {
            return Err(domain("a measure needs at least one atom"));
        }
        let (atoms, counts) = merge_counts(points.iter().cloned().map(|p| (p, 1)));
        let weights = counts.into_iter().map(|c| Weight::new(c as u64, n)).collect();
        Ok(Self { atoms, weights })
    }

    /// Uniform measure on a family: the measure a family represents.
    pub fn from_family(family: &FiniteFamily<P>) -> Self {
        Self::uniform(family.points()).expect("families are nonempty")
    }

    pub fn atoms(&self) -> &[P] {
        &self.atoms
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(|w| *w.numer() as f64 / *w.denom() as f64).collect()
    }

    /// Least common denominator of the weights.
    pub fn denominator(&self) -> u64 {
        self.weights.iter().fold(1, |acc, w| acc.lcm(w.denom()))
    }

    /// Multiplicities of the atoms in the smallest equal-weight expansion.
    pub fn counts(&self) -> (u64, Vec<u64>) {
        let n = self.denominator();
        (n, self.weights.iter().map(|w| *w.numer() * (n / *w.denom())).collect())
    }

    /// Like [`counts`](Self::counts) but fails when the denominator exceeds `cap`.
    pub fn counts_capped(&self, cap: u64) -> Result<(u64, Vec<u64>)> {
        let n = self.denominator();
        if n > cap {
            return Err(Error::Resource(format!(
                "common denominator {n} exceeds the expansion cap {cap}"
            )));
        }
        Ok(self.counts())
    }

    /// The equal-weight family of size `k * denominator()`, atoms in order
    /// and each repeated by its multiplicity.
    pub fn expand(&self, k: usize) -> Result<FiniteFamily<P>> {
        let (_, counts) = self.counts();
        let mut points = Vec::new();
        for (p, c) in self.atoms.iter().zip(counts) {
            for _ in 0..(c as usize * k) {
                points.push(p.clone());
            }
        }
        FiniteFamily::new(points)
    }

    /// Pushforward `f_* mu`.
    pub fn map<Q: Clone + PartialEq>(&self, f: impl Fn(&P) -> Q) -> RationalMeasure<Q> {
        let pairs = self.atoms.iter().map(f).zip(self.weights.iter().copied()).collect();
        RationalMeasure::new(pairs).expect("pushforward of a probability measure")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        parse_weight(s).unwrap()
    }

    #[test]
    fn merges_duplicates_and_checks_sum() {
        let m = RationalMeasure::new(vec![('a', w("1/4")), ('b', w("1/2")), ('a', w("1/4"))]).unwrap();
        assert_eq!(m.atoms(), &['a', 'b']);
        assert_eq!(m.weights(), &[w("1/2"), w("1/2")]);
        assert!(RationalMeasure::new(vec![('a', w("1/3")), ('b', w("1/2"))]).is_err());
        assert!(RationalMeasure::new(vec![('a', w("0")), ('b', w("1"))]).is_err());
        assert!(parse_weight("half").is_err());
    }

    #[test]
    fn expansion_uses_least_common_denominator() {
        let m = RationalMeasure::new(vec![('x', w("1/2")), ('y', w("1/4")), ('z', w("1/4"))]).unwrap();
        assert_eq!(m.counts(), (4, vec![2, 1, 1]));
        assert_eq!(m.expand(2).unwrap().len(), 8);
        assert!(m.counts_capped(3).is_err());
    }

    #[test]
    fn uniform_merges_repeated_points() {
        let m = RationalMeasure::uniform(&[1, 2, 1, 1]).unwrap();
        assert_eq!(m.weights(), &[w("3/4"), w("1/4")]);
        let pushed = m.map(|_| 0);
        assert_eq!(pushed, RationalMeasure::dirac(0));
    }
}
