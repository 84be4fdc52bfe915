use crate::error::{domain, Result};

/// An ordered, nonempty list of points `(x_1, ..., x_n)`.
///
/// The barycenter constructions only depend on the family as a multiset;
/// [`FiniteFamily::counts`] gives that view.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFamily<P> {
    points: Vec<P>,
}

impl<P: Clone + PartialEq> FiniteFamily<P> {
    pub fn new(points: Vec<P>) -> Result<Self> {
        if points.is_empty() {
            return Err(domain("a family needs at least one point"));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `Q^k`: `k` consecutive copies of the family.
    pub fn replicate(&self, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(domain("replication factor must be at least 1"));
        }
        let mut points = Vec::with_capacity(self.points.len() * k);
        for _ in 0..k {
            points.extend(self.points.iter().cloned());
        }
        Ok(Self { points })
    }

    /// Distinct points in order of first appearance, with multiplicities.
    pub fn counts(&self) -> (Vec<P>, Vec<u32>) {
        merge_counts(self.points.iter().cloned().map(|p| (p, 1)))
    }
}

pub(crate) fn merge_counts<P: PartialEq>(items: impl IntoIterator<Item = (P, u32)>) -> (Vec<P>, Vec<u32>) {
    let mut atoms: Vec<P> = Vec::new();
    let mut counts: Vec<u32> = Vec::new();
    for (p, c) in items {
        match atoms.iter().position(|a| *a == p) {
            Some(i) => counts[i] += c,
            None => {
                atoms.push(p);
                counts.push(c);
            }
        }
    }
    (atoms, counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replicate_concatenates_blocks() {
        let q = FiniteFamily::new(vec!['p', 'q']).unwrap();
        assert_eq!(q.replicate(1).unwrap(), q);
        assert_eq!(q.replicate(2).unwrap().points(), &['p', 'q', 'p', 'q']);
        assert!(q.replicate(0).is_err());
    }

    #[test]
    fn multiset_counts() {
        let q = FiniteFamily::new(vec!['x', 'x', 'y', 'z']).unwrap().replicate(2).unwrap();
        assert_eq!(q.len(), 8);
        assert_eq!(q.counts(), (vec!['x', 'y', 'z'], vec![4, 2, 2]));
    }

    #[test]
    fn empty_family_is_rejected() {
        assert!(FiniteFamily::<char>::new(vec![]).is_err());
    }
}
