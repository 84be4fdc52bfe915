use serde::Serialize;

use crate::error::{domain, Result};

/// A square matrix of nonnegative transport costs, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostMatrix {
    size: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn new(size: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != size * size {
            return Err(domain(format!("cost matrix of size {size} needs {} entries, got {}", size * size, data.len())));
        }
        if data.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(domain("costs must be finite and nonnegative"));
        }
        Ok(Self { size, data })
    }

    /// `cost(i, j) = f(i, j)` for `i, j < size`.
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let data = (0..size * size).map(|ij| f(ij / size, ij % size)).collect();
        Self::new(size, data)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size + j]
    }

    /// Total cost of the assignment `i -> perm[i]`, summed in increasing
    /// order of the terms so that equal multisets of terms give equal sums.
    pub fn assignment_cost(&self, perm: &[usize]) -> f64 {
        let mut terms: Vec<f64> = perm.iter().enumerate().map(|(i, &j)| self.get(i, j)).collect();
        terms.sort_by(f64::total_cmp);
        terms.iter().sum()
    }
}

/// Minimum-cost perfect assignment by the Hungarian method with row and
/// column potentials (shortest augmenting paths), `O(m^3)`.
///
/// Returns `perm` with row `i` assigned to column `perm[i]`.
pub fn min_cost_assignment(costs: &CostMatrix) -> Vec<usize> {
    let m = costs.size();
    if m == 0 {
        return Vec::new();
    }
    // 1-based arrays with a virtual column 0.
    let mut u = vec![0.0; m + 1];
    let mut v = vec![0.0; m + 1];
    let mut row_of = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=m {
        row_of[0] = i;
        let mut j0 = 0;
        let mut min_to = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let reduced = costs.get(i0 - 1, j - 1) - u[i0] - v[j];
                if reduced < min_to[j] {
                    min_to[j] = reduced;
                    way[j] = j0;
                }
                if min_to[j] < delta {
                    delta = min_to[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_to[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0; m];
    for j in 1..=m {
        perm[row_of[j] - 1] = j - 1;
    }
    perm
}
