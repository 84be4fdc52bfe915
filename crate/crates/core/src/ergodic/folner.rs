use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// `Z` or `Z^2`. `Z` elements use the first coordinate of a [`GroupElement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Z,
    Z2,
}

pub type GroupElement = [i64; 2];

impl std::str::FromStr for Group {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Group::Z),
            "z2" | "z^2" => Ok(Group::Z2),
            other => Err(domain(format!("unsupported group {other:?}; expected z or z2"))),
        }
    }
}

/// The box window `F_n`: `{0, ..., n-1}` in `Z`, `{0, ..., n-1}^2` in `Z^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FolnerWindow {
    pub group: Group,
    pub n: usize,
    pub elements: Vec<GroupElement>,
}

pub fn folner_window(group: Group, n: usize) -> Result<FolnerWindow> {
    if n == 0 {
        return Err(domain("window index must be at least 1"));
    }
    let m = n as i64;
    let elements = match group {
        Group::Z => (0..m).map(|i| [i, 0]).collect(),
        Group::Z2 => (0..m).flat_map(|i| (0..m).map(move |j| [i, j])).collect(),
    };
    Ok(FolnerWindow { group, n, elements })
}

/// One row of [`temperedness_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TemperRow {
    pub n: usize,
    /// `|U_{k<n} F_k^{-1} F_n|`.
    pub union_size: usize,
    pub window_size: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TemperednessReport {
    pub group: Group,
    pub c_observed: f64,
    pub per_n: Vec<TemperRow>,
}

/// Exact sizes of `U_{k<n} F_k^{-1} F_n` for `2 <= n <= max_n`.
///
/// Every `-a + F_n` is a box, so the union is counted on a grid with a
/// difference array: one box per element `a` of each earlier window.
pub fn temperedness_check(group: Group, max_n: usize) -> Result<TemperednessReport> {
    if max_n < 2 {
        return Err(domain("temperedness check needs max_n >= 2"));
    }
    let mut per_n = Vec::with_capacity(max_n - 1);
    for n in 2..=max_n {
        let union_size = match group {
            Group::Z => union_z(n),
            Group::Z2 => union_z2(n),
        };
        let window_size = match group {
            Group::Z => n,
            Group::Z2 => n * n,
        };
        per_n.push(TemperRow { n, union_size, window_size, ratio: union_size as f64 / window_size as f64 });
    }
    let c_observed = per_n.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(TemperednessReport { group, c_observed, per_n })
}

// Coordinates of -a + F_n lie in [-(n-1), n-1]; shift by n.
fn union_z(n: usize) -> usize {
    let size = 2 * n + 1;
    let mut diff = vec![0i64; size + 1];
    for k in 1..n {
        for a in 0..k {
            diff[n - a] += 1;
            diff[2 * n - 1 - a + 1] -= 1;
        }
    }
    let mut run = 0;
    diff.iter().take(size).filter(|d| {
        run += **d;
        run > 0
    })
    .count()
}

fn union_z2(n: usize) -> usize {
    let size = 2 * n + 1;
    let mut diff = vec![0i64; (size + 1) * (size + 1)];
    let at = |i: usize, j: usize| i * (size + 1) + j;
    for k in 1..n {
        for a0 in 0..k {
            for a1 in 0..k {
                let (lo0, hi0) = (n - a0, 2 * n - 1 - a0 + 1);
                let (lo1, hi1) = (n - a1, 2 * n - 1 - a1 + 1);
                diff[at(lo0, lo1)] += 1;
                diff[at(hi0, lo1)] -= 1;
                diff[at(lo0, hi1)] -= 1;
                diff[at(hi0, hi1)] += 1;
            }
        }
    }
    for i in 0..=size {
        for j in 1..=size {
            diff[at(i, j)] += diff[at(i, j - 1)];
        }
    }
    for i in 1..=size {
        for j in 0..=size {
            diff[at(i, j)] += diff[at(i - 1, j)];
        }
    }
    (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).filter(|&(i, j)| diff[at(i, j)] > 0).count()
}
