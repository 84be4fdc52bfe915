use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::folner::{Group, GroupElement};
use crate::error::{domain, Result};

/// Rotation number `(sqrt 5 - 1) / 2`.
pub const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// A point of the state space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum State {
    /// `[0, 1)` with Lebesgue measure.
    Circle(f64),
    /// `[0, 1)^2` with Lebesgue measure.
    Torus([f64; 2]),
    /// `{0, ..., N - 1}` with counting measure normalized to 1.
    Finite(usize),
}

/// An invertible measure-preserving action of `Z` or `Z^2`.
#[derive(Debug, Clone, PartialEq)]
pub enum DynamicalSystem {
    /// `omega -> omega + alpha (mod 1)` on the circle, a `Z`-action.
    Rotation { alpha: f64 },
    /// `(i, j) . omega = omega + i a + j b (mod 1)` on the torus, a
    /// `Z^2`-action.
    TorusTranslation { a: [f64; 2], b: [f64; 2] },
    /// `i -> perm[i]` on a finite set with uniform measure, a `Z`-action.
    Permutation { perm: Vec<usize>, inverse: Vec<usize> },
}

fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl DynamicalSystem {
    pub fn rotation(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(domain("rotation angle must be finite"));
        }
        Ok(Self::Rotation { alpha: wrap(alpha) })
    }

    pub fn golden_rotation() -> Self {
        Self::Rotation { alpha: GOLDEN }
    }

    pub fn torus_translation(a: [f64; 2], b: [f64; 2]) -> Result<Self> {
        if a.iter().chain(&b).any(|x| !x.is_finite()) {
            return Err(domain("translation vectors must be finite"));
        }
        Ok(Self::TorusTranslation { a: [wrap(a[0]), wrap(a[1])], b: [wrap(b[0]), wrap(b[1])] })
    }

    /// Fails unless `perm` is a bijection of `{0, ..., N - 1}`.
    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(domain("permutation of an empty set"));
        }
        let mut inverse = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inverse[p] != usize::MAX {
                return Err(domain("the map is not a bijection, so the action is not invertible"));
            }
            inverse[p] = i;
        }
        Ok(Self::Permutation { perm, inverse })
    }

    pub fn group(&self) -> Group {
        match self {
            Self::TorusTranslation { .. } => Group::Z2,
            _ => Group::Z,
        }
    }

    pub fn check_state(&self, state: &State) -> Result<()> {
        let unit = |x: f64| (0.0..1.0).contains(&x);
        match (self, state) {
            (Self::Rotation { .. }, State::Circle(x)) if unit(*x) => Ok(()),
            (Self::TorusTranslation { .. }, State::Torus([x, y])) if unit(*x) && unit(*y) => Ok(()),
            (Self::Permutation { perm, .. }, State::Finite(i)) if *i < perm.len() => Ok(()),
            _ => Err(domain(format!("state {state:?} is not in the state space of this system"))),
        }
    }

    /// `T^g omega`.
    pub fn act(&self, g: GroupElement, state: &State) -> State {
        match (self, state) {
            (Self::Rotation { alpha }, State::Circle(x)) => State::Circle(wrap(x + g[0] as f64 * alpha)),
            (Self::TorusTranslation { a, b }, State::Torus([x, y])) => {
                let (i, j) = (g[0] as f64, g[1] as f64);
                State::Torus([wrap(x + i * a[0] + j * b[0]), wrap(y + i * a[1] + j * b[1])])
            }
            (Self::Permutation { perm, inverse }, State::Finite(s)) => {
                let map = if g[0] >= 0 { perm } else { inverse };
                let mut s = *s;
                for _ in 0..g[0].unsigned_abs() {
                    s = map[s];
                }
                State::Finite(s)
            }
            _ => *state,
        }
    }

    /// A draw from the invariant measure.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> State {
        match self {
            Self::Rotation { .. } => State::Circle(rng.gen::<f64>()),
            Self::TorusTranslation { .. } => State::Torus([rng.gen::<f64>(), rng.gen::<f64>()]),
            Self::Permutation { perm, .. } => State::Finite(rng.gen_range(0..perm.len())),
        }
    }

    /// `samples` seeded draws of the invariant measure.
    pub fn sample_states(&self, samples: usize, seed: u64) -> Vec<State> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| self.sample(&mut rng)).collect()
    }

    /// Monte-Carlo check that every generator pushes the invariant measure
    /// to itself: binned frequencies of `T(omega)` against the bin masses.
    pub fn check_measure_preserving(&self, samples: usize, seed: u64) -> Result<PushforwardCheck> {
        if samples == 0 {
            return Err(domain("pushforward check needs at least one sample"));
        }
        let generators: Vec<GroupElement> = match self.group() {
            Group::Z => vec![[1, 0], [-1, 0]],
            Group::Z2 => vec![[1, 0], [0, 1], [-1, 0], [0, -1]],
        };
        let bins = self.bin_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for g in generators {
            let mut hist = vec![0usize; bins];
            for _ in 0..samples {
                let image = self.act(g, &self.sample(&mut rng));
                hist[self.bin(&image)] += 1;
            }
            for h in hist {
                worst = worst.max((h as f64 / samples as f64 - 1.0 / bins as f64).abs());
            }
        }
        let threshold = 3.0 / (samples as f64).sqrt();
        Ok(PushforwardCheck { max_deviation: worst, threshold, passed: worst <= threshold })
    }

    fn bin_count(&self) -> usize {
        match self {
            Self::Rotation { .. } => 10,
            Self::TorusTranslation { .. } => 16,
            Self::Permutation { perm, .. } => perm.len(),
        }
    }

    fn bin(&self, state: &State) -> usize {
        match state {
            State::Circle(x) => ((x * 10.0) as usize).min(9),
            State::Torus([x, y]) => ((x * 4.0) as usize).min(3) * 4 + ((y * 4.0) as usize).min(3),
            State::Finite(i) => *i,
        }
    }
}

/// Outcome of [`DynamicalSystem::check_measure_preserving`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PushforwardCheck {
    pub max_deviation: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_orbit() {
        let t = DynamicalSystem::rotation(0.25).unwrap();
        let orbit: Vec<State> = (0..4).map(|g| t.act([g, 0], &State::Circle(0.0))).collect();
        assert_eq!(orbit, vec![State::Circle(0.0), State::Circle(0.25), State::Circle(0.5), State::Circle(0.75)]);
        assert_eq!(t.act([-1, 0], &State::Circle(0.0)), State::Circle(0.75));
    }

    #[test]
    fn permutation_must_be_bijective() {
        assert!(DynamicalSystem::permutation(vec![0, 0, 1]).is_err());
        let p = DynamicalSystem::permutation(vec![1, 2, 0]).unwrap();
        assert_eq!(p.act([2, 0], &State::Finite(0)), State::Finite(2));
        assert_eq!(p.act([-1, 0], &State::Finite(0)), State::Finite(2));
    }

    #[test]
    fn systems_preserve_their_measures() {
        let systems = [
            DynamicalSystem::golden_rotation(),
            DynamicalSystem::torus_translation([GOLDEN, 0.0], [0.0, 2f64.sqrt()]).unwrap(),
            DynamicalSystem::permutation(vec![3, 0, 1, 2]).unwrap(),
        ];
        for (i, s) in systems.iter().enumerate() {
            let check = s.check_measure_preserving(20_000, i as u64).unwrap();
            assert!(check.passed, "{s:?}: {check:?}");
        }
    }

    #[test]
    fn states_are_validated() {
        let t = DynamicalSystem::golden_rotation();
        assert!(t.check_state(&State::Circle(0.5)).is_ok());
        assert!(t.check_state(&State::Circle(1.0)).is_err());
        assert!(t.check_state(&State::Torus([0.1, 0.2])).is_err());
    }
}
