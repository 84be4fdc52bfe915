use serde::{Deserialize, Serialize};

use crate::barycenter::{parse_weight, BarOptions, FiniteFamily, RationalMeasure, StarOptions};
use crate::ergodic::{DynamicalSystem, Group, Observable, Partition, State};
use crate::error::{Error, Result};
use crate::spaces::{AnySpace, PointDoc, SpaceDoc, SpacePoint};

/// JSON measure: `{"atoms": [{"point": ..., "weight": "p/q"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDoc {
    pub atoms: Vec<AtomDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub point: PointDoc,
    pub weight: String,
}

impl MeasureDoc {
    pub fn parse(&self, space: &AnySpace) -> Result<RationalMeasure<SpacePoint>> {
        let pairs = self
            .atoms
            .iter()
            .map(|a| Ok((space.parse_point(&a.point)?, parse_weight(&a.weight)?)))
            .collect::<Result<Vec<_>>>()?;
        RationalMeasure::new(pairs)
    }

    pub fn from_measure(space: &AnySpace, mu: &RationalMeasure<SpacePoint>) -> Self {
        let atoms = mu
            .atoms()
            .iter()
            .zip(mu.weights())
            .map(|(p, w)| AtomDoc { point: space.point_doc(p), weight: format!("{}/{}", w.numer(), w.denom()) })
            .collect();
        Self { atoms }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Barycenter,
    Wasserstein,
    Ergodic,
    Fixtures,
    Probe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// `bar*` of `measure`.
    #[default]
    Star,
    /// `bar_n` of the ordered `family`.
    Inductive,
    /// Cartan barycenter of `measure`.
    Cartan,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SystemDoc {
    Rotation { alpha: f64 },
    Golden,
    Torus { a: [f64; 2], b: [f64; 2] },
    Permutation { perm: Vec<usize> },
}

impl SystemDoc {
    pub fn build(&self) -> Result<DynamicalSystem> {
        match self {
            SystemDoc::Rotation { alpha } => DynamicalSystem::rotation(*alpha),
            SystemDoc::Golden => Ok(DynamicalSystem::golden_rotation()),
            SystemDoc::Torus { a, b } => DynamicalSystem::torus_translation(*a, *b),
            SystemDoc::Permutation { perm } => DynamicalSystem::permutation(perm.clone()),
        }
    }
}

/// Observables. `cuts` are interior cut points as fraction strings; cell
/// values are listed in cell order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ObservableDoc {
    Constant { point: PointDoc },
    Intervals { cuts: Vec<String>, values: Vec<PointDoc> },
    Grid { x: Vec<String>, y: Vec<String>, values: Vec<PointDoc> },
    States { cells: Vec<usize>, values: Vec<PointDoc> },
    /// The state itself as a point of `R` (circle) or `R^2` (torus).
    Identity,
}

fn cuts(v: &[String]) -> Result<Vec<crate::barycenter::Weight>> {
    v.iter().map(|s| parse_weight(s)).collect()
}

impl ObservableDoc {
    pub fn build(&self, space: &AnySpace) -> Result<Observable<SpacePoint>> {
        let points = |v: &[PointDoc]| v.iter().map(|p| space.parse_point(p)).collect::<Result<Vec<_>>>();
        match self {
            ObservableDoc::Constant { point } => Ok(Observable::Constant(space.parse_point(point)?)),
            ObservableDoc::Intervals { cuts: c, values } => Observable::cells(Partition::Intervals(cuts(c)?), points(values)?),
            ObservableDoc::Grid { x, y, values } => {
                Observable::cells(Partition::Grid { x: cuts(x)?, y: cuts(y)? }, points(values)?)
            }
            ObservableDoc::States { cells, values } => Observable::cells(Partition::States(cells.clone()), points(values)?),
            ObservableDoc::Identity => match space {
                AnySpace::Euclidean(e) if e.dim() <= 2 => {
                    let dim = e.dim();
                    Ok(Observable::map(move |s: &State| {
                        let coords: Vec<f64> = match s {
                            State::Circle(x) => vec![*x],
                            State::Torus(xy) => xy.to_vec(),
                            State::Finite(i) => vec![*i as f64],
                        };
                        SpacePoint::Euclidean(coords.into_iter().chain(std::iter::repeat(0.0)).take(dim).collect())
                    }))
                }
                _ => Err(Error::Usage("the identity observable needs a Euclidean space of dimension 1 or 2".into())),
            },
        }
    }
}

/// Caps for the barycenter computations; unset fields keep the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsDoc {
    pub denominator_cap: Option<u64>,
    pub max_replication: Option<u64>,
    pub max_expansion: Option<u64>,
    pub level_growth: Option<u64>,
    pub entry_budget: Option<u64>,
    pub work_budget: Option<u64>,
}

impl LimitsDoc {
    pub fn star_options(&self) -> StarOptions {
        let d = StarOptions::default();
        StarOptions {
            denominator_cap: self.denominator_cap.unwrap_or(d.denominator_cap),
            max_replication: self.max_replication.unwrap_or(d.max_replication),
            max_expansion: self.max_expansion.unwrap_or(d.max_expansion),
            level_growth: self.level_growth.unwrap_or(d.level_growth),
            entry_budget: self.entry_budget.unwrap_or(d.entry_budget),
            bar: BarOptions { work_budget: self.work_budget.unwrap_or(d.bar.work_budget), ..d.bar },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProbeDoc {
    /// Gaps `d(bar_{nk}, bar_{n(k+l)})` of `measure` for `l = 1..=max_l`.
    Replication { k: u64, max_l: u64 },
    /// Diameters of the iterated geodesic hull of `family`.
    Hull { depth: usize, samples_per_level: usize },
    Temperedness { group: Group, max_n: usize },
    /// Tail table of the maximal gap between `observable` and `observable2`.
    MaximalGap { omega_samples: usize, max_n: usize },
    MeasurePreserving { samples: usize },
    /// `d_1` and the integrated contraction for `observable`, `observable2`.
    Contraction { n: usize, samples: usize },
}

/// An experiment read from JSON. Fields not needed by the command are
/// ignored; unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    pub space: Option<SpaceDoc>,
    #[serde(default)]
    pub method: Method,
    pub measure: Option<MeasureDoc>,
    /// Second measure for `wasserstein`.
    pub measure2: Option<MeasureDoc>,
    pub family: Option<Vec<PointDoc>>,
    pub system: Option<SystemDoc>,
    pub observable: Option<ObservableDoc>,
    pub observable2: Option<ObservableDoc>,
    /// Starting state; drawn from the seed when absent.
    pub omega: Option<StateDoc>,
    pub n_grid: Option<Vec<usize>>,
    pub probe: Option<ProbeDoc>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub limits: LimitsDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateDoc {
    Finite(usize),
    Circle(f64),
    Torus([f64; 2]),
}

impl StateDoc {
    pub fn state(&self, system: &DynamicalSystem) -> Result<State> {
        let s = match (self, system) {
            (StateDoc::Circle(x), DynamicalSystem::Rotation { .. }) => State::Circle(*x),
            (StateDoc::Finite(i), DynamicalSystem::Rotation { .. }) => State::Circle(*i as f64),
            (StateDoc::Torus(xy), _) => State::Torus(*xy),
            (StateDoc::Finite(i), _) => State::Finite(*i),
            (StateDoc::Circle(x), _) => return Err(Error::Usage(format!("omega {x} does not fit the system"))),
        };
        system.check_state(&s)?;
        Ok(s)
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Usage(format!("malformed config at line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn require<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T> {
        field.as_ref().ok_or_else(|| Error::Usage(format!("config field \"{name}\" is required for this command")))
    }

    pub fn space(&self) -> Result<AnySpace> {
        AnySpace::from_doc(Self::require(&self.space, "space")?)
    }

    pub fn family(&self, space: &AnySpace) -> Result<FiniteFamily<SpacePoint>> {
        let docs = Self::require(&self.family, "family")?;
        FiniteFamily::new(docs.iter().map(|p| space.parse_point(p)).collect::<Result<Vec<_>>>()?)
    }
}
