//! Barycentric ergodic averages for measure-preserving `Z`- and `Z^2`-actions.
//!
//! The empirical measure of an observable `phi` along the window `F_n` of
//! the orbit of `omega` is the equal-weight measure on `phi(T^g omega)`,
//! `g in F_n`; its [`bar_star`](crate::barycenter::bar_star) is the ergodic
//! average. For real-valued observables this is the usual Birkhoff average.
//!
//! Windows are boxes, `{0, ..., n-1}` or `{0, ..., n-1}^2`. All sampling is
//! seeded ([`ChaCha8Rng`](rand_chacha::ChaCha8Rng) via `seed_from_u64`).

mod averages;
mod folner;
mod observable;
mod system;

pub use averages::{
    birkhoff_average, convergence_diagnostics, empirical_measure, ergodic_average, ergodic_average_with,
    l1_contraction_estimate, l1_distance, maximal_gap_probe, ConvergenceTable, ContractionEstimate, DiagnosticRow,
    EmpiricalMeasure, Estimate, MaximalGapReport, TailRow, LAMBDA_GRID,
};
pub use folner::{folner_window, temperedness_check, FolnerWindow, Group, GroupElement, TemperRow, TemperednessReport};
pub use observable::{AsReal, Observable, Partition};
pub use system::{DynamicalSystem, PushforwardCheck, State, GOLDEN};
