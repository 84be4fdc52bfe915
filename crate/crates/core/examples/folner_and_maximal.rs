//! Box windows are tempered; the maximal gap between averages of two
//! observables stays comparable to their L1 distance.

use busemann::barycenter::StarOptions;
use busemann::ergodic::{maximal_gap_probe, temperedness_check, DynamicalSystem, Group, Observable, State};
use busemann::spaces::{Euclidean, Vector};

fn main() -> busemann::Result<()> {
    for (group, max_n) in [(Group::Z, 256), (Group::Z2, 16)] {
        let r = temperedness_check(group, max_n)?;
        println!("{group:?}: C_observed = {:.4} up to n = {max_n}", r.c_observed);
    }

    let e = Euclidean::new(2)?;
    let torus = DynamicalSystem::torus_translation([0.5f64.sqrt(), 0.0], [0.0, 3f64.sqrt() - 1.0])?;
    let coords = |s: &State| -> [f64; 2] {
        match s {
            State::Torus(p) => *p,
            _ => unreachable!(),
        }
    };
    let phi: Observable<Vector> = Observable::map(move |s| coords(s).into_iter().collect());
    let psi: Observable<Vector> = Observable::map(move |s| coords(s).map(|c| c * c).into_iter().collect());
    let report = maximal_gap_probe(&e, &torus, &phi, &psi, 20, 2, 1e-9, 3, &StarOptions::default())?;
    println!("d_1 = {:.4} +- {:.4}", report.d1.mean, report.d1.std_error);
    for row in report.rows.iter().step_by(4) {
        println!("lambda {:.4}: P(sup >= lambda) = {:.2}, ratio {:.3}", row.lambda, row.probability, row.ratio);
    }
    Ok(())
}
