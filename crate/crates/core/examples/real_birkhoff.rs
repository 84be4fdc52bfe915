//! On the real line the barycentric average is the classical one.

use busemann::ergodic::{birkhoff_average, ergodic_average, DynamicalSystem, Observable, State};
use busemann::spaces::{Euclidean, Vector};

fn main() -> busemann::Result<()> {
    let e = Euclidean::new(1)?;
    let rotation = DynamicalSystem::golden_rotation();
    let phi: Observable<Vector> = Observable::map(|s| match s {
        State::Circle(x) => std::iter::once(x * x).collect(),
        _ => unreachable!(),
    });
    let omega = State::Circle(0.25);
    for n in [1, 10, 100, 1000] {
        let bary = ergodic_average(&e, &rotation, &phi, &omega, n, 1e-10)?;
        let classical = birkhoff_average(&rotation, &phi, &omega, n)?;
        println!("n = {n:>4}: {:.12} {:.12}", bary.point[0], classical);
    }
    println!("limit 1/3");
    Ok(())
}
