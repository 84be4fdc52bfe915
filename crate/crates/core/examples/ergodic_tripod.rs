//! Barycentric ergodic averages of a three-valued observable under the
//! golden rotation, approaching `bar*` of the limit measure.

use busemann::barycenter::{parse_weight, StarOptions};
use busemann::ergodic::{convergence_diagnostics, DynamicalSystem, Observable, Partition, State};
use busemann::spaces::{AnySpace, MetricTree, SpacePoint};

fn main() -> busemann::Result<()> {
    let t = MetricTree::tripod(1.0)?;
    let [x, y, z] = ["x", "y", "z"].map(|v| t.vertex(v).unwrap());
    // [0, 1/2) -> x, [1/2, 5/6) -> y, [5/6, 1) -> z.
    let cuts = vec![parse_weight("1/2")?, parse_weight("5/6")?];
    let phi = Observable::cells(Partition::Intervals(cuts), vec![x, y, z])?;
    let rotation = DynamicalSystem::golden_rotation();
    let opts = StarOptions { entry_budget: 200_000, ..StarOptions::default() };

    let table = convergence_diagnostics(&t, &rotation, &phi, &State::Circle(0.1), &[4, 16, 64, 256], 1e-9, &opts)?;
    let space = AnySpace::Tree(t.clone());
    table.write_csv(std::io::stdout(), |p| serde_json::to_string(&space.point_doc(&SpacePoint::Tree(*p))).unwrap())?;
    Ok(())
}
