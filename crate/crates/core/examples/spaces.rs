//! Distances, geodesics and hull probes in the three model spaces.

use busemann::spaces::{convex_hull_diameter_probe, Euclidean, GeodesicSpace, HalfPlane, MetricTree, TreeDoc};

fn main() -> busemann::Result<()> {
    let e = Euclidean::new(2)?;
    let (p, q) = (e.point(&[0.0, 0.0])?, e.point(&[3.0, 4.0])?);
    println!("R^2: d = {}, midpoint = {:?}", e.distance(&p, &q), e.midpoint(&p, &q).as_slice());

    // A small tree loaded from its JSON form.
    let doc: TreeDoc = serde_json::from_str(
        r#"{"vertices": ["r", "a", "b", "c"], "edges": [["r", "a", 1.0], ["r", "b", 2.0], ["b", "c", 0.5]]}"#,
    )
    .unwrap();
    let t = MetricTree::from_doc(&doc)?;
    let (a, c) = (t.vertex("a")?, t.vertex("c")?);
    let m = t.midpoint(&a, &c);
    println!("tree: d(a, c) = {}, midpoint {:?} = {:?}", t.distance(&a, &c), m, t.edge_form(&m));

    let h = HalfPlane;
    let (u, v) = (h.point(-1.0, 1.0)?, h.point(1.0, 1.0)?);
    println!("half-plane: d = {:.6}, midpoint = {:?}", h.distance(&u, &v), h.midpoint(&u, &v));
    for t in [0.25, 0.5, 0.75] {
        let g = h.geodesic_point(&u, &v, t);
        println!("  t = {t}: {:?}, d from start {:.6}", g, h.distance(&u, &g));
    }

    // Adding geodesics never makes the set wider.
    let pts = vec![h.point(0.0, 0.5)?, h.point(2.0, 1.0)?, h.point(-1.0, 2.5)?];
    let diams = convex_hull_diameter_probe(&h, &pts, 4, 40, 1)?;
    println!("hull diameters by level: {diams:?}");
    Ok(())
}
