mod common;

use std::collections::HashSet;

use busemann::barycenter::{parse_weight, StarOptions};
use busemann::ergodic::{
    birkhoff_average, convergence_diagnostics, empirical_measure, ergodic_average, folner_window,
    l1_contraction_estimate, temperedness_check, DynamicalSystem, Group, Observable, Partition, State,
};
use busemann::spaces::{Euclidean, GeodesicSpace, MetricTree, TreePoint, Vector};

fn real(f: fn(f64) -> f64) -> Observable<Vector> {
    Observable::map(move |s: &State| match s {
        State::Circle(x) => Vector::from_slice(&[f(*x)]),
        _ => unreachable!("circle states only"),
    })
}

fn tripod_cells(t: &MetricTree, cuts: [&str; 2]) -> Observable<TreePoint> {
    let v = |s| t.vertex(s).unwrap();
    let cuts = cuts.iter().map(|c| parse_weight(c).unwrap()).collect();
    Observable::cells(Partition::Intervals(cuts), vec![v("x"), v("y"), v("z")]).unwrap()
}

fn brute_union(group: Group, n: usize) -> usize {
    let mut set = HashSet::new();
    for k in 1..n {
        for a in folner_window(group, k).unwrap().elements {
            for b in folner_window(group, n).unwrap().elements {
                set.insert([b[0] - a[0], b[1] - a[1]]);
            }
        }
    }
    set.len()
}

#[test]
fn temperedness_matches_set_enumeration() {
    for (group, max_n) in [(Group::Z, 40), (Group::Z2, 9)] {
        let report = temperedness_check(group, max_n).unwrap();
        for row in &report.per_n {
            assert_eq!(row.union_size, brute_union(group, row.n), "{group:?} n = {}", row.n);
        }
    }
    let z = temperedness_check(Group::Z, 256).unwrap();
    assert!(z.c_observed <= 2.0);
    assert_eq!(z.per_n[0].union_size, 2);
    assert!(temperedness_check(Group::Z2, 16).unwrap().c_observed <= 4.0);
    assert!("free".parse::<Group>().is_err());
}

#[test]
fn systems_preserve_their_measures() {
    let systems = [
        DynamicalSystem::golden_rotation(),
        DynamicalSystem::rotation(0.25).unwrap(),
        DynamicalSystem::torus_translation([0.5f64.sqrt(), 0.1], [0.2, 3f64.sqrt()]).unwrap(),
        DynamicalSystem::permutation(vec![3, 0, 4, 1, 2]).unwrap(),
    ];
    for (i, s) in systems.iter().enumerate() {
        let check = s.check_measure_preserving(20_000, i as u64).unwrap();
        assert!(check.passed, "{s:?}: {check:?}");
    }
}

#[test]
fn empirical_measures_have_window_many_atoms() {
    let e = Euclidean::new(2).unwrap();
    let torus = DynamicalSystem::torus_translation([0.3, 0.7], [0.11, 0.5]).unwrap();
    let phi = Observable::map(|s: &State| match s {
        State::Torus(xy) => Vector::from_slice(xy),
        _ => unreachable!(),
    });
    for n in 1..=6 {
        let mu = empirical_measure(&torus, &phi, &State::Torus([0.1, 0.2]), n).unwrap();
        assert_eq!(mu.window_size, n * n);
        let (total, counts) = mu.measure.counts();
        assert_eq!(counts.iter().sum::<u64>(), total);
        assert_eq!((n * n) as u64 % total, 0);
    }
    let mu = empirical_measure(&torus, &phi, &State::Torus([0.1, 0.2]), 1).unwrap();
    assert_eq!(mu.measure.atoms()[0].as_slice(), &[0.1, 0.2]);
    let avg = ergodic_average(&e, &torus, &phi, &State::Torus([0.1, 0.2]), 2, 1e-9).unwrap();
    let mean = e.weighted_mean(empirical_measure(&torus, &phi, &State::Torus([0.1, 0.2]), 2).unwrap().measure.atoms(), &[1.0; 4]);
    assert!(e.distance(&avg.point, &mean) <= 1e-9);
    assert!(empirical_measure(&torus, &phi, &State::Circle(0.1), 2).is_err());
    assert!(empirical_measure(&torus, &phi, &State::Torus([0.1, 0.2]), 0).is_err());
}

#[test]
fn finite_permutation_averages_are_exact() {
    // A 5-cycle: every window of length 5 sees each state once.
    let p = DynamicalSystem::permutation(vec![1, 2, 3, 4, 0]).unwrap();
    let phi = Observable::map(|s: &State| match s {
        State::Finite(i) => Vector::from_slice(&[*i as f64]),
        _ => unreachable!(),
    });
    for start in 0..5 {
        assert_eq!(birkhoff_average(&p, &phi, &State::Finite(start), 5).unwrap(), 2.0);
        assert_eq!(birkhoff_average(&p, &phi, &State::Finite(start), 10).unwrap(), 2.0);
    }
}

#[test]
fn real_averages_reduce_to_birkhoff() {
    let e = Euclidean::new(1).unwrap();
    let t = DynamicalSystem::golden_rotation();
    let phi = real(|x| x * x);
    for omega in t.sample_states(5, 11) {
        for n in [1, 3, 17, 64, 200] {
            let a = ergodic_average(&e, &t, &phi, &omega, n, 1e-10).unwrap();
            let b = birkhoff_average(&t, &phi, &omega, n).unwrap();
            assert!((a.point[0] - b).abs() <= 1e-10);
        }
    }
}

#[test]
fn integrated_contraction_within_three_standard_errors() {
    let e = Euclidean::new(1).unwrap();
    let t = DynamicalSystem::golden_rotation();
    let tree = MetricTree::tripod(1.0).unwrap();
    let opts = StarOptions { max_expansion: 64, ..StarOptions::default() };
    for n in [4, 16, 64] {
        let est = l1_contraction_estimate(&e, &t, &real(|x| x), &real(|x| x * x), n, 40, 1e-9, 1, &opts).unwrap();
        assert!(est.lhs.mean <= est.d1.mean + 3.0 * (est.lhs.std_error + est.d1.std_error), "{est:?}");
        for (seed, cuts) in [(2, [["1/2", "3/4"], ["1/3", "2/3"]]), (3, [["1/4", "1/2"], ["1/2", "5/6"]])] {
            let phi = tripod_cells(&tree, cuts[0]);
            let psi = tripod_cells(&tree, cuts[1]);
            let est = l1_contraction_estimate(&tree, &t, &phi, &psi, n, 30, 1e-9, seed, &opts).unwrap();
            assert!(est.lhs.mean <= est.d1.mean + 3.0 * (est.lhs.std_error + est.d1.std_error), "{est:?}");
        }
    }
}

#[test]
fn limits_do_not_depend_on_the_orbit_point() {
    let t = DynamicalSystem::golden_rotation();
    let e = Euclidean::new(1).unwrap();
    for omega in t.sample_states(5, 4) {
        let shifted = t.act([1, 0], &omega);
        for n in [16, 64, 256] {
            let a = ergodic_average(&e, &t, &real(|x| x), &omega, n, 1e-10).unwrap();
            let b = ergodic_average(&e, &t, &real(|x| x), &shifted, n, 1e-10).unwrap();
            assert!(e.distance(&a.point, &b.point) <= 1.0 / n as f64 + 1e-9);
        }
    }
    let tree = MetricTree::tripod(1.0).unwrap();
    let phi = tripod_cells(&tree, ["1/2", "3/4"]);
    let opts = StarOptions { entry_budget: 200_000, ..StarOptions::default() };
    let omega = State::Circle(0.3);
    let a = convergence_diagnostics(&tree, &t, &phi, &omega, &[64, 256], 1e-9, &opts).unwrap();
    let b = convergence_diagnostics(&tree, &t, &phi, &t.act([1, 0], &omega), &[64, 256], 1e-9, &opts).unwrap();
    assert_eq!(a.candidate, b.candidate);
    assert!(a.rows[1].distance_to_candidate < 0.05 && b.rows[1].distance_to_candidate < 0.05);
}

#[test]
fn real_diagnostics_approach_one_half() {
    let e = Euclidean::new(1).unwrap();
    let t = DynamicalSystem::golden_rotation();
    let half = e.point(&[0.5]).unwrap();
    let table =
        convergence_diagnostics(&e, &t, &real(|x| x), &State::Circle(0.77), &[4, 32, 256], 1e-10, &StarOptions::default())
            .unwrap();
    assert!(!table.exact_limit);
    let d: Vec<f64> = table.rows.iter().map(|r| e.distance(&r.point, &half)).collect();
    assert!(d[2] < d[0] && d[2] < 0.02, "{d:?}");
}
