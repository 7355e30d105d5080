mod common;

use acegraph::dependency::brute_force_classify;
use acegraph::partitions::pi;
use acegraph::{build, count_sets, stats, Algorithm, DegreeSpec, Dependence, Group, Norm};
use num_traits::ToPrimitive;

#[test]
fn set_counts_against_subset_oracle() {
    let c = count_sets(Group::T, 2, DegreeSpec::total(4)).unwrap();
    assert_eq!((c.total, c.dependent, c.independent), (3, 1, 2));
    let c = count_sets(Group::T, 3, DegreeSpec::total(1)).unwrap();
    assert_eq!((c.total, c.dependent), (1, 1));

    for g in Group::ALL {
        let tuples = common::brute_k(g, 3, Norm::L1, 4);
        let dependent = tuples.iter().filter(|t| brute_force_classify(t, g) == Dependence::Dependent).count();
        let c = count_sets(g, 3, DegreeSpec::total(4)).unwrap();
        assert_eq!((c.total, c.dependent, c.independent), (tuples.len(), dependent, tuples.len() - dependent), "{g}");
    }
}

#[test]
fn dependent_fraction_scales_like_inverse_degree() {
    for nu in 3..=5 {
        let scaled: Vec<f64> = (8..=40)
            .map(|d| {
                let c = count_sets(Group::T, nu, DegreeSpec::total(d)).unwrap();
                d as f64 * c.dependent as f64 / c.total as f64
            })
            .collect();
        let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = scaled.iter().cloned().fold(0.0, f64::max);
        assert!(lo > 0.0 && hi / lo < 3.0, "nu={nu}: D*dep/K in [{lo}, {hi}]");
    }
}

#[test]
fn o3_auxiliary_count_is_frozen() {
    // Recorded from the first run of the implementation.
    let g = build(Group::O3, DegreeSpec::total(5), 3, Algorithm::Original).unwrap();
    let s = stats(&g);
    assert_eq!(s.num_aux, 10);
    assert_eq!(s.num_total, s.num_targets + s.num_aux);
}

#[test]
fn torus_two_body_graphs_need_no_auxiliaries() {
    for d in 0..=20 {
        let g = build(Group::T, DegreeSpec::total(d), 2, Algorithm::Original).unwrap();
        assert_eq!(stats(&g).num_aux, 0, "D={d}");
    }
}

#[test]
fn stats_total_is_targets_plus_auxiliaries() {
    for g in Group::ALL {
        let graph = build(g, DegreeSpec::total(5), 4, Algorithm::Generalized { n: 2 }).unwrap();
        let s = stats(&graph);
        let summed: usize = s.per_order.iter().map(|o| o.targets).sum();
        assert_eq!(s.num_targets, summed);
        assert_eq!(s.num_total, s.num_targets + s.num_aux);
        assert_eq!(s.num_targets, s.num_dependent + s.num_independent);
        let seeds_off_basis = graph
            .nodes()
            .iter()
            .filter(|n| n.tuple.order() == 1 && !graph.is_target(&n.tuple))
            .count();
        assert_eq!(s.num_nodes, s.num_total + seeds_off_basis);
    }
}

#[test]
fn partition_counts_approach_leading_term() {
    let factorial = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let scaled = |k: usize, n: usize| {
        pi(k, n).to_f64().unwrap() * factorial(k) * factorial(k - 1) / (n as f64).powi(k as i32 - 1)
    };
    for k in 1..=5 {
        let near = scaled(k, 10_000);
        assert!((0.8..=1.2).contains(&near), "k={k}: {near}");
        assert!((near - 1.0).abs() <= (scaled(k, 1_000) - 1.0).abs(), "k={k}");
        assert!((scaled(k, 1_000) - 1.0).abs() <= (scaled(k, 100) - 1.0).abs(), "k={k}");
    }
}
