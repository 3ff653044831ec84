mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dissociation::kpath::mu_k_brute;
use dissociation::structure::{
    critical_edges_alpha3, critical_edges_covered_by_all_max_matchings, critical_edges_mu3, verify_structure_theorems,
    DEFAULT_ENUMERATION_CAP,
};
use dissociation::treegen::free_trees;
use dissociation::{brute_force_mds, Forest};

fn alpha3_critical_brute(t: &Forest) -> Vec<(usize, usize)> {
    let base = brute_force_mds(t).unwrap().0;
    t.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| brute_force_mds(&t.without_edge(u, v)).unwrap().0 > base)
        .collect()
}

fn mu3_critical_brute(t: &Forest) -> Vec<(usize, usize)> {
    let base = mu_k_brute(t, 3).unwrap();
    t.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| mu_k_brute(&t.without_edge(u, v), 3).unwrap() < base)
        .collect()
}

#[test]
fn critical_edges_match_brute_force_definitions() {
    for n in 1..=9 {
        for t in free_trees(n) {
            let fast = critical_edges_alpha3(&t);
            assert_eq!(fast, alpha3_critical_brute(&t), "{}", t.to_edge_list());
            assert_eq!(critical_edges_mu3(&t), mu3_critical_brute(&t), "{}", t.to_edge_list());
        }
    }
}

#[test]
fn every_maximum_matching_uses_each_critical_edge() {
    for n in 3..=9 {
        for t in free_trees(n) {
            assert!(critical_edges_covered_by_all_max_matchings(&t).unwrap(), "{}", t.to_edge_list());
        }
    }
}

#[test]
fn random_medium_trees_pass_structure_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let t = common::random_tree(&mut rng, 30);
        let report = verify_structure_theorems(&t, DEFAULT_ENUMERATION_CAP);
        assert_eq!(report.failure_count(), 0, "{}", t.to_edge_list());
    }
}

#[test]
fn random_forests_pass_structure_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let f = common::random_forest(&mut rng, 25, 0.15);
        let report = verify_structure_theorems(&f, DEFAULT_ENUMERATION_CAP);
        assert_eq!(report.failure_count(), 0, "{}", f.to_edge_list());
    }
}
