mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dissociation::dissociation::{alpha3, alpha3_count_u64, is_dissociation_set};
use dissociation::kpath::{alpha_k_brute, alpha_k_dp, verify_kke, KkeMode};
use dissociation::structure::{classify_vertices, critical_structure};
use dissociation::{alpha3_count_dp, brute_force_mds, canonical_code, enumerate_mds, parse_edge_list, Forest};

fn forest_strategy(max_n: usize) -> impl Strategy<Value = Forest> {
    prop::collection::vec(any::<usize>(), 0..=max_n).prop_map(|codes| common::forest_from_codes(&codes))
}

fn tree_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Forest> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, seed)| common::random_tree(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn shuffled(forest: &Forest, seed: u64) -> Forest {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..forest.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    forest.relabel(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dp_matches_brute_force_on_forests(f in forest_strategy(14)) {
        let (alpha, sets) = brute_force_mds(&f).unwrap();
        let dp = alpha3_count_dp(&f);
        prop_assert_eq!(dp.alpha3, alpha);
        prop_assert_eq!(dp.count, BigUint::from(sets.len()));
        let listed: Vec<_> = enumerate_mds(&f).map(Result::unwrap).collect();
        prop_assert_eq!(listed, sets);
    }

    #[test]
    fn enumerated_sets_are_maximum_dissociation_sets(t in tree_strategy(1, 30)) {
        let dp = alpha3_count_dp(&t);
        let mut seen = 0usize;
        for s in enumerate_mds(&t).take(2000) {
            let s = s.unwrap();
            prop_assert!(is_dissociation_set(&t, &s));
            prop_assert_eq!(s.len(), dp.alpha3);
            seen += 1;
        }
        if seen < 2000 {
            prop_assert_eq!(BigUint::from(seen), dp.count);
        }
    }

    #[test]
    fn components_add_and_counts_multiply(a in tree_strategy(1, 15), b in tree_strategy(1, 15)) {
        let shift = a.n();
        let edges = a.edges().iter().copied().chain(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
        let joint = Forest::new(a.n() + b.n(), edges).unwrap();
        let (ra, rb, rj) = (alpha3_count_dp(&a), alpha3_count_dp(&b), alpha3_count_dp(&joint));
        prop_assert_eq!(rj.alpha3, ra.alpha3 + rb.alpha3);
        prop_assert_eq!(rj.count, ra.count * rb.count);
    }

    #[test]
    fn deleting_an_edge_gains_at_most_one(t in tree_strategy(2, 25), pick in any::<usize>()) {
        let (u, v) = t.edges()[pick % t.edge_count()];
        let before = alpha3(&t);
        let after = alpha3(&t.without_edge(u, v));
        prop_assert!(after == before || after == before + 1);
    }

    #[test]
    fn relabeling_preserves_invariants(t in tree_strategy(1, 25), seed in any::<u64>()) {
        let s = shuffled(&t, seed);
        prop_assert_eq!(canonical_code(&t).unwrap(), canonical_code(&s).unwrap());
        prop_assert_eq!(alpha3_count_dp(&t), alpha3_count_dp(&s));
        prop_assert_eq!(critical_structure(&t).unwrap().eta, critical_structure(&s).unwrap().eta);
    }

    #[test]
    fn edge_lists_round_trip(f in forest_strategy(20)) {
        let text = f.to_edge_list();
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.n(), f.n());
        prop_assert_eq!(back.edges(), f.edges());
        prop_assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn alpha_k_dp_matches_brute(f in forest_strategy(14), k in 2usize..=6) {
        prop_assert_eq!(alpha_k_dp(&f, k).unwrap(), alpha_k_brute(&f, k).unwrap());
    }

    #[test]
    fn kke_fast_matches_oracle(f in forest_strategy(11), k in 2usize..=5) {
        let fast = verify_kke(&f, k, KkeMode::Fast).unwrap();
        let oracle = verify_kke(&f, k, KkeMode::Oracle).unwrap();
        prop_assert!(fast.holds);
        prop_assert_eq!(fast, oracle);
    }

    #[test]
    fn kke_holds_on_large_forests(f in forest_strategy(200), k in 2usize..=7) {
        prop_assert!(verify_kke(&f, k, KkeMode::Fast).unwrap().holds);
    }

    #[test]
    fn alpha3_splits_into_static_and_critical(t in tree_strategy(1, 40)) {
        let s = critical_structure(&t).unwrap();
        let cls = classify_vertices(&t);
        prop_assert_eq!(alpha3(&t), cls.static_included.len() + s.eta);
        prop_assert_eq!(cls.flexible, s.vertices(t.n()));
    }

    #[test]
    fn u64_path_agrees_with_bigint(t in tree_strategy(1, 60)) {
        let big = alpha3_count_dp(&t);
        let (alpha, count) = alpha3_count_u64(&t).unwrap();
        prop_assert_eq!(alpha, big.alpha3);
        prop_assert_eq!(BigUint::from(count), big.count);
    }
}
