use std::collections::BTreeSet;

use dissociation::treegen::{free_trees, labeled_trees_pruefer};
use dissociation::{canonical_code, CanonicalCode};

fn code_set(trees: impl Iterator<Item = dissociation::Forest>) -> BTreeSet<CanonicalCode> {
    trees.map(|t| canonical_code(&t).unwrap()).collect()
}

#[test]
fn free_trees_cover_every_labeled_isomorphism_class() {
    for n in 1..=9 {
        assert_eq!(code_set(free_trees(n)), code_set(labeled_trees_pruefer(n).unwrap()), "n = {n}");
    }
}

#[test]
fn labeled_tree_counts_follow_cayley() {
    for n in 2..=7usize {
        assert_eq!(labeled_trees_pruefer(n).unwrap().count(), n.pow(n as u32 - 2));
    }
}

#[test]
fn order_fifteen_count() {
    let mut gen = free_trees(15);
    assert_eq!(std::iter::from_fn(|| gen.next_sequence()).count(), 7741);
}

#[test]
fn no_duplicate_classes_up_to_fourteen() {
    for n in 11..=14 {
        let total = free_trees(n).count();
        assert_eq!(code_set(free_trees(n)).len(), total, "n = {n}");
    }
}
