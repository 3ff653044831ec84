//! Free trees of a given order, one per isomorphism class, plus labeled
//! trees from Prüfer sequences as a validation oracle.
//!
//! Free trees come from the Wright–Richmond–Odlyzko–McKay successor rule
//! on level sequences: rooted trees are walked in decreasing lexicographic
//! order (Beyer–Hedetniemi), and any sequence that is not the canonical
//! centroid-rooted form of its free tree is skipped by a direct jump.

use crate::dissociation::check_guard;
use crate::error::Result;
use crate::graph::{bfs, Forest};

pub const PRUEFER_LIMIT: usize = 9;

/// Depth-first level sequence of a rooted tree, root at level 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelSequence(Vec<usize>);

impl LevelSequence {
    pub fn new(seq: Vec<usize>) -> Option<Self> {
        let ok = seq.first() == Some(&1)
            && seq.windows(2).all(|w| w[1] >= 2 && w[1] <= w[0] + 1);
        ok.then_some(LevelSequence(seq))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// The tree, renumbered breadth-first from the root.
    pub fn to_forest(&self) -> Forest {
        let n = self.0.len();
        let mut parent = vec![None; n];
        let mut last_at_level: Vec<usize> = Vec::new();
        for (i, &lvl) in self.0.iter().enumerate() {
            last_at_level.truncate(lvl - 1);
            if lvl > 1 {
                parent[i] = Some(last_at_level[lvl - 2]);
            }
            last_at_level.push(i);
        }
        let raw = Forest::from_parents(&parent).expect("level sequences encode trees");
        let (order, _, _) = bfs(&raw, 0);
        let mut perm = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        raw.relabel(&perm)
    }
}

/// Iterator over the non-isomorphic trees on `n` vertices.
pub struct FreeTrees {
    n: usize,
    // 0-based levels
    layout: Option<Vec<usize>>,
    emitted_single: bool,
}

pub fn free_trees(n: usize) -> FreeTrees {
    assert!(n >= 1, "free trees need at least one vertex");
    let layout = if n >= 2 {
        // the path, rooted at its center
        Some((0..=n / 2).chain(1..n.div_ceil(2)).collect())
    } else {
        None
    };
    FreeTrees { n, layout, emitted_single: false }
}

/// Trees `start..start + len` of the `free_trees(n)` stream.
pub fn free_trees_chunk(n: usize, start: usize, len: usize) -> impl Iterator<Item = Forest> {
    free_trees(n).skip(start).take(len)
}

impl FreeTrees {
    /// Next level sequence (1-based) without building the forest.
    pub fn next_sequence(&mut self) -> Option<LevelSequence> {
        if self.n == 1 {
            if self.emitted_single {
                return None;
            }
            self.emitted_single = true;
            return Some(LevelSequence(vec![1]));
        }
        let current = self.layout.take()?;
        let tree = next_tree(current);
        self.layout = next_rooted_tree(&tree, None);
        Some(LevelSequence(tree.iter().map(|l| l + 1).collect()))
    }
}

impl Iterator for FreeTrees {
    type Item = Forest;

    fn next(&mut self) -> Option<Forest> {
        self.next_sequence().map(|s| s.to_forest())
    }
}

/// Beyer–Hedetniemi successor; `p` defaults to the last position not at
/// level 1.
fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits off the first subtree of the root. Returns it (re-leveled from
/// 0) and the remainder of the tree.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

/// Returns `candidate` when it is the canonical free-tree layout, else the
/// next canonical one.
fn next_tree(candidate: Vec<usize>) -> Vec<usize> {
    let (left, rest) = split_tree(&candidate);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let left_bigger = left.len() > rest.len() || (left.len() == rest.len() && left > rest);
    let valid = rest_height > left_height || (rest_height == left_height && !left_bigger);
    if valid {
        return candidate;
    }
    let p = left.len();
    let mut jumped = next_rooted_tree(&candidate, Some(p)).expect("p >= 1");
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&jumped);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = jumped.len();
        for (i, lvl) in (1..=h + 1).enumerate() {
            jumped[len - (h + 1) + i] = lvl;
        }
    }
    jumped
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`).
pub fn decode_pruefer(seq: &[usize], n: usize) -> Forest {
    assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let ends: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((ends[0], ends[1]));
    Forest::new(n, edges).expect("Prüfer decoding yields a tree")
}

/// Every labeled tree on `0..n`, via all `n^(n-2)` Prüfer sequences in
/// lexicographic order.
pub fn labeled_trees_pruefer(n: usize) -> Result<impl Iterator<Item = Forest>> {
    check_guard("labeled_trees_pruefer", n, PRUEFER_LIMIT)?;
    let total = if n >= 2 { n.pow(n as u32 - 2) } else { 1 };
    Ok((0..total).map(move |mut code| {
        if n < 2 {
            return Forest::empty(n);
        }
        let mut seq = vec![0; n - 2];
        for slot in seq.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        decode_pruefer(&seq, n)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use std::collections::BTreeSet;

    #[test]
    fn small_counts() {
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(free_trees(i + 1).count(), want, "n = {}", i + 1);
        }
    }

    #[test]
    fn order_four() {
        let trees: Vec<_> = free_trees(4).collect();
        let mut degs: Vec<_> = trees.iter().map(|t| t.degree_sequence()).collect();
        degs.sort();
        assert_eq!(degs, vec![vec![1, 1, 1, 3], vec![1, 1, 2, 2]]);
    }

    #[test]
    fn sequences_decrease_and_are_valid() {
        let mut gen = free_trees(9);
        let mut prev: Option<LevelSequence> = None;
        while let Some(s) = gen.next_sequence() {
            assert!(LevelSequence::new(s.as_slice().to_vec()).is_some());
            if let Some(p) = &prev {
                assert!(s < *p);
            }
            prev = Some(s);
        }
    }

    #[test]
    fn every_tree_valid_and_distinct() {
        for n in 1..=10 {
            let codes: BTreeSet<_> = free_trees(n)
                .map(|t| {
                    assert!(t.is_tree() && t.n() == n);
                    canonical_code(&t).unwrap()
                })
                .collect();
            assert_eq!(codes.len(), free_trees(n).count());
        }
    }

    #[test]
    fn pruefer_small() {
        assert_eq!(labeled_trees_pruefer(3).unwrap().count(), 3);
        assert_eq!(labeled_trees_pruefer(4).unwrap().count(), 16);
        let classes: BTreeSet<_> = labeled_trees_pruefer(6).unwrap().map(|t| canonical_code(&t).unwrap()).collect();
        assert_eq!(classes.len(), 6);
        assert_eq!(labeled_trees_pruefer(1).unwrap().count(), 1);
        assert!(labeled_trees_pruefer(10).is_err());
    }

    #[test]
    fn decode_known_sequence() {
        // [3, 3, 3, 4] on 6 vertices: star at 3 plus 4-5
        let t = decode_pruefer(&[3, 3, 3, 4], 6);
        assert_eq!(t.edges(), &[(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn chunks_partition_the_stream() {
        let all: Vec<_> = free_trees(8).map(|t| t.to_edge_list()).collect();
        let mut joined = Vec::new();
        for start in (0..all.len()).step_by(5) {
            joined.extend(free_trees_chunk(8, start, 5).map(|t| t.to_edge_list()));
        }
        assert_eq!(all, joined);
    }

    #[test]
    fn bfs_numbering_serializes_without_declarations() {
        for t in free_trees(7) {
            assert!(!t.to_edge_list().contains("vertex"));
        }
    }
}
