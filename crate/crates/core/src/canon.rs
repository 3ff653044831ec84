//! AHU canonical codes for free trees, anchored at the centroid.

use std::fmt;

use crate::error::Result;
use crate::graph::{bfs, Forest};

/// Isomorphism invariant of a tree: equal codes iff isomorphic trees.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The one or two vertices minimizing the largest component left after
/// their removal. Requires a tree.
pub fn centroids(tree: &Forest) -> Result<Vec<usize>> {
    tree.require_tree()?;
    let n = tree.n();
    let (order, parent, _) = bfs(tree, 0);
    let mut size = vec![1usize; n];
    let mut worst = vec![0usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            size[p] += size[v];
            worst[p] = worst[p].max(size[v]);
        }
    }
    for v in 0..n {
        worst[v] = worst[v].max(n - size[v]);
    }
    let best = *worst.iter().min().unwrap();
    Ok((0..n).filter(|&v| worst[v] == best).collect())
}

/// Sorted sizes of the branches hanging off the (first) centroid.
pub fn centroid_branch_sizes(tree: &Forest) -> Result<Vec<usize>> {
    let c = centroids(tree)?[0];
    let (order, parent, _) = bfs(tree, c);
    let mut size = vec![1usize; tree.n()];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            size[p] += size[v];
        }
    }
    let mut branches: Vec<usize> = tree.neighbors(c).iter().map(|&w| size[w]).collect();
    branches.sort_unstable();
    Ok(branches)
}

/// AHU encoding of the tree hung from `root`: each vertex is `(` followed by
/// its children's encodings in sorted order, then `)`.
pub fn rooted_code(tree: &Forest, root: usize) -> String {
    let (order, parent, _) = bfs(tree, root);
    let mut codes: Vec<Option<String>> = vec![None; tree.n()];
    let mut kids: Vec<Vec<String>> = vec![Vec::new(); tree.n()];
    for &v in order.iter().rev() {
        let mut children = std::mem::take(&mut kids[v]);
        children.sort_unstable();
        let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
        s.push('(');
        for c in &children {
            s.push_str(c);
        }
        s.push(')');
        match parent[v] {
            Some(p) => kids[p].push(s),
            None => codes[v] = Some(s),
        }
    }
    codes[root].take().unwrap_or_default()
}

/// Canonical code of a tree. For two centroids the smaller rooted code wins.
pub fn canonical_code(tree: &Forest) -> Result<CanonicalCode> {
    let code = centroids(tree)?
        .into_iter()
        .map(|c| rooted_code(tree, c))
        .min()
        .unwrap();
    Ok(CanonicalCode(code))
}
