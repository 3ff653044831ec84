//! Forest representation, edge-list text format and rooted traversals.
//!
//! Vertices are dense indices `0..n`. Labels from parsed input are kept
//! only for reporting.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::vertex_set::VertexSet;

/// An undirected simple acyclic graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// False when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Forest {
    /// Validates and builds a forest on `n` vertices.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
            if !uf.union(u, v) {
                return Err(Error::Cycle(e.0, e.1));
            }
            list.push(e);
        }
        Ok(Self::from_checked(n, list, None))
    }

    fn from_checked(n: usize, mut edges: Vec<(usize, usize)>, labels: Option<Vec<String>>) -> Self {
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Forest { n, edges, adj, labels }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_checked(n, Vec::new(), None)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_checked(n, (1..n).map(|i| (i - 1, i)).collect(), None)
    }

    /// The star `K_{1,leaves}` centered at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_checked(leaves + 1, (1..=leaves).map(|i| (0, i)).collect(), None)
    }

    /// Builds a forest from a parent array (`None` marks a root).
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let edges: Vec<_> = parents
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect();
        Self::new(parents.len(), edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Original label of `v`, or its index when the forest was built directly.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1
    }

    /// Component id per vertex; ids are assigned in order of smallest member.
    pub fn component_ids(&self) -> (usize, Vec<usize>) {
        let mut id = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if id[s] != usize::MAX {
                continue;
            }
            id[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if id[w] == usize::MAX {
                        id[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, id)
    }

    /// Vertex lists of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (count, id) = self.component_ids();
        let mut out = vec![Vec::new(); count];
        for v in 0..self.n {
            out[id[v]].push(v);
        }
        out
    }

    pub fn require_tree(&self) -> Result<()> {
        let components = self.n - self.edges.len();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(())
    }

    /// Same vertex set, one edge removed. Labels are kept.
    pub fn without_edge(&self, u: usize, v: usize) -> Forest {
        let e = (u.min(v), u.max(v));
        let edges = self.edges.iter().copied().filter(|&f| f != e).collect();
        Self::from_checked(self.n, edges, self.labels.clone())
    }

    /// Subgraph induced by `keep`, reindexed densely in increasing order.
    /// Returns the forest and the map from new index to old index.
    pub fn induced(&self, keep: &VertexSet) -> (Forest, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_of[u], new_of[v]))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| old.iter().map(|&v| l[v].clone()).collect());
        (Self::from_checked(old.len(), edges, labels), old)
    }

    /// Applies `perm` (old index -> new index). Labels are dropped.
    pub fn relabel(&self, perm: &[usize]) -> Forest {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        Self::from_checked(self.n, edges, None)
    }

    /// Canonical edge-list serialization: sorted `min max` lines over 0-based
    /// indices. Vertices that would otherwise be assigned out of order on
    /// re-parsing (including isolated ones) are declared up front with
    /// `vertex` lines, so that parsing the output reproduces this forest.
    pub fn to_edge_list(&self) -> String {
        let prefix = (0..=self.n)
            .find(|&d| self.first_appearance_is_identity(d))
            .unwrap_or(self.n);
        let mut out = String::new();
        for v in 0..prefix {
            writeln!(out, "vertex {v}").unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    fn first_appearance_is_identity(&self, declared: usize) -> bool {
        let mut seen = vec![false; self.n];
        let mut next = declared;
        seen[..declared].iter_mut().for_each(|s| *s = true);
        for &(u, v) in &self.edges {
            for x in [u, v] {
                if !seen[x] {
                    if x != next {
                        return false;
                    }
                    seen[x] = true;
                    next += 1;
                }
            }
        }
        next == self.n
    }
}

/// Parses the edge-list format: one `u v` pair per line, `#` starts a
/// comment, `vertex u` declares a vertex. Labels are arbitrary tokens and
/// receive dense indices in order of first appearance.
pub fn parse_edge_list(text: &str) -> std::result::Result<Forest, ParseError> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut uf = UnionFind::new(0);

    let mut intern = |tok: &str, labels: &mut Vec<String>, uf: &mut UnionFind| -> usize {
        *index.entry(tok.to_string()).or_insert_with(|| {
            labels.push(tok.to_string());
            uf.0.push(uf.0.len());
            labels.len() - 1
        })
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            [] => continue,
            ["vertex", v] => {
                intern(v, &mut labels, &mut uf);
            }
            [a, b] => {
                if a == b {
                    return Err(ParseError::SelfLoop { line, label: a.to_string() });
                }
                let u = intern(a, &mut labels, &mut uf);
                let v = intern(b, &mut labels, &mut uf);
                let e = (u.min(v), u.max(v));
                if !seen.insert(e) {
                    return Err(ParseError::DuplicateEdge { line, u: a.to_string(), v: b.to_string() });
                }
                if !uf.union(u, v) {
                    return Err(ParseError::Cycle { line, u: a.to_string(), v: b.to_string() });
                }
                edges.push(e);
            }
            other => return Err(ParseError::TokenCount { line, found: other.len() }),
        }
    }
    Ok(Forest::from_checked(labels.len(), edges, Some(labels)))
}

/// A tree hung from a chosen root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedView {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub level: Vec<usize>,
    /// Children before parents.
    pub post_order: Vec<usize>,
}

impl RootedView {
    pub fn children<'a>(&'a self, forest: &'a Forest, v: usize) -> impl Iterator<Item = usize> + 'a {
        forest.neighbors(v).iter().copied().filter(move |&w| self.parent[v] != Some(w))
    }

    /// Vertices of the subtree below (and including) `v`.
    pub fn subtree(&self, forest: &Forest, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            out.extend(self.children(forest, x));
            i += 1;
        }
        out
    }
}

/// Roots a tree at `root`. Fails on disconnected input.
pub fn root_at(forest: &Forest, root: usize) -> Result<RootedView> {
    if root >= forest.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: forest.n() });
    }
    forest.require_tree()?;
    let (order, parent, level) = bfs(forest, root);
    Ok(RootedView { root, parent, level, post_order: order.into_iter().rev().collect() })
}

/// BFS from `root` over its component. Vertices outside the component get
/// no parent and level `usize::MAX`.
pub(crate) fn bfs(forest: &Forest, root: usize) -> (Vec<usize>, Vec<Option<usize>>, Vec<usize>) {
    let n = forest.n();
    let mut parent = vec![None; n];
    let mut level = vec![usize::MAX; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([root]);
    level[root] = 0;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in forest.neighbors(v) {
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    (order, parent, level)
}

/// Every component rooted at its smallest vertex: a BFS order over the
/// whole forest and the parent array. Reversing the order visits children
/// before parents.
pub(crate) fn forest_order(forest: &Forest) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = forest.n();
    let mut parent = vec![None; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for &w in forest.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some(v);
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    (order, parent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_p3() {
        let f = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(f.label(2), "c");
    }

    #[test]
    fn rejects_cycle_with_line() {
        let err = parse_edge_list("1 2\n2 3\n3 1").unwrap_err();
        assert_eq!(err, ParseError::Cycle { line: 3, u: "3".into(), v: "1".into() });
    }

    #[test]
    fn rejects_loops_duplicates_and_bad_lines() {
        assert!(matches!(parse_edge_list("a a"), Err(ParseError::SelfLoop { line: 1, .. })));
        assert!(matches!(
            parse_edge_list("a b\n# note\nb a"),
            Err(ParseError::DuplicateEdge { line: 3, .. })
        ));
        assert!(matches!(parse_edge_list("a b c"), Err(ParseError::TokenCount { line: 1, found: 3 })));
    }

    #[test]
    fn comments_and_isolated_vertices() {
        let f = parse_edge_list("# header\nvertex z\na b # trailing\n\n").unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.label(0), "z");
        assert_eq!(f.degree(0), 0);
        assert_eq!(f.components().len(), 2);
    }

    #[test]
    fn lt8_edge_list() {
        let f = parse_edge_list("u1 u2\nu2 u3\nu3 u4\nu1 v1\nu2 v2\nu3 v3\nu4 v4").unwrap();
        assert_eq!(f.n(), 8);
        assert!(f.is_tree());
        assert_eq!(f.degree_sequence(), vec![1, 1, 1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn serialization_round_trips() {
        let f = Forest::new(5, [(0, 2), (1, 2), (3, 4)]).unwrap();
        let text = f.to_edge_list();
        let g = parse_edge_list(&text).unwrap();
        assert_eq!(g.edges(), f.edges());
        assert_eq!(g.to_edge_list(), text);

        let lonely = Forest::empty(2);
        assert_eq!(lonely.to_edge_list(), "vertex 0\nvertex 1\n");
        assert_eq!(Forest::path(3).to_edge_list(), "0 1\n1 2\n");
    }

    #[test]
    fn rooting() {
        let p3 = Forest::path(3);
        assert_eq!(root_at(&p3, 1).unwrap().level, vec![1, 0, 1]);
        let p4 = Forest::path(4);
        let r = root_at(&p4, 0).unwrap();
        assert_eq!(r.level, vec![0, 1, 2, 3]);
        assert_eq!(r.post_order, vec![3, 2, 1, 0]);
        assert!(matches!(root_at(&Forest::empty(2), 0), Err(Error::Disconnected { components: 2 })));
    }

    #[test]
    fn lt8_levels_from_u2() {
        let f = parse_edge_list("u1 u2\nu2 u3\nu3 u4\nu1 v1\nu2 v2\nu3 v3\nu4 v4").unwrap();
        let idx = |l: &str| f.labels().unwrap().iter().position(|x| x == l).unwrap();
        let r = root_at(&f, idx("u2")).unwrap();
        assert_eq!(r.level[idx("v4")], 3);
        assert_eq!(r.level[idx("v1")], 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Forest::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Forest::new(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Forest::new(3, [(0, 1), (1, 2), (2, 0)]), Err(Error::Cycle(0, 2)));
        assert!(matches!(Forest::new(2, [(0, 5)]), Err(Error::VertexOutOfRange { .. })));
    }
}
