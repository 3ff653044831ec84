//! k-path invariants on forests: k-independence, k-matchings and k-vertex
//! covers, with a constructive certificate that the last two coincide.

use serde::Serialize;

use crate::dissociation::{self, check_guard, BRUTE_FORCE_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{bfs, forest_order, Forest};
use crate::vertex_set::VertexSet;

/// Largest `n` for the k-matching backtracking oracle.
pub const MATCHING_BRUTE_LIMIT: usize = 18;

/// Vertex-disjoint k-paths, each an ordered vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathFamily {
    pub k: usize,
    pub paths: Vec<Vec<usize>>,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks path shape, adjacency in `forest` and pairwise disjointness.
    pub fn validate(&self, forest: &Forest) -> std::result::Result<(), String> {
        let mut used = vec![false; forest.n()];
        for p in &self.paths {
            if p.len() != self.k {
                return Err(format!("path {p:?} does not have {} vertices", self.k));
            }
            for w in p.windows(2) {
                if !forest.has_edge(w[0], w[1]) {
                    return Err(format!("path {p:?} uses non-edge {}-{}", w[0], w[1]));
                }
            }
            for &v in p {
                if v >= forest.n() || used[v] {
                    return Err(format!("vertex {v} repeated across paths"));
                }
                used[v] = true;
            }
        }
        Ok(())
    }
}

/// A k-vertex cover and a k-matching of equal size, which together
/// certify `tau_k = mu_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverMatchingCertificate {
    pub k: usize,
    pub cover: VertexSet,
    pub matching: PathFamily,
}

impl CoverMatchingCertificate {
    /// Machine check independent of optimality: sizes agree, the matching
    /// is valid and deleting the cover leaves no k-path.
    pub fn validate(&self, forest: &Forest) -> std::result::Result<(), String> {
        if self.cover.len() != self.matching.len() {
            return Err(format!(
                "cover has {} vertices but matching has {} paths",
                self.cover.len(),
                self.matching.len()
            ));
        }
        self.matching.validate(forest)?;
        let rest = VertexSet::full(forest.n()).difference(&self.cover);
        let (left, _) = forest.induced(&rest);
        let longest = longest_path_order(&left);
        if longest >= self.k {
            return Err(format!("a {longest}-vertex path survives the cover"));
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// Number of vertices on a longest path (0 for the empty forest).
pub fn longest_path_order(forest: &Forest) -> usize {
    let mut seen = vec![false; forest.n()];
    let mut best = 0;
    for s in 0..forest.n() {
        if seen[s] {
            continue;
        }
        let (order, _, _) = bfs(forest, s);
        for &v in &order {
            seen[v] = true;
        }
        let far = *order.last().unwrap();
        let (_, _, level) = bfs(forest, far);
        let ecc = order.iter().map(|&v| level[v]).max().unwrap();
        best = best.max(ecc + 1);
    }
    best
}

/// Whether the subgraph induced by `mask` contains a path on `k` vertices.
/// `order`/`parent` come from [`forest_order`].
/// `top` is scratch space of length `n`.
fn induced_has_k_path(order: &[usize], parent: &[Option<usize>], mask: u64, k: usize, top: &mut [(usize, usize)]) -> bool {
    top.fill((0, 0));
    for &v in order.iter().rev() {
        if mask >> v & 1 == 0 {
            continue;
        }
        let (a, b) = top[v];
        if a + b + 1 >= k {
            return true;
        }
        if let Some(p) = parent[v] {
            if mask >> p & 1 == 1 {
                let h = a + 1;
                let t = &mut top[p];
                if h > t.0 {
                    *t = (h, t.0);
                } else if h > t.1 {
                    t.1 = h;
                }
            }
        }
    }
    false
}

/// Largest vertex set inducing no k-path, by subset enumeration.
pub fn alpha_k_brute(forest: &Forest, k: usize) -> Result<usize> {
    check_k(k)?;
    let n = forest.n();
    check_guard("alpha_k_brute", n, BRUTE_FORCE_LIMIT)?;
    let (order, parent) = forest_order(forest);
    let mut top = vec![(0, 0); n];
    let mut best = 0;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size > best && !induced_has_k_path(&order, &parent, mask, k, &mut top) {
            best = size;
        }
    }
    Ok(best)
}

/// Tree DP for the k-independence number. Per vertex it tracks the best
/// size with the vertex excluded, and with it included heading a downward
/// chain of `h` chosen vertices (`1 <= h < k`).
pub fn alpha_k_dp(forest: &Forest, k: usize) -> Result<usize> {
    check_k(k)?;
    const NONE: i64 = i64::MIN / 4;
    let (order, parent) = forest_order(forest);
    let mut table: Vec<Vec<i64>> = vec![Vec::new(); forest.n()];
    let mut total = 0i64;
    for &v in order.iter().rev() {
        let mut excluded = 0i64;
        let mut chain = vec![NONE; k];
        chain[1] = 1;
        for &c in forest.neighbors(v) {
            if parent[v] == Some(c) {
                continue;
            }
            let child = std::mem::take(&mut table[c]);
            excluded += child.iter().copied().max().unwrap();
            let mut next = vec![NONE; k];
            for h in 1..k {
                if chain[h] == NONE {
                    continue;
                }
                next[h] = next[h].max(chain[h] + child[0]);
                for g in 1..k {
                    if child[g] == NONE || h + g > k - 1 {
                        continue;
                    }
                    let nh = h.max(g + 1);
                    next[nh] = next[nh].max(chain[h] + child[g]);
                }
            }
            chain = next;
        }
        chain[0] = excluded;
        if parent[v].is_none() {
            total += chain.iter().copied().max().unwrap();
        } else {
            table[v] = chain;
        }
    }
    Ok(total as usize)
}

/// All k-paths of the forest, each oriented from its smaller endpoint,
/// sorted lexicographically.
pub fn k_paths(forest: &Forest, k: usize) -> Vec<Vec<usize>> {
    k_paths_within(forest, k, |_| true)
}

fn k_paths_within(forest: &Forest, k: usize, alive: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    fn walk(forest: &Forest, k: usize, alive: &dyn Fn(usize) -> bool, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() == k {
            if path[0] < path[k - 1] {
                out.push(path.clone());
            }
            return;
        }
        let v = *path.last().unwrap();
        let back = if path.len() >= 2 { Some(path[path.len() - 2]) } else { None };
        for &w in forest.neighbors(v) {
            if Some(w) != back && alive(w) {
                path.push(w);
                walk(forest, k, alive, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k == 1 {
        return (0..forest.n()).filter(|&v| alive(v)).map(|v| vec![v]).collect();
    }
    for a in 0..forest.n() {
        if alive(a) {
            walk(forest, k, &alive, &mut vec![a], &mut out);
        }
    }
    out.sort();
    out
}

fn path_masks(forest: &Forest, k: usize) -> Vec<(u64, Vec<usize>)> {
    k_paths(forest, k)
        .into_iter()
        .map(|p| (p.iter().fold(0u64, |m, &v| m | 1 << v), p))
        .collect()
}

/// Maximum number of vertex-disjoint k-paths, by backtracking.
pub fn mu_k_brute(forest: &Forest, k: usize) -> Result<usize> {
    Ok(max_k_matchings_brute(forest, k)?.0)
}

/// The k-matching number together with every maximum k-matching (each a
/// sorted list of paths).
pub fn max_k_matchings_brute(forest: &Forest, k: usize) -> Result<(usize, Vec<PathFamily>)> {
    check_k(k)?;
    let n = forest.n();
    check_guard("mu_k_brute", n, MATCHING_BRUTE_LIMIT)?;
    let paths = path_masks(forest, k);
    // paths grouped by their smallest vertex
    let mut by_min: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (mask, _)) in paths.iter().enumerate() {
        by_min[mask.trailing_zeros() as usize].push(i);
    }

    struct Search<'a> {
        k: usize,
        n: usize,
        paths: &'a [(u64, Vec<usize>)],
        by_min: &'a [Vec<usize>],
        best: usize,
        found: Vec<Vec<usize>>,
        chosen: Vec<usize>,
    }

    impl Search<'_> {
        // every vertex below `v` is decided; `used` holds covered vertices
        fn run(&mut self, v: usize, used: u64) {
            let free_left = (v..self.n).filter(|&x| used >> x & 1 == 0).count();
            if self.chosen.len() + free_left / self.k < self.best {
                return;
            }
            if v == self.n {
                if self.chosen.len() > self.best {
                    self.best = self.chosen.len();
                    self.found.clear();
                }
                self.found.push(self.chosen.clone());
                return;
            }
            for &i in &self.by_min[v] {
                let m = self.paths[i].0;
                if used & m == 0 {
                    self.chosen.push(i);
                    self.run(v + 1, used | m);
                    self.chosen.pop();
                }
            }
            self.run(v + 1, used);
        }
    }

    let mut s = Search { k, n, paths: &paths, by_min: &by_min, best: 0, found: Vec::new(), chosen: Vec::new() };
    s.run(0, 0);
    let families = s
        .found
        .iter()
        .map(|idx| PathFamily { k, paths: idx.iter().map(|&i| paths[i].1.clone()).collect() })
        .collect();
    Ok((s.best, families))
}

/// Smallest vertex set meeting every k-path: tries cover sizes in
/// ascending order.
pub fn tau_k_brute(forest: &Forest, k: usize) -> Result<usize> {
    check_k(k)?;
    let n = forest.n();
    check_guard("tau_k_brute", n, BRUTE_FORCE_LIMIT)?;
    let masks: Vec<u64> = path_masks(forest, k).into_iter().map(|(m, _)| m).collect();
    for size in 0..=n {
        if combinations_exist(n, size, &mut |cover| masks.iter().all(|&m| m & cover != 0)) {
            return Ok(size);
        }
    }
    unreachable!("the full vertex set covers every path")
}

/// Calls `test` on each `size`-subset of `0..n`; stops at the first hit.
fn combinations_exist(n: usize, size: usize, test: &mut dyn FnMut(u64) -> bool) -> bool {
    if size == 0 {
        return test(0);
    }
    if size > n {
        return false;
    }
    // Gosper's hack
    let mut c: u64 = (1u64 << size) - 1;
    let limit = 1u64 << n;
    while c < limit {
        if test(c) {
            return true;
        }
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        c = (((ripple ^ c) >> 2) / low) | ripple;
    }
    false
}

/// Builds a k-vertex cover and a k-matching of equal size on any forest.
///
/// Each component is rooted at its smallest vertex. Repeatedly take the
/// deepest vertex `u` whose subtree still holds a k-path (ties: smallest
/// index), put `u` in the cover, put the lexicographically smallest k-path
/// of that subtree in the matching and delete the subtree.
pub fn greedy_cover_matching(forest: &Forest, k: usize) -> Result<CoverMatchingCertificate> {
    check_k(k)?;
    let n = forest.n();
    let mut alive = vec![true; n];
    let mut cover = VertexSet::new(n);
    let mut paths = Vec::new();

    for comp in forest.components() {
        let root = comp[0];
        while alive[root] {
            let Some((u, subtree)) = deepest_k_root(forest, root, k, &alive) else {
                break;
            };
            let inside = {
                let mut m = vec![false; n];
                subtree.iter().for_each(|&v| m[v] = true);
                m
            };
            let candidates = k_paths_within(forest, k, |v| inside[v]);
            assert!(
                candidates.iter().all(|p| p.contains(&u)),
                "a k-path below {u} avoids {u}"
            );
            let path = candidates.into_iter().next().expect("subtree holds a k-path");
            cover.insert(u);
            paths.push(path);
            for v in subtree {
                alive[v] = false;
            }
        }
    }
    Ok(CoverMatchingCertificate { k, cover, matching: PathFamily { k, paths } })
}

/// Deepest vertex (smallest index on ties) of the live part of `root`'s
/// component whose subtree contains a k-path, with that subtree.
fn deepest_k_root(forest: &Forest, root: usize, k: usize, alive: &[bool]) -> Option<(usize, Vec<usize>)> {
    let n = forest.n();
    let mut order = vec![root];
    let mut parent = vec![None; n];
    let mut level = vec![0usize; n];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in forest.neighbors(v) {
            if alive[w] && Some(w) != parent[v] {
                parent[w] = Some(v);
                level[w] = level[v] + 1;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut height = vec![0usize; n];
    let mut span = vec![0usize; n];
    let mut top = vec![(0usize, 0usize); n];
    for &v in order.iter().rev() {
        let (a, b) = top[v];
        height[v] = a + 1;
        span[v] = span[v].max(a + b + 1);
        if let Some(p) = parent[v] {
            span[p] = span[p].max(span[v]);
            let t = &mut top[p];
            if height[v] > t.0 {
                *t = (height[v], t.0);
            } else if height[v] > t.1 {
                t.1 = height[v];
            }
        }
    }
    let u = order
        .iter()
        .copied()
        .filter(|&v| span[v] >= k)
        .max_by(|&a, &b| level[a].cmp(&level[b]).then(b.cmp(&a)))?;
    let mut subtree = vec![u];
    let mut j = 0;
    while j < subtree.len() {
        let v = subtree[j];
        subtree.extend(forest.neighbors(v).iter().copied().filter(|&w| alive[w] && parent[w] == Some(v)));
        j += 1;
    }
    Some((u, subtree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KkeMode {
    /// Both sides by exhaustive search.
    Oracle,
    /// `alpha_k` by tree DP, `mu_k` by the greedy certificate.
    Fast,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KkeReport {
    pub k: usize,
    pub n: usize,
    pub alpha_k: usize,
    pub mu_k: usize,
    pub holds: bool,
}

/// Checks `alpha_k + mu_k == n`.
pub fn verify_kke(forest: &Forest, k: usize, mode: KkeMode) -> Result<KkeReport> {
    check_k(k)?;
    let (alpha_k, mu_k) = match mode {
        KkeMode::Oracle => (alpha_k_brute(forest, k)?, mu_k_brute(forest, k)?),
        KkeMode::Fast => {
            let alpha = if k == 3 { dissociation::alpha3(forest) } else { alpha_k_dp(forest, k)? };
            (alpha, greedy_cover_matching(forest, k)?.matching.len())
        }
    };
    let n = forest.n();
    Ok(KkeReport { k, n, alpha_k, mu_k, holds: alpha_k + mu_k == n })
}
