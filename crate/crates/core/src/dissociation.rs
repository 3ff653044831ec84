//! Dissociation number and maximum-dissociation-set counting on forests.
//!
//! A dissociation set induces a subgraph of maximum degree at most one.
//! The tree DP keeps three records per vertex: excluded, included with no
//! included child, and included with exactly one included child. Each
//! record carries the best size in the subtree and the number of ways to
//! reach it.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{forest_order, Forest};
use crate::vertex_set::VertexSet;

/// Largest `n` accepted by the subset-enumeration oracles.
pub const BRUTE_FORCE_LIMIT: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissociationResult {
    pub alpha3: usize,
    pub count: BigUint,
}

/// Arithmetic used for the number of optimal sets.
pub trait Ways: Clone {
    fn one_way() -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
}

impl Ways for BigUint {
    fn one_way() -> Self {
        BigUint::one()
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
}

impl Ways for u64 {
    fn one_way() -> Self {
        1
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        u64::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        u64::checked_mul(*self, *other)
    }
}

/// Size-only mode.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NoCount;

impl Ways for NoCount {
    fn one_way() -> Self {
        NoCount
    }
    fn checked_add(&self, _: &Self) -> Option<Self> {
        Some(NoCount)
    }
    fn checked_mul(&self, _: &Self) -> Option<Self> {
        Some(NoCount)
    }
}

/// Per-vertex constraint for the forced DP.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Force {
    Free,
    In,
    Out,
}

/// Best size and number of ways; `None` when unattainable.
type Cell<W> = Option<(usize, W)>;

fn join<W: Ways>(a: &Cell<W>, b: &Cell<W>) -> Result<Cell<W>> {
    match (a, b) {
        (Some((sa, wa)), Some((sb, wb))) => {
            let w = wa.checked_mul(wb).ok_or(Error::CountOverflow)?;
            Ok(Some((sa + sb, w)))
        }
        _ => Ok(None),
    }
}

fn best<W: Ways>(a: Cell<W>, b: Cell<W>) -> Result<Cell<W>> {
    Ok(match (a, b) {
        (None, x) | (x, None) => x,
        (Some((sa, wa)), Some((sb, wb))) => {
            if sa > sb {
                Some((sa, wa))
            } else if sb > sa {
                Some((sb, wb))
            } else {
                Some((sa, wa.checked_add(&wb).ok_or(Error::CountOverflow)?))
            }
        }
    })
}

#[derive(Clone, Debug)]
struct DpState<W> {
    excluded: Cell<W>,
    unmatched: Cell<W>,
    matched: Cell<W>,
}

/// Runs the three-state DP over every component and combines them.
pub fn solve<W: Ways>(forest: &Forest, force: &[Force]) -> Result<Cell<W>> {
    assert_eq!(force.len(), forest.n());
    let (order, parent) = forest_order(forest);
    let unit: Cell<W> = Some((0, W::one_way()));
    let mut states: Vec<Option<DpState<W>>> = vec![None; forest.n()];
    let mut total = unit.clone();

    for &v in order.iter().rev() {
        let mut excluded = unit.clone();
        let mut acc0: Cell<W> = Some((1, W::one_way()));
        let mut acc1: Cell<W> = None;
        for &c in forest.neighbors(v) {
            if parent[v] == Some(c) {
                continue;
            }
            let child = states[c].take().expect("child visited before parent");
            let any = best(best(child.excluded.clone(), child.unmatched.clone())?, child.matched)?;
            excluded = join(&excluded, &any)?;
            acc1 = best(join(&acc1, &child.excluded)?, join(&acc0, &child.unmatched)?)?;
            acc0 = join(&acc0, &child.excluded)?;
        }
        let mut st = DpState { excluded, unmatched: acc0, matched: acc1 };
        match force[v] {
            Force::Free => {}
            Force::In => st.excluded = None,
            Force::Out => {
                st.unmatched = None;
                st.matched = None;
            }
        }
        if parent[v].is_none() {
            let root = best(best(st.excluded, st.unmatched)?, st.matched)?;
            total = join(&total, &root)?;
        } else {
            states[v] = Some(st);
        }
    }
    Ok(total)
}

/// Dissociation number and the exact number of maximum dissociation sets.
pub fn alpha3_count_dp(forest: &Forest) -> DissociationResult {
    let free = vec![Force::Free; forest.n()];
    let (alpha3, count) = solve::<BigUint>(forest, &free)
        .expect("arbitrary precision cannot overflow")
        .expect("the empty set is always a dissociation set");
    DissociationResult { alpha3, count }
}

/// Fixed-width variant; reports overflow instead of wrapping.
pub fn alpha3_count_u64(forest: &Forest) -> Result<(usize, u64)> {
    let free = vec![Force::Free; forest.n()];
    Ok(solve::<u64>(forest, &free)?.expect("the empty set is always a dissociation set"))
}

pub fn alpha3(forest: &Forest) -> usize {
    let free = vec![Force::Free; forest.n()];
    solve::<NoCount>(forest, &free).unwrap().unwrap().0
}

fn force_vector(forest: &Forest, include: &VertexSet, exclude: &VertexSet) -> Result<Vec<Force>> {
    if !include.is_disjoint(exclude) {
        return Err(Error::InvalidArgument(format!(
            "include and exclude overlap on {:?}",
            include.intersection(exclude).to_vec()
        )));
    }
    let mut force = vec![Force::Free; forest.n()];
    for v in include.iter() {
        force[v] = Force::In;
    }
    for v in exclude.iter() {
        force[v] = Force::Out;
    }
    Ok(force)
}

/// Largest dissociation set containing `include` and avoiding `exclude`;
/// `None` when `include` itself is not a dissociation set.
pub fn alpha3_forced(forest: &Forest, include: &VertexSet, exclude: &VertexSet) -> Result<Option<usize>> {
    let force = force_vector(forest, include, exclude)?;
    Ok(solve::<NoCount>(forest, &force)?.map(|(s, _)| s))
}

/// Size and number of the largest dissociation sets under the constraints.
pub fn count_forced(forest: &Forest, include: &VertexSet, exclude: &VertexSet) -> Result<Option<(usize, BigUint)>> {
    let force = force_vector(forest, include, exclude)?;
    solve::<BigUint>(forest, &force)
}

pub fn is_dissociation_set(forest: &Forest, set: &VertexSet) -> bool {
    set.iter()
        .all(|v| forest.neighbors(v).iter().filter(|&&w| set.contains(w)).count() <= 1)
}

pub(crate) fn adjacency_masks(forest: &Forest) -> Vec<u64> {
    (0..forest.n())
        .map(|v| forest.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

pub(crate) fn check_guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::GuardExceeded { what, n, limit });
    }
    Ok(())
}

/// Definition-level oracle: scans all `2^n` subsets and keeps the largest
/// ones inducing maximum degree at most one. Sets come back sorted.
pub fn brute_force_mds(forest: &Forest) -> Result<(usize, Vec<VertexSet>)> {
    brute_force_mds_with_limit(forest, BRUTE_FORCE_LIMIT)
}

pub fn brute_force_mds_with_limit(forest: &Forest, limit: usize) -> Result<(usize, Vec<VertexSet>)> {
    let n = forest.n();
    check_guard("brute_force_mds", n, limit.min(BRUTE_FORCE_LIMIT))?;
    let adj = adjacency_masks(forest);
    let mut best = 0u32;
    let mut masks = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones();
        if size < best {
            continue;
        }
        let mut rest = mask;
        let mut ok = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (adj[v] & mask).count_ones() > 1 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        if size > best {
            best = size;
            masks.clear();
        }
        masks.push(mask);
    }
    let mut sets: Vec<VertexSet> = masks.into_iter().map(|m| VertexSet::from_mask(n, m)).collect();
    sets.sort();
    Ok((best as usize, sets))
}

/// Streams every maximum dissociation set once, in lexicographic order of
/// the sorted index lists.
///
/// Include/exclude backtracking in vertex order, trying "include" first.
/// A branch is entered only when the forced DP says the partial assignment
/// still extends to a set of size `alpha3`.
pub struct MdsEnumerator<'a> {
    forest: &'a Forest,
    target: usize,
    force: Vec<Force>,
    depth: usize,
    emitted: usize,
    cap: Option<usize>,
    done: bool,
}

pub fn enumerate_mds(forest: &Forest) -> MdsEnumerator<'_> {
    MdsEnumerator::new(forest, None)
}

/// Like [`enumerate_mds`], but yields `Err(Truncated)` instead of the
/// `(cap + 1)`-th set and stops.
pub fn enumerate_mds_capped(forest: &Forest, cap: usize) -> MdsEnumerator<'_> {
    MdsEnumerator::new(forest, Some(cap))
}

impl<'a> MdsEnumerator<'a> {
    fn new(forest: &'a Forest, cap: Option<usize>) -> Self {
        MdsEnumerator {
            forest,
            target: alpha3(forest),
            force: vec![Force::Free; forest.n()],
            depth: 0,
            emitted: 0,
            cap,
            done: false,
        }
    }

    pub fn alpha3(&self) -> usize {
        self.target
    }

    fn feasible(&self) -> bool {
        matches!(solve::<NoCount>(self.forest, &self.force), Ok(Some((s, _))) if s == self.target)
    }

    /// Moves to the next leaf-level assignment after the current one.
    /// False when the search space is exhausted.
    fn backtrack(&mut self) -> bool {
        while self.depth > 0 {
            let v = self.depth - 1;
            match self.force[v] {
                Force::In => {
                    self.force[v] = Force::Out;
                    if self.feasible() {
                        return true;
                    }
                }
                Force::Out | Force::Free => {}
            }
            self.force[v] = Force::Free;
            self.depth -= 1;
        }
        false
    }
}

impl Iterator for MdsEnumerator<'_> {
    type Item = Result<VertexSet>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.forest.n();
        if self.emitted > 0 && !self.backtrack() {
            self.done = true;
            return None;
        }
        while self.depth < n {
            let v = self.depth;
            self.force[v] = Force::In;
            if !self.feasible() {
                self.force[v] = Force::Out;
            }
            // one of the two branches always extends a feasible prefix
            debug_assert!(self.feasible());
            self.depth += 1;
        }
        if let Some(cap) = self.cap {
            if self.emitted == cap {
                self.done = true;
                return Some(Err(Error::Truncated { cap }));
            }
        }
        self.emitted += 1;
        if n == 0 {
            self.done = true;
        }
        let set = VertexSet::from_indices(n, (0..n).filter(|&v| self.force[v] == Force::In));
        Some(Ok(set))
    }
}
