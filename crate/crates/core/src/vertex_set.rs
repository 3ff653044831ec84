use std::fmt;

use smallvec::SmallVec;

/// Bit-indexed subset of `0..n`. Sets over at most 64 vertices live in a
/// single inline word; larger ones spill to the heap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: SmallVec<[u64; 1]>,
    n: usize,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        VertexSet { bits: SmallVec::from_elem(0, words), n }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(n);
        for v in indices {
            s.insert(v);
        }
        s
    }

    /// Builds a set from the low `n` bits of `mask`. Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask needs n <= 64");
        let mut s = Self::new(n);
        s.bits[0] = if n == 64 { mask } else { mask & ((1u64 << n) - 1) };
        s
    }

    pub fn capacity(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        let (w, b) = (v / 64, v % 64);
        let was = self.bits[w] >> b & 1 == 1;
        self.bits[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.n {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let was = self.bits[w] >> b & 1 == 1;
        self.bits[w] &= !(1 << b);
        was
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a &= !b;
        }
        out
    }

    /// Low word of the bitmap; exact when `n <= 64`.
    pub fn as_mask(&self) -> u64 {
        self.bits[0]
    }
}

/// Lexicographic order on the sorted index lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spills_past_one_word() {
        let mut s = VertexSet::new(130);
        for v in [0, 63, 64, 129] {
            assert!(s.insert(v));
        }
        assert!(!s.insert(64));
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 129]);
        assert!(s.remove(63));
        assert!(!s.contains(63));
        assert!(s.contains(129));
    }

    #[test]
    fn lexicographic_order() {
        let a = VertexSet::from_indices(3, [0, 1]);
        let b = VertexSet::from_indices(3, [0, 2]);
        let c = VertexSet::from_indices(3, [1, 2]);
        assert!(a < b && b < c);
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_indices(70, [1, 2, 65]);
        let b = VertexSet::from_indices(70, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3, 65]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 65]);
        assert!(!a.is_disjoint(&b));
        assert!(VertexSet::from_indices(70, [2]).is_subset(&a));
    }

    #[test]
    fn mask_truncates_to_capacity() {
        let s = VertexSet::from_mask(3, 0b11111);
        assert_eq!(s.to_vec(), vec![0, 1, 2]);
    }
}
