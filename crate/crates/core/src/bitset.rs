//! Fixed-width vertex sets.
//!
//! Graphs are capped at [`MAX_VERTICES`] vertices, so a vertex set fits in a
//! handful of machine words and can be copied freely in search loops.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 512;

const WORDS: usize = MAX_VERTICES / 64;

/// A set of vertex indices below [`MAX_VERTICES`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet([u64; WORDS]);

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet([0; WORDS])
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut s = Self::new();
        for w in 0..n / 64 {
            s.0[w] = u64::MAX;
        }
        if n % 64 != 0 {
            s.0[n / 64] = (1u64 << (n % 64)) - 1;
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.0[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Smallest element.
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.0[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub struct Iter<'a> {
    set: &'a VertexSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.bits = self.set.0[self.word];
        }
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(mut self, rhs: VertexSet) -> VertexSet {
        self &= rhs;
        self
    }
}

impl BitAndAssign for VertexSet {
    fn bitand_assign(&mut self, rhs: VertexSet) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a &= b;
        }
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(mut self, rhs: VertexSet) -> VertexSet {
        self |= rhs;
        self
    }
}

impl BitOrAssign for VertexSet {
    fn bitor_assign(&mut self, rhs: VertexSet) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a |= b;
        }
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(mut self, rhs: VertexSet) -> VertexSet {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a &= !b;
        }
        self
    }
}

/// Complement within the full universe; intersect with [`VertexSet::full`]
/// to restrict to a graph.
impl Not for VertexSet {
    type Output = VertexSet;
    fn not(mut self) -> VertexSet {
        for a in self.0.iter_mut() {
            *a = !*a;
        }
        self
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = items.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} exceeds the {MAX_VERTICES}-vertex cap"
            )));
        }
        Ok(items.into_iter().collect())
    }
}

/// Growable bitset over edge indices.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct EdgeMask {
    words: Vec<u64>,
}

impl EdgeMask {
    pub fn new(m: usize) -> Self {
        EdgeMask {
            words: vec![0; m.div_ceil(64).max(1)],
        }
    }

    pub fn from_indices(m: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = Self::new(m);
        for e in ids {
            mask.insert(e);
        }
        mask
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        self.words[e >> 6] |= 1u64 << (e & 63);
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        self.words[e >> 6] &= !(1u64 << (e & 63));
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.words
            .get(e >> 6)
            .is_some_and(|w| w >> (e & 63) & 1 == 1)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &EdgeMask) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    /// Number of elements of `self` not present in `other`.
    pub fn count_outside(&self, other: &EdgeMask) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + tz)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_iteration() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.iter().last(), Some(69));
        assert!(!s.contains(70));
        let t: VertexSet = [3, 64, 511].into_iter().collect();
        assert_eq!(t.to_vec(), vec![3, 64, 511]);
        assert_eq!(t.first(), Some(3));
        assert_eq!((s & t).to_vec(), vec![3, 64]);
        assert_eq!((t - s).to_vec(), vec![511]);
    }

    #[test]
    fn edge_mask_basics() {
        let mut m = EdgeMask::from_indices(130, [0, 65, 129]);
        assert_eq!(m.len(), 3);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 65, 129]);
        m.remove(65);
        let other = EdgeMask::from_indices(130, [129]);
        assert!(m.intersects(&other));
        assert_eq!(m.count_outside(&other), 1);
    }
}
