//! Multisegments, their slices, and the Zelevinsky order.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::segment::Segment;

/// A finite multiset of segments kept sorted by `(start, end)`.
///
/// Equality is structural on the sorted sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment {
    entries: Vec<Segment>,
}

/// Which end a slice or a shortening acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Multisegment {
    pub fn new() -> Self {
        Multisegment { entries: Vec::new() }
    }

    pub fn from_segments<I: IntoIterator<Item = Segment>>(it: I) -> Self {
        let mut entries: Vec<Segment> = it.into_iter().collect();
        entries.sort_unstable();
        Multisegment { entries }
    }

    /// Shorthand used heavily in tests: pairs of `(start, end)`.
    pub fn from_pairs(pairs: &[(i32, i32)]) -> Self {
        Self::from_segments(pairs.iter().map(|&(a, b)| Segment::of(a, b)))
    }

    pub fn entries(&self) -> &[Segment] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, s: &Segment) -> usize {
        let lo = self.entries.partition_point(|e| e < s);
        let hi = self.entries.partition_point(|e| e <= s);
        hi - lo
    }

    pub fn contains(&self, s: &Segment) -> bool {
        self.entries.binary_search(s).is_ok()
    }

    pub fn insert(&mut self, s: Segment) {
        let at = self.entries.partition_point(|e| e <= &s);
        self.entries.insert(at, s);
    }

    /// Removes one copy of `s`; returns whether a copy was present.
    pub fn remove_one(&mut self, s: &Segment) -> bool {
        match self.entries.binary_search(s) {
            Ok(i) => {
                self.entries.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn with(&self, s: Segment) -> Self {
        let mut m = self.clone();
        m.insert(s);
        m
    }

    pub fn plus(&self, other: &Multisegment) -> Self {
        let mut entries = Vec::with_capacity(self.len() + other.len());
        entries.extend_from_slice(&self.entries);
        entries.extend_from_slice(&other.entries);
        entries.sort_unstable();
        Multisegment { entries }
    }

    /// Multiset difference; `None` when `other` is not a submultiset.
    pub fn minus(&self, other: &Multisegment) -> Option<Self> {
        let mut m = self.clone();
        for s in other.iter() {
            if !m.remove_one(s) {
                return None;
            }
        }
        Some(m)
    }

    pub fn is_submultiset_of(&self, other: &Multisegment) -> bool {
        other.minus(self).is_some()
    }

    /// `m[c]` (left) or `m⟨c⟩` (right).
    pub fn slice(&self, c: i32, side: Side) -> Self {
        let entries = self
            .entries
            .iter()
            .copied()
            .filter(|s| match side {
                Side::Left => s.start == c,
                Side::Right => s.end == c,
            })
            .collect();
        Multisegment { entries }
    }

    pub fn left_slice(&self, c: i32) -> Self {
        self.slice(c, Side::Left)
    }

    pub fn right_slice(&self, c: i32) -> Self {
        self.slice(c, Side::Right)
    }

    /// Entrywise `⁻m` (left) or `m⁻` (right); singletons vanish.
    pub fn shorten(&self, side: Side) -> Self {
        Self::from_segments(self.entries.iter().filter_map(|s| match side {
            Side::Left => s.shorten_left(),
            Side::Right => s.shorten_right(),
        }))
    }

    pub fn min_start(&self) -> Option<i32> {
        self.entries.first().map(|s| s.start)
    }

    pub fn max_start(&self) -> Option<i32> {
        self.entries.last().map(|s| s.start)
    }

    pub fn max_end(&self) -> Option<i32> {
        self.entries.iter().map(|s| s.end).max()
    }

    pub fn min_end(&self) -> Option<i32> {
        self.entries.iter().map(|s| s.end).min()
    }

    /// Total relative length.
    pub fn total_len(&self) -> usize {
        self.entries.iter().map(Segment::len).sum()
    }

    /// Covered points with multiplicity, sorted.
    pub fn content(&self) -> Vec<i32> {
        let mut pts: Vec<i32> = self.entries.iter().flat_map(|s| s.points()).collect();
        pts.sort_unstable();
        pts
    }

    /// Distinct entries in canonical order.
    pub fn distinct(&self) -> Vec<Segment> {
        let mut v = self.entries.clone();
        v.dedup();
        v
    }

    /// Entries in the canonical ascending order (lexicographic on
    /// `(start, end)`).
    pub fn ascending(&self) -> Vec<Segment> {
        self.entries.clone()
    }

    pub fn psi(&self) -> Self {
        Self::from_segments(self.entries.iter().map(Segment::psi))
    }

    pub fn is_pairwise_unlinked(&self) -> bool {
        let d = self.distinct();
        d.iter().enumerate().all(|(i, x)| d[i + 1..].iter().all(|y| !x.linked(y)))
    }

    /// One elementary intersection-union move on entries `i` and `j`.
    pub fn iu_move(&self, i: usize, j: usize) -> Result<Self> {
        let n = self.len();
        let x = *self.entries.get(i).ok_or(Error::IndexOutOfRange(i))?;
        let y = *self.entries.get(j).ok_or(Error::IndexOutOfRange(j))?;
        if i == j || i >= n || j >= n || !x.linked(&y) {
            return Err(Error::NotLinked(x, y));
        }
        Ok(self.iu_pair_unchecked(&x, &y))
    }

    /// The move on a pair given by value.
    pub fn iu_pair(&self, x: &Segment, y: &Segment) -> Result<Self> {
        if !x.linked(y) {
            return Err(Error::NotLinked(*x, *y));
        }
        let ok = if x == y { false } else { self.contains(x) && self.contains(y) };
        if !ok {
            return Err(Error::precondition(format!("{x} and {y} are not both entries")));
        }
        Ok(self.iu_pair_unchecked(x, y))
    }

    fn iu_pair_unchecked(&self, x: &Segment, y: &Segment) -> Self {
        let mut m = self.clone();
        m.remove_one(x);
        m.remove_one(y);
        m.insert(x.union(y));
        if let Some(c) = x.intersection(y) {
            m.insert(c);
        }
        m
    }

    /// All multisegments one intersection-union move below `self`,
    /// deduplicated, in deterministic order.
    pub fn iu_neighbours(&self) -> Vec<Self> {
        let d = self.distinct();
        let mut out = Vec::new();
        for (i, x) in d.iter().enumerate() {
            for y in &d[i + 1..] {
                if x.linked(y) {
                    out.push(self.iu_pair_unchecked(x, y));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// `self ≤_Z other`: `self` is reachable from `other` by moves.
    pub fn leq_z(&self, other: &Multisegment) -> bool {
        if self == other {
            return true;
        }
        // Moves preserve content and never increase the entry count.
        if self.content() != other.content() || self.len() > other.len() {
            return false;
        }
        let mut seen: HashSet<Multisegment> = HashSet::new();
        let mut queue = VecDeque::from([other.clone()]);
        seen.insert(other.clone());
        while let Some(m) = queue.pop_front() {
            for next in m.iu_neighbours() {
                if &next == self {
                    return true;
                }
                if next.len() >= self.len() && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        false
    }
}

/// Checks the ascending-sequence invariant: no later entry precedes an
/// earlier one.
pub fn is_ascending(seq: &[Segment]) -> bool {
    seq.iter()
        .enumerate()
        .all(|(i, x)| seq[i + 1..].iter().all(|y| !y.precedes(x)))
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(it: I) -> Self {
        Self::from_segments(it)
    }
}

impl<'a> IntoIterator for &'a Multisegment {
    type Item = &'a Segment;
    type IntoIter = std::slice::Iter<'a, Segment>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

impl fmt::Display for Multisegment {
    /// Canonical form: sorted, duplicates collapsed as `*k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        let mut i = 0;
        while i < self.entries.len() {
            let s = self.entries[i];
            let mut k = 1;
            while i + k < self.entries.len() && self.entries[i + k] == s {
                k += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}*{k}")?;
            }
            i += k;
        }
        f.write_str("}")
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(i32, i32)]) -> Multisegment {
        Multisegment::from_pairs(p)
    }

    #[test]
    fn iu_move_examples() {
        let a = m(&[(0, 1), (1, 2)]);
        assert_eq!(a.iu_move(0, 1).unwrap(), m(&[(0, 2), (1, 1)]));
        let b = m(&[(0, 1), (2, 3)]);
        // [0,1] and [2,3] are adjacent, hence linked; [0,1],[3,4] are not
        assert!(b.iu_move(0, 1).is_ok());
        assert!(m(&[(0, 1), (3, 4)]).iu_move(0, 1).is_err());
        let c = m(&[(0, 3), (1, 2), (1, 4)]);
        let x = c.iu_pair(&Segment::of(0, 3), &Segment::of(1, 4)).unwrap();
        assert_eq!(x, m(&[(0, 4), (1, 3), (1, 2)]));
    }

    #[test]
    fn leq_z_examples() {
        assert!(m(&[(0, 2), (1, 1)]).leq_z(&m(&[(0, 1), (1, 2)])));
        assert!(!m(&[(0, 1), (1, 2)]).leq_z(&m(&[(0, 2), (1, 1)])));
        assert!(m(&[(0, 3), (1, 2)]).leq_z(&m(&[(0, 2), (1, 3)])));
    }

    #[test]
    fn slices_and_shorten() {
        let h = m(&[(0, 3), (1, 2), (1, 4)]);
        assert_eq!(h.left_slice(1), m(&[(1, 2), (1, 4)]));
        assert_eq!(h.right_slice(3), m(&[(0, 3)]));
        assert_eq!(Multisegment::new().left_slice(0), Multisegment::new());
        assert_eq!(m(&[(1, 3), (1, 5)]).shorten(Side::Left), m(&[(2, 3), (2, 5)]));
        assert_eq!(m(&[(3, 3)]).shorten(Side::Left), Multisegment::new());
    }

    #[test]
    fn ascending_examples() {
        assert_eq!(m(&[(1, 2), (0, 3)]).ascending(), vec![Segment::of(0, 3), Segment::of(1, 2)]);
        assert!(Multisegment::new().ascending().is_empty());
        let s = m(&[(0, 1), (0, 2), (1, 3)]).ascending();
        assert_eq!(s, vec![Segment::of(0, 1), Segment::of(0, 2), Segment::of(1, 3)]);
        assert!(is_ascending(&s));
        assert!(!is_ascending(&[Segment::of(1, 3), Segment::of(0, 1)]));
    }

    #[test]
    fn display_collapses_duplicates() {
        let a = m(&[(1, 2), (1, 2), (0, 0)]);
        assert_eq!(a.to_string(), "{[0],[1,2]*2}");
        assert_eq!(Multisegment::new().to_string(), "{}");
    }

    #[test]
    fn minus_and_count() {
        let a = m(&[(1, 2), (1, 2), (0, 0)]);
        assert_eq!(a.count(&Segment::of(1, 2)), 2);
        assert_eq!(a.minus(&m(&[(1, 2)])), Some(m(&[(1, 2), (0, 0)])));
        assert_eq!(a.minus(&m(&[(1, 3)])), None);
    }
}
