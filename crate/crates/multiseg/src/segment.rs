//! Integer segments `[a,b]` on a single cuspidal line.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// A non-empty integer interval `[start, end]`.
///
/// Derived ordering compares `start` first and then `end`, which is the
/// left ordering used to break ties in the removal process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub start: i32,
    pub end: i32,
}

impl Segment {
    /// Builds `[start, end]`, rejecting `start > end`.
    pub fn new(start: i32, end: i32) -> Result<Self, Error> {
        if start > end {
            return Err(Error::EmptySegment { start, end });
        }
        Ok(Segment { start, end })
    }

    /// Builds a segment that is known to be valid.
    ///
    /// # Panics
    /// Panics when `start > end`.
    pub fn of(start: i32, end: i32) -> Self {
        assert!(start <= end, "empty segment [{start},{end}]");
        Segment { start, end }
    }

    /// `[start, end]` if non-empty, otherwise `None`.
    pub fn try_of(start: i32, end: i32) -> Option<Self> {
        (start <= end).then_some(Segment { start, end })
    }

    pub fn point(c: i32) -> Self {
        Segment { start: c, end: c }
    }

    /// Relative length `end - start + 1`. Segments are never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn is_singleton(&self) -> bool {
        self.start == self.end
    }

    pub fn contains_point(&self, c: i32) -> bool {
        self.start <= c && c <= self.end
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Segment) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// Union is an interval and neither segment contains the other.
    pub fn linked(&self, other: &Segment) -> bool {
        let overlap_or_adjacent =
            self.start <= other.end + 1 && other.start <= self.end + 1;
        overlap_or_adjacent && !self.contains(other) && !other.contains(self)
    }

    /// `self < other`: linked and `self` has the smaller end point.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.linked(other) && self.end < other.end
    }

    /// Interval hull; meaningful for linked or overlapping pairs.
    pub fn union(&self, other: &Segment) -> Segment {
        Segment { start: self.start.min(other.start), end: self.end.max(other.end) }
    }

    pub fn intersection(&self, other: &Segment) -> Option<Segment> {
        Segment::try_of(self.start.max(other.start), self.end.min(other.end))
    }

    /// Drops the start point: `[a,b] -> [a+1,b]`.
    pub fn shorten_left(&self) -> Option<Segment> {
        Segment::try_of(self.start + 1, self.end)
    }

    /// Drops the end point: `[a,b] -> [a,b-1]`.
    pub fn shorten_right(&self) -> Option<Segment> {
        Segment::try_of(self.start, self.end - 1)
    }

    /// The reflection `[a,b] -> [-b,-a]`.
    pub fn psi(&self) -> Segment {
        Segment { start: -self.end, end: -self.start }
    }

    pub fn points(&self) -> impl Iterator<Item = i32> {
        self.start..=self.end
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "[{}]", self.start)
        } else {
            write!(f, "[{},{}]", self.start, self.end)
        }
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
