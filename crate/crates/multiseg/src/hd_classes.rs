//! Highest-derivative multisegments for explicitly solved classes, and
//! the realization of any multisegment by a product of essentially Speh
//! ladders.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multiseg::Multisegment;
use crate::segment::Segment;

/// An essentially Speh ladder `{[top−d+1−k, top−k] : k = 0..m−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpehParams {
    pub top_end: i32,
    /// Length of each segment.
    pub d: i32,
    /// Number of segments.
    pub m: i32,
}

impl SpehParams {
    pub fn new(top_end: i32, d: i32, m: i32) -> Result<Self> {
        if d < 1 || m < 1 {
            return Err(Error::precondition(format!("d and m must be at least 1, got d={d} m={m}")));
        }
        Ok(SpehParams { top_end, d, m })
    }

    pub fn ladder(&self) -> Multisegment {
        (0..self.m)
            .map(|k| Segment::of(self.top_end - self.d + 1 - k, self.top_end - k))
            .collect()
    }

    /// Lowest point of the cuspidal support.
    pub fn bottom(&self) -> i32 {
        self.top_end - self.d - self.m + 2
    }

    /// The support as an interval `[bottom, top_end]`.
    pub fn support(&self) -> Segment {
        Segment::of(self.bottom(), self.top_end)
    }

    /// Centred at zero, i.e. an unshifted Speh representation.
    pub fn is_unshifted(&self) -> bool {
        2 * self.top_end == self.d + self.m - 2
    }
}

impl fmt::Display for SpehParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.top_end, self.d, self.m)
    }
}

impl Serialize for SpehParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Generic case: pairwise unlinked `n` is its own highest derivative
/// multisegment.
pub fn hd_generic(n: &Multisegment) -> Result<Multisegment> {
    let d = n.distinct();
    for (i, x) in d.iter().enumerate() {
        if let Some(y) = d[i + 1..].iter().find(|y| x.linked(y)) {
            return Err(Error::precondition(format!("{x} and {y} are linked")));
        }
    }
    Ok(n.clone())
}

/// `[top_end − m + 1, top_end]`.
pub fn hd_ess_speh(p: &SpehParams) -> Segment {
    Segment::of(p.top_end - p.m + 1, p.top_end)
}

pub fn is_ladder(m: &Multisegment) -> bool {
    let e = m.entries();
    e.windows(2).all(|w| w[0].start < w[1].start && w[0].end < w[1].end)
}

/// Ladder case: right end points grouped into maximal runs of
/// consecutive integers, one segment per run.
pub fn hd_ladder(m: &Multisegment) -> Result<Multisegment> {
    if !is_ladder(m) {
        return Err(Error::precondition(format!("{m} is not a ladder")));
    }
    let ends: Vec<i32> = m.iter().map(|s| s.end).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < ends.len() {
        let mut j = i;
        while j + 1 < ends.len() && ends[j + 1] == ends[j] + 1 {
            j += 1;
        }
        out.push(Segment::of(ends[i], ends[j]));
        i = j + 1;
    }
    Ok(Multisegment::from_segments(out))
}

/// Checks that each factor's support contains all earlier supports.
pub fn supports_nested(ps: &[SpehParams]) -> std::result::Result<(), usize> {
    let mut lo = i32::MAX;
    let mut hi = i32::MIN;
    for (i, p) in ps.iter().enumerate() {
        if i > 0 && (p.bottom() > lo || p.top_end < hi) {
            return Err(i);
        }
        lo = lo.min(p.bottom());
        hi = hi.max(p.top_end);
    }
    Ok(())
}

/// Sum of the per-factor segments, under the hypothesis that every factor
/// is unshifted or that the supports are nested in the given order.
pub fn hd_speh_product(ps: &[SpehParams]) -> Result<Multisegment> {
    for p in ps {
        SpehParams::new(p.top_end, p.d, p.m)?;
    }
    if !ps.iter().all(SpehParams::is_unshifted) {
        if let Err(i) = supports_nested(ps) {
            return Err(Error::precondition(format!(
                "factors are not all unshifted and the support of factor {} {} does not contain the earlier supports",
                i + 1,
                ps[i]
            )));
        }
    }
    Ok(ps.iter().map(hd_ess_speh).collect())
}

/// Factors whose product has highest derivative multisegment `h`.
///
/// Entries sorted by end point give `(y, d, y − x + 1)` with the smallest
/// `d` that keeps supports nested.
pub fn realize(h: &Multisegment) -> Result<Vec<SpehParams>> {
    if h.is_empty() {
        return Err(Error::precondition("cannot realize the empty multisegment"));
    }
    let mut segs = h.entries().to_vec();
    segs.sort_by_key(|s| (s.end, s.start));
    let mut out: Vec<SpehParams> = Vec::with_capacity(segs.len());
    let mut lowest = i32::MAX;
    for s in segs {
        let m = s.end - s.start + 1;
        let d = match out.last() {
            None => 1,
            Some(_) => (s.start + 1 - lowest).max(1),
        };
        let p = SpehParams { top_end: s.end, d, m };
        lowest = lowest.min(p.bottom());
        out.push(p);
    }
    Ok(out)
}

/// Read-only reference values for classes whose highest derivative is not
/// computed here: `(Zelevinsky multisegment, its highest derivative
/// multisegment)`.
pub fn reference_fixtures() -> Vec<(Multisegment, Multisegment)> {
    let m = Multisegment::from_pairs;
    vec![
        (m(&[(0, 5), (1, 6), (5, 7), (4, 8), (2, 8), (3, 9)]), m(&[(5, 7), (8, 9), (8, 8)])),
        (m(&[(3, 5), (4, 6), (5, 7), (3, 7), (4, 8), (2, 8), (3, 9)]), m(&[(5, 7), (7, 8), (8, 9)])),
        (m(&[(0, 1), (1, 1), (1, 2)]), m(&[(1, 1), (1, 2)])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(i32, i32)]) -> Multisegment {
        Multisegment::from_pairs(p)
    }

    #[test]
    fn generic() {
        assert_eq!(hd_generic(&m(&[(0, 3)])).unwrap(), m(&[(0, 3)]));
        assert_eq!(hd_generic(&m(&[(0, 1), (3, 4)])).unwrap(), m(&[(0, 1), (3, 4)]));
        assert!(hd_generic(&m(&[(0, 2), (1, 4)])).is_err());
    }

    #[test]
    fn ess_speh() {
        let p = SpehParams::new(3, 3, 2).unwrap();
        assert_eq!(hd_ess_speh(&p), Segment::of(2, 3));
        assert_eq!(hd_ess_speh(&SpehParams::new(7, 4, 1).unwrap()), Segment::point(7));
        assert_eq!(hd_ess_speh(&SpehParams::new(7, 1, 3).unwrap()), Segment::of(5, 7));
        assert_eq!(p.ladder(), m(&[(1, 3), (0, 2)]));
        assert_eq!(p.support(), Segment::of(0, 3));
    }

    #[test]
    fn ladder() {
        assert_eq!(hd_ladder(&m(&[(0, 2), (1, 4), (3, 6)])).unwrap(), m(&[(2, 2), (4, 4), (6, 6)]));
        assert_eq!(hd_ladder(&m(&[(0, 2), (1, 3), (2, 4)])).unwrap(), m(&[(2, 4)]));
        assert_eq!(hd_ladder(&m(&[(1, 5)])).unwrap(), m(&[(5, 5)]));
        assert!(hd_ladder(&m(&[(0, 4), (1, 2)])).is_err());
    }

    #[test]
    fn product() {
        let ps = [SpehParams::new(3, 3, 2).unwrap(), SpehParams::new(5, 5, 2).unwrap()];
        assert_eq!(hd_speh_product(&ps).unwrap(), m(&[(2, 3), (4, 5)]));
        let one = [SpehParams::new(4, 2, 3).unwrap()];
        assert_eq!(hd_speh_product(&one).unwrap(), m(&[(2, 4)]));
        let bad = [SpehParams::new(5, 5, 2).unwrap(), SpehParams::new(3, 3, 2).unwrap()];
        assert!(hd_speh_product(&bad).is_err());
    }

    #[test]
    fn realize_examples() {
        let r = realize(&m(&[(0, 1), (2, 2)])).unwrap();
        assert_eq!(r, vec![SpehParams { top_end: 1, d: 1, m: 2 }, SpehParams { top_end: 2, d: 3, m: 1 }]);
        assert_eq!(realize(&m(&[(3, 6)])).unwrap(), vec![SpehParams { top_end: 6, d: 1, m: 4 }]);
        assert!(realize(&Multisegment::new()).is_err());
    }
}
