//! Brute-force reference implementations and bounded enumerators.
//!
//! Nothing here calls into the removal, minimality or duality modules:
//! removal is done one point at a time, the Zelevinsky order by explicit
//! closure, and admissible multisegments are found in end-point order
//! rather than start-point order. Only the `Segment`/`Multisegment`
//! value types are shared.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::multiseg::Multisegment;
use crate::segment::Segment;

/// A finite family of multisegments: segments inside `window`, at most
/// `max_segments` entries, each value at most `max_multiplicity` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseSpec {
    pub window: (i32, i32),
    pub max_segments: usize,
    pub max_multiplicity: usize,
}

impl UniverseSpec {
    pub fn new(window: (i32, i32), max_segments: usize, max_multiplicity: usize) -> Self {
        UniverseSpec { window, max_segments, max_multiplicity }
    }

    /// Six points, up to four segments, multiplicity up to two.
    pub fn desk() -> Self {
        UniverseSpec::new((0, 5), 4, 2)
    }

    /// Five points, up to three segments, multiplicity up to two.
    pub fn reduced() -> Self {
        UniverseSpec::new((0, 4), 3, 2)
    }

    /// All segments in the window: by length, then by start.
    pub fn segments(&self) -> Vec<Segment> {
        let (lo, hi) = self.window;
        let mut out = Vec::new();
        for len in 1..=(hi - lo + 1) {
            for a in lo..=(hi - len + 1) {
                out.push(Segment { start: a, end: a + len - 1 });
            }
        }
        out
    }
}

/// Every multisegment of the universe exactly once: by size, then by the
/// index sequence of the segments used.
pub fn enumerate(u: &UniverseSpec) -> Vec<Multisegment> {
    let segs = u.segments();
    let mut out = Vec::new();
    for size in 0..=u.max_segments {
        let mut picks = Vec::with_capacity(size);
        enumerate_rec(&segs, u.max_multiplicity, size, 0, &mut picks, &mut out);
    }
    out
}

fn enumerate_rec(
    segs: &[Segment],
    max_mult: usize,
    left: usize,
    from: usize,
    picks: &mut Vec<usize>,
    out: &mut Vec<Multisegment>,
) {
    if left == 0 {
        out.push(Multisegment::from_segments(picks.iter().map(|&i| segs[i])));
        return;
    }
    for i in from..segs.len() {
        let used = picks.iter().rev().take_while(|&&j| j == i).count();
        if used >= max_mult {
            continue;
        }
        picks.push(i);
        enumerate_rec(segs, max_mult, left - 1, i, picks, out);
        picks.pop();
    }
}

fn linked(x: &Segment, y: &Segment) -> bool {
    let pts: BTreeSet<i32> = (x.start..=x.end).chain(y.start..=y.end).collect();
    let lo = *pts.iter().next().unwrap();
    let hi = *pts.iter().next_back().unwrap();
    let interval = (hi - lo + 1) as usize == pts.len();
    let x_in_y = y.start <= x.start && x.end <= y.end;
    let y_in_x = x.start <= y.start && y.end <= x.end;
    interval && !x_in_y && !y_in_x
}

fn take_out(v: &mut Vec<Segment>, s: &Segment) {
    let i = v.iter().position(|e| e == s).expect("entry present");
    v.swap_remove(i);
}

/// `r(Δ, h)` one point at a time: remove the start point from the
/// shortest `[a, b']` with `b' ≥ b`, then recurse on `[a+1, b]`.
pub fn brute_remove_segment(d: &Segment, h: &Multisegment) -> Option<Multisegment> {
    let mut cur: Vec<Segment> = h.entries().to_vec();
    let b = d.end;
    for a in d.start..=b {
        let pick = cur
            .iter()
            .filter(|e| e.start == a && e.end >= b)
            .min_by_key(|e| e.end)
            .copied()?;
        take_out(&mut cur, &pick);
        if pick.start < pick.end {
            cur.push(Segment { start: pick.start + 1, end: pick.end });
        }
    }
    Some(Multisegment::from_segments(cur))
}

/// An ascending order different from the one the fast code uses: sort by
/// end point (a later entry can never be linked below an earlier one).
pub fn end_order(n: &Multisegment) -> Vec<Segment> {
    let mut v = n.entries().to_vec();
    v.sort_by_key(|s| (s.end, s.start));
    v
}

pub fn brute_remove_multi(n: &Multisegment, h: &Multisegment) -> Option<Multisegment> {
    let mut cur = h.clone();
    for d in end_order(n) {
        cur = brute_remove_segment(&d, &cur)?;
    }
    Some(cur)
}

fn iu(m: &Multisegment, x: &Segment, y: &Segment) -> Multisegment {
    let mut v = m.entries().to_vec();
    take_out(&mut v, x);
    take_out(&mut v, y);
    v.push(Segment { start: x.start.min(y.start), end: x.end.max(y.end) });
    let (lo, hi) = (x.start.max(y.start), x.end.min(y.end));
    if lo <= hi {
        v.push(Segment { start: lo, end: hi });
    }
    Multisegment::from_segments(v)
}

/// Every `n'` with `n' ≤_Z n`, including `n`.
pub fn downset(n: &Multisegment) -> BTreeSet<Multisegment> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([n.clone()]);
    seen.insert(n.clone());
    while let Some(m) = queue.pop_front() {
        let e = m.entries();
        for i in 0..e.len() {
            for j in (i + 1)..e.len() {
                if linked(&e[i], &e[j]) {
                    let next = iu(&m, &e[i], &e[j]);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

pub fn brute_leq_z(a: &Multisegment, b: &Multisegment) -> bool {
    downset(b).contains(a)
}

/// Admissible multisegments for `h` with at most `max_segments` entries,
/// with their resultants. Built by adding segments in end-point order so
/// each prefix is itself a valid removal order.
pub fn admissible_family(h: &Multisegment, max_segments: usize) -> BTreeMap<Multisegment, Multisegment> {
    let mut out = BTreeMap::new();
    let Some(lo) = h.entries().iter().map(|s| s.start).min() else {
        out.insert(Multisegment::new(), h.clone());
        return out;
    };
    let hi = h.entries().iter().map(|s| s.end).max().unwrap();
    let mut segs = Vec::new();
    for a in lo..=hi {
        for b in a..=hi {
            segs.push(Segment { start: a, end: b });
        }
    }
    segs.sort_by_key(|s| (s.end, s.start));
    let mut picks = Vec::new();
    family_rec(&segs, 0, max_segments, h, &mut picks, &mut out);
    out
}

fn family_rec(
    segs: &[Segment],
    from: usize,
    left: usize,
    cur: &Multisegment,
    picks: &mut Vec<Segment>,
    out: &mut BTreeMap<Multisegment, Multisegment>,
) {
    out.insert(Multisegment::from_segments(picks.iter().copied()), cur.clone());
    if left == 0 {
        return;
    }
    for i in from..segs.len() {
        if let Some(next) = brute_remove_segment(&segs[i], cur) {
            picks.push(segs[i]);
            family_rec(segs, i, left - 1, &next, picks, out);
            picks.pop();
        }
    }
}

/// `{n ∈ u : r(n, h) = p}`, searching only segments inside `u`'s window.
pub fn fiber(h: &Multisegment, p: &Multisegment, u: &UniverseSpec) -> BTreeSet<Multisegment> {
    admissible_family(h, u.max_segments)
        .into_iter()
        .filter(|(n, r)| r == p && n.iter().all(|s| u.window.0 <= s.start && s.end <= u.window.1))
        .map(|(n, _)| n)
        .collect()
}

/// No `n' <_Z n` has the same resultant.
pub fn brute_minimal(n: &Multisegment, h: &Multisegment) -> bool {
    let Some(r) = brute_remove_multi(n, h) else {
        return false;
    };
    downset(n)
        .iter()
        .filter(|x| *x != n)
        .all(|x| brute_remove_multi(x, h).as_ref() != Some(&r))
}

/// The `≤_Z`-least element of the fiber through `n`, found inside the
/// downset of `n`; `None` if the minimal elements there are not unique.
pub fn brute_least_below(n: &Multisegment, h: &Multisegment) -> Option<Multisegment> {
    let r = brute_remove_multi(n, h)?;
    let same: Vec<Multisegment> =
        downset(n).into_iter().filter(|x| brute_remove_multi(x, h).as_ref() == Some(&r)).collect();
    let set: HashSet<&Multisegment> = same.iter().collect();
    let minimal: Vec<&Multisegment> = same
        .iter()
        .filter(|x| downset(x).iter().all(|y| y == *x || !set.contains(y)))
        .collect();
    (minimal.len() == 1).then(|| minimal[0].clone())
}

/// Groups an admissible family by resultant.
pub fn fibers_of(family: &BTreeMap<Multisegment, Multisegment>) -> HashMap<Multisegment, Vec<Multisegment>> {
    let mut out: HashMap<Multisegment, Vec<Multisegment>> = HashMap::new();
    for (n, r) in family {
        out.entry(r.clone()).or_default().push(n.clone());
    }
    out
}

/// The dual removal traced straight from its definition on the mirrored
/// line: one point at a time from the right, using the shortest `[a', b]`
/// with `a' ≤ a`, and segments handled in decreasing start order.
pub fn brute_dual_remove(n: &Multisegment, h: &Multisegment) -> Option<Multisegment> {
    let mut order = n.entries().to_vec();
    order.sort_by_key(|s| (-s.start, -s.end));
    let mut cur: Vec<Segment> = h.entries().to_vec();
    for d in order {
        for b in (d.start..=d.end).rev() {
            let pick = cur
                .iter()
                .filter(|e| e.end == b && e.start <= d.start)
                .max_by_key(|e| e.start)
                .copied()?;
            take_out(&mut cur, &pick);
            if pick.start < pick.end {
                cur.push(Segment { start: pick.start, end: pick.end - 1 });
            }
        }
    }
    Some(Multisegment::from_segments(cur))
}

/// Removal segments at each fine-chain step, computed from the
/// definitions: the first pick of each run is the shortest `[a, b']` with
/// `b' ≥ b`, truncation and compaction shorten the picks and the least
/// slice from the left. A `None` entry marks an inadmissible step.
pub fn brute_fine_signature(n: &Multisegment, h: &Multisegment) -> Vec<Option<Multisegment>> {
    let mut out = Vec::new();
    let mut n: Vec<Segment> = n.entries().to_vec();
    let mut h = h.clone();
    while let Some(a) = n.iter().map(|s| s.start).min() {
        let mut level: Vec<Segment> = n.iter().filter(|s| s.start == a).copied().collect();
        level.sort_by_key(|s| (s.end, s.start));
        let mut cur = h.clone();
        let mut picks = Vec::new();
        let mut ok = true;
        for d in &level {
            let pick = cur.iter().filter(|e| e.start == a && e.end >= d.end).min_by_key(|e| e.end).copied();
            match (pick, brute_remove_segment(d, &cur)) {
                (Some(p), Some(next)) => {
                    picks.push(p);
                    cur = next;
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            out.push(None);
            break;
        }
        let mut hv = h.entries().to_vec();
        for p in &picks {
            take_out(&mut hv, p);
            if p.start < p.end {
                hv.push(Segment { start: p.start + 1, end: p.end });
            }
        }
        h = Multisegment::from_segments(hv);
        out.push(Some(Multisegment::from_segments(picks)));
        n = n
            .into_iter()
            .filter_map(|s| {
                if s.start != a {
                    Some(s)
                } else if s.start < s.end {
                    Some(Segment { start: s.start + 1, end: s.end })
                } else {
                    None
                }
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(i32, i32)]) -> Multisegment {
        Multisegment::from_pairs(p)
    }

    #[test]
    fn enumerate_small() {
        let u = UniverseSpec::new((0, 1), 1, 1);
        let all = enumerate(&u);
        assert_eq!(all, vec![Multisegment::new(), m(&[(0, 0)]), m(&[(1, 1)]), m(&[(0, 1)])]);
        // multisets of size ≤ 2 over three segment values
        let u2 = UniverseSpec::new((0, 1), 2, 2);
        assert_eq!(enumerate(&u2).len(), 1 + 3 + 6);
        let set: BTreeSet<_> = enumerate(&UniverseSpec::desk()).into_iter().collect();
        assert_eq!(set.len(), enumerate(&UniverseSpec::desk()).len());
    }

    #[test]
    fn downset_small() {
        let d = downset(&m(&[(0, 0), (1, 1)]));
        assert_eq!(d, [m(&[(0, 0), (1, 1)]), m(&[(0, 1)])].into_iter().collect());
        assert_eq!(downset(&m(&[(0, 0), (2, 2)])).len(), 1);
    }

    #[test]
    fn one_point_removal_matches_examples() {
        let h = m(&[(0, 4), (2, 5), (2, 3), (2, 2)]);
        assert_eq!(brute_remove_segment(&Segment::of(0, 2), &h), Some(m(&[(2, 4), (2, 5), (2, 3)])));
        assert_eq!(brute_remove_segment(&Segment::of(0, 3), &h), Some(m(&[(2, 4), (2, 5), (2, 2)])));
        assert_eq!(brute_remove_segment(&Segment::of(0, 5), &h), None);
    }

    #[test]
    fn fiber_example() {
        let h = m(&[(0, 3), (0, 1), (1, 2), (1, 2), (2, 2), (3, 3)]);
        let p = m(&[(0, 1), (1, 2), (2, 2), (3, 3)]);
        let u = UniverseSpec::new((0, 3), 4, 2);
        let f = fiber(&h, &p, &u);
        let want: BTreeSet<_> =
            [m(&[(0, 3), (1, 2)]), m(&[(0, 3), (1, 1), (2, 2)]), m(&[(0, 2), (1, 3)])].into_iter().collect();
        assert_eq!(f, want);
        assert!(brute_minimal(&m(&[(0, 3), (1, 2)]), &h));
        assert!(!brute_minimal(&m(&[(0, 2), (1, 3)]), &h));
        assert!(!brute_minimal(&m(&[(0, 3), (1, 1), (2, 2)]), &h));
        assert_eq!(fiber(&h, &h, &u), [Multisegment::new()].into_iter().collect());
    }

    #[test]
    fn brute_dual_example() {
        let h = m(&[(2, 8), (3, 6)]);
        assert_eq!(brute_dual_remove(&m(&[(4, 8), (5, 6)]), &h), Some(m(&[(2, 4), (3, 3)])));
    }
}
