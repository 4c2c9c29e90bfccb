//! The removal process, removal segments, truncations and fine chains.
//!
//! An inadmissible removal has an "infinite" resultant, modelled as `None`
//! and absorbing under every further removal.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiseg::{Multisegment, Side};
use crate::segment::Segment;

/// One run of the removal process for `(segment, h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalTrace {
    #[serde(skip)]
    pub segment: Segment,
    #[serde(skip)]
    pub input: Multisegment,
    pub sequence: Vec<Segment>,
    /// Entry `i` is the truncation of `sequence[i]`; `None` when empty.
    pub truncations: Vec<Option<Segment>>,
    pub resultant: Multisegment,
}

impl RemovalTrace {
    /// Points taken away from each member of the sequence, as
    /// `(member, removed sub-interval)`.
    pub fn removed_parts(&self) -> Vec<(Segment, Segment)> {
        let r = self.sequence.len();
        (0..r)
            .map(|i| {
                let s = self.sequence[i];
                let stop = if i + 1 < r { self.sequence[i + 1].start - 1 } else { self.segment.end };
                (s, Segment::of(s.start, stop))
            })
            .collect()
    }
}

/// `h` has an entry `[a, c]` with `a = start(d)` and `c ≥ end(d)`.
pub fn is_admissible_seg(d: &Segment, h: &Multisegment) -> bool {
    upsilon(d, h).is_some()
}

/// The first segment of the removal sequence: the shortest entry
/// `[start(d), b']` with `b' ≥ end(d)`.
pub fn upsilon(d: &Segment, h: &Multisegment) -> Option<Segment> {
    h.iter()
        .filter(|e| e.start == d.start && e.end >= d.end)
        .min_by_key(|e| e.end)
        .copied()
}

/// Runs the removal process for `(d, h)`; `None` when `d` is inadmissible.
///
/// After the first pick, each further pick is the left-minimal entry
/// `[x, y]` with `prev.start < x ≤ end(d)` and `end(d) ≤ y < prev.end`.
pub fn removal_sequence(d: &Segment, h: &Multisegment) -> Option<RemovalTrace> {
    let b = d.end;
    let first = upsilon(d, h)?;
    let mut sequence = vec![first];
    loop {
        let prev = *sequence.last().unwrap();
        // Entries are sorted by (start, end), so the first hit is minimal.
        let next = h
            .iter()
            .find(|e| prev.start < e.start && e.start <= b && b <= e.end && e.end < prev.end);
        match next {
            Some(e) => sequence.push(*e),
            None => break,
        }
    }
    let r = sequence.len();
    let truncations: Vec<Option<Segment>> = (0..r)
        .map(|i| {
            if i + 1 < r {
                Segment::try_of(sequence[i + 1].start, sequence[i].end)
            } else {
                Segment::try_of(b + 1, sequence[i].end)
            }
        })
        .collect();
    let mut resultant = h.clone();
    for s in &sequence {
        resultant.remove_one(s);
    }
    for t in truncations.iter().flatten() {
        resultant.insert(*t);
    }
    Some(RemovalTrace { segment: *d, input: h.clone(), sequence, truncations, resultant })
}

/// `r(d, h)`.
pub fn remove_segment(d: &Segment, h: &Multisegment) -> Option<Multisegment> {
    removal_sequence(d, h).map(|t| t.resultant)
}

/// `r(n, h)`: folds the removal process over the ascending order of `n`.
pub fn remove_multi(n: &Multisegment, h: &Multisegment) -> Option<Multisegment> {
    let mut cur = h.clone();
    for d in n.ascending() {
        cur = remove_segment(&d, &cur)?;
    }
    Some(cur)
}

pub fn is_admissible_multi(n: &Multisegment, h: &Multisegment) -> bool {
    remove_multi(n, h).is_some()
}

/// Removes the given segments in the given order, collecting the first
/// pick of each run.
pub fn first_picks(order: &[Segment], h: &Multisegment) -> Option<(Vec<Segment>, Multisegment)> {
    let mut cur = h.clone();
    let mut picks = Vec::with_capacity(order.len());
    for d in order {
        let t = removal_sequence(d, &cur)?;
        picks.push(t.sequence[0]);
        cur = t.resultant;
    }
    Some((picks, cur))
}

/// `s(n, h)`, or `None` when `n[a]` is inadmissible (`a` the least start).
/// The empty `n` gives `Some({})`.
pub fn try_removal_segments(n: &Multisegment, h: &Multisegment) -> Option<Multisegment> {
    let Some(a) = n.min_start() else {
        return Some(Multisegment::new());
    };
    let level = n.left_slice(a);
    first_picks(level.entries(), h).map(|(p, _)| Multisegment::from_segments(p))
}

/// `s(n, h)`; empty when `n[a]` is inadmissible.
pub fn removal_segments(n: &Multisegment, h: &Multisegment) -> Multisegment {
    try_removal_segments(n, h).unwrap_or_default()
}

/// `(tr(n,h), cp(n,h))`.
pub fn tr_cp(n: &Multisegment, h: &Multisegment) -> Result<(Multisegment, Multisegment)> {
    let Some(a) = n.min_start() else {
        return Ok((h.clone(), Multisegment::new()));
    };
    let s = try_removal_segments(n, h).ok_or(Error::NotAdmissible)?;
    let tr = h.minus(&s).expect("removal segments are entries of h").plus(&s.shorten(Side::Left));
    let level = n.left_slice(a);
    let cp = n.minus(&level).unwrap().plus(&level.shorten(Side::Left));
    Ok((tr, cp))
}

/// One step of a fine chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FineStep {
    /// `s(n_j, h_j)`; `None` marks an inadmissible step.
    pub removal_segments: Option<Multisegment>,
    pub n: Multisegment,
    pub h: Multisegment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FineChain {
    pub steps: Vec<FineStep>,
}

impl FineChain {
    /// Whether every step was admissible.
    pub fn is_complete(&self) -> bool {
        self.steps.iter().all(|s| s.removal_segments.is_some())
    }

    pub fn signature(&self) -> Vec<Option<Multisegment>> {
        self.steps.iter().map(|s| s.removal_segments.clone()).collect()
    }
}

pub fn fine_chain(n: &Multisegment, h: &Multisegment) -> FineChain {
    let mut steps = Vec::new();
    let mut n = n.clone();
    let mut h = h.clone();
    while !n.is_empty() {
        let s = try_removal_segments(&n, &h);
        let done = s.is_none();
        steps.push(FineStep { removal_segments: s, n: n.clone(), h: h.clone() });
        if done {
            break;
        }
        let (tr, cp) = tr_cp(&n, &h).expect("step checked admissible");
        n = cp;
        h = tr;
    }
    FineChain { steps }
}

/// Both resultants exist and the fine chains agree step by step.
pub fn chains_coincide(n1: &Multisegment, n2: &Multisegment, h: &Multisegment) -> bool {
    if !is_admissible_multi(n1, h) || !is_admissible_multi(n2, h) {
        return false;
    }
    fine_chain(n1, h).signature() == fine_chain(n2, h).signature()
}

/// `m1 ≤ m2` on multisegments sharing one start point: sort both by end
/// descending, require `|m1| ≤ |m2|` and positionwise `≤`. `None` is the
/// infinite element, above everything else.
pub fn level_leq(m1: Option<&Multisegment>, m2: Option<&Multisegment>) -> bool {
    match (m1, m2) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => {
            if x.len() > y.len() {
                return false;
            }
            let mut xe: Vec<i32> = x.iter().map(|s| s.end).collect();
            let mut ye: Vec<i32> = y.iter().map(|s| s.end).collect();
            xe.sort_unstable_by(|a, b| b.cmp(a));
            ye.sort_unstable_by(|a, b| b.cmp(a));
            xe.iter().zip(&ye).all(|(a, b)| a <= b)
        }
    }
}

/// Strict version of [`level_leq`].
pub fn level_lt(m1: Option<&Multisegment>, m2: Option<&Multisegment>) -> bool {
    level_leq(m1, m2) && m1 != m2
}

/// A multisegment with an explicit ordering of each left-end slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMultisegment {
    levels: BTreeMap<i32, Vec<Segment>>,
}

impl OrderedMultisegment {
    /// Orders every slice canonically (by end, ascending).
    pub fn canonical(m: &Multisegment) -> Self {
        let mut levels: BTreeMap<i32, Vec<Segment>> = BTreeMap::new();
        for s in m.iter() {
            levels.entry(s.start).or_default().push(*s);
        }
        OrderedMultisegment { levels }
    }

    /// Builds from explicit per-level orderings; every segment in the
    /// list for `a` must start at `a`.
    pub fn from_levels(levels: BTreeMap<i32, Vec<Segment>>) -> Result<Self> {
        for (a, v) in &levels {
            if let Some(s) = v.iter().find(|s| s.start != *a) {
                return Err(Error::precondition(format!("{s} listed under start {a}")));
            }
        }
        let levels = levels.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        Ok(OrderedMultisegment { levels })
    }

    pub fn base(&self) -> Multisegment {
        self.levels.values().flatten().copied().collect()
    }

    pub fn least_start(&self) -> Option<i32> {
        self.levels.keys().next().copied()
    }

    /// `f_a` as a slice: position `p-1` holds `f_a(p)`.
    pub fn level(&self, a: i32) -> &[Segment] {
        self.levels.get(&a).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn levels(&self) -> &BTreeMap<i32, Vec<Segment>> {
        &self.levels
    }

    /// The ordered compaction: the least level is shortened on the left,
    /// singletons dropped with the survivors kept in relative order, and
    /// placed before the existing entries of the next level.
    pub fn bar_cp(&self) -> Self {
        let mut levels = self.levels.clone();
        let Some(a) = self.least_start() else {
            return self.clone();
        };
        let low = levels.remove(&a).unwrap();
        let mut moved: Vec<Segment> = low.iter().filter_map(Segment::shorten_left).collect();
        if let Some(rest) = levels.remove(&(a + 1)) {
            moved.extend(rest);
        }
        if !moved.is_empty() {
            levels.insert(a + 1, moved);
        }
        OrderedMultisegment { levels }
    }
}

/// `s̄(n̄, h)`: the ordered removal segments at the least start `a` of
/// `n̄`, with `g_a(p)` the first pick of the `p`-th removal under `f_a`.
pub fn ordered_removal_segments(
    n: &OrderedMultisegment,
    h: &Multisegment,
) -> Result<OrderedMultisegment> {
    let Some(a) = n.least_start() else {
        return Ok(n.clone());
    };
    let (g, _) = first_picks(n.level(a), h).ok_or(Error::NotAdmissible)?;
    let mut levels = BTreeMap::new();
    levels.insert(a, g);
    Ok(OrderedMultisegment { levels })
}
