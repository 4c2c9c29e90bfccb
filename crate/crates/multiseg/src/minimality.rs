//! ε/η invariants, the (†) property, minimizability and minimal elements.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiseg::{Multisegment, Side};
use crate::removal::{first_picks, is_admissible_multi, is_admissible_seg, remove_multi, removal_sequence, remove_segment};
use crate::segment::Segment;

/// Number of entries of `h` starting at `start(d)` that contain `d`.
pub fn epsilon(h: &Multisegment, d: &Segment) -> usize {
    h.iter().filter(|e| e.start == d.start && e.end >= d.end).count()
}

/// `(ε_[a,b], ε_[a+1,b], …, ε_[b,b])` taken against `base = [a,b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaVector {
    pub base: Segment,
    pub values: Vec<usize>,
}

impl fmt::Display for EtaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn eta(h: &Multisegment, d: &Segment) -> EtaVector {
    let values = (d.start..=d.end).map(|a| epsilon(h, &Segment::of(a, d.end))).collect();
    EtaVector { base: *d, values }
}

/// `Σ_{a ≤ a' ≤ b} ε_[a',b](h) · [a',b]` for `d = [a,b]`.
pub fn mx_saturated(h: &Multisegment, d: &Segment) -> Multisegment {
    let mut out = Vec::new();
    for a in d.start..=d.end {
        let s = Segment::of(a, d.end);
        out.extend(std::iter::repeat(s).take(epsilon(h, &s)));
    }
    Multisegment::from_segments(out)
}

/// `{[a,c] : [a,b] ∈ h, a ≤ c ≤ b}`.
pub fn mxpt_b(h: &Multisegment, c: i32) -> Multisegment {
    h.iter().filter(|e| e.contains_point(c)).map(|e| Segment::of(e.start, c)).collect()
}

fn check_dagger_pre(d: &Segment, dp: &Segment, h: &Multisegment) -> Result<()> {
    if !is_admissible_seg(d, h) {
        return Err(Error::NotAdmissible);
    }
    if !d.precedes(dp) {
        return Err(Error::precondition(format!("{d} must be linked to {dp} with the smaller end")));
    }
    Ok(())
}

/// The (†) property for `(d, dp, h)`: some entry `[x,y]` of `h` has
/// `start(d) ≤ x < start(dp)` and `end(d) ≤ y < end(dp)`.
pub fn dagger(d: &Segment, dp: &Segment, h: &Multisegment) -> Result<bool> {
    check_dagger_pre(d, dp, h)?;
    Ok(h.iter().any(|e| {
        d.start <= e.start && e.start < dp.start && d.end <= e.end && e.end < dp.end
    }))
}

/// (†) via the removal sequence: the shortest member containing
/// `start(dp) - 1` must not contain `dp`.
pub fn dagger_by_sequence(d: &Segment, dp: &Segment, h: &Multisegment) -> Result<bool> {
    check_dagger_pre(d, dp, h)?;
    let t = removal_sequence(d, h).ok_or(Error::NotAdmissible)?;
    let c = dp.start - 1;
    // Members are nested, so the last one containing c is the shortest.
    match t.sequence.iter().rev().find(|s| s.contains_point(c)) {
        Some(s) => Ok(!s.contains(dp)),
        None => Err(Error::precondition(format!("no removal-sequence member contains {c}"))),
    }
}

/// (†) via η: `η_dp(h) = η_dp(r(d, h))`.
pub fn dagger_by_eta(d: &Segment, dp: &Segment, h: &Multisegment) -> Result<bool> {
    check_dagger_pre(d, dp, h)?;
    let r = remove_segment(d, h).ok_or(Error::NotAdmissible)?;
    Ok(eta(h, dp) == eta(&r, dp))
}

/// A witness that a fine-chain step admits a resultant-preserving move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizabilityWitness {
    pub step_index: usize,
    /// One-based position in the ordering of the least slice.
    pub index_p: usize,
    /// `f_a(p)`.
    pub ordered_segment: Segment,
    /// `g_a(p)`.
    pub removal_segment: Segment,
    /// `Δ̄` from the next slice.
    pub witness_segment: Segment,
}

impl fmt::Display for MinimizabilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step={} p={} f(p)={} g(p)={} witness={}",
            self.step_index, self.index_p, self.ordered_segment, self.removal_segment, self.witness_segment
        )
    }
}

/// Minimizability of `(n, f, h)` for an explicit ordering `order` of the
/// least slice of `n`. Returns every `(p, Δ̄)` pair found, in order.
pub fn minimizable_with_ordering(
    n: &Multisegment,
    order: &[Segment],
    h: &Multisegment,
) -> Result<Vec<MinimizabilityWitness>> {
    let Some(a) = n.min_start() else {
        return Ok(Vec::new());
    };
    let mut want = n.left_slice(a);
    for s in order {
        if !want.remove_one(s) {
            return Err(Error::precondition("ordering is not a bijection onto the least slice"));
        }
    }
    if !want.is_empty() {
        return Err(Error::precondition("ordering is not a bijection onto the least slice"));
    }
    let (g, _) = first_picks(order, h).ok_or(Error::NotAdmissible)?;
    let next = n.left_slice(a + 1).distinct();
    let mut out = Vec::new();
    for (p, (f, gp)) in order.iter().zip(&g).enumerate() {
        for bar in &next {
            if f.linked(bar) && gp.contains(bar) {
                out.push(MinimizabilityWitness {
                    step_index: 0,
                    index_p: p + 1,
                    ordered_segment: *f,
                    removal_segment: *gp,
                    witness_segment: *bar,
                });
            }
        }
    }
    Ok(out)
}

/// Minimizability of `(n, h)` under the canonical ordering of the least
/// slice; `Ok(None)` when not minimizable.
pub fn is_minimizable(n: &Multisegment, h: &Multisegment) -> Result<Option<MinimizabilityWitness>> {
    if !is_admissible_multi(n, h) {
        return Err(Error::NotAdmissible);
    }
    let Some(a) = n.min_start() else {
        return Ok(None);
    };
    let order = n.left_slice(a);
    Ok(minimizable_with_ordering(n, order.entries(), h)?.into_iter().next())
}

/// An entry of a fine-chain step together with the entry of the original
/// multisegment it was truncated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Tracked {
    current: Segment,
    origin: Segment,
}

/// A witness with the original pairs the move should act on.
type Traced = (MinimizabilityWitness, Vec<(Segment, Segment)>);

/// Per fine-chain step: the witnesses found, with their traced pairs.
fn traced_witnesses(n: &Multisegment, h: &Multisegment) -> Result<Vec<Traced>> {
    let mut items: Vec<Tracked> = n.iter().map(|s| Tracked { current: *s, origin: *s }).collect();
    let mut hh = h.clone();
    let mut out = Vec::new();
    let mut step = 0;
    while !items.is_empty() {
        items.sort();
        let a = items.iter().map(|t| t.current.start).min().unwrap();
        let cur: Multisegment = items.iter().map(|t| t.current).collect();
        let level: Vec<Tracked> = items.iter().copied().filter(|t| t.current.start == a).collect();
        let order: Vec<Segment> = level.iter().map(|t| t.current).collect();
        let ws = minimizable_with_ordering(&cur, &order, &hh)?;
        for mut w in ws {
            w.step_index = step;
            let mut pairs = Vec::new();
            let f = w.ordered_segment;
            let mut origins_f: Vec<Segment> =
                level.iter().filter(|t| t.current == f).map(|t| t.origin).collect();
            origins_f.dedup();
            let mut origins_bar: Vec<Segment> = items
                .iter()
                .filter(|t| t.current == w.witness_segment)
                .map(|t| t.origin)
                .collect();
            origins_bar.dedup();
            for of in &origins_f {
                for ob in &origins_bar {
                    if of.linked(ob) && !pairs.contains(&(*of, *ob)) {
                        pairs.push((*of, *ob));
                    }
                }
            }
            out.push((w, pairs));
        }
        let (g, _) = first_picks(&order, &hh).ok_or(Error::NotAdmissible)?;
        let s = Multisegment::from_segments(g);
        hh = hh.minus(&s).expect("picks are entries").plus(&s.shorten(Side::Left));
        items = items
            .into_iter()
            .filter_map(|t| {
                if t.current.start == a {
                    t.current.shorten_left().map(|c| Tracked { current: c, origin: t.origin })
                } else {
                    Some(t)
                }
            })
            .collect();
        step += 1;
    }
    Ok(out)
}

/// Every fine-chain step is checked for minimizability; minimal iff none
/// is minimizable.
pub fn is_minimal(n: &Multisegment, h: &Multisegment) -> Result<bool> {
    Ok(first_minimizable_step(n, h)?.is_none())
}

/// The first witness along the fine chain, if any.
pub fn first_minimizable_step(n: &Multisegment, h: &Multisegment) -> Result<Option<MinimizabilityWitness>> {
    if !is_admissible_multi(n, h) {
        return Err(Error::NotAdmissible);
    }
    let mut items = n.clone();
    let mut hh = h.clone();
    let mut step = 0;
    while let Some(a) = items.min_start() {
        let level = items.left_slice(a);
        if let Some(mut w) = minimizable_with_ordering(&items, level.entries(), &hh)?.into_iter().next() {
            w.step_index = step;
            return Ok(Some(w));
        }
        let (tr, cp) = crate::removal::tr_cp(&items, &hh)?;
        items = cp;
        hh = tr;
        step += 1;
    }
    Ok(None)
}

/// One intersection-union move taken during minimization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentMove {
    pub pair: (Segment, Segment),
    pub result: Multisegment,
}

/// The minimal element of the fiber of `r(·, h)` through `n`, with the
/// moves taken to reach it.
///
/// Each round reads a witness off the fine chain, traces its segments
/// back to entries of the current multisegment and applies that move;
/// candidate moves are confirmed to keep the resultant before use.
pub fn minimize(n: &Multisegment, h: &Multisegment) -> Result<(Multisegment, Vec<DescentMove>)> {
    let target = remove_multi(n, h).ok_or(Error::NotAdmissible)?;
    let mut cur = n.clone();
    let mut moves = Vec::new();
    'outer: loop {
        let traced = traced_witnesses(&cur, h)?;
        if traced.is_empty() {
            return Ok((cur, moves));
        }
        for (_, pairs) in &traced {
            for (x, y) in pairs {
                let next = cur.iu_pair(x, y)?;
                if remove_multi(&next, h).as_ref() == Some(&target) {
                    moves.push(DescentMove { pair: (*x, *y), result: next.clone() });
                    cur = next;
                    continue 'outer;
                }
            }
        }
        // The lifted pair can miss when a witness entry was truncated from
        // a different original; any fiber-preserving move still descends.
        let d = cur.distinct();
        for (i, x) in d.iter().enumerate() {
            for y in &d[i + 1..] {
                if !x.linked(y) {
                    continue;
                }
                let next = cur.iu_pair(x, y)?;
                if remove_multi(&next, h).as_ref() == Some(&target) {
                    moves.push(DescentMove { pair: (*x, *y), result: next.clone() });
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return Err(Error::precondition(format!(
            "no traced move keeps the resultant of {cur} on {h}"
        )));
    }
}

pub fn minimal_element(n: &Multisegment, h: &Multisegment) -> Result<Multisegment> {
    minimize(n, h).map(|(m, _)| m)
}

/// Linked pairs `Δ1 < Δ2` (by value, start of `Δ1` smaller) with no other
/// entry between them in both coordinates that is linked to either.
///
/// Entries equal to `Δ1` or `Δ2` do not count as "other".
pub fn consecutive_pairs(m: &Multisegment) -> Vec<(Segment, Segment)> {
    let d = m.distinct();
    let mut out = Vec::new();
    for x in &d {
        for y in &d {
            if !(x.linked(y) && x.start < y.start) {
                continue;
            }
            let blocked = d.iter().any(|z| {
                z != x
                    && z != y
                    && x.start <= z.start
                    && z.start <= y.start
                    && x.end <= z.end
                    && z.end <= y.end
                    && (z.linked(x) || z.linked(y))
            });
            if !blocked {
                out.push((*x, *y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(i32, i32)]) -> Multisegment {
        Multisegment::from_pairs(p)
    }
    fn s(a: i32, b: i32) -> Segment {
        Segment::of(a, b)
    }

    #[test]
    fn epsilon_eta_examples() {
        let h = m(&[(0, 5), (3, 8)]);
        assert_eq!(epsilon(&h, &s(3, 6)), 1);
        assert_eq!(epsilon(&h, &s(1, 2)), 0);
        assert_eq!(eta(&h, &s(3, 6)).values, vec![1, 0, 0, 0]);
        let r = remove_segment(&s(0, 3), &h).unwrap();
        assert_eq!(r, m(&[(3, 8), (4, 5)]));
        assert_eq!(eta(&r, &s(3, 6)).values, vec![1, 0, 0, 0]);
        assert_eq!(eta(&h, &s(3, 4)).values, vec![1, 0]);
        assert_eq!(eta(&r, &s(3, 4)).values, vec![1, 1]);
        assert_eq!(eta(&Multisegment::new(), &s(0, 2)).values, vec![0, 0, 0]);
        assert_eq!(eta(&h, &s(3, 4)).to_string(), "(1,0)");
    }

    #[test]
    fn mx_and_mxpt() {
        // [3,8] contains [3,5], so ε_[3,5] = 1 contributes a copy of [3,5]
        assert_eq!(mx_saturated(&m(&[(0, 5), (3, 8)]), &s(0, 5)), m(&[(0, 5), (3, 5)]));
        assert_eq!(mx_saturated(&m(&[(0, 5), (3, 4)]), &s(0, 5)), m(&[(0, 5)]));
        assert_eq!(mx_saturated(&Multisegment::new(), &s(0, 5)), Multisegment::new());
        assert_eq!(mx_saturated(&m(&[(2, 4), (3, 4), (2, 4)]), &s(2, 4)), m(&[(2, 4), (2, 4), (3, 4)]));
        let h = m(&[(1, 5), (4, 5), (3, 6), (3, 3), (0, 2)]);
        assert_eq!(mxpt_b(&h, 3), m(&[(1, 3), (3, 3), (3, 3)]));
        assert_eq!(mxpt_b(&h, 9), Multisegment::new());
        assert_eq!(mxpt_b(&m(&[(2, 2)]), 2), m(&[(2, 2)]));
    }

    #[test]
    fn dagger_examples() {
        let h1 = m(&[(0, 7), (3, 6), (6, 10)]);
        let h2 = m(&[(0, 8), (3, 6), (6, 10)]);
        for f in [dagger, dagger_by_sequence, dagger_by_eta] {
            assert!(f(&s(0, 5), &s(6, 7), &h1).unwrap());
            assert!(!f(&s(0, 7), &s(6, 8), &h2).unwrap());
        }
        assert!(dagger(&s(6, 8), &s(0, 7), &h2).is_err());
    }

    #[test]
    fn minimizable_example() {
        let h = m(&[(0, 1), (1, 4), (1, 5), (1, 6), (2, 5), (3, 4)]);
        let n = m(&[(1, 3), (1, 6), (2, 4)]);
        let w = is_minimizable(&n, &h).unwrap().unwrap();
        assert_eq!((w.index_p, w.witness_segment, w.removal_segment), (1, s(2, 4), s(1, 4)));
        let n2 = m(&[(1, 3), (1, 6), (2, 5)]);
        assert_eq!(is_minimizable(&n2, &h).unwrap(), None);
    }

    #[test]
    fn minimal_examples() {
        let h = m(&[(0, 3), (0, 1), (1, 2), (1, 2), (2, 2), (3, 3)]);
        assert!(is_minimal(&m(&[(0, 3), (1, 2)]), &h).unwrap());
        assert!(!is_minimal(&m(&[(0, 2), (1, 3)]), &h).unwrap());
        assert_eq!(minimal_element(&m(&[(0, 2), (1, 3)]), &h).unwrap(), m(&[(0, 3), (1, 2)]));
        assert_eq!(minimal_element(&m(&[(0, 3), (1, 2)]), &h).unwrap(), m(&[(0, 3), (1, 2)]));
        // Traced witness lifts to a pair that leaves the fiber.
        let h2 = m(&[(0, 2), (1, 3)]);
        assert_eq!(minimal_element(&m(&[(0, 2), (1, 1), (2, 3)]), &h2).unwrap(), m(&[(0, 2), (1, 3)]));
        assert_eq!(is_minimal(&m(&[(5, 5)]), &h), Err(Error::NotAdmissible));
    }

    #[test]
    fn consecutive_examples() {
        let c = consecutive_pairs(&m(&[(0, 3), (1, 4), (2, 5)]));
        assert!(c.contains(&(s(0, 3), s(1, 4))));
        assert!(c.contains(&(s(1, 4), s(2, 5))));
        assert!(!c.contains(&(s(0, 3), s(2, 5))));
        let c = consecutive_pairs(&m(&[(0, 4), (1, 2), (2, 5)]));
        assert!(c.contains(&(s(0, 4), s(2, 5))));
        assert!(c.contains(&(s(1, 2), s(2, 5))));
        let c = consecutive_pairs(&m(&[(0, 3), (1, 3), (2, 4), (2, 5)]));
        assert!(c.contains(&(s(1, 3), s(2, 4))));
        assert!(!c.contains(&(s(0, 3), s(2, 4))));
        assert!(consecutive_pairs(&m(&[(0, 1), (4, 5)])).is_empty());
        // duplicates of a pair member do not block it
        assert!(consecutive_pairs(&m(&[(0, 1), (0, 1), (1, 2)])).contains(&(s(0, 1), s(1, 2))));
    }
}
