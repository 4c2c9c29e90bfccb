//! Exhaustive property checks over a bounded universe.
//!
//! Each check has a stable id. Per-`h` checks share one context per `h`
//! holding the admissible multisegments (at most `max_segments` entries,
//! any multiplicity) with their resultants; that family is closed under
//! intersection-union moves, so fiber questions can be answered inside it.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hd_classes::{hd_ess_speh, hd_speh_product, realize, supports_nested};
use crate::minimality::{
    dagger, dagger_by_eta, dagger_by_sequence, epsilon, eta, is_minimal, minimal_element,
    minimizable_with_ordering,
};
use crate::multiseg::{is_ascending, Multisegment};
use crate::oracle::{self, UniverseSpec};
use crate::removal::{
    fine_chain, first_picks, level_leq, level_lt, remove_multi, remove_segment, removal_sequence,
    removal_segments, tr_cp, try_removal_segments, upsilon,
};
use crate::segment::Segment;

/// Outcome of one check over one universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub statement: String,
    /// Conjectures are reported but never fail a run.
    pub conjecture: bool,
    pub instances: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub universe: UniverseSpec,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    /// No failures outside the conjecture checks.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.conjecture || r.passed())
    }
}

struct Rec {
    instances: u64,
    failures: u64,
    listed: Vec<String>,
    cap: usize,
}

impl Rec {
    fn new(cap: usize) -> Self {
        Rec { instances: 0, failures: 0, listed: Vec::new(), cap }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.listed.len() < self.cap {
                self.listed.push(msg());
            }
        }
    }
}

/// Shared data for the checks run on one `h`.
pub struct HCtx<'a> {
    pub h: &'a Multisegment,
    pub u: &'a UniverseSpec,
    /// Every segment inside the universe window.
    pub segs: &'a [Segment],
    family: OnceCell<Vec<(Multisegment, Multisegment)>>,
    lookup: OnceCell<HashMap<Multisegment, Multisegment>>,
    fibers: OnceCell<Vec<Vec<usize>>>,
    down: OnceCell<Vec<HashSet<Multisegment>>>,
    ofamily: OnceCell<BTreeMap<Multisegment, Multisegment>>,
    oleast: OnceCell<HashMap<Multisegment, Vec<Multisegment>>>,
    image: OnceCell<HashMap<Multisegment, Multisegment>>,
}

impl<'a> HCtx<'a> {
    pub fn new(h: &'a Multisegment, u: &'a UniverseSpec, segs: &'a [Segment]) -> Self {
        HCtx {
            h,
            u,
            segs,
            family: OnceCell::new(),
            lookup: OnceCell::new(),
            fibers: OnceCell::new(),
            down: OnceCell::new(),
            ofamily: OnceCell::new(),
            oleast: OnceCell::new(),
            image: OnceCell::new(),
        }
    }

    /// Admissible `n` with at most `max_segments` entries and `r(n, h)`,
    /// found by extending in left order with incremental removal.
    pub fn family(&self) -> &[(Multisegment, Multisegment)] {
        self.family.get_or_init(|| {
            let mut out = Vec::new();
            let cands = support_segments(self.h);
            let mut picks = Vec::new();
            family_dfs(&cands, 0, self.u.max_segments, self.h, &mut picks, &mut out);
            out.sort();
            out
        })
    }

    fn lookup(&self) -> &HashMap<Multisegment, Multisegment> {
        self.lookup.get_or_init(|| self.family().iter().cloned().collect())
    }

    /// Family indices grouped by resultant, in resultant order.
    fn fibers(&self) -> &[Vec<usize>] {
        self.fibers.get_or_init(|| {
            let mut g: BTreeMap<&Multisegment, Vec<usize>> = BTreeMap::new();
            for (i, (_, r)) in self.family().iter().enumerate() {
                g.entry(r).or_default().push(i);
            }
            g.into_values().collect()
        })
    }

    /// Downsets of family members, by family index.
    fn down(&self) -> &[HashSet<Multisegment>] {
        self.down.get_or_init(|| self.family().iter().map(|(n, _)| fast_downset(n)).collect())
    }

    fn ofamily(&self) -> &BTreeMap<Multisegment, Multisegment> {
        self.ofamily.get_or_init(|| oracle::admissible_family(self.h, self.u.max_segments))
    }

    /// Oracle fibers keyed by resultant, mapped to their minimal members.
    fn oleast(&self) -> &HashMap<Multisegment, Vec<Multisegment>> {
        self.oleast.get_or_init(|| {
            let fam = self.ofamily();
            let mut by_r: HashMap<&Multisegment, Vec<&Multisegment>> = HashMap::new();
            for (n, r) in fam {
                by_r.entry(r).or_default().push(n);
            }
            by_r.into_iter()
                .map(|(r, members)| {
                    let set: HashSet<&Multisegment> = members.iter().copied().collect();
                    let minimal = members
                        .iter()
                        .filter(|x| oracle::downset(x).iter().all(|y| y == **x || !set.contains(y)))
                        .map(|x| (*x).clone())
                        .collect();
                    (r.clone(), minimal)
                })
                .collect()
        })
    }

    /// The full image of `r(·, h)` with one witness per resultant,
    /// with no bound on the size of the witness.
    fn image(&self) -> &HashMap<Multisegment, Multisegment> {
        self.image.get_or_init(|| full_image(self.h))
    }
}

fn support_segments(h: &Multisegment) -> Vec<Segment> {
    let (Some(lo), Some(hi)) = (h.min_start(), h.max_end()) else {
        return Vec::new();
    };
    let mut v = Vec::new();
    for a in lo..=hi {
        for b in a..=hi {
            v.push(Segment::of(a, b));
        }
    }
    v
}

fn family_dfs(
    cands: &[Segment],
    from: usize,
    left: usize,
    cur: &Multisegment,
    picks: &mut Vec<Segment>,
    out: &mut Vec<(Multisegment, Multisegment)>,
) {
    out.push((Multisegment::from_segments(picks.iter().copied()), cur.clone()));
    if left == 0 {
        return;
    }
    for i in from..cands.len() {
        if let Some(next) = remove_segment(&cands[i], cur) {
            picks.push(cands[i]);
            family_dfs(cands, i, left - 1, &next, picks, out);
            picks.pop();
        }
    }
}

fn fast_downset(n: &Multisegment) -> HashSet<Multisegment> {
    let mut seen = HashSet::from([n.clone()]);
    let mut queue = VecDeque::from([n.clone()]);
    while let Some(m) = queue.pop_front() {
        for next in m.iu_neighbours() {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

fn full_image(h: &Multisegment) -> HashMap<Multisegment, Multisegment> {
    let cands = support_segments(h);
    let mut image: HashMap<Multisegment, Multisegment> = HashMap::new();
    let mut seen: HashSet<(Multisegment, usize)> = HashSet::new();
    let mut queue = VecDeque::from([(h.clone(), 0usize, Multisegment::new())]);
    image.insert(h.clone(), Multisegment::new());
    while let Some((cur, from, n)) = queue.pop_front() {
        for (i, c) in cands.iter().enumerate().skip(from) {
            if let Some(next) = remove_segment(c, &cur) {
                if seen.insert((next.clone(), i)) {
                    let n2 = n.with(*c);
                    image.entry(next.clone()).or_insert_with(|| n2.clone());
                    queue.push_back((next, i, n2));
                }
            }
        }
    }
    image
}

/// Distinct orderings of `v`.
fn orderings(v: &[Segment]) -> Vec<Vec<Segment>> {
    let mut cur = v.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[i - 1] < cur[j]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn single_level(n: &Multisegment) -> bool {
    n.min_start() == n.max_start()
}

fn fmt_opt(m: &Option<Multisegment>) -> String {
    m.as_ref().map_or("inf".to_string(), |m| m.to_string())
}

type PerH = fn(&HCtx, &mut Rec);
type Global = fn(&[Multisegment], &UniverseSpec, &mut Rec);

#[derive(Clone, Copy)]
enum Kind {
    PerH(PerH),
    Global(Global),
}

/// A registered check.
#[derive(Clone, Copy)]
pub struct CheckInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub conjecture: bool,
    kind: Kind,
}

const fn per_h(id: &'static str, statement: &'static str, f: PerH) -> CheckInfo {
    CheckInfo { id, statement, conjecture: false, kind: Kind::PerH(f) }
}

const fn global(id: &'static str, statement: &'static str, f: Global) -> CheckInfo {
    CheckInfo { id, statement, conjecture: false, kind: Kind::Global(f) }
}

static REGISTRY: &[CheckInfo] = &[
    global("iu-decreases", "an intersection-union move goes strictly down in the Zelevinsky order", c_iu_decreases),
    global("iu-content", "an intersection-union move preserves the covered points", c_iu_content),
    global("leq-z-partial-order", "the Zelevinsky order is a partial order and matches the oracle closure", c_leq_z),
    global("ascending-valid", "the canonical order of every multisegment is ascending", c_ascending),
    per_h("removal-oracle", "removal traces are nested, assemble the resultant, and agree with one-point removal", c_removal_oracle),
    per_h("enumeration-agreement", "admissible multisegments and resultants agree with the oracle enumeration", c_enumeration),
    per_h("one-point", "r(D,h) = r(-D, h - Y + -Y) with Y the first removal segment", c_one_point),
    per_h("locality", "removal leaves h[a'] alone for a' below the start of D", c_locality),
    per_h("whole-segment", "removing an entry of h removes exactly that entry", c_whole_segment),
    per_h("first-exchange", "first picks of two same-start removals are exchangeable", c_first_exchange),
    per_h("largest-end", "a removal sequence meeting the largest end point starts there", c_largest_end),
    per_h("order-independence", "unlinked segments can be removed in either order", c_order_independence),
    per_h("ordering-independence-s", "removal segments do not depend on the order within the least slice", c_ordering_s),
    per_h("fine-chain-oracle", "fine-chain removal segments agree with the definition-level oracle", c_fine_chain_oracle),
    per_h("multiple-truncation", "r(n,h) = r(cp(n,h), tr(n,h))", c_multiple_truncation),
    per_h("coincidence", "equal resultants exactly when fine chains coincide", c_coincidence),
    per_h("monotone-comparison", "lengthening or an intersection-union move raises removal segments in the level order", c_monotone),
    per_h("interval-closed", "fibers of r(., h) are intervals for the Zelevinsky order", c_interval_closed),
    per_h("unique-minimum", "every nonempty fiber has exactly one minimal element", c_unique_minimum),
    per_h("minimizable-ordering", "minimizability does not depend on the ordering function", c_minimizable_ordering),
    per_h("minimal-oracle", "is_minimal agrees with the brute-force downset search", c_minimal_oracle),
    per_h("minimal-element-oracle", "minimal_element is the least member of the oracle fiber", c_minimal_element_oracle),
    per_h("dagger-equivalence", "the three (dagger) criteria agree", c_dagger_equivalence),
    per_h("dagger-saturated", "(dagger) passes from D' to every D'-saturated segment linked to D", c_dagger_saturated),
    per_h("dagger-iu", "(dagger) fails exactly when the intersection-union of {D, D'} keeps the resultant", c_dagger_iu),
    per_h("eta-change", "eta under removal of a containing segment: unchanged, or first coordinate down by one", c_eta_change),
    per_h("epsilon-monotone", "eps_D'(r(D,h)) >= eps_D'(h) for D < D'", c_epsilon_monotone),
    per_h("multiplicity-identity", "mult([c,b]) = eps_[c,b] - eps_[c,b+1]", c_multiplicity),
    per_h("cancellation", "a shared ascending tail cancels from equal resultants", c_cancellation),
    per_h("subsequent", "sub-multisegments and ascending remainders of minimal n stay minimal", c_subsequent),
    per_h("eta-extension", "n + D stays minimal exactly when eta_D is unchanged by r(n, .)", c_eta_extension),
    per_h("shrinking", "restoring h<c> gives a resultant, and adding h<c> back removes it", c_shrinking),
    per_h("resultant-extension", "r(n + D, h) = r(n,h) - D for D in r(n,h)", c_resultant_extension),
    global("self-annihilation", "r(h,h) is empty", c_self_annihilation),
    global("realize-roundtrip", "realized Speh factors have nested supports and give back h", c_realize),
    CheckInfo {
        id: "unbounded-nesting",
        statement: "dropping the end-point bound in the nesting step leaves the resultant unchanged",
        conjecture: true,
        kind: Kind::PerH(c_unbounded_nesting),
    },
];

pub fn registry() -> &'static [CheckInfo] {
    REGISTRY
}

pub fn find(id: &str) -> Option<&'static CheckInfo> {
    REGISTRY.iter().find(|c| c.id == id)
}

/// Runs the named checks (all of them for an empty list) over `u`,
/// listing at most `max_listed` counterexamples per check.
pub fn run(ids: &[&str], u: &UniverseSpec, max_listed: usize) -> Result<SuiteReport> {
    let selected: Vec<&CheckInfo> = if ids.is_empty() {
        REGISTRY.iter().collect()
    } else {
        ids.iter()
            .map(|id| find(id).ok_or_else(|| Error::precondition(format!("unknown check `{id}`"))))
            .collect::<Result<_>>()?
    };
    let all = oracle::enumerate(u);
    let segs = u.segments();
    let mut recs: Vec<Rec> = selected.iter().map(|_| Rec::new(max_listed)).collect();

    for (c, rec) in selected.iter().zip(recs.iter_mut()) {
        if let Kind::Global(f) = c.kind {
            f(&all, u, rec);
        }
    }
    let per: Vec<(usize, PerH)> = selected
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.kind {
            Kind::PerH(f) => Some((i, f)),
            Kind::Global(_) => None,
        })
        .collect();
    if !per.is_empty() {
        for h in &all {
            let ctx = HCtx::new(h, u, &segs);
            for (i, f) in &per {
                f(&ctx, &mut recs[*i]);
            }
        }
    }

    let results = selected
        .iter()
        .zip(recs)
        .map(|(c, r)| CheckResult {
            id: c.id.to_string(),
            statement: c.statement.to_string(),
            conjecture: c.conjecture,
            instances: r.instances,
            failures: r.failures,
            counterexamples: r.listed,
        })
        .collect();
    Ok(SuiteReport { universe: u.clone(), results })
}

// ---- core ----

fn c_iu_decreases(all: &[Multisegment], _: &UniverseSpec, rec: &mut Rec) {
    for m in all {
        for i in 0..m.len() {
            for j in (i + 1)..m.len() {
                let Ok(next) = m.iu_move(i, j) else { continue };
                rec.check(next.leq_z(m) && !m.leq_z(&next), || format!("m={m} i={i} j={j} -> {next}"));
            }
        }
    }
}

fn c_iu_content(all: &[Multisegment], _: &UniverseSpec, rec: &mut Rec) {
    for m in all {
        for next in m.iu_neighbours() {
            rec.check(next.content() == m.content(), || format!("m={m} -> {next}"));
        }
    }
}

fn c_leq_z(all: &[Multisegment], _: &UniverseSpec, rec: &mut Rec) {
    let downs: HashMap<&Multisegment, BTreeSet<Multisegment>> = all.iter().map(|m| (m, oracle::downset(m))).collect();
    let mut by_content: BTreeMap<Vec<i32>, Vec<&Multisegment>> = BTreeMap::new();
    for m in all {
        by_content.entry(m.content()).or_default().push(m);
    }
    for group in by_content.values() {
        for m in group {
            let dm = &downs[m];
            rec.check(m.leq_z(m), || format!("not reflexive at {m}"));
            for x in group {
                let fast = x.leq_z(m);
                rec.check(fast == dm.contains(*x), || format!("leq_z({x},{m})={fast} disagrees with the oracle"));
                if fast && x != m {
                    rec.check(!m.leq_z(x), || format!("{x} and {m} below each other"));
                }
            }
            for x in dm {
                if let Some(dx) = downs.get(x) {
                    rec.check(dx.is_subset(dm), || format!("not transitive through {x} below {m}"));
                }
            }
        }
    }
}

fn c_ascending(all: &[Multisegment], _: &UniverseSpec, rec: &mut Rec) {
    for m in all {
        let a = m.ascending();
        rec.check(is_ascending(&a) && Multisegment::from_segments(a.iter().copied()) == *m, || format!("m={m}"));
    }
}

// ---- removal ----

fn c_removal_oracle(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for d in ctx.segs {
        let t = removal_sequence(d, h);
        let brute = oracle::brute_remove_segment(d, h);
        rec.check(t.as_ref().map(|t| &t.resultant) == brute.as_ref(), || {
            format!("D={d} h={h}: fast {} oracle {}", fmt_opt(&t.as_ref().map(|t| t.resultant.clone())), fmt_opt(&brute))
        });
        let Some(t) = t else { continue };
        let nested = t.sequence.windows(2).all(|w| w[0].start < w[1].start && w[1].end < w[0].end);
        let mut assembled = h.clone();
        for s in &t.sequence {
            assembled.remove_one(s);
        }
        for s in t.truncations.iter().flatten() {
            assembled.insert(*s);
        }
        rec.check(
            nested && Some(t.sequence[0]) == upsilon(d, h) && assembled == t.resultant,
            || format!("D={d} h={h}: trace invariants broken"),
        );
    }
}

fn c_enumeration(ctx: &HCtx, rec: &mut Rec) {
    let fast: BTreeMap<&Multisegment, &Multisegment> = ctx.family().iter().map(|(n, r)| (n, r)).collect();
    let slow = ctx.ofamily();
    rec.check(fast.len() == slow.len(), || format!("h={}: {} vs {} admissible", ctx.h, fast.len(), slow.len()));
    for (n, r) in slow {
        rec.check(fast.get(n) == Some(&r), || format!("h={} n={n}: oracle {r} fast {:?}", ctx.h, fast.get(n).map(|x| x.to_string())));
    }
}

fn c_one_point(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for d in ctx.segs {
        let Some(t) = removal_sequence(d, h) else { continue };
        let y = t.sequence[0];
        let mut h2 = h.clone();
        h2.remove_one(&y);
        if let Some(s) = y.shorten_left() {
            h2.insert(s);
        }
        let want = match d.shorten_left() {
            None => Some(h2),
            Some(rest) => remove_segment(&rest, &h2),
        };
        rec.check(want.as_ref() == Some(&t.resultant), || format!("D={d} h={h}: {} vs {}", t.resultant, fmt_opt(&want)));
    }
}

fn c_locality(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for d in ctx.segs {
        let Some(r) = remove_segment(d, h) else { continue };
        for a in ctx.u.window.0..d.start {
            rec.check(r.left_slice(a) == h.left_slice(a), || format!("D={d} h={h} a'={a}: r={r}"));
        }
    }
}

fn c_whole_segment(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for d in h.distinct() {
        let t = removal_sequence(&d, h);
        let mut want = h.clone();
        want.remove_one(&d);
        rec.check(
            t.as_ref().is_some_and(|t| t.sequence == vec![d] && t.resultant == want),
            || format!("D={d} h={h}"),
        );
    }
}

fn c_first_exchange(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for d in ctx.segs {
        for e in ctx.segs {
            if d.start != e.start || d > e {
                continue;
            }
            let left = upsilon(d, h).zip(remove_segment(d, h)).and_then(|(u1, r)| upsilon(e, &r).map(|u2| (u1, u2)));
            let right = upsilon(e, h).zip(remove_segment(e, h)).and_then(|(u1, r)| upsilon(d, &r).map(|u2| (u1, u2)));
            let (Some((a1, a2)), Some((b1, b2))) = (left, right) else { continue };
            let l = Multisegment::from_segments([a1, a2]);
            let r = Multisegment::from_segments([b1, b2]);
            rec.check(l == r, || format!("D={d} D'={e} h={h}: {l} vs {r}"));
        }
    }
}

fn c_largest_end(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    let Some(c) = h.max_end() else { return };
    for d in ctx.segs {
        let Some(t) = removal_sequence(d, h) else { continue };
        if t.sequence.iter().any(|s| s.end == c) {
            rec.check(t.sequence[0].end == c, || format!("D={d} h={h}"));
        }
    }
}

fn c_order_independence(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (i, d) in ctx.segs.iter().enumerate() {
        let Some(rd) = remove_segment(d, h) else { continue };
        for e in &ctx.segs[i + 1..] {
            if d.linked(e) {
                continue;
            }
            let Some(re) = remove_segment(e, h) else { continue };
            let (Some(x), Some(y)) = (remove_segment(e, &rd), remove_segment(d, &re)) else { continue };
            rec.check(x == y, || format!("D={d} D'={e} h={h}: {x} vs {y}"));
        }
    }
}

fn c_ordering_s(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (n, _) in ctx.family() {
        if n.is_empty() || !single_level(n) {
            continue;
        }
        let s = removal_segments(n, h);
        for order in orderings(n.entries()) {
            let got = first_picks(&order, h).map(|(p, _)| Multisegment::from_segments(p));
            rec.check(got.as_ref() == Some(&s), || format!("n={n} h={h} order={order:?}: {s} vs {}", fmt_opt(&got)));
        }
    }
}

fn c_fine_chain_oracle(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (n, _) in ctx.family() {
        let fast = fine_chain(n, h).signature();
        let slow = oracle::brute_fine_signature(n, h);
        rec.check(fast == slow, || format!("n={n} h={h}"));
    }
}

fn c_multiple_truncation(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (n, r) in ctx.family() {
        let got = tr_cp(n, h).ok().and_then(|(tr, cp)| remove_multi(&cp, &tr));
        rec.check(got.as_ref() == Some(r), || format!("n={n} h={h}: {r} vs {}", fmt_opt(&got)));
    }
}

fn c_coincidence(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    let mut by_sig: HashMap<Vec<Option<Multisegment>>, &Multisegment> = HashMap::new();
    let mut by_r: HashMap<&Multisegment, (Vec<Option<Multisegment>>, &Multisegment)> = HashMap::new();
    for (n, r) in ctx.family() {
        let chain = fine_chain(n, h);
        rec.check(chain.is_complete(), || format!("n={n} h={h}: admissible but the chain stops"));
        let sig = chain.signature();
        match by_sig.get(&sig) {
            Some(r0) => rec.check(*r0 == r, || format!("h={h}: n={n} shares a chain with a member of the fiber of {r0}")),
            None => {
                by_sig.insert(sig.clone(), r);
            }
        }
        match by_r.get(r) {
            Some((s0, n0)) => rec.check(*s0 == sig, || format!("h={h}: {n0} and {n} share r={r} but not the chain")),
            None => {
                by_r.insert(r, (sig, n));
            }
        }
    }
}

fn padded(sig: &[Option<Multisegment>], i: usize) -> Option<Multisegment> {
    sig.get(i).cloned().unwrap_or(Some(Multisegment::new()))
}

fn c_monotone(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    // lengthening one entry of a single slice
    for n in oracle::enumerate(&UniverseSpec::new(ctx.u.window, ctx.u.max_segments.min(3), ctx.u.max_multiplicity)) {
        if n.is_empty() || !single_level(&n) {
            continue;
        }
        let s1 = try_removal_segments(&n, h);
        for d in n.distinct() {
            for b in (d.end + 1)..=ctx.u.window.1 {
                let mut m = n.clone();
                m.remove_one(&d);
                m.insert(Segment::of(d.start, b));
                let s2 = try_removal_segments(&m, h);
                rec.check(level_leq(s1.as_ref(), s2.as_ref()), || {
                    format!("h={h}: s({n})={} s({m})={}", fmt_opt(&s1), fmt_opt(&s2))
                });
            }
        }
    }
    // intersection-union moves along fine chains
    for (n, _) in ctx.family() {
        let sn = fine_chain(n, h).signature();
        for m in n.iu_neighbours() {
            let sm = fine_chain(&m, h).signature();
            let len = sn.len().max(sm.len());
            let Some(i) = (0..len).find(|&i| padded(&sn, i) != padded(&sm, i)) else {
                rec.check(true, String::new);
                continue;
            };
            let (a, b) = (padded(&sn, i), padded(&sm, i));
            rec.check(level_lt(a.as_ref(), b.as_ref()), || {
                format!("h={h} n={n} n'={m}: step {i} s(n)={} s(n')={}", fmt_opt(&a), fmt_opt(&b))
            });
        }
    }
}

fn c_interval_closed(ctx: &HCtx, rec: &mut Rec) {
    let fam = ctx.family();
    let downs = ctx.down();
    let lookup = ctx.lookup();
    for fiber in ctx.fibers() {
        let r = &fam[fiber[0]].1;
        // everything below some member
        let mut below: HashSet<&Multisegment> = HashSet::new();
        for &i in fiber {
            below.extend(downs[i].iter());
        }
        // upward closure of the fiber inside `below`
        let mut up: HashMap<&Multisegment, Vec<&Multisegment>> = HashMap::new();
        for x in &below {
            for y in x.iu_neighbours() {
                if let Some(y) = below.get(&y) {
                    up.entry(*y).or_default().push(*x);
                }
            }
        }
        let mut reached: HashSet<&Multisegment> = fiber.iter().map(|&i| &fam[i].0).collect();
        let mut queue: VecDeque<&Multisegment> = reached.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for y in up.get(x).into_iter().flatten() {
                if reached.insert(*y) {
                    queue.push_back(*y);
                }
            }
        }
        for x in reached {
            rec.check(lookup.get(x) == Some(r), || format!("h={}: {x} lies between members of the fiber of {r}", ctx.h));
        }
    }
}

fn c_unique_minimum(ctx: &HCtx, rec: &mut Rec) {
    let fam = ctx.family();
    let downs = ctx.down();
    for fiber in ctx.fibers() {
        let members: HashSet<&Multisegment> = fiber.iter().map(|&i| &fam[i].0).collect();
        let minimal: Vec<&Multisegment> = fiber
            .iter()
            .filter(|&&i| downs[i].iter().all(|y| y == &fam[i].0 || !members.contains(y)))
            .map(|&i| &fam[i].0)
            .collect();
        rec.check(minimal.len() == 1, || {
            let list: Vec<String> = minimal.iter().map(|m| m.to_string()).collect();
            format!("h={} r={}: minimal elements {}", ctx.h, fam[fiber[0]].1, list.join(" "))
        });
    }
}

fn c_minimizable_ordering(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (n, _) in ctx.family() {
        let Some(a) = n.min_start() else { continue };
        let level = n.left_slice(a);
        let base = minimizable_with_ordering(n, level.entries(), h).map(|w| !w.is_empty());
        for order in orderings(level.entries()) {
            let got = minimizable_with_ordering(n, &order, h).map(|w| !w.is_empty());
            rec.check(got.is_ok() && got.as_ref().ok() == base.as_ref().ok(), || {
                format!("n={n} h={h} order={order:?}: {got:?} vs {base:?}")
            });
        }
    }
}

fn c_minimal_oracle(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (n, _) in ctx.family() {
        let fast = is_minimal(n, h);
        let slow = oracle::brute_minimal(n, h);
        rec.check(fast.as_ref().ok() == Some(&slow), || format!("n={n} h={h}: fast {fast:?} oracle {slow}"));
    }
}

fn c_minimal_element_oracle(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    let least = ctx.oleast();
    for (n, r) in ctx.family() {
        let want = least.get(r).filter(|v| v.len() == 1).map(|v| v[0].clone());
        let got = minimal_element(n, h);
        rec.check(want.is_some() && got.as_ref().ok() == want.as_ref(), || {
            format!("n={n} h={h}: fast {:?} oracle {:?}", got.map(|m| m.to_string()), least.get(r).map(|v| v.len()))
        });
    }
}

fn linked_pairs<'s>(ctx: &'s HCtx) -> impl Iterator<Item = (&'s Segment, &'s Segment, Multisegment)> + 's {
    ctx.segs.iter().filter_map(move |d| remove_segment(d, ctx.h).map(|r| (d, r))).flat_map(move |(d, r)| {
        ctx.segs.iter().filter(move |e| d.precedes(e)).map(move |e| (d, e, r.clone()))
    })
}

fn c_dagger_equivalence(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (d, e, _) in linked_pairs(ctx) {
        let a = dagger(d, e, h);
        let b = dagger_by_sequence(d, e, h);
        let c = dagger_by_eta(d, e, h);
        let ok = matches!((&a, &b, &c), (Ok(x), Ok(y), Ok(z)) if x == y && y == z);
        rec.check(ok, || format!("D={d} D'={e} h={h}: {a:?} {b:?} {c:?}"));
    }
}

fn c_dagger_saturated(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (d, e, _) in linked_pairs(ctx) {
        if dagger(d, e, h) != Ok(true) {
            continue;
        }
        for a in e.start..=e.end {
            let t = Segment::of(a, e.end);
            if d.precedes(&t) {
                rec.check(dagger(d, &t, h) == Ok(true), || format!("D={d} D'={e} D~={t} h={h}"));
            }
        }
    }
}

fn c_dagger_iu(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (d, e, r) in linked_pairs(ctx) {
        if remove_segment(e, &r).is_none() {
            continue;
        }
        let Ok(dg) = dagger(d, e, h) else {
            rec.check(false, || format!("D={d} D'={e} h={h}: dagger undefined"));
            continue;
        };
        let pair = Multisegment::from_segments([*d, *e]);
        let mut iu = Multisegment::from_segments([d.union(e)]);
        if let Some(x) = d.intersection(e) {
            iu.insert(x);
        }
        let same = remove_multi(&iu, h) == remove_multi(&pair, h);
        rec.check(!dg == same, || format!("D={d} D'={e} h={h}: dagger={dg} same resultant={same}"));
    }
}

fn c_eta_change(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for big in ctx.segs {
        let Some(r) = remove_segment(big, h) else { continue };
        for d in ctx.segs {
            if !big.contains(d) {
                continue;
            }
            let before = eta(h, d).values;
            let after = eta(&r, d).values;
            if d.start > big.start {
                rec.check(before == after, || format!("D={d} D'={big} h={h}: {before:?} vs {after:?}"));
            } else {
                let mut want = before.clone();
                let ok = want[0] >= 1 && {
                    want[0] -= 1;
                    want == after
                };
                rec.check(ok, || format!("D={d} D'={big} h={h}: {before:?} vs {after:?}"));
            }
        }
    }
}

fn c_epsilon_monotone(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (d, e, r) in linked_pairs(ctx) {
        rec.check(epsilon(&r, e) >= epsilon(h, e), || format!("D={d} D'={e} h={h}"));
    }
}

fn c_multiplicity(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for d in ctx.segs {
        let longer = Segment::of(d.start, d.end + 1);
        let lhs = h.count(d);
        let rhs = epsilon(h, d) as i64 - epsilon(h, &longer) as i64;
        rec.check(lhs as i64 == rhs, || format!("[c,b]={d} h={h}: {lhs} vs {rhs}"));
    }
}

fn c_cancellation(ctx: &HCtx, rec: &mut Rec) {
    for t in ctx.segs {
        let mut groups: HashMap<Multisegment, &Multisegment> = HashMap::new();
        for (n, r) in ctx.family() {
            if n.iter().any(|e| t.precedes(e)) {
                continue;
            }
            let Some(key) = remove_segment(t, r) else { continue };
            match groups.get(&key) {
                Some(r0) => rec.check(*r0 == r, || format!("h={} tail={t}: {r0} and {r} collapse to {key}", ctx.h)),
                None => {
                    rec.check(true, String::new);
                    groups.insert(key, r);
                }
            }
        }
    }
}

fn submultisets(n: &Multisegment) -> BTreeSet<Multisegment> {
    let e = n.entries();
    (0u32..(1 << e.len()))
        .map(|mask| Multisegment::from_segments((0..e.len()).filter(|i| mask & (1 << i) != 0).map(|i| e[i])))
        .collect()
}

fn c_subsequent(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (n, _) in ctx.family() {
        if is_minimal(n, h) != Ok(true) {
            continue;
        }
        for sub in submultisets(n) {
            rec.check(is_minimal(&sub, h) == Ok(true), || format!("n={n} h={h}: {sub} not minimal"));
        }
        let asc = n.ascending();
        for s in 0..=asc.len() {
            let head = Multisegment::from_segments(asc[..s].iter().copied());
            let tail = Multisegment::from_segments(asc[s..].iter().copied());
            let mid = remove_multi(&head, h).expect("prefix of an admissible sequence");
            rec.check(is_minimal(&tail, &mid) == Ok(true), || format!("n={n} h={h}: {tail} not minimal to {mid}"));
        }
    }
}

fn c_eta_extension(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (n, r) in ctx.family() {
        let (Some(c), Some(e)) = (n.max_start(), n.max_end()) else { continue };
        if is_minimal(n, h) != Ok(true) {
            continue;
        }
        for d in ctx.segs {
            if d.start <= c || d.end <= e || remove_segment(d, r).is_none() {
                continue;
            }
            let m = n.with(*d);
            let minimal = is_minimal(&m, h) == Ok(true);
            let same = eta(r, d) == eta(h, d);
            rec.check(minimal == same, || format!("n={n} D={d} h={h}: minimal={minimal} eta unchanged={same}"));
        }
    }
}

fn c_shrinking(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    let Some(top) = h.max_end() else { return };
    let mut by_r: HashMap<&Multisegment, Vec<&Multisegment>> = HashMap::new();
    for (n, r) in ctx.family() {
        by_r.entry(r).or_default().push(n);
    }
    for (n, s) in ctx.family() {
        let Some(lo) = n.max_end() else { continue };
        for c in lo..=top {
            if ((c + 1)..=top).any(|e| s.right_slice(e) != h.right_slice(e)) {
                continue;
            }
            let hc = h.right_slice(c);
            let stripped = s.minus(&s.right_slice(c)).unwrap();
            let target = stripped.plus(&hc);
            let mut witnesses: Vec<Multisegment> =
                by_r.get(&target).map(|v| v.iter().map(|x| (*x).clone()).collect()).unwrap_or_default();
            if witnesses.is_empty() {
                if let Some(w) = ctx.image().get(&target) {
                    witnesses.push(w.clone());
                }
            }
            rec.check(!witnesses.is_empty(), || format!("n={n} h={h} c={c}: {target} is not a resultant"));
            for w in witnesses {
                let got = remove_multi(&hc.plus(&w), h);
                rec.check(got.as_ref() == Some(&stripped), || {
                    format!("n'={w} h={h} c={c}: {} vs {stripped}", fmt_opt(&got))
                });
            }
        }
    }
}

fn c_resultant_extension(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for (n, r) in ctx.family() {
        for d in r.distinct() {
            let mut want = r.clone();
            want.remove_one(&d);
            let got = remove_multi(&n.with(d), h);
            rec.check(got.as_ref() == Some(&want), || format!("n={n} D={d} h={h}: {} vs {want}", fmt_opt(&got)));
        }
    }
}

fn c_self_annihilation(all: &[Multisegment], _: &UniverseSpec, rec: &mut Rec) {
    for h in all {
        let got = remove_multi(h, h);
        rec.check(got == Some(Multisegment::new()), || format!("h={h}: {}", fmt_opt(&got)));
    }
}

fn c_realize(all: &[Multisegment], _: &UniverseSpec, rec: &mut Rec) {
    for h in all.iter().filter(|h| !h.is_empty()) {
        let Ok(ps) = realize(h) else {
            rec.check(false, || format!("h={h}: realize failed"));
            continue;
        };
        let mut by_end = h.entries().to_vec();
        by_end.sort_by_key(|s| (s.end, s.start));
        let per_factor = ps.iter().zip(&by_end).all(|(p, s)| hd_ess_speh(p) == *s && p.d >= 1 && p.m >= 1);
        let nested = supports_nested(&ps).is_ok();
        let back = hd_speh_product(&ps).ok();
        rec.check(per_factor && nested && back.as_ref() == Some(h), || {
            format!("h={h}: factors {} back {}", crate::text::format_speh_list(&ps), fmt_opt(&back))
        });
    }
}

fn remove_variant(d: &Segment, h: &Multisegment) -> Option<Multisegment> {
    let first = upsilon(d, h)?;
    let mut seq = vec![first];
    loop {
        let prev = *seq.last().unwrap();
        match h.iter().find(|e| prev.start < e.start && e.start <= d.end && e.end < prev.end) {
            Some(e) => seq.push(*e),
            None => break,
        }
    }
    let mut out = h.clone();
    for (i, s) in seq.iter().enumerate() {
        out.remove_one(s);
        let tr = match seq.get(i + 1) {
            Some(next) => Segment::try_of(next.start, s.end),
            None => Segment::try_of(d.end + 1, s.end),
        };
        if let Some(t) = tr {
            out.insert(t);
        }
    }
    Some(out)
}

fn c_unbounded_nesting(ctx: &HCtx, rec: &mut Rec) {
    let h = ctx.h;
    for d in ctx.segs {
        let a = remove_segment(d, h);
        let b = remove_variant(d, h);
        rec.check(a == b, || format!("D={d} h={h}: {} vs {}", fmt_opt(&a), fmt_opt(&b)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orderings_are_distinct() {
        let a = Segment::of(0, 1);
        let b = Segment::of(0, 2);
        assert_eq!(orderings(&[a, b, a]).len(), 3);
        assert_eq!(orderings(&[a, b]).len(), 2);
        assert_eq!(orderings(&[]).len(), 1);
    }

    #[test]
    fn registry_ids_unique() {
        let ids: HashSet<&str> = registry().iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), registry().len());
    }

    #[test]
    fn every_check_passes_on_a_tiny_universe() {
        let u = UniverseSpec::new((0, 2), 2, 2);
        let rep = run(&[], &u, 3).unwrap();
        for r in &rep.results {
            assert!(r.conjecture || r.passed(), "{} failed: {:?}", r.id, r.counterexamples);
        }
    }

    #[test]
    fn family_matches_remove_multi() {
        let u = UniverseSpec::reduced();
        let segs = u.segments();
        let h = Multisegment::from_pairs(&[(0, 3), (1, 2), (2, 4)]);
        let ctx = HCtx::new(&h, &u, &segs);
        for (n, r) in ctx.family() {
            assert_eq!(remove_multi(n, &h).as_ref(), Some(r));
        }
    }
}
