//! The reflection Ψ, the dual removal process, and a harness for the
//! three round-trip expectations relating the two processes.
//!
//! The expectations are conjectural: the harness reports outcomes and
//! never asserts them.

use serde::Serialize;

use crate::minimality::is_minimal;
use crate::multiseg::Multisegment;
use crate::oracle::UniverseSpec;
use crate::removal::remove_multi;
use crate::segment::Segment;

pub fn psi_segment(s: &Segment) -> Segment {
    s.psi()
}

pub fn psi(m: &Multisegment) -> Multisegment {
    m.psi()
}

/// `Ψ(r(Ψn, Ψh))`; `None` when `n` is not dual admissible.
pub fn dual_remove(n: &Multisegment, h: &Multisegment) -> Option<Multisegment> {
    remove_multi(&n.psi(), &h.psi()).map(|r| r.psi())
}

pub fn is_dual_admissible(n: &Multisegment, h: &Multisegment) -> bool {
    dual_remove(n, h).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BulletStatus {
    Pass,
    Fail,
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub n: Multisegment,
    pub h: Multisegment,
    /// `r(r^d(r(n,h),h),h) = r(n,h)` for admissible `n`.
    pub bullet1: BulletStatus,
    /// `r^d(r(r^d(n,h),h),h) = r^d(n,h)` for dual admissible `n`.
    pub bullet2: BulletStatus,
    /// `r^d(n,h)` is minimal to `h` for dual admissible `n`.
    pub bullet3: BulletStatus,
    pub details: Vec<String>,
}

impl DualityReport {
    pub fn bullets(&self) -> [BulletStatus; 3] {
        [self.bullet1, self.bullet2, self.bullet3]
    }
}

pub fn check_duality(n: &Multisegment, h: &Multisegment) -> DualityReport {
    let mut details = Vec::new();

    let bullet1 = match remove_multi(n, h) {
        None => BulletStatus::Undefined,
        Some(p) => match dual_remove(&p, h).and_then(|q| remove_multi(&q, h).map(|x| (q, x))) {
            None => {
                details.push(format!("bullet1: round trip leaves the admissible range from r(n,h)={p}"));
                BulletStatus::Undefined
            }
            Some((_, back)) if back == p => BulletStatus::Pass,
            Some((q, back)) => {
                details.push(format!("bullet1: r(n,h)={p} r^d(.,h)={q} r(.,h)={back}"));
                BulletStatus::Fail
            }
        },
    };

    let dual = dual_remove(n, h);
    let bullet2 = match &dual {
        None => BulletStatus::Undefined,
        Some(p) => match remove_multi(p, h).and_then(|q| dual_remove(&q, h).map(|x| (q, x))) {
            None => {
                details.push(format!("bullet2: round trip leaves the admissible range from r^d(n,h)={p}"));
                BulletStatus::Undefined
            }
            Some((_, back)) if &back == p => BulletStatus::Pass,
            Some((q, back)) => {
                details.push(format!("bullet2: r^d(n,h)={p} r(.,h)={q} r^d(.,h)={back}"));
                BulletStatus::Fail
            }
        },
    };

    let bullet3 = match &dual {
        None => BulletStatus::Undefined,
        Some(p) => match is_minimal(p, h) {
            Ok(true) => BulletStatus::Pass,
            Ok(false) => {
                details.push(format!("bullet3: r^d(n,h)={p} is not minimal to h"));
                BulletStatus::Fail
            }
            Err(_) => {
                details.push(format!("bullet3: r^d(n,h)={p} is not admissible to h"));
                BulletStatus::Fail
            }
        },
    };

    DualityReport { n: n.clone(), h: h.clone(), bullet1, bullet2, bullet3, details }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BulletTally {
    pub pass: u64,
    pub fail: u64,
    pub undefined: u64,
}

impl BulletTally {
    fn add(&mut self, s: BulletStatus) {
        match s {
            BulletStatus::Pass => self.pass += 1,
            BulletStatus::Fail => self.fail += 1,
            BulletStatus::Undefined => self.undefined += 1,
        }
    }
}

/// Aggregate over every `(n, h)` with both drawn from a universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityBatch {
    pub universe: UniverseSpec,
    pub instances: u64,
    pub bullets: [BulletTally; 3],
    /// Same tallies restricted to pairwise unlinked `h`.
    pub unlinked_h: [BulletTally; 3],
    /// Failing instances, in enumeration order, capped at `max_listed`.
    pub counterexamples: Vec<DualityReport>,
    pub max_listed: usize,
}

pub fn batch_duality(u: &UniverseSpec, max_listed: usize) -> DualityBatch {
    let all = crate::oracle::enumerate(u);
    let mut bullets: [BulletTally; 3] = Default::default();
    let mut unlinked: [BulletTally; 3] = Default::default();
    let mut counterexamples = Vec::new();
    let mut instances = 0;
    for h in &all {
        let generic = h.is_pairwise_unlinked();
        for n in &all {
            let rep = check_duality(n, h);
            if rep.bullets().iter().all(|b| *b == BulletStatus::Undefined) {
                continue;
            }
            instances += 1;
            for (i, b) in rep.bullets().iter().enumerate() {
                bullets[i].add(*b);
                if generic {
                    unlinked[i].add(*b);
                }
            }
            if rep.bullets().contains(&BulletStatus::Fail) && counterexamples.len() < max_listed {
                counterexamples.push(rep);
            }
        }
    }
    DualityBatch {
        universe: u.clone(),
        instances,
        bullets,
        unlinked_h: unlinked,
        counterexamples,
        max_listed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(i32, i32)]) -> Multisegment {
        Multisegment::from_pairs(p)
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_segment(&Segment::of(2, 8)), Segment::of(-8, -2));
        let h = m(&[(2, 8), (3, 6)]);
        assert_eq!(psi(&h), m(&[(-8, -2), (-6, -3)]));
        assert_eq!(psi(&psi(&h)), h);
    }

    #[test]
    fn dual_example_round_trip() {
        let h = m(&[(2, 8), (3, 6)]);
        assert_eq!(dual_remove(&m(&[(4, 8), (5, 6)]), &h), Some(m(&[(2, 4), (3, 3)])));
        assert_eq!(dual_remove(&Multisegment::new(), &h), Some(h.clone()));
        let rep = check_duality(&m(&[(2, 4), (3, 3)]), &h);
        assert_eq!(rep.bullet1, BulletStatus::Pass);
    }
}
