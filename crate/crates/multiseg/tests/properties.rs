//! Randomized properties on inputs wider than the exhaustive universes.

use multiseg::duality::dual_remove;
use multiseg::minimality::{is_minimal, minimal_element};
use multiseg::oracle::{brute_dual_remove, brute_leq_z, brute_minimal, brute_remove_multi};
use multiseg::removal::{fine_chain, remove_multi};
use multiseg::text::parse_multisegment;
use multiseg::{Multisegment, Segment};
use proptest::prelude::*;

fn segment(lo: i32, hi: i32) -> impl Strategy<Value = Segment> {
    (lo..=hi, 0..=(hi - lo)).prop_map(move |(a, len)| Segment::of(a, (a + len).min(hi)))
}

fn multiseg(lo: i32, hi: i32, max: usize) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec(segment(lo, hi), 0..=max).prop_map(Multisegment::from_segments)
}

/// `h` with an admissible `n` built from right-shortened entries of `h`.
fn admissible_pair(lo: i32, hi: i32, max: usize) -> impl Strategy<Value = (Multisegment, Multisegment)> {
    multiseg(lo, hi, max).prop_flat_map(|h| {
        let picks = prop::collection::vec((any::<bool>(), 0..8i32), h.len());
        (Just(h), picks).prop_filter_map("not admissible", |(h, picks)| {
            let n: Multisegment = h
                .iter()
                .zip(picks)
                .filter(|(_, (keep, _))| *keep)
                .map(|(s, (_, cut))| Segment::of(s.start, (s.end - cut).max(s.start)))
                .collect();
            remove_multi(&n, &h).map(|_| (n, h))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_round_trip(m in multiseg(-4, 9, 7)) {
        prop_assert_eq!(parse_multisegment(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn removal_agrees_with_point_oracle(n in multiseg(-2, 7, 3), h in multiseg(-2, 7, 6)) {
        prop_assert_eq!(remove_multi(&n, &h), brute_remove_multi(&n, &h));
    }

    #[test]
    fn dual_agrees_with_point_oracle(n in multiseg(-2, 7, 3), h in multiseg(-2, 7, 6)) {
        prop_assert_eq!(dual_remove(&n, &h), brute_dual_remove(&n, &h));
    }

    #[test]
    fn self_annihilation(h in multiseg(-4, 9, 7)) {
        prop_assert_eq!(remove_multi(&h, &h), Some(Multisegment::new()));
    }

    #[test]
    fn psi_is_an_involution(h in multiseg(-4, 9, 7)) {
        prop_assert_eq!(h.psi().psi(), h);
    }

    #[test]
    fn fine_chain_completes_when_admissible((n, h) in admissible_pair(0, 6, 5)) {
        prop_assert!(fine_chain(&n, &h).is_complete());
    }

    #[test]
    fn minimal_element_is_minimal_and_below((n, h) in admissible_pair(0, 5, 4)) {
        let m = minimal_element(&n, &h).unwrap();
        prop_assert_eq!(remove_multi(&m, &h), remove_multi(&n, &h));
        prop_assert!(is_minimal(&m, &h).unwrap());
        prop_assert!(brute_leq_z(&m, &n));
    }

    #[test]
    fn is_minimal_agrees_with_oracle((n, h) in admissible_pair(0, 5, 4)) {
        prop_assert_eq!(is_minimal(&n, &h).unwrap(), brute_minimal(&n, &h));
    }
}

#[test]
fn check_report_file_is_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_multiseg"))
        .args(["check", "one-point", "--window", "0..3", "--max-segs", "2", "--report"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"][0]["id"], "one-point");
}
