//! ASCII dot-row diagrams of multisegments.
//!
//! One row per entry, highest start first (ties by shorter end first), so
//! the picture reads like the usual stacked-segment figures. Kept points
//! are `o`, removed points `x`, and `-` joins points of one segment.

use std::collections::BTreeSet;

use crate::multiseg::Multisegment;
use crate::removal::RemovalTrace;

/// Marks `(entry index, point)` for every point a removal takes away.
/// Indices refer to the canonical order of `h`; equal entries are
/// matched first to last.
pub fn removed_marks(h: &Multisegment, trace: &RemovalTrace) -> BTreeSet<(usize, i32)> {
    let mut used = vec![false; h.len()];
    let mut out = BTreeSet::new();
    for (member, part) in trace.removed_parts() {
        let Some(i) = (0..h.len()).find(|&i| !used[i] && h.entries()[i] == member) else {
            continue;
        };
        used[i] = true;
        for p in part.points() {
            out.insert((i, p));
        }
    }
    out
}

pub fn render(h: &Multisegment, removed: &BTreeSet<(usize, i32)>) -> String {
    let (Some(lo), Some(hi)) = (h.min_start(), h.max_end()) else {
        return String::new();
    };
    let e = h.entries();
    let mut rows: Vec<usize> = (0..e.len()).collect();
    rows.sort_by_key(|&i| (std::cmp::Reverse(e[i].start), e[i].end, i));

    let labels: Vec<String> = e.iter().map(|s| s.to_string()).collect();
    let lw = labels.iter().map(String::len).max().unwrap_or(0);
    let cw = (lo..=hi).map(|p| p.to_string().len()).max().unwrap_or(1);

    let mut out = String::new();
    let mut header = " ".repeat(lw);
    for p in lo..=hi {
        header.push(' ');
        header.push_str(&format!("{p:>cw$}"));
    }
    out.push_str(header.trim_end());
    out.push('\n');

    for i in rows {
        let s = e[i];
        let mut line = format!("{:>lw$}", labels[i]);
        for p in lo..=hi {
            let gap = if p > lo && s.contains_point(p) && s.contains_point(p - 1) { '-' } else { ' ' };
            line.push(gap);
            let glyph = if !s.contains_point(p) {
                ' '
            } else if removed.contains(&(i, p)) {
                'x'
            } else {
                'o'
            };
            let fill = if gap == '-' { '-' } else { ' ' };
            for _ in 1..cw {
                line.push(fill);
            }
            line.push(glyph);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
