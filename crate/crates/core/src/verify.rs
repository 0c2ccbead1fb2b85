//! Ground-truth checking of candidate universal cycles.

use std::collections::HashMap;
use std::fmt;

use crate::cycle::Kind;
use crate::error::{Error, Result};
use crate::multiset::cycle_length;

/// Cap on listed missing multisets and invalid windows. Counts stay exact.
pub const REPORT_LIST_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    SymbolOutOfRange,
    /// A window of a subset cycle contains some symbol twice.
    RepeatedSymbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidWindow {
    pub position: usize,
    pub window: Vec<u32>,
    pub reason: InvalidReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub window_count: usize,
    pub length_expected: u128,
    /// Each repeated window with every position it starts at.
    pub duplicates: Vec<(Vec<u32>, Vec<usize>)>,
    /// First [`REPORT_LIST_CAP`] missing windows in lexicographic order.
    pub missing: Vec<Vec<u32>>,
    pub missing_count: u128,
    pub invalid: Vec<InvalidWindow>,
    pub invalid_count: usize,
}

impl VerificationReport {
    pub fn summary_line(&self) -> String {
        format!(
            "ok={} window_count={} length_expected={} duplicates={} missing={} invalid={}",
            self.ok,
            self.window_count,
            self.length_expected,
            self.duplicates.len(),
            self.missing_count,
            self.invalid_count
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.ok { "VALID universal cycle" } else { "NOT a universal cycle" })?;
        writeln!(f, "  windows:  {} (expected {})", self.window_count, self.length_expected)?;
        writeln!(f, "  duplicates: {}", self.duplicates.len())?;
        for (w, pos) in self.duplicates.iter().take(REPORT_LIST_CAP) {
            writeln!(f, "    {w:?} at positions {pos:?}")?;
        }
        writeln!(f, "  missing: {}", self.missing_count)?;
        for w in &self.missing {
            writeln!(f, "    {w:?}")?;
        }
        if self.missing_count > self.missing.len() as u128 {
            writeln!(f, "    ... ({} more)", self.missing_count - self.missing.len() as u128)?;
        }
        writeln!(f, "  invalid windows: {}", self.invalid_count)?;
        for w in &self.invalid {
            writeln!(f, "    position {}: {:?} ({:?})", w.position, w.window, w.reason)?;
        }
        write!(f, "{}", self.summary_line())
    }
}

fn window_at(seq: &[u32], start: usize, t: usize) -> Vec<u32> {
    let len = seq.len();
    let mut w: Vec<u32> = (0..t).map(|j| seq[(start + j) % len]).collect();
    w.sort_unstable();
    w
}

/// All cyclic length-`t` windows as sorted tuples, one per position.
pub fn windows(seq: &[u32], t: usize) -> Result<Vec<Vec<u32>>> {
    if t == 0 || seq.len() < t {
        return Err(Error::InvalidParameters(format!(
            "sequence of length {} is shorter than t = {t}",
            seq.len()
        )));
    }
    Ok((0..seq.len()).map(|i| window_at(seq, i, t)).collect())
}

/// Calls `f` on every sorted t-multiset (or t-subset) of `[n]` in lexicographic
/// order until it returns `false`.
fn for_each_window(n: u32, t: usize, kind: Kind, f: &mut dyn FnMut(&[u32]) -> bool) {
    fn rec(n: u32, t: usize, strict: bool, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if cur.len() == t {
            return f(cur);
        }
        let lo = match cur.last() {
            Some(&l) if strict => l + 1,
            Some(&l) => l,
            None => 1,
        };
        for v in lo..=n {
            cur.push(v);
            let go_on = rec(n, t, strict, cur, f);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(n, t, kind == Kind::Subset, &mut Vec::with_capacity(t), f);
}

/// Checks that every t-multiset (or t-subset) of `[n]` occurs exactly once
/// among the cyclic windows of `seq`. Never fails; problems go in the report.
pub fn verify_cycle(seq: &[u32], n: u32, t: u32, kind: Kind) -> VerificationReport {
    let length_expected = if n == 0 || t == 0 {
        0
    } else {
        cycle_length(n, t, kind).unwrap_or(u128::MAX)
    };
    let mut report = VerificationReport {
        ok: false,
        window_count: seq.len(),
        length_expected,
        duplicates: Vec::new(),
        missing: Vec::new(),
        missing_count: length_expected,
        invalid: Vec::new(),
        invalid_count: 0,
    };
    if seq.is_empty() || t == 0 || n == 0 {
        return report;
    }
    let t = t as usize;

    let mut seen: HashMap<Vec<u32>, Vec<usize>> = HashMap::with_capacity(seq.len());
    for i in 0..seq.len() {
        let w = window_at(seq, i, t);
        let reason = if w.iter().any(|&s| s == 0 || s > n) {
            Some(InvalidReason::SymbolOutOfRange)
        } else if kind == Kind::Subset && w.windows(2).any(|p| p[0] == p[1]) {
            Some(InvalidReason::RepeatedSymbol)
        } else {
            None
        };
        if let Some(reason) = reason {
            report.invalid_count += 1;
            if report.invalid.len() < REPORT_LIST_CAP {
                report.invalid.push(InvalidWindow { position: i, window: w, reason });
            }
            continue;
        }
        seen.entry(w).or_default().push(i);
    }

    let mut duplicates: Vec<(Vec<u32>, Vec<usize>)> =
        seen.iter().filter(|(_, p)| p.len() > 1).map(|(w, p)| (w.clone(), p.clone())).collect();
    duplicates.sort();
    report.duplicates = duplicates;

    // every valid window lies in the universe, so distinct hits are exact
    report.missing_count = length_expected.saturating_sub(seen.len() as u128);
    if report.missing_count > 0 {
        let mut missing = Vec::new();
        for_each_window(n, t, kind, &mut |w| {
            if !seen.contains_key(w) {
                missing.push(w.to_vec());
            }
            missing.len() < REPORT_LIST_CAP
        });
        report.missing = missing;
    }

    report.ok = report.duplicates.is_empty()
        && report.missing_count == 0
        && report.invalid_count == 0
        && seq.len() as u128 == length_expected;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::parse_digits;

    const KNUTH: &str = "1112335 2223441 3334552 4445113 5551224";
    const X8: &str = "1235783 6782458 3457125 8124672 5671347 2346814 7813561 4568236";

    #[test]
    fn knuth_cycle_windows() {
        let seq = parse_digits(KNUTH);
        let w = windows(&seq, 3).unwrap();
        assert_eq!(w.len(), 35);
        assert_eq!(&w[..3], &[vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 3]]);
        // the last two wrap: 2,4,1 and 4,1,1
        assert_eq!(&w[33..], &[vec![1, 2, 4], vec![1, 1, 4]]);
        let r = verify_cycle(&seq, 5, 3, Kind::Multiset);
        assert!(r.ok, "{r}");
        assert_eq!(r.window_count, 35);
    }

    #[test]
    fn small_windows() {
        assert_eq!(windows(&[1, 2, 3], 3).unwrap(), vec![vec![1, 2, 3]; 3]);
        assert!(windows(&[1, 2], 3).is_err());
    }

    #[test]
    fn ucycle_on_eight() {
        let seq = parse_digits(X8);
        let r = verify_cycle(&seq, 8, 3, Kind::Subset);
        assert!(r.ok, "{r}");
        assert_eq!(r.window_count, 56);
        // read as multisets it is far too short
        assert!(!verify_cycle(&seq, 8, 3, Kind::Multiset).ok);
    }

    #[test]
    fn constant_sequence() {
        let r = verify_cycle(&[1, 1, 1, 1], 2, 3, Kind::Multiset);
        assert!(!r.ok);
        assert_eq!(r.duplicates, vec![(vec![1, 1, 1], vec![0, 1, 2, 3])]);
        assert!(r.missing.contains(&vec![1, 1, 2]));
        assert_eq!(r.missing_count, 3);
    }

    #[test]
    fn typed_diagnostics() {
        let r = verify_cycle(&[1, 1, 2, 3], 3, 3, Kind::Subset);
        assert!(!r.ok);
        assert!(r.invalid.iter().all(|w| w.reason == InvalidReason::RepeatedSymbol));
        assert_eq!(r.invalid_count, 2);
        let r = verify_cycle(&[1, 2, 9], 3, 3, Kind::Subset);
        assert_eq!(r.invalid[0].reason, InvalidReason::SymbolOutOfRange);
        assert!(!verify_cycle(&[], 3, 3, Kind::Subset).ok);
    }

    #[test]
    fn missing_list_is_capped_but_count_exact() {
        let r = verify_cycle(&[1, 2, 3], 20, 3, Kind::Multiset);
        assert_eq!(r.missing.len(), REPORT_LIST_CAP);
        assert_eq!(r.missing_count, 1540 - 1);
    }
}
