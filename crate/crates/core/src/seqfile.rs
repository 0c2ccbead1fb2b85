//! Plain-text sequence files.
//!
//! ```text
//! 5 3 m
//! 1 1 1 2 3 3 5 2 2 2 3 4 4 1 ...
//! ```
//!
//! The header gives `n`, `t` and the kind (`m` for multisets, `u` for
//! subsets). The body holds exactly as many decimal symbols as the cycle
//! needs, separated by any whitespace. The writer wraps lines at 70 columns.

use crate::cycle::{CyclicSequence, Kind};
use crate::error::{Error, Result};
use crate::multiset::cycle_length;

pub const LINE_WIDTH: usize = 70;

pub fn parse_sequence_file(text: &str) -> Result<CyclicSequence> {
    let mut lines = text.lines().skip_while(|l| l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Format("empty file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, t, kind] = fields[..] else {
        return Err(Error::Format(format!("header {header:?} is not \"N T KIND\"")));
    };
    let n: u32 = n.parse().map_err(|_| Error::Format(format!("bad n {n:?}")))?;
    let t: u32 = t.parse().map_err(|_| Error::Format(format!("bad t {t:?}")))?;
    let kind: Kind = kind.parse()?;
    if n == 0 || t == 0 {
        return Err(Error::Format("n and t must be positive".into()));
    }

    let mut symbols = Vec::new();
    for tok in lines.flat_map(str::split_whitespace) {
        let s: u32 = tok.parse().map_err(|_| Error::Format(format!("bad symbol {tok:?}")))?;
        if s == 0 || s > n {
            return Err(Error::Format(format!("symbol {s} outside 1..={n}")));
        }
        symbols.push(s);
    }
    let expected = cycle_length(n, t, kind).map_err(|e| Error::Format(e.to_string()))?;
    if symbols.len() as u128 != expected {
        return Err(Error::Format(format!(
            "header {n} {t} {kind} needs {expected} symbols, found {}",
            symbols.len()
        )));
    }
    CyclicSequence::new(symbols, n, t, kind).map_err(|e| Error::Format(e.to_string()))
}

pub fn write_sequence_file(seq: &CyclicSequence) -> String {
    let mut out = format!("{} {} {}\n", seq.n(), seq.t(), seq.kind());
    let mut line = String::new();
    for s in seq.symbols() {
        let tok = s.to_string();
        if !line.is_empty() && line.len() + 1 + tok.len() > LINE_WIDTH {
            out.push_str(&line);
            out.push('\n');
            line.clear();
        }
        if !line.is_empty() {
            line.push(' ');
        }
        line.push_str(&tok);
    }
    out.push_str(&line);
    out.push('\n');
    out
}
