use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::verify::{verify_cycle, VerificationReport};

/// Whether windows range over t-multisets (Mcycles) or t-subsets (Ucycles).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Multiset,
    Subset,
}

impl Kind {
    pub fn code(self) -> char {
        match self {
            Kind::Multiset => 'm',
            Kind::Subset => 'u',
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" | "mcycle" | "multiset" => Ok(Kind::Multiset),
            "u" | "ucycle" | "subset" => Ok(Kind::Subset),
            other => Err(Error::Format(format!("unknown kind {other:?}, expected m or u"))),
        }
    }
}

/// A cyclic string over `1..=n` together with the window size and kind it
/// is meant to be universal for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicSequence {
    symbols: Vec<u32>,
    n: u32,
    t: u32,
    kind: Kind,
}

impl CyclicSequence {
    pub fn new(symbols: Vec<u32>, n: u32, t: u32, kind: Kind) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidParameters("empty sequence".into()));
        }
        if t == 0 || n == 0 {
            return Err(Error::InvalidParameters(format!("n = {n}, t = {t} must be positive")));
        }
        if let Some((i, &s)) = symbols.iter().enumerate().find(|(_, &s)| s == 0 || s > n) {
            return Err(Error::InvalidParameters(format!(
                "symbol {s} at position {i} outside 1..={n}"
            )));
        }
        Ok(Self { symbols, n, t, kind })
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn verify(&self) -> VerificationReport {
        verify_cycle(&self.symbols, self.n, self.t, self.kind)
    }

    /// Verifies and converts a failing report into an error.
    pub fn certify(self) -> Result<Self> {
        let report = self.verify();
        if report.ok {
            Ok(self)
        } else {
            Err(Error::Verification(report.summary_line()))
        }
    }
}

impl fmt::Display for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 9 { " " } else { "" };
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses a compact digit string where each character is one symbol and
/// `0` stands for 10. Whitespace is ignored.
pub fn parse_digits(text: &str) -> Vec<u32> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c.to_digit(10) {
            Some(0) => 10,
            Some(d) => d,
            None => panic!("non-digit {c:?} in digit string"),
        })
        .collect()
}
