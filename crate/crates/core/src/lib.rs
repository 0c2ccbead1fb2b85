//! Universal cycles for t-multisets (Mcycles) and t-subsets (Ucycles).
//!
//! Three constructions are provided: transition graphs on difference forms
//! ([`transition`]), an inductive construction for windows of size three
//! ([`induction`]) and a conversion of 3-Ucycles into 3-Mcycles
//! ([`conversion`]). Every construction is checked by [`verify`], and
//! [`search`] enumerates Mcycles exhaustively at small sizes.

pub mod cli;
pub mod conversion;
pub mod cycle;
pub mod direct;
pub mod error;
pub mod induction;
pub mod multiset;
pub mod search;
pub mod seqfile;
pub mod transition;
pub mod verify;

pub use cycle::{parse_digits, CyclicSequence, Kind};
pub use error::{Error, Result};
