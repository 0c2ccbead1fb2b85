//! Inductive construction of 3-Mcycles for every `n >= 4` with `3 ∤ n`.
//!
//! A state holds strings `S` and `T` with `S·T` a 3-Mcycle on `[n]`, `S` a
//! 3-Mcycle on `[n - 3]`, and `T` starting `1, 1` and ending `n, n - 1`. One
//! step to `n + 3` keeps `S·T` as the new `S` and appends to it
//! `T′·U·V`, where `T′` is `T` with its top three letters lifted by three,
//! `V` covers the multisets with one letter from each of the low, middle
//! and top blocks, and `U` is a fixed gadget covering the rest.

use crate::cycle::{parse_digits, CyclicSequence, Kind};
use crate::error::{Error, Result};

/// Base strings for the chain reaching `n ≡ 1 (mod 3)`: `S` on `[4]`, `S·T` on `[7]`.
const BASE_S_7: &str = "11144 42223 33121 24343";
const BASE_T_7: &str = "11522 63374 45166 27732 57366 77135 34641 71555 36127 24556 66477 75526 4576";

/// The `n = 10` base strings in their original transcription. That `T` has
/// the pair `2, 4` at positions 46 and 47 transposed, so `S·T` repeats
/// `{2,4,7}` and `{2,5,5}` and misses `{2,2,7}` and `{4,5,5}`; [`base_case`]
/// uses the corrected string.
pub const ORIGINAL_S_7: &str = BASE_S_7;
pub const ORIGINAL_T_7: &str = "11522 63374 45166 27732 57366 77135 34641 71555 36127 42556 66477 75526 4576";
pub const ORIGINAL_T_PRIME_10: &str = "11822 93304 48199 20032 80399 00138 34941 01888 39120 42889 99400 08829 4809";
pub const ORIGINAL_U_10: &str = "55007 59966 89797 68877 06585 8060";
pub const ORIGINAL_V_10: &str = "69450 36925 01695 84793 58279 15870 46837 02681 709";

/// Base strings for the chain reaching `n ≡ 2 (mod 3)`: `S` on `[5]`, `S·T` on `[8]`.
const BASE_S_8: &str = "11122 23114 22513 32444 33352 54541 43555";
const BASE_T_8: &str = "11657 43822 74468 54661 72736 18157 31888 77556 6688 57262 \
                        58536 21848 47776 41773 38826 67836 36428 7";

/// Letters `a..f` stand for `n-5..n`; digits are literal symbols.
const U_EVEN: &str = "aaffc aeebb decec bddcc fbada dfbf";
const U_ODD: &str = "beb1f abd1c ffaae cbfbf dada1 eccfa eecdc dbd";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// Every element in `[n - 3]`.
    A,
    /// Elements in `[n - 6] ∪ {n-2, n-1, n}`, at least one from the top three.
    B,
    /// One or two from `{n-5, n-4, n-3}`, the rest from `{n-2, n-1, n}`.
    C,
    /// One each from `[n - 6]`, `{n-5, n-4, n-3}` and `{n-2, n-1, n}`.
    D,
}

pub fn classify_multiset(m: &[u32], n: u32) -> Result<Block> {
    if n < 10 {
        return Err(Error::InvalidParameters(format!("classification needs n >= 10, got {n}")));
    }
    if m.len() != 3 || m.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::InvalidParameters(format!("{m:?} is not a 3-multiset of [{n}]")));
    }
    let low = m.iter().any(|&x| x <= n - 6);
    let mid = m.iter().any(|&x| (n - 5..=n - 3).contains(&x));
    let top = m.iter().any(|&x| x >= n - 2);
    Ok(match (low, mid, top) {
        (_, _, false) => Block::A,
        (_, false, true) => Block::B,
        (false, true, true) => Block::C,
        (true, true, true) => Block::D,
    })
}

/// Lifts `n-5, n-4, n-3` to `n-2, n-1, n` and leaves other symbols alone.
pub fn relabel_t(t: &[u32], n: u32) -> Vec<u32> {
    t.iter().map(|&x| if n >= 5 && (n - 5..=n - 3).contains(&x) { x + 3 } else { x }).collect()
}

fn check_step_size(n: u32) -> Result<()> {
    if n < 10 || n.is_multiple_of(3) {
        return Err(Error::InvalidParameters(format!("gadgets need n >= 10 with 3 ∤ n, got {n}")));
    }
    Ok(())
}

fn letter(c: char, n: u32) -> u32 {
    match c {
        'a'..='f' => n - 5 + (c as u32 - 'a' as u32),
        _ => c.to_digit(10).expect("gadget tables hold letters a-f and digits"),
    }
}

pub fn build_u(n: u32) -> Result<Vec<u32>> {
    check_step_size(n)?;
    let table = if n.is_multiple_of(2) { U_EVEN } else { U_ODD };
    Ok(table.chars().filter(|c| !c.is_whitespace()).map(|c| letter(c, n)).collect())
}

/// Three runs over a descending counter from `n - 6`, each alternating two
/// letter pairs: `be/af`, then `ad/ce`, then `cf/bd`, each closed by its first
/// pair, with a final `e`. Counters stop at 1 for even `n` and at 2 for odd.
pub fn build_v(n: u32) -> Result<Vec<u32>> {
    check_step_size(n)?;
    let [a, b, c, d, e, f] = [n - 5, n - 4, n - 3, n - 2, n - 1, n];
    let last = if n.is_multiple_of(2) { 1 } else { 2 };
    let mut v = Vec::with_capacity(9 * (n as usize - 6) + 7);
    for (first, second) in [([b, e], [a, f]), ([a, d], [c, e]), ([c, f], [b, d])] {
        for (i, k) in (last..=n - 6).rev().enumerate() {
            v.extend_from_slice(if i % 2 == 0 { &first } else { &second });
            v.push(k);
        }
        v.extend_from_slice(&first);
    }
    v.push(e);
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionState {
    n: u32,
    s: Vec<u32>,
    t: Vec<u32>,
}

impl InductionState {
    /// Ground set of the cycle `S·T`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn cycle(&self) -> Vec<u32> {
        let mut v = self.s.clone();
        v.extend_from_slice(&self.t);
        v
    }

    pub fn to_sequence(&self) -> Result<CyclicSequence> {
        CyclicSequence::new(self.cycle(), self.n, 3, Kind::Multiset)
    }
}

/// The base strings that start the chain towards `target`
/// (10 or 11): a state on `[target - 3]`.
pub fn base_case(target: u32) -> Result<InductionState> {
    let (s, t) = match target {
        10 => (BASE_S_7, BASE_T_7),
        11 => (BASE_S_8, BASE_T_8),
        _ => return Err(Error::InvalidParameters(format!("base cases exist for 10 and 11, got {target}"))),
    };
    Ok(InductionState { n: target - 3, s: parse_digits(s), t: parse_digits(t) })
}

/// Extends a state on `[n - 3]` to one on `[n]` and verifies the result.
pub fn extend_step(state: &InductionState) -> Result<InductionState> {
    let n = state.n + 3;
    check_step_size(n)?;
    let mut t = relabel_t(&state.t, n);
    t.extend(build_u(n)?);
    t.extend(build_v(n)?);
    let next = InductionState { n, s: state.cycle(), t };
    let report = next.to_sequence()?.verify();
    if !report.ok {
        return Err(Error::Verification(format!("inductive step to n = {n}: {}", report.summary_line())));
    }
    Ok(next)
}

/// The state whose cycle `S·T` is the constructed 3-Mcycle on `[n]`, for
/// `n >= 7` with `3 ∤ n`.
pub fn state_for(n: u32) -> Result<InductionState> {
    if n < 7 || n.is_multiple_of(3) {
        return Err(Error::InvalidParameters(format!("no inductive state for n = {n}")));
    }
    let mut state = base_case(if n % 3 == 1 { 10 } else { 11 })?;
    while state.n < n {
        state = extend_step(&state)?;
    }
    Ok(state)
}

pub fn construct3(n: u32) -> Result<CyclicSequence> {
    if n < 4 || n.is_multiple_of(3) {
        return Err(Error::InvalidParameters(format!("3-Mcycles by induction need n >= 4 and 3 ∤ n, got {n}")));
    }
    let symbols = match n {
        4 => base_case(10)?.s,
        5 => base_case(11)?.s,
        _ => state_for(n)?.cycle(),
    };
    CyclicSequence::new(symbols, n, 3, Kind::Multiset)?.certify()
}
