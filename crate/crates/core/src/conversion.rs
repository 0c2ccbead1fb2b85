//! Converting Ucycles into Mcycles on the same ground set.
//!
//! Doubling an adjacency `x y` into `x y x y` adds exactly the windows
//! `{x,x,y}` and `{x,y,y}`. Doing this once for every adjacent pair except
//! those on a cyclic arrangement `x_1 .. x_n` of the letters, then appending
//! `x_1 x_1 x_1 x_2 x_2 x_2 .. x_n x_n x_n`, supplies every missing
//! 3-multiset. The arrangement is chosen so that the pairs never adjacent in
//! the Ucycle are among the excluded ones.

use std::collections::BTreeSet;

use crate::cycle::{CyclicSequence, Kind};
use crate::error::{Error, Result};

/// Unordered pair stored with the smaller letter first.
pub type Pair = (u32, u32);

fn pair(a: u32, b: u32) -> Pair {
    (a.min(b), a.max(b))
}

pub type PairSet = BTreeSet<Pair>;

/// Unordered pairs at cyclically adjacent positions.
pub fn cyclic_adjacent_pairs(x: &[u32]) -> Result<PairSet> {
    let k = x.len();
    let mut out = PairSet::new();
    for i in 0..k {
        let (a, b) = (x[i], x[(i + 1) % k]);
        if a == b {
            return Err(Error::NotAUcycle(format!("letter {a} repeats at position {i}")));
        }
        out.insert(pair(a, b));
    }
    Ok(out)
}

/// Pairs of `[n]` never adjacent in `x`; these must form a matching.
pub fn missing_pairs(x: &[u32], n: u32) -> Result<PairSet> {
    let present = cyclic_adjacent_pairs(x)?;
    let mut missing = PairSet::new();
    let mut seen_letter: Vec<Option<Pair>> = vec![None; n as usize + 1];
    for a in 1..=n {
        for b in a + 1..=n {
            if present.contains(&(a, b)) {
                continue;
            }
            for l in [a, b] {
                if let Some(other) = seen_letter[l as usize] {
                    return Err(Error::NotAUcycle(format!(
                        "missing pairs {other:?} and {:?} share letter {l}, so no window can hold {{{},{},{}}}",
                        (a, b),
                        l,
                        if other.0 == l { other.1 } else { other.0 },
                        if a == l { b } else { a }
                    )));
                }
                seen_letter[l as usize] = Some((a, b));
            }
            missing.insert((a, b));
        }
    }
    Ok(missing)
}

/// Which adjacent positions of the arrangement form the slots for missing
/// pairs when `n` is odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotList {
    /// `{x1,x2}, {x3,x4}, .., {x_{n-2},x_{n-1}}`
    First,
    /// `{x1,x2}, {x4,x5}, .., {x_{n-1},x_n}`
    Second,
    /// `{x2,x3}, .., {x_{n-1},x_n}`
    Third,
}

fn slots(n: usize, list: Option<SlotList>) -> Vec<(usize, usize)> {
    // zero-based positions
    match list {
        None => (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect(),
        Some(SlotList::First) => (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect(),
        Some(SlotList::Second) => {
            let mut v = vec![(0, 1)];
            v.extend((1..n / 2).map(|i| (2 * i + 1, 2 * i + 2)));
            v
        }
        Some(SlotList::Third) => (0..n / 2).map(|i| (2 * i + 1, 2 * i + 2)).collect(),
    }
}

/// An arrangement `x_1 .. x_n` of `[n]` with `x_1`/`x_n` the first/last
/// letters of the Ucycle and every missing pair on one of the slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPermutation {
    pub x: Vec<u32>,
    /// `None` for even `n`.
    pub slot_list: Option<SlotList>,
}

impl BoundaryPermutation {
    /// The `n` cyclically consecutive pairs `{x_i, x_{i+1}}`.
    pub fn excluded_pairs(&self) -> PairSet {
        let n = self.x.len();
        (0..n).map(|i| pair(self.x[i], self.x[(i + 1) % n])).collect()
    }
}

fn try_place(n: u32, first: u32, last: u32, missing: &PairSet, list: Option<SlotList>) -> Option<Vec<u32>> {
    let nn = n as usize;
    let slots = slots(nn, list);
    let mut x: Vec<Option<u32>> = vec![None; nn];
    x[0] = Some(first);
    x[nn - 1] = Some(last);
    let partner = |l: u32| missing.iter().find(|p| p.0 == l || p.1 == l).map(|p| if p.0 == l { p.1 } else { p.0 });

    let mut placed: BTreeSet<Pair> = BTreeSet::new();
    for &(i, j) in &slots {
        for (pinned, other) in [(i, j), (j, i)] {
            let Some(l) = x[pinned] else { continue };
            let Some(p) = partner(l) else { continue };
            match x[other] {
                None => x[other] = Some(p),
                Some(q) if q == p => {}
                Some(_) => return None,
            }
            placed.insert(pair(l, p));
        }
    }
    let free: Vec<(usize, usize)> = slots.iter().copied().filter(|&(i, j)| x[i].is_none() && x[j].is_none()).collect();
    let mut free_slots = free.into_iter();
    for &(a, b) in missing.iter().filter(|p| !placed.contains(p)) {
        if x.contains(&Some(a)) || x.contains(&Some(b)) {
            // one letter is pinned somewhere no slot reaches
            return None;
        }
        let (i, j) = free_slots.next()?;
        x[i] = Some(a);
        x[j] = Some(b);
    }
    let used: BTreeSet<u32> = x.iter().flatten().copied().collect();
    let mut rest = (1..=n).filter(|l| !used.contains(l));
    let x: Vec<u32> = x.into_iter().map(|s| s.or_else(|| rest.next())).collect::<Option<_>>()?;
    let distinct: BTreeSet<u32> = x.iter().copied().collect();
    (distinct.len() == nn).then_some(x)
}

/// Builds the boundary arrangement. Unconstrained letters fill the remaining
/// positions in ascending order.
pub fn build_permutation(x: &[u32], missing: &PairSet, n: u32) -> Result<BoundaryPermutation> {
    if x.is_empty() || n < 3 {
        return Err(Error::NotAUcycle("need a nonempty sequence on at least 3 letters".into()));
    }
    let (first, last) = (x[0], x[x.len() - 1]);
    if first == last {
        return Err(Error::NotAUcycle("first and last characters coincide".into()));
    }
    let candidates: Vec<Option<SlotList>> = if n.is_multiple_of(2) {
        vec![None]
    } else {
        let in_missing = |l: u32| missing.iter().any(|p| p.0 == l || p.1 == l);
        let preferred = match (in_missing(first), in_missing(last)) {
            (true, false) | (false, false) => SlotList::First,
            (false, true) => SlotList::Third,
            (true, true) => SlotList::Second,
        };
        let mut v = vec![Some(preferred)];
        v.extend([SlotList::First, SlotList::Second, SlotList::Third].into_iter().filter(|&l| l != preferred).map(Some));
        v
    };
    for list in candidates {
        if let Some(perm) = try_place(n, first, last, missing, list) {
            return Ok(BoundaryPermutation { x: perm, slot_list: list });
        }
    }
    Err(Error::NotAUcycle(format!("missing pairs {missing:?} cannot be placed on boundary slots")))
}

/// Doubles the first occurrence of every adjacent unordered pair not in
/// `excluded`, scanning the linear adjacencies of `x` left to right.
pub fn double_first_instances(x: &[u32], excluded: &PairSet) -> Vec<u32> {
    let Some(&head) = x.first() else { return Vec::new() };
    let mut done = excluded.clone();
    let mut out = Vec::with_capacity(x.len() * 2);
    out.push(head);
    for w in x.windows(2) {
        out.push(w[1]);
        if done.insert(pair(w[0], w[1])) {
            out.extend_from_slice(w);
        }
    }
    out
}

/// Converts a 3-Ucycle on `[n]` into a 3-Mcycle on `[n]`; the result is
/// verified before it is returned.
pub fn convert3(x: &CyclicSequence) -> Result<CyclicSequence> {
    let n = x.n();
    let report = crate::verify::verify_cycle(x.symbols(), n, 3, Kind::Subset);
    if x.t() != 3 || !report.ok {
        return Err(Error::NotAUcycle(report.summary_line()));
    }
    let missing = missing_pairs(x.symbols(), n)?;
    let perm = build_permutation(x.symbols(), &missing, n)?;
    let mut out = double_first_instances(x.symbols(), &perm.excluded_pairs());
    for &l in &perm.x {
        out.extend([l, l, l]);
    }
    CyclicSequence::new(out, n, 3, Kind::Multiset)?.certify()
}

/// Converts a 2-Ucycle into a 2-Mcycle by doubling the first occurrence of
/// every letter.
pub fn convert2(x: &CyclicSequence) -> Result<CyclicSequence> {
    let n = x.n();
    let report = crate::verify::verify_cycle(x.symbols(), n, 2, Kind::Subset);
    if x.t() != 2 || n < 2 || !report.ok {
        return Err(Error::NotAUcycle(report.summary_line()));
    }
    let mut seen = vec![false; n as usize + 1];
    let mut out = Vec::with_capacity(x.len() + n as usize);
    for &l in x.symbols() {
        out.push(l);
        if !std::mem::replace(&mut seen[l as usize], true) {
            out.push(l);
        }
    }
    CyclicSequence::new(out, n, 2, Kind::Multiset)?.certify()
}
