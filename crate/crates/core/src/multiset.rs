//! Multisets over `[n]`, their difference forms, classes and patterns.
//!
//! A sorted t-multiset `s_1 <= ... <= s_t` has the form
//! `(s_2 - s_1, ..., s_t - s_{t-1}, n - (s_t - s_1))`. Interior gaps may be
//! zero; the closing gap is always in `1..=n`, so every form sums to `n`.
//! Forms that are rotations of each other are equivalent, and forms that
//! are arbitrary permutations of each other share a class: a partition of
//! `n` into `t` parts, stored nonincreasing.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use crate::cycle::Kind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    elements: Vec<u32>,
    n: u32,
}

impl Multiset {
    /// Sorts `elements`; rejects symbols outside `1..=n`.
    pub fn new(mut elements: Vec<u32>, n: u32) -> Result<Self> {
        if n == 0 || elements.is_empty() {
            return Err(Error::InvalidParameters("multiset needs n >= 1 and t >= 1".into()));
        }
        if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidParameters(format!("element {bad} outside 1..={n}")));
        }
        elements.sort_unstable();
        Ok(Self { elements, n })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> usize {
        self.elements.len()
    }

    pub fn is_subset(&self) -> bool {
        self.elements.windows(2).all(|w| w[0] != w[1])
    }

    /// Adds `k` to every element modulo `n`, keeping representatives in `1..=n`.
    pub fn shifted(&self, k: u32) -> Self {
        let n = self.n;
        let elements = self.elements.iter().map(|&e| (e - 1 + k % n) % n + 1).collect();
        Multiset::new(elements, n).expect("shift stays in range")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    diffs: Vec<u32>,
    kind: Kind,
    n: u32,
}

impl Form {
    pub fn new(diffs: Vec<u32>, n: u32, kind: Kind) -> Result<Self> {
        let t = diffs.len();
        if t == 0 || n == 0 {
            return Err(Error::InvalidParameters("empty form".into()));
        }
        let min = match kind {
            Kind::Multiset => 0,
            Kind::Subset => 1,
        };
        let sum: u64 = diffs.iter().map(|&f| u64::from(f)).sum();
        if diffs.iter().any(|&f| f < min || f > n) || sum != u64::from(n) {
            return Err(Error::InvalidParameters(format!(
                "{diffs:?} is not a {kind}-form for n = {n}"
            )));
        }
        Ok(Self { diffs, kind, n })
    }

    pub fn diffs(&self) -> &[u32] {
        &self.diffs
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> usize {
        self.diffs.len()
    }
}

/// Computes the difference form of a sorted multiset.
///
/// `kind` selects which form invariants apply; asking for a subset form of a
/// multiset with repeated elements is an error.
pub fn form_of(s: &Multiset, kind: Kind) -> Result<Form> {
    if kind == Kind::Subset && !s.is_subset() {
        return Err(Error::InvalidParameters(format!(
            "{:?} has repeated elements",
            s.elements()
        )));
    }
    let e = s.elements();
    let mut diffs: Vec<u32> = e.windows(2).map(|w| w[1] - w[0]).collect();
    diffs.push(s.n() - (e[e.len() - 1] - e[0]));
    Form::new(diffs, s.n(), kind)
}

pub fn is_cyclic_equivalent(f: &Form, g: &Form) -> Result<bool> {
    if f.n != g.n || f.kind != g.kind || f.t() != g.t() {
        return Err(Error::InvalidParameters(
            "forms differ in n, t or kind".into(),
        ));
    }
    Ok(is_rotation_of(&f.diffs, &g.diffs))
}

pub(crate) fn is_rotation_of(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|r| a[r..].iter().chain(&a[..r]).eq(b))
}

/// A partition of `n` into `t` parts (zeros allowed for multisets), optionally
/// with one part value singled out as the representative closing difference.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DifferenceClass {
    parts: Vec<u32>,
    distinguished: Option<u32>,
    kind: Kind,
    n: u32,
}

impl DifferenceClass {
    pub fn new(mut parts: Vec<u32>, n: u32, kind: Kind) -> Result<Self> {
        parts.sort_unstable_by_key(|&p| Reverse(p));
        let min = match kind {
            Kind::Multiset => 0,
            Kind::Subset => 1,
        };
        let sum: u64 = parts.iter().map(|&p| u64::from(p)).sum();
        if parts.is_empty() || sum != u64::from(n) || parts.iter().any(|&p| p < min) {
            return Err(Error::InvalidParameters(format!(
                "{parts:?} is not a {kind}-class for n = {n}"
            )));
        }
        Ok(Self { parts, distinguished: None, kind, n })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn distinguished(&self) -> Option<u32> {
        self.distinguished
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> usize {
        self.parts.len()
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Part values occurring exactly once, largest first.
    pub fn unique_values(&self) -> Vec<u32> {
        let mut counts: BTreeMap<Reverse<u32>, usize> = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(Reverse(p)).or_default() += 1;
        }
        counts.into_iter().filter(|&(_, c)| c == 1).map(|(Reverse(v), _)| v).collect()
    }

    pub fn with_distinguished(&self, value: u32) -> Result<Self> {
        if self.multiplicity(value) != 1 {
            return Err(Error::InvalidParameters(format!(
                "{value} does not occur exactly once in {:?}",
                self.parts
            )));
        }
        Ok(Self { distinguished: Some(value), ..self.clone() })
    }
}

pub fn class_of(f: &Form) -> DifferenceClass {
    DifferenceClass::new(f.diffs.clone(), f.n, f.kind).expect("a valid form is a valid class")
}

/// All classes for `(n, t, kind)` in descending lexicographic order of the
/// nonincreasing part tuples.
pub fn enumerate_classes(n: u32, t: usize, kind: Kind) -> Vec<DifferenceClass> {
    fn rec(remaining: u32, max: u32, slots: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // the remaining slots can absorb at most slots * max
        if u64::from(remaining) > slots as u64 * u64::from(max) {
            return;
        }
        let hi = remaining.min(max);
        for p in (min..=hi).rev() {
            if u64::from(remaining - p) < (slots as u64 - 1) * u64::from(min) {
                continue;
            }
            cur.push(p);
            rec(remaining - p, p, slots - 1, min, cur, out);
            cur.pop();
        }
    }

    if n == 0 || t == 0 {
        return Vec::new();
    }
    let min = match kind {
        Kind::Multiset => 0,
        Kind::Subset => 1,
    };
    let mut out = Vec::new();
    rec(n, n, t, min, &mut Vec::with_capacity(t), &mut out);
    out.into_iter()
        .map(|parts| DifferenceClass { parts, distinguished: None, kind, n })
        .collect()
}

/// Multiplicities of equal parts of a class, as a partition of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    multiplicities: Vec<usize>,
}

impl Pattern {
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn is_good(&self) -> bool {
        self.multiplicities.contains(&1)
    }
}

pub fn pattern_of(c: &DifferenceClass) -> Pattern {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &p in &c.parts {
        *counts.entry(p).or_default() += 1;
    }
    let mut multiplicities: Vec<usize> = counts.into_values().collect();
    multiplicities.sort_unstable_by_key(|&m| Reverse(m));
    Pattern { multiplicities }
}

pub fn has_bad_pattern(n: u32, t: usize, kind: Kind) -> bool {
    enumerate_classes(n, t, kind).iter().any(|c| !pattern_of(c).is_good())
}

/// Maps a subset class of `[n + t]` to the multiset class of `[n]` obtained by
/// lowering every part (and the representative) by one.
pub fn shift_down(c: &DifferenceClass) -> Result<DifferenceClass> {
    let t = c.t() as u32;
    if c.kind != Kind::Subset || c.n <= t {
        return Err(Error::InvalidParameters(format!(
            "shift_down needs a subset class with n > t, got {:?} over {}",
            c.parts, c.n
        )));
    }
    Ok(DifferenceClass {
        parts: c.parts.iter().map(|&p| p - 1).collect(),
        distinguished: c.distinguished.map(|d| d - 1),
        kind: Kind::Multiset,
        n: c.n - t,
    })
}

/// Inverse of [`shift_down`].
pub fn shift_up(c: &DifferenceClass) -> Result<DifferenceClass> {
    if c.kind != Kind::Multiset {
        return Err(Error::InvalidParameters("shift_up needs a multiset class".into()));
    }
    Ok(DifferenceClass {
        parts: c.parts.iter().map(|&p| p + 1).collect(),
        distinguished: c.distinguished.map(|d| d + 1),
        kind: Kind::Subset,
        n: c.n + c.t() as u32,
    })
}

/// `C(n, k)` with overflow reported rather than wrapped.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow(n, k))?
            / u128::from(i + 1);
    }
    Ok(acc)
}

/// Number of windows a universal cycle of this kind must have.
pub fn cycle_length(n: u32, t: u32, kind: Kind) -> Result<u128> {
    match kind {
        Kind::Multiset => binomial(u64::from(n) + u64::from(t) - 1, u64::from(t)),
        Kind::Subset => binomial(u64::from(n), u64::from(t)),
    }
}

fn p_adic_valuation_of_factorial(m: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut q = m;
    while q > 0 {
        q /= p;
        v += q;
    }
    v
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Whether `n` divides the required cycle length.
///
/// Works through Legendre's formula on prime powers of `n`, so it is exact for
/// every `n, t` without forming the binomial coefficient.
pub fn necessary_condition(n: u32, t: u32, kind: Kind) -> bool {
    if n == 0 || t == 0 {
        return false;
    }
    let (top, k) = match kind {
        Kind::Multiset => (u64::from(n) + u64::from(t) - 1, u64::from(t)),
        Kind::Subset => (u64::from(n), u64::from(t)),
    };
    if k > top {
        // C(top, k) = 0, which every n divides
        return true;
    }
    factorize(u64::from(n)).into_iter().all(|(p, e)| {
        let v = p_adic_valuation_of_factorial(top, p)
            - p_adic_valuation_of_factorial(k, p)
            - p_adic_valuation_of_factorial(top - k, p);
        v >= u64::from(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(e: &[u32], n: u32) -> Multiset {
        Multiset::new(e.to_vec(), n).unwrap()
    }

    #[test]
    fn forms_of_sample_multisets() {
        assert_eq!(form_of(&ms(&[1, 2, 2, 3], 7), Kind::Multiset).unwrap().diffs(), &[1, 0, 1, 5]);
        assert_eq!(form_of(&ms(&[1, 1, 1], 5), Kind::Multiset).unwrap().diffs(), &[0, 0, 5]);
        let f = form_of(&ms(&[1, 1, 11, 21, 21], 30), Kind::Multiset).unwrap();
        assert_eq!(f.diffs(), &[0, 10, 10, 0, 10]);
        let g = Form::new(vec![10, 10, 0, 10, 0], 30, Kind::Multiset).unwrap();
        assert!(is_cyclic_equivalent(&f, &g).unwrap());
    }

    #[test]
    fn cyclic_equivalence() {
        let f = Form::new(vec![1, 0, 1, 5], 7, Kind::Multiset).unwrap();
        let g = Form::new(vec![1, 1, 0, 5], 7, Kind::Multiset).unwrap();
        assert!(!is_cyclic_equivalent(&f, &g).unwrap());
        assert!(is_cyclic_equivalent(&f, &f).unwrap());
        let h = Form::new(vec![1, 1, 1, 4], 7, Kind::Subset).unwrap();
        assert!(is_cyclic_equivalent(&f, &h).is_err());
    }

    #[test]
    fn subset_form_rejects_repeats() {
        assert!(form_of(&ms(&[1, 1, 2], 5), Kind::Subset).is_err());
        assert_eq!(form_of(&ms(&[1, 2, 4], 8), Kind::Subset).unwrap().diffs(), &[1, 2, 5]);
    }

    #[test]
    fn classes_of_forms() {
        let c = class_of(&Form::new(vec![1, 0, 1, 5], 7, Kind::Multiset).unwrap());
        assert_eq!(c.parts(), &[5, 1, 1, 0]);
        assert_eq!(c.distinguished(), None);
        let c = class_of(&Form::new(vec![10, 10, 0, 10, 0], 30, Kind::Multiset).unwrap());
        assert_eq!(c.parts(), &[10, 10, 10, 0, 0]);
        let c = class_of(&Form::new(vec![0, 0, 5], 5, Kind::Multiset).unwrap());
        assert_eq!(c.parts(), &[5, 0, 0]);
    }

    #[test]
    fn class_enumeration() {
        let parts = |cs: Vec<DifferenceClass>| cs.into_iter().map(|c| c.parts).collect::<Vec<_>>();
        assert_eq!(
            parts(enumerate_classes(5, 3, Kind::Multiset)),
            vec![vec![5, 0, 0], vec![4, 1, 0], vec![3, 2, 0], vec![3, 1, 1], vec![2, 2, 1]]
        );
        let mut sub = parts(enumerate_classes(8, 3, Kind::Subset));
        sub.sort();
        let mut want = vec![vec![6, 1, 1], vec![4, 2, 2], vec![3, 3, 2], vec![5, 2, 1], vec![4, 3, 1]];
        want.sort();
        assert_eq!(sub, want);
        assert_eq!(parts(enumerate_classes(4, 1, Kind::Multiset)), vec![vec![4]]);
        assert!(enumerate_classes(2, 3, Kind::Subset).is_empty());
    }

    #[test]
    fn patterns() {
        let c = DifferenceClass::new(vec![10, 10, 10, 0, 0], 30, Kind::Multiset).unwrap();
        let p = pattern_of(&c);
        assert_eq!(p.multiplicities(), &[3, 2]);
        assert!(!p.is_good());
        let c = DifferenceClass::new(vec![6; 5], 30, Kind::Multiset).unwrap();
        assert_eq!(pattern_of(&c).multiplicities(), &[5]);
        let c = DifferenceClass::new(vec![5, 1, 1, 0], 7, Kind::Multiset).unwrap();
        let p = pattern_of(&c);
        assert_eq!(p.multiplicities(), &[2, 1, 1]);
        assert!(p.is_good());
    }

    #[test]
    fn seven_patterns_for_five_parts_of_thirty() {
        let mut pats: Vec<Pattern> =
            enumerate_classes(30, 5, Kind::Multiset).iter().map(pattern_of).collect();
        pats.sort();
        pats.dedup();
        assert_eq!(pats.len(), 7);
        let bad: Vec<_> = pats.iter().filter(|p| !p.is_good()).map(|p| p.multiplicities().to_vec()).collect();
        assert_eq!(bad, vec![vec![3, 2], vec![5]]);
    }

    #[test]
    fn shifting_classes() {
        let c = DifferenceClass::new(vec![6, 1, 1], 8, Kind::Subset).unwrap();
        let d = shift_down(&c).unwrap();
        assert_eq!((d.parts(), d.n(), d.kind()), (&[5, 0, 0][..], 5, Kind::Multiset));
        let c = DifferenceClass::new(vec![5, 2, 1], 8, Kind::Subset).unwrap().with_distinguished(5).unwrap();
        let d = shift_down(&c).unwrap();
        assert_eq!((d.parts(), d.distinguished()), (&[4, 1, 0][..], Some(4)));
        assert_eq!(shift_up(&d).unwrap(), c);
        let c = DifferenceClass::new(vec![8], 8, Kind::Subset).unwrap();
        assert_eq!(shift_down(&c).unwrap().parts(), &[7]);
        assert!(shift_down(&DifferenceClass::new(vec![5, 0, 0], 5, Kind::Multiset).unwrap()).is_err());
    }

    #[test]
    fn distinguished_must_be_unique() {
        let c = DifferenceClass::new(vec![2, 2, 1], 5, Kind::Multiset).unwrap();
        assert!(c.with_distinguished(2).is_err());
        assert_eq!(c.with_distinguished(1).unwrap().distinguished(), Some(1));
        assert_eq!(c.unique_values(), vec![1]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3).unwrap(), 35);
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert!(binomial(300, 150).is_err());
    }

    #[test]
    fn divisibility() {
        assert!(necessary_condition(5, 3, Kind::Multiset));
        assert!(!necessary_condition(6, 3, Kind::Multiset));
        assert!((1..50).all(|n| necessary_condition(n, 1, Kind::Multiset)));
        assert!(necessary_condition(8, 3, Kind::Subset));
        assert!(!necessary_condition(9, 3, Kind::Subset));
    }
}
