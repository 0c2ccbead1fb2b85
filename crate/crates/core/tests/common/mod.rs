//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library.

#![allow(dead_code)]

use std::collections::HashMap;

pub fn digits(s: &str) -> Vec<u32> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => 10,
            _ => c.to_digit(10).unwrap(),
        })
        .collect()
}

pub fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * u128::from(n - i) / u128::from(i + 1);
    }
    r
}

/// All nondecreasing `t`-tuples over `1..=n`, strictly increasing if `distinct`.
pub fn all_windows(n: u32, t: usize, distinct: bool) -> Vec<Vec<u32>> {
    fn go(n: u32, t: usize, distinct: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        let lo = match cur.last() {
            Some(&x) if distinct => x + 1,
            Some(&x) => x,
            None => 1,
        };
        for x in lo..=n {
            cur.push(x);
            go(n, t, distinct, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, t, distinct, &mut Vec::new(), &mut out);
    out
}

/// True when every `t`-multiset (or subset) of `[n]` is a cyclic window of
/// `seq` exactly once. The empty sequence is never a cycle.
pub fn is_universal(seq: &[u32], n: u32, t: usize, distinct: bool) -> bool {
    let all = all_windows(n, t, distinct);
    if seq.is_empty() || seq.len() != all.len() {
        return false;
    }
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    for i in 0..seq.len() {
        let mut w: Vec<u32> = (0..t).map(|j| seq[(i + j) % seq.len()]).collect();
        w.sort_unstable();
        *seen.entry(w).or_default() += 1;
    }
    all.iter().all(|w| seen.get(w) == Some(&1))
}

pub fn is_mcycle(seq: &[u32], n: u32, t: usize) -> bool {
    is_universal(seq, n, t, false)
}

pub fn is_ucycle(seq: &[u32], n: u32, t: usize) -> bool {
    is_universal(seq, n, t, true)
}

/// Partitions of `n` into exactly `t` parts of at least `min`, nonincreasing.
pub fn partitions(n: u32, t: usize, min: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, slots: usize, max: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (min..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, slots - 1, p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, t, n, min, &mut Vec::new(), &mut out);
    out
}

/// Some part value of the partition occurs exactly once.
pub fn has_unique_part(parts: &[u32]) -> bool {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    counts.values().any(|&c| c == 1)
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}
