//! Exhaustive depth-first search for Mcycles at small `(n, t)`.
//!
//! A partial sequence stays viable while no window repeats and no symbol is
//! used more than `L / n` times (`L` the cycle length); every symbol occurs
//! exactly that often in an Mcycle. Symmetry is broken according to the
//! chosen [`Equivalence`]:
//!
//! * `Raw` enumerates every linear sequence whose cyclic windows work.
//! * `Relabel` identifies sequences differing by a permutation of `[n]`.
//!   Only sequences whose symbols first appear in the order `1, 2, .., n`
//!   are produced, which is exactly one per class.
//! * `RelabelRotation` additionally identifies rotations. Each class has a
//!   member starting with `t` ones in first-appearance order; of those, only
//!   the lexicographically least is emitted.
//!
//! Results are independent of branch partitioning: a sequence is emitted
//! based on local checks only, so disjoint prefixes may be searched
//! separately and their outputs merged.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cycle::{CyclicSequence, Kind};
use crate::error::{Error, Result};
use crate::multiset::{cycle_length, necessary_condition};

pub const DEFAULT_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equivalence {
    Raw,
    Relabel,
    RelabelRotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    First,
    All,
    Count,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: u32,
    pub t: u32,
    pub mode: Mode,
    pub equivalence: Equivalence,
    /// Fixed initial symbols; only extensions of it are searched.
    pub prefix: Vec<u32>,
    /// Stop after this many results, if set.
    pub limit: Option<u64>,
    /// Largest cycle length the search accepts.
    pub budget: u64,
    /// Zero keeps candidates in ascending order; otherwise they are shuffled
    /// per depth.
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(n: u32, t: u32, mode: Mode, equivalence: Equivalence) -> Self {
        Self { n, t, mode, equivalence, prefix: Vec::new(), limit: None, budget: DEFAULT_BUDGET, seed: 0 }
    }

    pub fn with_prefix(mut self, prefix: Vec<u32>) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_limit(mut self, limit: u64) -> Self {
        self.limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub found: u64,
    pub nodes: u64,
}

struct Searcher<'a> {
    n: usize,
    t: usize,
    len: usize,
    per_symbol: usize,
    equivalence: Equivalence,
    seq: Vec<u32>,
    counts: Vec<usize>,
    used: Vec<bool>,
    max_used: u32,
    max_history: Vec<u32>,
    orders: Vec<Vec<u32>>,
    stats: SearchStats,
    limit: Option<u64>,
    visit: &'a mut dyn FnMut(&[u32]) -> ControlFlow<()>,
}

impl Searcher<'_> {
    fn key(&self, window: impl Iterator<Item = u32>) -> usize {
        let mut w: Vec<u32> = window.collect();
        w.sort_unstable();
        w.iter().fold(0, |acc, &s| acc * self.n + (s as usize - 1))
    }

    fn last_window_key(&self) -> Option<usize> {
        let k = self.seq.len();
        (k >= self.t).then(|| self.key(self.seq[k - self.t..].iter().copied()))
    }

    /// Pushes `s` if it keeps the partial sequence viable.
    fn push(&mut self, s: u32) -> bool {
        if self.counts[s as usize] == self.per_symbol {
            return false;
        }
        if self.equivalence != Equivalence::Raw && s > self.max_used + 1 {
            return false;
        }
        if self.equivalence == Equivalence::RelabelRotation && self.seq.len() < self.t && s != 1 {
            return false;
        }
        self.seq.push(s);
        if let Some(key) = self.last_window_key() {
            if self.used[key] {
                self.seq.pop();
                return false;
            }
            self.used[key] = true;
        }
        self.counts[s as usize] += 1;
        self.max_history.push(self.max_used);
        self.max_used = self.max_used.max(s);
        true
    }

    fn pop(&mut self) {
        if let Some(key) = self.last_window_key() {
            self.used[key] = false;
        }
        let s = self.seq.pop().expect("pop after push");
        self.counts[s as usize] -= 1;
        self.max_used = self.max_history.pop().expect("history tracks pushes");
    }

    fn closes(&self) -> bool {
        let k = self.len;
        let mut extra = Vec::with_capacity(self.t - 1);
        for start in k - self.t + 1..k {
            let key = self.key((0..self.t).map(|j| self.seq[(start + j) % k]));
            if self.used[key] || extra.contains(&key) {
                return false;
            }
            extra.push(key);
        }
        true
    }

    fn is_emitted(&self) -> bool {
        match self.equivalence {
            Equivalence::Raw | Equivalence::Relabel => true,
            Equivalence::RelabelRotation => {
                let k = self.len;
                (0..k)
                    .filter(|&i| (0..self.t).all(|j| self.seq[(i + j) % k] == self.seq[i]))
                    .all(|i| first_appearance(&rotated(&self.seq, i)) >= self.seq)
            }
        }
    }

    fn dfs(&mut self) -> ControlFlow<()> {
        self.stats.nodes += 1;
        let depth = self.seq.len();
        if depth == self.len {
            if self.closes() && self.is_emitted() {
                self.stats.found += 1;
                (self.visit)(&self.seq)?;
                if self.limit.is_some_and(|l| self.stats.found >= l) {
                    return ControlFlow::Break(());
                }
            }
            return ControlFlow::Continue(());
        }
        for i in 0..self.n {
            let s = self.orders[depth][i];
            if self.push(s) {
                let flow = self.dfs();
                self.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn rotated(seq: &[u32], start: usize) -> Vec<u32> {
    seq[start..].iter().chain(&seq[..start]).copied().collect()
}

/// Relabels symbols in order of first appearance: the least relabeling.
pub fn first_appearance(seq: &[u32]) -> Vec<u32> {
    let max = seq.iter().copied().max().unwrap_or(0) as usize;
    let mut map = vec![0u32; max + 1];
    let mut next = 0;
    seq.iter()
        .map(|&s| {
            if map[s as usize] == 0 {
                next += 1;
                map[s as usize] = next;
            }
            map[s as usize]
        })
        .collect()
}

/// Lexicographically least member of the sequence's equivalence class.
pub fn canonicalize(seq: &[u32], equivalence: Equivalence) -> Vec<u32> {
    match equivalence {
        Equivalence::Raw => seq.to_vec(),
        Equivalence::Relabel => first_appearance(seq),
        Equivalence::RelabelRotation => (0..seq.len())
            .map(|r| first_appearance(&rotated(seq, r)))
            .min()
            .unwrap_or_default(),
    }
}

/// Runs the search, handing every result to `visit`.
pub fn backtrack_with(
    config: &SearchConfig,
    visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
) -> Result<SearchStats> {
    let (n, t) = (config.n, config.t);
    if n == 0 || t == 0 {
        return Err(Error::InvalidParameters(format!("n = {n}, t = {t} must be positive")));
    }
    let len = cycle_length(n, t, Kind::Multiset)?;
    if len > u128::from(config.budget) {
        return Err(Error::BudgetExceeded { positions: len.min(u128::from(u64::MAX)) as u64, budget: config.budget });
    }
    if !necessary_condition(n, t, Kind::Multiset) {
        return Ok(SearchStats::default());
    }
    let len = len as usize;
    let table = (n as usize)
        .checked_pow(t)
        .filter(|&s| s <= 1 << 26)
        .ok_or_else(|| Error::InvalidParameters(format!("window table for n = {n}, t = {t} is too large")))?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let orders = (0..len)
        .map(|_| {
            let mut o: Vec<u32> = (1..=n).collect();
            if config.seed != 0 {
                o.shuffle(&mut rng);
            }
            o
        })
        .collect();
    let mut s = Searcher {
        n: n as usize,
        t: t as usize,
        len,
        per_symbol: len / n as usize,
        equivalence: config.equivalence,
        seq: Vec::with_capacity(len),
        counts: vec![0; n as usize + 1],
        used: vec![false; table],
        max_used: 0,
        max_history: Vec::with_capacity(len),
        orders,
        stats: SearchStats::default(),
        limit: match config.mode {
            Mode::First => Some(1),
            _ => config.limit,
        },
        visit,
    };
    if config.prefix.len() > len {
        return Ok(s.stats);
    }
    for &p in &config.prefix {
        if p == 0 || p > n || !s.push(p) {
            return Ok(s.stats);
        }
    }
    let _ = s.dfs();
    Ok(s.stats)
}

/// Collects results as sequences. In `Count` mode nothing is collected.
pub fn backtrack(config: &SearchConfig) -> Result<(Vec<CyclicSequence>, SearchStats)> {
    let mut out = Vec::new();
    let collect = config.mode != Mode::Count;
    let stats = backtrack_with(config, &mut |seq| {
        if collect {
            out.push(CyclicSequence::new(seq.to_vec(), config.n, config.t, Kind::Multiset).expect("symbols in range"));
        }
        ControlFlow::Continue(())
    })?;
    Ok((out, stats))
}

/// Every viable partial sequence of length `depth` extending the configured
/// prefix. Searching each of them covers the unpartitioned search exactly once.
pub fn branch_prefixes(config: &SearchConfig, depth: usize) -> Result<Vec<Vec<u32>>> {
    let n = config.n;
    let t = config.t;
    let len = cycle_length(n, t, Kind::Multiset)?;
    if len > u128::from(config.budget) {
        return Err(Error::BudgetExceeded { positions: len.min(u128::from(u64::MAX)) as u64, budget: config.budget });
    }
    if depth >= len as usize {
        return Err(Error::InvalidParameters(format!("prefix depth {depth} must be below the cycle length {len}")));
    }
    let mut frontier = vec![config.prefix.clone()];
    while frontier.first().is_some_and(|p| p.len() < depth) {
        let mut next = Vec::new();
        for p in frontier {
            for s in 1..=n {
                let mut q = p.clone();
                q.push(s);
                if prefix_viable(config, &q)? {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    Ok(frontier)
}

fn prefix_viable(config: &SearchConfig, prefix: &[u32]) -> Result<bool> {
    let len = cycle_length(config.n, config.t, Kind::Multiset)? as usize;
    let per_symbol = len / config.n as usize;
    let t = config.t as usize;
    let mut counts = vec![0usize; config.n as usize + 1];
    let mut max_used = 0;
    let mut seen = std::collections::HashSet::new();
    for (i, &s) in prefix.iter().enumerate() {
        if s == 0 || s > config.n {
            return Ok(false);
        }
        counts[s as usize] += 1;
        if counts[s as usize] > per_symbol {
            return Ok(false);
        }
        if config.equivalence != Equivalence::Raw && s > max_used + 1 {
            return Ok(false);
        }
        if config.equivalence == Equivalence::RelabelRotation && i < t && s != 1 {
            return Ok(false);
        }
        max_used = max_used.max(s);
        if i + 1 >= t {
            let mut w = prefix[i + 1 - t..=i].to_vec();
            w.sort_unstable();
            if !seen.insert(w) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of classes of Mcycles under `equivalence`.
pub fn count_distinct(n: u32, t: u32, equivalence: Equivalence) -> Result<u64> {
    let config = SearchConfig::new(n, t, Mode::Count, equivalence);
    Ok(backtrack_with(&config, &mut |_| ControlFlow::Continue(()))?.found)
}
