//! Universal cycles for windows of size 1 and 2.
//!
//! Any permutation of `[n]` works for `t = 1`. For `t = 2` an eulerian circuit
//! of the complete graph on `[n]` (with a loop at every vertex for multisets)
//! is read off as its vertex sequence; this needs `n` odd.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cycle::{CyclicSequence, Kind};
use crate::error::{Error, Result};
use crate::multiset::necessary_condition;

pub fn construct_small(n: u32, t: u32, kind: Kind, seed: u64) -> Result<CyclicSequence> {
    match t {
        1 => {
            let mut perm: Vec<u32> = (1..=n).collect();
            if seed != 0 {
                perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            }
            CyclicSequence::new(perm, n, 1, kind)
        }
        2 => {
            if kind == Kind::Subset && n < 3 {
                return Err(Error::InvalidParameters(format!("no 2-subset cycle on [{n}]")));
            }
            if !necessary_condition(n, 2, kind) {
                return Err(Error::Infeasible { n, t });
            }
            let symbols = complete_graph_circuit(n, kind == Kind::Multiset, seed);
            CyclicSequence::new(symbols, n, 2, kind)?.certify()
        }
        _ => Err(Error::InvalidParameters(format!("direct construction only covers t <= 2, got {t}"))),
    }
}

/// Vertex sequence of an eulerian circuit of `K_n` (odd `n`), closing vertex
/// dropped.
fn complete_graph_circuit(n: u32, loops: bool, seed: u64) -> Vec<u32> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for a in 1..=n {
        let lo = if loops { a } else { a + 1 };
        for b in lo..=n {
            edges.push((a, b));
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n as usize + 1];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a as usize].push(i);
        if a != b {
            adj[b as usize].push(i);
        }
    }
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for list in &mut adj {
            list.shuffle(&mut rng);
        }
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n as usize + 1];
    let mut stack = vec![1u32];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        let list = &adj[v as usize];
        while next[v as usize] < list.len() && used[list[next[v as usize]]] {
            next[v as usize] += 1;
        }
        if next[v as usize] < list.len() {
            let e = list[next[v as usize]];
            used[e] = true;
            let (a, b) = edges[e];
            stack.push(if a == v { b } else { a });
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.pop();
    circuit.reverse();
    circuit
}
