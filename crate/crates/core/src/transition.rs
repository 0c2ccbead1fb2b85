//! Transition digraphs on form representations and the cycles they yield.
//!
//! Every class gets a distinguished part of multiplicity one, which is moved
//! to the last coordinate of each of its forms. The remaining `t - 1`
//! coordinates (the head) become a directed edge from its first `t - 2`
//! coordinates to its last `t - 2`. An eulerian circuit lists each form once;
//! the heads overlap so that reading the first coordinate of each edge gives
//! a difference string whose partial sums, repeated over `n` blocks, visit
//! every multiset exactly once as long as the block shift is coprime to `n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cycle::{CyclicSequence, Kind};
use crate::direct;
use crate::error::{Error, Result};
use crate::multiset::{enumerate_classes, pattern_of, DifferenceClass};

/// Upper bound on representative assignments evaluated by [`select_representatives`].
pub const MAX_REPRESENTATIVE_ATTEMPTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormRep {
    pub head: Vec<u32>,
    pub distinguished: u32,
}

impl FormRep {
    pub fn source(&self) -> &[u32] {
        &self.head[..self.head.len() - 1]
    }

    pub fn target(&self) -> &[u32] {
        &self.head[1..]
    }

    pub fn label(&self) -> String {
        format!("({};{})", join(&self.head), self.distinguished)
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph {
    n: u32,
    t: usize,
    kind: Kind,
    vertices: Vec<Vec<u32>>,
    /// Sorted by (source, head, distinguished).
    edges: Vec<FormRep>,
}

impl TransitionGraph {
    /// Builds a graph from explicit edges. Vertices are those incident to
    /// some edge.
    pub fn from_edges(n: u32, t: usize, kind: Kind, mut edges: Vec<FormRep>) -> Result<Self> {
        if t < 3 {
            return Err(Error::InvalidParameters(format!("transition graphs need t >= 3, got {t}")));
        }
        if let Some(e) = edges.iter().find(|e| e.head.len() != t - 1) {
            return Err(Error::InvalidParameters(format!("edge {} has the wrong length", e.label())));
        }
        edges.sort();
        let vertices: BTreeSet<Vec<u32>> =
            edges.iter().flat_map(|e| [e.source().to_vec(), e.target().to_vec()]).collect();
        Ok(Self { n, t, kind, vertices: vertices.into_iter().collect(), edges })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn vertices(&self) -> &[Vec<u32>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[FormRep] {
        &self.edges
    }

    pub fn without_edge(&self, index: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Self::from_edges(self.n, self.t, self.kind, edges).expect("subgraph of a valid graph")
    }

    fn vertex_index(&self, v: &[u32]) -> usize {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).expect("edge endpoint is a vertex")
    }

    fn endpoints(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (self.vertex_index(e.source()), self.vertex_index(e.target()))).collect()
    }
}

/// Picks the largest part of multiplicity one as the distinguished part.
pub fn choose_representative(c: &DifferenceClass) -> Result<DifferenceClass> {
    match c.unique_values().first() {
        Some(&v) => c.with_distinguished(v),
        None => Err(Error::BadPattern {
            class: c.parts().to_vec(),
            pattern: pattern_of(c).multiplicities().to_vec(),
        }),
    }
}

/// One representation per form of the class: every distinct ordering of the
/// non-distinguished parts, with the distinguished part closing the form.
pub fn forms_of_class(c: &DifferenceClass) -> Result<Vec<FormRep>> {
    let d = c.distinguished().ok_or_else(|| {
        Error::InvalidParameters(format!("class {:?} has no distinguished part", c.parts()))
    })?;
    let mut rest: Vec<u32> = c.parts().to_vec();
    let pos = rest.iter().position(|&p| p == d).expect("distinguished part is present");
    rest.remove(pos);
    rest.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(FormRep { head: rest.clone(), distinguished: d });
        if !next_permutation(&mut rest) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the next lexicographic permutation; false once exhausted.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Default representatives for every class of `(n, t, kind)`.
pub fn default_representatives(n: u32, t: usize, kind: Kind) -> Result<Vec<DifferenceClass>> {
    enumerate_classes(n, t, kind).iter().map(choose_representative).collect()
}

pub fn build_graph_from_classes(n: u32, t: usize, kind: Kind, classes: &[DifferenceClass]) -> Result<TransitionGraph> {
    let mut edges = Vec::new();
    for c in classes {
        edges.extend(forms_of_class(c)?);
    }
    TransitionGraph::from_edges(n, t, kind, edges)
}

pub fn build_graph(n: u32, t: usize, kind: Kind) -> Result<TransitionGraph> {
    if t < 3 {
        return Err(Error::InvalidParameters(format!("transition graphs need t >= 3, got {t}")));
    }
    let classes = default_representatives(n, t, kind)?;
    build_graph_from_classes(n, t, kind, &classes)
}

/// Balanced degrees plus weak connectivity over the non-isolated vertices.
pub fn is_eulerian(g: &TransitionGraph) -> bool {
    eulerian_obstruction(g).is_none()
}

fn eulerian_obstruction(g: &TransitionGraph) -> Option<String> {
    let nv = g.vertices.len();
    let mut balance = vec![0i64; nv];
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (s, t) in g.endpoints() {
        balance[s] += 1;
        balance[t] -= 1;
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        parent[a] = b;
    }
    if let Some(v) = balance.iter().position(|&b| b != 0) {
        return Some(format!(
            "vertex (({})) has out-degree minus in-degree {}",
            join(&g.vertices[v]),
            balance[v]
        ));
    }
    if nv > 0 {
        let root = find(&mut parent, 0);
        if (1..nv).any(|v| find(&mut parent, v) != root) {
            return Some("edges span more than one component".into());
        }
    }
    None
}

/// Hierholzer's algorithm. With `seed == 0` edges leave each vertex in sorted
/// order; any other seed shuffles each vertex's outgoing edges.
pub fn eulerian_circuit(g: &TransitionGraph, seed: u64) -> Result<Vec<FormRep>> {
    if let Some(why) = eulerian_obstruction(g) {
        return Err(Error::NotEulerian(why));
    }
    if g.edges.is_empty() {
        return Ok(Vec::new());
    }
    let ends = g.endpoints();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); g.vertices.len()];
    for (i, &(s, _)) in ends.iter().enumerate() {
        out_edges[s].push(i);
    }
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for list in &mut out_edges {
            list.shuffle(&mut rng);
        }
    }
    let mut next = vec![0usize; g.vertices.len()];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(ends[0].0, None)];
    let mut circuit = Vec::with_capacity(g.edges.len());
    while let Some(&(v, via)) = stack.last() {
        if next[v] < out_edges[v].len() {
            let e = out_edges[v][next[v]];
            next[v] += 1;
            stack.push((ends[e].1, Some(e)));
        } else {
            stack.pop();
            if let Some(e) = via {
                circuit.push(e);
            }
        }
    }
    circuit.reverse();
    Ok(circuit.into_iter().map(|e| g.edges[e].clone()).collect())
}

/// The per-block difference string of a circuit: the first head coordinate
/// of each edge, so that the `i`-th cyclic window of length `t - 1` equals the
/// head of the `i`-th edge.
pub fn circuit_differences(circuit: &[FormRep]) -> Vec<u32> {
    circuit.iter().map(|e| e.head[0]).collect()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Sum of the block's differences modulo `n`.
pub fn block_shift(diffs: &[u32], n: u32) -> u32 {
    (diffs.iter().map(|&d| u64::from(d)).sum::<u64>() % u64::from(n)) as u32
}

/// Expands a block difference string into the full cycle: partial sums from
/// symbol 1, repeated for `n` blocks. The result is verified before return.
pub fn emit_from_differences(diffs: &[u32], n: u32, t: u32, kind: Kind) -> Result<CyclicSequence> {
    if n == 0 || diffs.is_empty() {
        return Err(Error::InvalidParameters("need n >= 1 and a nonempty block".into()));
    }
    let shift = block_shift(diffs, n);
    if gcd(u64::from(shift), u64::from(n)) != 1 {
        return Err(Error::NotCoprimeShift { shift, n });
    }
    let mut symbols = Vec::with_capacity(diffs.len() * n as usize);
    let mut cur = 0u64; // zero-based
    for _ in 0..n {
        for &d in diffs {
            symbols.push(cur as u32 + 1);
            cur = (cur + u64::from(d)) % u64::from(n);
        }
    }
    CyclicSequence::new(symbols, n, t, kind)?.certify()
}

pub fn emit_cycle(circuit: &[FormRep], n: u32, t: u32, kind: Kind) -> Result<CyclicSequence> {
    emit_from_differences(&circuit_differences(circuit), n, t, kind)
}

/// Full pipeline: classes, representatives, graph, circuit, emission.
///
/// The default representatives are tried first. If their graph is not
/// eulerian or its block shift shares a factor with `n`, other choices of
/// distinguished part are searched (see [`select_representatives`]).
/// Windows of size 1 and 2 use the direct constructions in [`crate::direct`].
pub fn construct_cycle(n: u32, t: u32, kind: Kind, seed: u64) -> Result<CyclicSequence> {
    if n == 0 || t == 0 {
        return Err(Error::InvalidParameters(format!("n = {n}, t = {t} must be positive")));
    }
    if t < 3 {
        return direct::construct_small(n, t, kind, seed);
    }
    let tt = t as usize;
    let classes = enumerate_classes(n, tt, kind);
    if classes.is_empty() {
        return Err(Error::InvalidParameters(format!("no {kind}-classes for n = {n}, t = {t}")));
    }
    let reps = select_representatives(n, &classes)?;
    let g = build_graph_from_classes(n, tt, kind, &reps)?;
    emit_cycle(&eulerian_circuit(&g, seed)?, n, t, kind)
}

/// Candidate graphs, kept as per-class edge lists over shared vertex indices
/// so that swapping one class's distinguished part is cheap to evaluate.
struct Candidates {
    n: u32,
    vertices: usize,
    values: Vec<Vec<u32>>,
    edges: Vec<Vec<Vec<(usize, usize)>>>,
    shifts: Vec<Vec<u64>>,
}

impl Candidates {
    fn new(n: u32, classes: &[DifferenceClass]) -> Result<Self> {
        let mut index: std::collections::HashMap<Vec<u32>, usize> = std::collections::HashMap::new();
        let mut id = |v: &[u32]| {
            let next = index.len();
            *index.entry(v.to_vec()).or_insert(next)
        };
        let mut values = Vec::with_capacity(classes.len());
        let mut edges = Vec::with_capacity(classes.len());
        let mut shifts = Vec::with_capacity(classes.len());
        for c in classes {
            let vals = c.unique_values();
            if vals.is_empty() {
                return Err(Error::BadPattern {
                    class: c.parts().to_vec(),
                    pattern: pattern_of(c).multiplicities().to_vec(),
                });
            }
            let mut class_edges = Vec::with_capacity(vals.len());
            let mut class_shifts = Vec::with_capacity(vals.len());
            for &v in &vals {
                let forms = forms_of_class(&c.with_distinguished(v)?)?;
                class_shifts.push(forms.iter().map(|f| u64::from(f.head[0])).sum::<u64>() % u64::from(n));
                class_edges.push(forms.iter().map(|f| (id(f.source()), id(f.target()))).collect());
            }
            values.push(vals);
            edges.push(class_edges);
            shifts.push(class_shifts);
        }
        Ok(Self { n, vertices: index.len(), values, edges, shifts })
    }

    /// Weakly connected components spanned by the chosen edges.
    fn components(&self, choice: &[usize]) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        let mut touched = vec![false; self.vertices];
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = 0usize;
        for (class, &j) in self.edges.iter().zip(choice) {
            for &(a, b) in &class[j] {
                for v in [a, b] {
                    if !std::mem::replace(&mut touched[v], true) {
                        count += 1;
                    }
                }
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    count -= 1;
                }
            }
        }
        count
    }

    fn shift(&self, choice: &[usize]) -> u64 {
        self.shifts.iter().zip(choice).map(|(s, &j)| s[j]).sum::<u64>() % u64::from(self.n)
    }

    fn coprime(&self, shift: u64) -> bool {
        gcd(shift, u64::from(self.n)) == 1
    }

    fn size(&self) -> u128 {
        self.values.iter().fold(1u128, |acc, v| acc.saturating_mul(v.len() as u128))
    }
}

/// Picks a distinguished part for every class so that the transition graph
/// is eulerian and the block shift is coprime to `n`.
///
/// Balance holds for every choice, so only connectivity and the shift are at
/// stake. When there are at most [`MAX_REPRESENTATIVE_ATTEMPTS`] assignments
/// all of them are tried in odometer order, starting from the default
/// (largest unique part everywhere). Otherwise single-class swaps that merge
/// components are applied greedily, and then assignments one or two swaps
/// away are scanned for a coprime shift. At most
/// [`MAX_REPRESENTATIVE_ATTEMPTS`] graphs are evaluated in the second stage.
pub fn select_representatives(n: u32, classes: &[DifferenceClass]) -> Result<Vec<DifferenceClass>> {
    let cand = Candidates::new(n, classes)?;
    let choice = if cand.size() <= MAX_REPRESENTATIVE_ATTEMPTS as u128 {
        exhaustive_choice(&cand)?
    } else {
        repaired_choice(&cand)?
    };
    if choice.iter().any(|&j| j != 0) {
        let changed = choice.iter().filter(|&&j| j != 0).count();
        log::info!("n={n}: default representatives replaced in {changed} classes");
    }
    classes
        .iter()
        .zip(&choice)
        .zip(&cand.values)
        .map(|((c, &j), vals)| c.with_distinguished(vals[j]))
        .collect()
}

fn exhaustive_choice(cand: &Candidates) -> Result<Vec<usize>> {
    let mut choice = vec![0usize; cand.values.len()];
    let mut first_shift = None;
    loop {
        if cand.components(&choice) <= 1 {
            let shift = cand.shift(&choice);
            if cand.coprime(shift) {
                return Ok(choice);
            }
            log::warn!("n={}: eulerian choice with block shift {shift} rejected", cand.n);
            first_shift.get_or_insert(shift);
        }
        if !advance(&mut choice, &cand.values) {
            break;
        }
    }
    Err(match first_shift {
        Some(shift) => Error::NotCoprimeShift { shift: shift as u32, n: cand.n },
        None => Error::NotEulerian("no choice of representatives gives a connected graph".into()),
    })
}

fn repaired_choice(cand: &Candidates) -> Result<Vec<usize>> {
    let k = cand.values.len();
    let mut choice = vec![0usize; k];
    let mut comps = cand.components(&choice);
    while comps > 1 {
        let mut improved = false;
        'scan: for i in 0..k {
            let current = choice[i];
            for j in 0..cand.values[i].len() {
                if j == current {
                    continue;
                }
                choice[i] = j;
                let c = cand.components(&choice);
                if c < comps {
                    comps = c;
                    improved = true;
                    break 'scan;
                }
                choice[i] = current;
            }
        }
        if !improved {
            return Err(Error::NotEulerian(format!(
                "{comps} components remain and no single change of representative merges them"
            )));
        }
    }
    let shift = cand.shift(&choice);
    if cand.coprime(shift) {
        return Ok(choice);
    }
    log::warn!("n={}: connected choice has block shift {shift}; searching nearby choices", cand.n);
    let mut swaps: Vec<(usize, usize)> = Vec::new();
    for (i, vals) in cand.values.iter().enumerate() {
        swaps.extend((0..vals.len()).filter(|&j| j != choice[i]).map(|j| (i, j)));
    }
    let mut evaluated = 0usize;
    let mut try_choice = |c: &[usize]| {
        if !cand.coprime(cand.shift(c)) || evaluated >= MAX_REPRESENTATIVE_ATTEMPTS {
            return false;
        }
        evaluated += 1;
        cand.components(c) <= 1
    };
    for &(i, j) in &swaps {
        let mut c = choice.clone();
        c[i] = j;
        if try_choice(&c) {
            return Ok(c);
        }
    }
    for (a, &(i, j)) in swaps.iter().enumerate() {
        for &(i2, j2) in &swaps[a + 1..] {
            if i2 == i {
                continue;
            }
            let mut c = choice.clone();
            c[i] = j;
            c[i2] = j2;
            if try_choice(&c) {
                return Ok(c);
            }
        }
    }
    Err(Error::NotCoprimeShift { shift: shift as u32, n: cand.n })
}

fn advance(odometer: &mut [usize], choices: &[Vec<u32>]) -> bool {
    for i in (0..odometer.len()).rev() {
        if odometer[i] + 1 < choices[i].len() {
            odometer[i] += 1;
            return true;
        }
        odometer[i] = 0;
    }
    false
}

/// Graphviz text: one node line per vertex, one labelled edge line per form.
pub fn render_dot(g: &TransitionGraph) -> String {
    let name = match g.kind {
        Kind::Multiset => 'T',
        Kind::Subset => 'G',
    };
    let mut out = format!("digraph \"{name}({},{})\" {{\n", g.n, g.t);
    for v in &g.vertices {
        let _ = writeln!(out, "  \"{}\";", join(v));
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            join(e.source()),
            join(e.target()),
            e.label()
        );
    }
    out.push_str("}\n");
    out
}

/// Lowers every coordinate of a subset graph on `[n + t]` by one, giving the
/// corresponding multiset graph on `[n]`.
pub fn shift_graph_down(g: &TransitionGraph) -> Result<TransitionGraph> {
    if g.kind != Kind::Subset || g.n as usize <= g.t {
        return Err(Error::InvalidParameters("shift_graph_down needs a subset graph with n > t".into()));
    }
    let edges = g
        .edges
        .iter()
        .map(|e| FormRep {
            head: e.head.iter().map(|&f| f - 1).collect(),
            distinguished: e.distinguished - 1,
        })
        .collect();
    TransitionGraph::from_edges(g.n - g.t as u32, g.t, Kind::Multiset, edges)
}

/// Out-degree minus in-degree per vertex, for diagnostics.
pub fn degree_balance(g: &TransitionGraph) -> BTreeMap<Vec<u32>, i64> {
    let mut m: BTreeMap<Vec<u32>, i64> = g.vertices.iter().map(|v| (v.clone(), 0)).collect();
    for e in &g.edges {
        *m.get_mut(e.source()).unwrap() += 1;
        *m.get_mut(e.target()).unwrap() -= 1;
    }
    m
}
