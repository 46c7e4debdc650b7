//! Isomorph-free generation of small connected C4-free graphs.
//!
//! Graphs grow one vertex at a time. A new vertex may only be joined to a
//! set `S` whose neighborhoods are pairwise disjoint, which is exactly the
//! condition for staying C4-free. A child is kept only when the new vertex
//! is equivalent to the child's canonical deletion vertex (the non-cut
//! vertex with the largest canonical label), so each class has one parent
//! class; duplicates from the same parent are removed by canonical code.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{edge_connectivity, Graph};

/// Largest order accepted by [`generate`].
pub const MAX_ORDER: usize = 11;

/// Largest order [`canonical_code`] handles.
pub const CANON_MAX_N: usize = 16;

/// ex(n; C4) for n = 0..=11: the most edges of a C4-free graph on n vertices.
const EX_C4: [usize; 12] = [0, 0, 1, 3, 4, 6, 7, 9, 11, 13, 16, 18];

pub fn c4_extremal_number(n: usize) -> Option<usize> {
    EX_C4.get(n).copied()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("invalid generation spec: {0}")]
    InvalidSpec(String),
    #[error("budget exceeded after {nodes} nodes in {elapsed:?}")]
    BudgetExceeded { nodes: u64, elapsed: Duration },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub n_max: usize,
    pub min_degree: usize,
    pub min_lambda: usize,
    /// Worker threads; 0 uses the global rayon pool.
    pub workers: usize,
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl GenSpec {
    pub fn new(n_max: usize) -> Self {
        GenSpec {
            n_max,
            min_degree: 0,
            min_lambda: 0,
            workers: 0,
            max_nodes: None,
            time_limit: None,
        }
    }

    /// Edge-count window `(⌈δ n / 2⌉, ex(n; C4))` implied at order `n`.
    pub fn edge_bounds(&self, n: usize) -> (usize, usize) {
        let delta = self.min_degree.max(self.min_lambda);
        ((delta * n).div_ceil(2), c4_extremal_number(n).unwrap_or(usize::MAX))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenSummary {
    pub classes: usize,
    /// Emitted classes per order.
    pub by_n: BTreeMap<usize, usize>,
    #[serde(skip)]
    pub nodes: u64,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// Canonical code of a graph: order plus upper-triangle bits in canonical
/// labeling. Equal codes iff isomorphic graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    pub n: usize,
    pub bits: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Small {
    n: usize,
    adj: [u16; CANON_MAX_N],
}

fn bits_of(mut m: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

impl Small {
    fn from_graph(g: &Graph) -> Small {
        assert!(g.n() <= CANON_MAX_N, "canonical form supports at most {CANON_MAX_N} vertices");
        let mut adj = [0u16; CANON_MAX_N];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Small { n: g.n(), adj }
    }

    fn to_graph(self) -> Graph {
        let mut g = Graph::new(self.n);
        for v in 0..self.n {
            for w in bits_of(self.adj[v]).filter(|&w| w > v) {
                g.add_edge(v, w).expect("valid edge");
            }
        }
        g
    }

    fn edges(&self) -> usize {
        self.adj[..self.n].iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    fn code_under(&self, perm: &[usize]) -> u128 {
        let mut code = 0u128;
        for j in 1..self.n {
            for i in 0..j {
                code = (code << 1) | (self.adj[perm[i]] >> perm[j] & 1) as u128;
            }
        }
        code
    }

    fn from_code(code: CanonicalCode) -> Small {
        let n = code.n;
        let total = n * n.saturating_sub(1) / 2;
        let mut adj = [0u16; CANON_MAX_N];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if code.bits >> (total - 1 - k) & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Small { n, adj }
    }

    fn without(&self, v: usize) -> Small {
        let mut adj = [0u16; CANON_MAX_N];
        let low = (1u16 << v) - 1;
        for (k, w) in (0..self.n).filter(|&w| w != v).enumerate() {
            let a = self.adj[w];
            adj[k] = (a & low) | ((a >> 1) & !low);
        }
        Small { n: self.n - 1, adj }
    }

    fn connected_without(&self, v: usize) -> bool {
        let all: u16 = (((1u32 << self.n) - 1) as u16) & !(1 << v);
        if all == 0 {
            return true;
        }
        let mut seen = 1u16 << all.trailing_zeros();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for w in bits_of(frontier) {
                next |= self.adj[w];
            }
            next &= all & !seen;
            seen |= next;
            frontier = next;
        }
        seen == all
    }

    fn min_degree(&self) -> usize {
        self.adj[..self.n].iter().map(|a| a.count_ones() as usize).min().unwrap_or(0)
    }
}

/// Splits cells by neighbor counts into earlier cells until the ordered
/// partition is equitable. Fragments are ordered by count.
fn refine(g: &Small, cells: &mut Vec<u16>) {
    'restart: loop {
        for si in 0..cells.len() {
            let splitter = cells[si];
            for ci in 0..cells.len() {
                let cell = cells[ci];
                if cell.count_ones() == 1 {
                    continue;
                }
                let mut groups: BTreeMap<u32, u16> = BTreeMap::new();
                for v in bits_of(cell) {
                    *groups.entry((g.adj[v] & splitter).count_ones()).or_default() |= 1 << v;
                }
                if groups.len() > 1 {
                    cells.splice(ci..=ci, groups.into_values());
                    continue 'restart;
                }
            }
        }
        return;
    }
}

fn search(g: &Small, mut cells: Vec<u16>, best: &mut Option<(u128, Vec<usize>)>) {
    refine(g, &mut cells);
    if cells.len() == g.n {
        let perm: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = g.code_under(&perm);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, perm));
        }
        return;
    }
    let target = cells.iter().position(|c| c.count_ones() > 1).expect("not discrete");
    let cell = cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for v in bits_of(cell) {
        // Swapping twins is an automorphism fixing the partition, so their
        // subtrees yield the same leaves.
        let twin = |u: usize| g.adj[u] & !(1 << v) == g.adj[v] & !(1 << u);
        if tried.iter().any(|&u| twin(u)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        next.splice(target..=target, [1u16 << v, cell & !(1 << v)]);
        search(g, next, best);
    }
}

/// Canonical code and a canonical labeling (`perm[i]` is the vertex placed
/// at position `i`).
fn canonical(g: &Small) -> (CanonicalCode, Vec<usize>) {
    if g.n == 0 {
        return (CanonicalCode { n: 0, bits: 0 }, Vec::new());
    }
    let mut best = None;
    let all = ((1u32 << g.n) - 1) as u16;
    search(g, vec![all], &mut best);
    let (bits, perm) = best.expect("at least one leaf");
    (CanonicalCode { n: g.n, bits }, perm)
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    canonical(&Small::from_graph(g)).0
}

/// The graph in canonical labeling.
pub fn canonical_graph(g: &Graph) -> Graph {
    Small::from_code(canonical_code(g)).to_graph()
}

pub fn graph_from_code(code: CanonicalCode) -> Graph {
    Small::from_code(code).to_graph()
}

struct Budget {
    nodes: AtomicU64,
    stop: AtomicBool,
    start: Instant,
    max_nodes: Option<u64>,
    time_limit: Option<Duration>,
}

impl Budget {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over = self.max_nodes.is_some_and(|m| n > m)
            || (n.is_multiple_of(1024) && self.time_limit.is_some_and(|t| self.start.elapsed() > t));
        if over {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

/// Children of a canonical parent, as canonical codes, deduplicated.
fn children(parent: CanonicalCode, spec: &GenSpec, delta: usize, budget: &Budget) -> Vec<CanonicalCode> {
    let p = Small::from_code(parent);
    let n = p.n;
    let slack = spec.n_max - (n + 1);
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, u16, u16)> = vec![(0, 0, 0)];
    while let Some((start, set, covered)) = stack.pop() {
        for s in start..n {
            if p.adj[s] & covered != 0 {
                continue;
            }
            let set = set | 1 << s;
            let covered = covered | p.adj[s];
            stack.push((s + 1, set, covered));
            if !budget.tick() {
                return Vec::new();
            }
            let mut child = p;
            child.n = n + 1;
            child.adj[n] = set;
            for v in bits_of(set) {
                child.adj[v] |= 1 << n;
            }
            if child.adj[..=n].iter().any(|a| a.count_ones() as usize + slack < delta) {
                continue;
            }
            let (code, perm) = canonical(&child);
            let w = (0..=n)
                .rev()
                .map(|i| perm[i])
                .find(|&w| child.connected_without(w))
                .expect("a connected graph has a non-cut vertex");
            if w == n || canonical(&child.without(w)).0 == parent {
                out.insert(code);
            }
        }
    }
    out.into_iter().collect()
}

fn lambda_of(g: &Small) -> usize {
    if g.n < 2 {
        0
    } else {
        edge_connectivity(&g.to_graph()).expect("n >= 2").value
    }
}

/// Generates every connected C4-free graph of order at most `n_max` meeting
/// the degree and edge-connectivity thresholds, one per isomorphism class,
/// in canonical labeling. Graphs reach `sink` ordered by order, then code.
pub fn generate(spec: &GenSpec, mut sink: impl FnMut(&Graph)) -> Result<GenSummary, EnumError> {
    if spec.n_max == 0 || spec.n_max > MAX_ORDER {
        return Err(EnumError::InvalidSpec(format!("n_max must be in 1..={MAX_ORDER}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| EnumError::InvalidSpec(e.to_string()))?;
    let budget = Budget {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        start: Instant::now(),
        max_nodes: spec.max_nodes,
        time_limit: spec.time_limit,
    };
    let delta = spec.min_degree.max(spec.min_lambda);
    let mut level = vec![CanonicalCode { n: 1, bits: 0 }];
    let mut by_n = BTreeMap::new();
    let mut classes = 0;
    for n in 1..=spec.n_max {
        if n > 1 {
            let per_parent: Vec<Vec<CanonicalCode>> =
                pool.install(|| level.par_iter().map(|&p| children(p, spec, delta, &budget)).collect());
            if budget.stop.load(Ordering::Relaxed) {
                return Err(EnumError::BudgetExceeded {
                    nodes: budget.nodes.load(Ordering::Relaxed),
                    elapsed: budget.start.elapsed(),
                });
            }
            let total: usize = per_parent.iter().map(Vec::len).sum();
            level = per_parent.into_iter().flatten().collect();
            level.sort_unstable();
            level.dedup();
            debug_assert_eq!(level.len(), total, "a class was generated from two parents");
        }
        let (lo, hi) = spec.edge_bounds(n);
        let emitted: Vec<Small> = pool.install(|| {
            level
                .par_iter()
                .map(|&c| Small::from_code(c))
                .filter(|g| {
                    (lo..=hi).contains(&g.edges())
                        && g.min_degree() >= spec.min_degree
                        && lambda_of(g) >= spec.min_lambda
                })
                .collect()
        });
        for g in &emitted {
            sink(&g.to_graph());
        }
        by_n.insert(n, emitted.len());
        classes += emitted.len();
    }
    Ok(GenSummary {
        classes,
        by_n,
        nodes: budget.nodes.load(Ordering::Relaxed),
        elapsed: budget.start.elapsed(),
    })
}
