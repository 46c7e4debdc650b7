//! Global minimum edge cut (Stoer–Wagner).

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::connectivity::edge_connectivity_by_flow;
use super::{Graph, GraphError};

/// Graphs up to this order get a second, flow-based computation of λ.
pub const FLOW_CROSS_CHECK_MAX_N: usize = 64;

/// A minimum edge cut: `side` is one shore, `edges` the crossing edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCut {
    pub value: usize,
    pub side: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Stoer–Wagner on a weighted multigraph given as `(u, v, weight)` triples.
/// Returns the cut value and one shore (sorted). Ties resolve toward lower
/// vertex IDs so the reported shore is deterministic.
pub fn stoer_wagner_weighted(n: usize, edges: &[(usize, usize, u64)]) -> (u64, Vec<usize>) {
    assert!(n >= 2, "minimum cut needs two vertices");
    let mut adj: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); n];
    for &(u, v, w) in edges {
        if u != v && w > 0 {
            *adj[u].entry(v).or_default() += w;
            *adj[v].entry(u).or_default() += w;
        }
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = (u64::MAX, Vec::new());

    let mut key = vec![0u64; n];
    let mut added = vec![false; n];
    while active.len() > 1 {
        for &v in &active {
            key[v] = 0;
            added[v] = false;
        }
        let mut heap: BinaryHeap<(u64, Reverse<usize>)> =
            active.iter().map(|&v| (0, Reverse(v))).collect();
        let (mut prev, mut last) = (usize::MAX, usize::MAX);
        let mut count = 0;
        while count < active.len() {
            let (k, Reverse(v)) = heap.pop().expect("every active vertex is queued");
            if added[v] || k != key[v] {
                continue;
            }
            added[v] = true;
            count += 1;
            prev = last;
            last = v;
            for (&w, &wt) in &adj[v] {
                if !added[w] {
                    key[w] += wt;
                    heap.push((key[w], Reverse(w)));
                }
            }
        }
        let (s, t) = (prev, last);
        if key[t] < best.0 {
            let mut side = members[t].clone();
            side.sort_unstable();
            best = (key[t], side);
        }
        // Contract t into s.
        let t_adj = std::mem::take(&mut adj[t]);
        for (w, wt) in t_adj {
            if w == s {
                adj[s].remove(&t);
                continue;
            }
            adj[w].remove(&t);
            *adj[w].entry(s).or_default() += wt;
            *adj[s].entry(w).or_default() += wt;
        }
        let moved = std::mem::take(&mut members[t]);
        members[s].extend(moved);
        active.retain(|&v| v != t);
    }
    best
}

/// Edge-connectivity λ with a minimum cut as certificate. For `n` up to
/// [`FLOW_CROSS_CHECK_MAX_N`] the value is also recomputed from `n - 1`
/// max-flows out of vertex 0 and the two must agree.
pub fn edge_connectivity(g: &Graph) -> Result<EdgeCut, GraphError> {
    if g.n() < 2 {
        return Err(GraphError::TooSmall);
    }
    let weighted: Vec<(usize, usize, u64)> = g.edges().map(|(u, v)| (u, v, 1)).collect();
    let (value, side) = stoer_wagner_weighted(g.n(), &weighted);
    let mut in_side = vec![false; g.n()];
    for &v in &side {
        in_side[v] = true;
    }
    let edges: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| in_side[u] != in_side[v]).collect();
    let value = value as usize;
    if edges.len() != value {
        return Err(GraphError::CrossCheck(format!(
            "cut value {value} but {} crossing edges",
            edges.len()
        )));
    }
    if g.n() <= FLOW_CROSS_CHECK_MAX_N {
        let by_flow = edge_connectivity_by_flow(g)?;
        if by_flow != value {
            return Err(GraphError::CrossCheck(format!(
                "Stoer-Wagner gives {value}, max-flow gives {by_flow}"
            )));
        }
    }
    Ok(EdgeCut { value, side, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs::is_connected;
    use rand::{Rng, SeedableRng};

    /// Minimum over every bipartition; vertex `n - 1` stays on the zero side.
    fn min_cut_brute(g: &Graph) -> usize {
        let n = g.n();
        (1u32..(1 << (n - 1)))
            .map(|mask| {
                g.edges()
                    .filter(|&(u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
                    .count()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(edge_connectivity(&Graph::cycle(5)).unwrap().value, 2);
        let pet = edge_connectivity(&Graph::petersen()).unwrap();
        assert_eq!(pet.value, 3);
        assert_eq!(pet.edges.len(), 3);
        assert_eq!(edge_connectivity(&Graph::new(1)), Err(GraphError::TooSmall));
        let mut split = Graph::complete(3);
        split.add_vertices(2);
        assert_eq!(edge_connectivity(&split).unwrap().value, 0);
    }

    #[test]
    fn matches_bipartition_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..200 {
            let n = rng.gen_range(2..=11);
            let p = rng.gen_range(0.2..0.9);
            let mut g = Graph::new(n);
            for v in 0..n {
                for u in 0..v {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let cut = edge_connectivity(&g).unwrap();
            assert_eq!(cut.value, min_cut_brute(&g));
            if is_connected(&g) {
                assert!(cut.value <= g.min_degree());
            }
        }
    }

    #[test]
    fn weighted_parallel_edges() {
        let (value, side) = stoer_wagner_weighted(3, &[(0, 1, 2), (0, 1, 2), (1, 2, 3)]);
        assert_eq!(value, 3);
        assert_eq!(side, vec![2]);
    }
}
