//! Flow-based connectivity: Menger paths, vertex separators, and a
//! max-flow route to λ used to cross-check the Stoer–Wagner cut.

use super::bfs::is_connected;
use super::flow::FlowNetwork;
use super::{Graph, GraphError};

/// A minimum vertex separator. For complete graphs `value = n - 1` and
/// `separator` is empty (no separator exists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCut {
    pub value: usize,
    pub separator: Vec<usize>,
}

/// λ as the minimum over `t` of the max-flow from vertex 0 to `t`.
pub fn edge_connectivity_by_flow(g: &Graph) -> Result<usize, GraphError> {
    if g.n() < 2 {
        return Err(GraphError::TooSmall);
    }
    let mut best = g.min_degree() as u32;
    for t in 1..g.n() {
        let mut net = FlowNetwork::new(g.n());
        for (u, v) in g.edges() {
            net.add_edge(u, v, 1);
        }
        best = best.min(net.max_flow(0, t, best));
    }
    Ok(best as usize)
}

/// Split-vertex network: `v_in = 2v`, `v_out = 2v + 1`.
fn split_network(g: &Graph, s: usize, t: usize) -> FlowNetwork {
    let big = g.n() as u32;
    let mut net = FlowNetwork::new(2 * g.n());
    for v in 0..g.n() {
        let cap = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
    }
    for (u, w) in g.edges() {
        net.add_arc(2 * u + 1, 2 * w, big);
        net.add_arc(2 * w + 1, 2 * u, big);
    }
    net
}

/// Maximum number of internally disjoint `s`–`t` paths for nonadjacent
/// `s`, `t`, capped at `limit`, together with a separator when the flow
/// stopped below the cap.
fn separator_flow(g: &Graph, s: usize, t: usize, limit: usize) -> (usize, Option<Vec<usize>>) {
    let mut net = split_network(g, s, t);
    let flow = net.max_flow(2 * s + 1, 2 * t, limit as u32) as usize;
    if flow >= limit {
        return (flow, None);
    }
    let reach = net.residual_reachable(2 * s + 1);
    let sep: Vec<usize> = (0..g.n())
        .filter(|&v| v != s && v != t && reach[2 * v] && !reach[2 * v + 1])
        .collect();
    debug_assert_eq!(sep.len(), flow);
    (flow, Some(sep))
}

/// Minimum `s`–`t` vertex separator for nonadjacent `s`, `t` (Menger).
pub fn local_vertex_separator(g: &Graph, s: usize, t: usize) -> Result<Vec<usize>, GraphError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(GraphError::SameVertex(s));
    }
    if g.has_edge(s, t) {
        return Err(GraphError::MalformedInput(format!(
            "{s} and {t} are adjacent; no vertex separator exists"
        )));
    }
    let (_, sep) = separator_flow(g, s, t, usize::MAX);
    Ok(sep.expect("uncapped flow always yields a separator"))
}

/// Maximum number of internally vertex-disjoint `s`–`t` paths. For adjacent
/// `s`, `t` this is one more than the value in `G - st`.
pub fn local_vertex_connectivity(g: &Graph, s: usize, t: usize) -> Result<usize, GraphError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(GraphError::SameVertex(s));
    }
    if g.has_edge(s, t) {
        let mut h = g.clone();
        h.remove_edge(s, t);
        return Ok(separator_flow(&h, s, t, usize::MAX).0 + 1);
    }
    Ok(separator_flow(g, s, t, usize::MAX).0)
}

/// Vertex-connectivity κ with a minimum separator.
///
/// With `v` a vertex of minimum degree, every minimum separator either
/// misses `v` (then it separates `v` from some non-neighbor) or contains `v`
/// (then it separates two nonadjacent neighbors of `v`). Only those pairs are
/// tried, each flow capped at the best value found so far.
pub fn vertex_connectivity(g: &Graph) -> Result<VertexCut, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::TooSmall);
    }
    if !is_connected(g) {
        return Ok(VertexCut {
            value: 0,
            separator: Vec::new(),
        });
    }
    if g.m() == n * (n - 1) / 2 {
        return Ok(VertexCut {
            value: n - 1,
            separator: Vec::new(),
        });
    }
    let v = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 2");
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .filter(|&w| w != v && !g.has_edge(v, w))
        .map(|w| (v, w))
        .collect();
    let nb = g.neighbors(v);
    for (i, &x) in nb.iter().enumerate() {
        for &y in &nb[i + 1..] {
            if !g.has_edge(x, y) {
                pairs.push((x, y));
            }
        }
    }
    let mut best = VertexCut {
        value: n - 1,
        separator: Vec::new(),
    };
    for (s, t) in pairs {
        let (flow, sep) = separator_flow(g, s, t, best.value);
        // A separator is only returned when the flow stayed below the cap.
        if let Some(sep) = sep {
            best = VertexCut {
                value: flow,
                separator: sep,
            };
        }
        if best.value == 0 {
            break;
        }
    }
    Ok(best)
}
