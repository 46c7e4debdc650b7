//! Chains of copies of H(q), glued either by a bridge edge `b_i a_{i+1}` or
//! by identifying `b_i` with `a_{i+1}`.

use crate::graph::{
    bfs_distances, diameter, edge_connectivity, is_c4_free, is_connected, Graph, Roles,
};

use super::h::{build_h, HGraph};
use super::{violation, ConstructionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    Bridge,
    Identify,
}

#[derive(Debug, Clone)]
pub struct ChainGraph {
    pub graph: Graph,
    pub q: u32,
    pub k: usize,
    pub mode: ChainMode,
    /// Bridge mode: `a_1, b_1, a_2, b_2, ...` (2k vertices). Identify mode:
    /// `a_1`, the k - 1 glued vertices, `b_k` (k + 1 vertices).
    pub junctions: Vec<usize>,
    pub lambda: usize,
    pub diameter: usize,
}

fn check_params(q: u32, k: usize) -> Result<HGraph, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::InvalidParameter("k must be at least 1".into()));
    }
    build_h(q)
}

fn label(graph: &mut Graph, junctions: &[usize]) {
    let mut roles = Roles::new();
    roles.set("a", junctions[0]);
    roles.set("b", *junctions.last().expect("nonempty"));
    for (j, &v) in junctions.iter().enumerate() {
        roles.set(format!("junction_{j}"), v);
    }
    *graph.roles_mut() = roles;
}

pub fn chain_bridge(q: u32, k: usize) -> Result<ChainGraph, ConstructionError> {
    let h = check_params(q, k)?;
    let mut graph = Graph::new(0);
    let mut junctions = Vec::with_capacity(2 * k);
    for _ in 0..k {
        let off = graph.append(&h.graph);
        junctions.extend([h.a + off, h.b + off]);
    }
    let bridges: Vec<(usize, usize)> = (1..k).map(|i| (junctions[2 * i - 1], junctions[2 * i])).collect();
    for &(u, v) in &bridges {
        graph.add_edge(u, v).expect("distinct copies");
    }
    label(&mut graph, &junctions);

    let qs = q as usize;
    let expect = |what: &str, got: usize, want: usize| {
        if got == want {
            Ok(())
        } else {
            Err(violation(format!("{what} = {got}, expected {want}")))
        }
    };
    expect("order", graph.n(), (qs * qs + qs) * k)?;
    expect("min degree", graph.min_degree(), qs - 1)?;
    if let Some(w) = is_c4_free(&graph).witness {
        return Err(violation(format!("C4 {w:?}")));
    }
    let d = diameter(&graph).map_err(|e| violation(e.to_string()))?;
    expect("diameter", d, 5 * k - 1)?;
    let lambda = edge_connectivity(&graph).map_err(|e| violation(e.to_string()))?.value;
    if k >= 2 {
        expect("edge-connectivity", lambda, 1)?;
        for &(u, v) in &bridges {
            let mut cut = graph.clone();
            cut.remove_edge(u, v);
            if is_connected(&cut) {
                return Err(violation(format!("edge {u}-{v} is not a bridge")));
            }
        }
    }
    Ok(ChainGraph {
        graph,
        q,
        k,
        mode: ChainMode::Bridge,
        junctions,
        lambda,
        diameter: d,
    })
}

pub fn chain_identify(q: u32, k: usize) -> Result<ChainGraph, ConstructionError> {
    let h = check_params(q, k)?;
    let nh = h.graph.n();
    let mut graph = Graph::new(nh);
    for (u, v) in h.graph.edges() {
        graph.add_edge(u, v).expect("copy of H");
    }
    let mut junctions = vec![h.a, h.b];
    for _ in 1..k {
        let glue = *junctions.last().expect("nonempty");
        let first = graph.add_vertices(nh - 1);
        let map = |v: usize| match v.cmp(&h.a) {
            std::cmp::Ordering::Equal => glue,
            std::cmp::Ordering::Less => first + v,
            std::cmp::Ordering::Greater => first + v - 1,
        };
        for (u, v) in h.graph.edges() {
            graph.add_edge(map(u), map(v)).expect("copy of H");
        }
        junctions.push(map(h.b));
    }
    label(&mut graph, &junctions);

    let qs = q as usize;
    if graph.n() != (qs * qs + qs - 1) * k + 1 {
        return Err(violation(format!("order {} does not match (q^2+q-1)k+1", graph.n())));
    }
    if let Some(w) = is_c4_free(&graph).witness {
        return Err(violation(format!("C4 {w:?}")));
    }
    let d = diameter(&graph).map_err(|e| violation(e.to_string()))?;
    if d != 4 * k {
        return Err(violation(format!("diameter {d}, expected {}", 4 * k)));
    }
    let lambda = edge_connectivity(&graph).map_err(|e| violation(e.to_string()))?.value;
    if lambda + 6 < qs {
        return Err(violation(format!("edge-connectivity {lambda} < q - 6")));
    }
    for (i, &x) in junctions.iter().enumerate() {
        let dist = bfs_distances(&graph, x);
        for (j, &y) in junctions.iter().enumerate().skip(i + 1) {
            let ok = if j == i + 1 { dist[y] == 4 } else { dist[y] >= 4 };
            if !ok {
                return Err(violation(format!("junctions {i} and {j} at distance {}", dist[y])));
            }
        }
    }
    Ok(ChainGraph {
        graph,
        q,
        k,
        mode: ChainMode::Identify,
        junctions,
        lambda,
        diameter: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn bridge_examples() {
        let c = chain_bridge(7, 2).unwrap();
        assert_eq!((c.graph.n(), c.diameter, c.lambda), (112, 9, 1));
        assert_eq!(c.junctions.len(), 4);
        let c1 = chain_bridge(7, 1).unwrap();
        assert_eq!((c1.graph.n(), c1.diameter), (56, 4));
        assert!(matches!(chain_bridge(7, 0), Err(ConstructionError::InvalidParameter(_))));
    }

    #[test]
    fn bridge_attains_lower_bound_with_equality() {
        for (q, k) in [(7u32, 1usize), (7, 2), (7, 3), (9, 2)] {
            let c = chain_bridge(q, k).unwrap();
            let delta = c.graph.min_degree() as i64;
            let rhs = Ratio::new(5 * c.graph.n() as i64, delta * delta + 3 * delta + 2) - 1;
            assert_eq!(Ratio::from_integer(c.diameter as i64), rhs, "q={q} k={k}");
        }
    }

    #[test]
    fn identify_examples() {
        let c = chain_identify(7, 2).unwrap();
        assert_eq!((c.graph.n(), c.diameter), (111, 8));
        let c = chain_identify(7, 3).unwrap();
        let d = bfs_distances(&c.graph, c.junctions[0]);
        assert_eq!(c.junctions.iter().map(|&j| d[j]).collect::<Vec<_>>(), vec![0, 4, 8, 12]);
        let c = chain_identify(11, 1).unwrap();
        assert_eq!(c.graph.n(), 132);
        assert!(c.lambda >= 5);
    }

    #[test]
    fn identify_formulas_and_amalgam_connectivity() {
        for q in [7u32, 9, 11] {
            let lambda_h = edge_connectivity(&build_h(q).unwrap().graph).unwrap().value;
            for k in 1..=3 {
                let c = chain_identify(q, k).unwrap();
                let (n, d) = (c.graph.n(), c.diameter);
                let qs = q as usize;
                assert_eq!(d * (qs * qs + qs - 1), 4 * (n - 1));
                assert_eq!(c.lambda, lambda_h, "q={q} k={k}");
            }
        }
    }
}
