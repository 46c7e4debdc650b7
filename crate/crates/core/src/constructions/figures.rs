//! The two layered families: λ = 3 graphs with `d = 2k + 6`, `n = 5k + 18`,
//! and λ ≥ 4 graphs whose diameter grows by 2 for every 7 added vertices.

use std::sync::OnceLock;

use crate::graph::{bfs_distances, bfs_layers, diameter, edge_connectivity, is_c4_free, Graph, Roles};

use super::chain::{chain_identify, ChainGraph};
use super::gadget::{frozen_gadget, Family};
use super::square::find_square_independent_ordered;
use super::{violation, ConstructionError};

/// Parameters of the cap graph used by [`build_figure1b`].
pub const FIGURE1B_CAP_Q: u32 = 11;
pub const FIGURE1B_CAP_K: usize = 5;

/// BFS layer sizes promised from `u`.
pub fn figure1_profile(k: usize) -> Vec<usize> {
    let mut p = vec![1, 3, 4];
    for _ in 0..k {
        p.extend([2, 3]);
    }
    p.extend([2, 4, 3, 1]);
    p
}

fn need_k(k: usize) -> Result<(), ConstructionError> {
    if k == 0 {
        Err(ConstructionError::InvalidParameter("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// The λ = 3 member with `k` periods; role `u` marks the root of the
/// promised BFS profile.
pub fn build_figure1(k: usize) -> Result<Graph, ConstructionError> {
    need_k(k)?;
    let gadget = frozen_gadget(Family::Fig1)?;
    let inst = gadget.instantiate(k);
    let u = inst.layers[0][0];
    let mut g = inst.graph;
    g.roles_mut().set("u", u);

    if g.n() != 5 * k + 18 {
        return Err(violation(format!("order {} != 5k + 18", g.n())));
    }
    if let Some(w) = is_c4_free(&g).witness {
        return Err(violation(format!("C4 {w:?}")));
    }
    let profile = bfs_layers(&g, u).map_err(|e| violation(e.to_string()))?.sizes();
    if profile != figure1_profile(k) {
        return Err(violation(format!("profile {profile:?}")));
    }
    let lambda = edge_connectivity(&g).map_err(|e| violation(e.to_string()))?.value;
    if lambda != 3 {
        return Err(violation(format!("edge-connectivity {lambda} != 3")));
    }
    let d = diameter(&g).map_err(|e| violation(e.to_string()))?;
    if d != 2 * k + 6 {
        return Err(violation(format!("diameter {d} != 2k + 6")));
    }
    Ok(g)
}

/// The cap graph `G_0 = chain_identify(11, 5)` and its set `I` of six
/// vertices pairwise at distance ≥ 3.
pub fn figure1b_cap() -> Result<&'static (ChainGraph, Vec<usize>), ConstructionError> {
    static CAP: OnceLock<Result<(ChainGraph, Vec<usize>), ConstructionError>> = OnceLock::new();
    CAP.get_or_init(|| {
        let cap = chain_identify(FIGURE1B_CAP_Q, FIGURE1B_CAP_K)?;
        let need = Family::Fig1b.attachments();
        let set = find_square_independent_ordered(&cap.graph, need, &cap.junctions)
            .ok_or_else(|| violation("no independent set of the required size in the cap"))?;
        for &x in &set {
            let dist = bfs_distances(&cap.graph, x);
            if set.iter().any(|&y| y != x && dist[y] < 3) {
                return Err(violation("attachment set is not 3-separated in the cap"));
            }
        }
        Ok((cap, set))
    })
    .as_ref()
    .map_err(Clone::clone)
}

#[derive(Debug, Clone)]
pub struct Figure1b {
    /// Roles `I_0..I_5` (left cap) and `I_6..I_11` (right cap).
    pub graph: Graph,
    pub k: usize,
    /// Combined order of the two caps.
    pub cap_order: usize,
    pub lambda: usize,
    pub diameter: usize,
}

pub fn build_figure1b(k: usize) -> Result<Figure1b, ConstructionError> {
    need_k(k)?;
    let gadget = frozen_gadget(Family::Fig1b)?;
    let (cap, set) = figure1b_cap()?;
    let inst = gadget.instantiate(k);

    let mut g = Graph::new(0);
    let left = g.append(&cap.graph);
    let mid = g.append(&inst.graph);
    let right = g.append(&cap.graph);
    let first = &inst.layers[0];
    let last = inst.layers.last().expect("nonempty");
    let mut roles = Roles::new();
    for (j, (&x, &i)) in gadget.attach.iter().zip(set).enumerate() {
        g.add_edge(left + i, mid + first[x]).expect("distinct parts");
        g.add_edge(right + i, mid + last[x]).expect("distinct parts");
        roles.set(format!("I_{j}"), left + i);
        roles.set(format!("I_{}", j + set.len()), right + i);
    }
    *g.roles_mut() = roles;

    if let Some(w) = is_c4_free(&g).witness {
        return Err(violation(format!("C4 {w:?}")));
    }
    let lambda = edge_connectivity(&g).map_err(|e| violation(e.to_string()))?.value;
    if lambda < 4 {
        return Err(violation(format!("edge-connectivity {lambda} < 4")));
    }
    let d = diameter(&g).map_err(|e| violation(e.to_string()))?;
    let cap_order = 2 * cap.graph.n();
    if 7 * (d + 2) < 2 * (g.n() - cap_order) {
        return Err(violation(format!("diameter {d} below 2(n - n_caps)/7 - 2")));
    }
    Ok(Figure1b {
        graph: g,
        k,
        cap_order,
        lambda,
        diameter: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_examples() {
        let g = build_figure1(1).unwrap();
        assert_eq!((g.n(), diameter(&g).unwrap()), (23, 8));
        assert_eq!(5 * diameter(&g).unwrap(), 2 * g.n() - 6);
        let g = build_figure1(4).unwrap();
        assert_eq!((g.n(), diameter(&g).unwrap()), (38, 14));
        assert!(matches!(build_figure1(0), Err(ConstructionError::InvalidParameter(_))));
    }

    #[test]
    fn cap_uses_the_junctions() {
        let (cap, set) = figure1b_cap().unwrap();
        assert_eq!(cap.graph.n(), 656);
        let mut j = cap.junctions.clone();
        j.sort_unstable();
        assert_eq!(*set, j);
    }

    #[test]
    fn figure1b_growth() {
        let a = build_figure1b(1).unwrap();
        let b = build_figure1b(2).unwrap();
        assert!(a.lambda >= 4);
        assert_eq!(b.graph.n() - a.graph.n(), 7);
        assert_eq!(b.diameter - a.diameter, 2);
        assert_eq!(a.graph.roles().all("I_11").len(), 1);
    }
}
