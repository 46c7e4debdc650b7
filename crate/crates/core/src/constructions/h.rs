//! H(q): B(q) with one quadric vertex `c` and a perfect matching removed, so
//! that two neighbors `a`, `b` of `c` end up at distance four.

use crate::brown::build_brown;
use crate::graph::{distance, is_c4_free, Graph, Roles};
use crate::projective::ProjPoint;

use super::{violation, ConstructionError};

#[derive(Debug, Clone)]
pub struct HGraph {
    /// Carries the roles `a`, `b`, `a_i`, `b_i`, `c_i` and `W`.
    pub graph: Graph,
    pub q: u32,
    pub a: usize,
    pub b: usize,
    /// `a_set[i]` is `a_i`, for `0 <= i < q`.
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    /// `c_set[i - 1]` is `c_i`, for `1 <= i < q`.
    pub c_set: Vec<usize>,
    /// The removed matching, as `(a_x, b_y)` pairs in H's vertex IDs, ordered
    /// `a_0b_1, a_1b_0, a_2b_2, ...`.
    pub matching: Vec<(usize, usize)>,
    pub removed_c: ProjPoint,
}

fn only<T: Copy>(items: &[T], what: &str) -> Result<T, ConstructionError> {
    match items {
        [x] => Ok(*x),
        _ => Err(violation(format!("expected exactly one {what}, found {}", items.len()))),
    }
}

pub fn build_h(q: u32) -> Result<HGraph, ConstructionError> {
    if q < 7 {
        return Err(ConstructionError::InvalidParameter(format!(
            "H(q) needs q >= 7, got {q}"
        )));
    }
    let brown =
        build_brown(q).map_err(|e| ConstructionError::InvalidParameter(e.to_string()))?;
    let bg = &brown.graph;
    let qs = q as usize;
    let is_quadric = |v: usize| brown.quadric.binary_search(&v).is_ok();

    let c = brown.quadric[0];
    let (a, b) = match bg.neighbors(c) {
        [a, b, ..] => (*a, *b),
        _ => return Err(violation("quadric vertex with fewer than two neighbors")),
    };
    let a_side: Vec<usize> = bg
        .neighbors(a)
        .iter()
        .copied()
        .filter(|&x| x != c && !bg.has_edge(b, x))
        .collect();
    let b_side: Vec<usize> = bg
        .neighbors(b)
        .iter()
        .copied()
        .filter(|&x| x != c && !bg.has_edge(a, x))
        .collect();
    if a_side.len() != qs || b_side.len() != qs {
        return Err(violation(format!(
            "|A| = {}, |B| = {}, expected {q}",
            a_side.len(),
            b_side.len()
        )));
    }
    let a0 = only(&a_side.iter().copied().filter(|&x| is_quadric(x)).collect::<Vec<_>>(), "quadric vertex in A")?;
    let b0 = only(&b_side.iter().copied().filter(|&x| is_quadric(x)).collect::<Vec<_>>(), "quadric vertex in B")?;

    let mut partner = Vec::with_capacity(qs);
    for &x in &a_side {
        let ys: Vec<usize> = b_side.iter().copied().filter(|&y| bg.has_edge(x, y)).collect();
        partner.push((x, only(&ys, "matching partner in B")?));
    }
    let mut seen: Vec<usize> = partner.iter().map(|&(_, y)| y).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != qs {
        return Err(violation("edges between A and B do not form a perfect matching"));
    }
    let partner_of_a0 = partner.iter().find(|&&(x, _)| x == a0).expect("a0 in A").1;
    let partner_of_b0 = partner.iter().find(|&&(_, y)| y == b0).expect("b0 in B").0;
    if partner_of_a0 == b0 {
        return Err(violation("a_0 and b_0 are adjacent"));
    }

    // Parent IDs, indexed by subscript.
    let mut a_ids = vec![a0, partner_of_b0];
    let mut b_ids = vec![b0, partner_of_a0];
    for &(x, y) in &partner {
        if x != a0 && x != partner_of_b0 {
            a_ids.push(x);
            b_ids.push(y);
        }
    }
    let mut c_ids = Vec::with_capacity(qs - 1);
    for i in 1..qs {
        c_ids.push(only(&bg.common_neighbors(a_ids[i], b_ids[i]), "common neighbor of a_i, b_i")?);
    }
    let mut sorted_c = c_ids.clone();
    sorted_c.sort_unstable();
    sorted_c.dedup();
    if sorted_c.len() != c_ids.len() {
        return Err(violation("the c_i are not distinct"));
    }
    if c_ids.iter().any(|&z| z == c || a_side.contains(&z) || b_side.contains(&z)) {
        return Err(violation("some c_i lies in {c} ∪ A ∪ B"));
    }

    let mut parent = bg.clone();
    let parent_matching = [(a_ids[0], b_ids[1]), (a_ids[1], b_ids[0])]
        .into_iter()
        .chain((2..qs).map(|i| (a_ids[i], b_ids[i])))
        .collect::<Vec<_>>();
    for &(x, y) in &parent_matching {
        parent.remove_edge(x, y);
    }
    let (mut graph, map) = parent.remove_vertex(c);
    let to_h = |v: usize| map[v].expect("only c is removed");

    let mut roles = Roles::new();
    roles.set("a", to_h(a));
    roles.set("b", to_h(b));
    for i in 0..qs {
        roles.set(format!("a_{i}"), to_h(a_ids[i]));
        roles.set(format!("b_{i}"), to_h(b_ids[i]));
    }
    for (i, &z) in c_ids.iter().enumerate() {
        roles.set(format!("c_{}", i + 1), to_h(z));
    }
    for &w in brown.quadric.iter().filter(|&&w| w != c) {
        roles.add("W", to_h(w));
    }
    *graph.roles_mut() = roles;

    let h = HGraph {
        a: to_h(a),
        b: to_h(b),
        a_set: a_ids.iter().map(|&v| to_h(v)).collect(),
        b_set: b_ids.iter().map(|&v| to_h(v)).collect(),
        c_set: c_ids.iter().map(|&v| to_h(v)).collect(),
        matching: parent_matching.iter().map(|&(x, y)| (to_h(x), to_h(y))).collect(),
        removed_c: brown.point_of[c].clone(),
        graph,
        q,
    };
    verify_h(&h)?;
    Ok(h)
}

fn verify_h(h: &HGraph) -> Result<(), ConstructionError> {
    let g = &h.graph;
    let q = h.q as usize;
    if g.n() != q * q + q {
        return Err(violation(format!("order {} != q^2 + q", g.n())));
    }
    if let Some(w) = is_c4_free(g).witness {
        return Err(violation(format!("C4 {w:?}")));
    }
    if g.min_degree() != q - 1 {
        return Err(violation(format!("min degree {} != q - 1", g.min_degree())));
    }
    if h.matching.iter().any(|&(x, y)| g.has_edge(x, y)) {
        return Err(violation("a matching edge survived"));
    }
    match distance(g, h.a, h.b) {
        Ok(Some(4)) => Ok(()),
        other => Err(violation(format!("dist(a, b) = {other:?}, expected 4"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge_connectivity, local_vertex_connectivity, vertex_connectivity};

    #[test]
    fn h7_shape() {
        let h = build_h(7).unwrap();
        assert_eq!(h.graph.n(), 56);
        assert_eq!(h.graph.m(), 210);
        assert_eq!(h.matching.len(), 7);
        assert_eq!(h.graph.min_degree(), 6);
        assert_eq!(distance(&h.graph, h.a, h.b).unwrap(), Some(4));
        assert_eq!(h.graph.roles().all("W").len(), 7);
        assert_eq!(h.graph.roles().get("a_3"), Some(h.a_set[3]));
        assert_eq!(h.graph.roles().get("c_6"), Some(h.c_set[5]));
        // Removing c drops a and b to degree q; a_0 and b_0 drop to q - 1.
        assert_eq!(h.graph.degree(h.a), 7);
        assert_eq!(h.graph.degree(h.a_set[0]), 6);
        assert_eq!(h.graph.degree(h.b_set[0]), 6);
        assert!(local_vertex_connectivity(&h.graph, h.a, h.b).unwrap() >= 6);
    }

    #[test]
    fn matching_relabeling() {
        let h = build_h(9).unwrap();
        assert_eq!(h.matching[0], (h.a_set[0], h.b_set[1]));
        assert_eq!(h.matching[1], (h.a_set[1], h.b_set[0]));
        for i in 2..9 {
            assert_eq!(h.matching[i], (h.a_set[i], h.b_set[i]));
        }
        let w = h.graph.roles().all("W");
        assert!(w.contains(&h.a_set[0]) && w.contains(&h.b_set[0]));
        // Each c_i keeps both of its edges to a_i and b_i.
        for i in 1..9 {
            let ci = h.c_set[i - 1];
            assert!(h.graph.has_edge(ci, h.a_set[i]) && h.graph.has_edge(ci, h.b_set[i]));
        }
    }

    #[test]
    fn connectivity_lower_bounds() {
        for q in [7u32, 9, 11] {
            let h = build_h(q).unwrap();
            let kappa = vertex_connectivity(&h.graph).unwrap().value;
            assert!(kappa >= q as usize - 6, "q={q}: kappa={kappa}");
            let lambda = edge_connectivity(&h.graph).unwrap().value;
            assert!(kappa <= lambda && lambda <= h.graph.min_degree());
        }
    }

    #[test]
    fn rejects_small_q() {
        assert!(matches!(build_h(5), Err(ConstructionError::InvalidParameter(_))));
        assert!(matches!(build_h(15), Err(ConstructionError::InvalidParameter(_))));
    }

    #[test]
    fn deterministic() {
        let (x, y) = (build_h(7).unwrap(), build_h(7).unwrap());
        assert_eq!(x.graph, y.graph);
        assert_eq!(x.matching, y.matching);
    }
}
