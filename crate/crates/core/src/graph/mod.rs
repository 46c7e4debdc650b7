//! Simple undirected graphs and the exact algorithms used to certify them.

mod bfs;
mod c4;
pub mod codec;
mod connectivity;
mod cut;
pub(crate) mod flow;

use std::collections::BTreeMap;

use thiserror::Error;

pub use bfs::{
    bfs_distances, bfs_layers, diameter, distance, eccentricities, is_connected, LayerProfile,
};
pub use c4::{is_c4_free, C4Check};
pub use connectivity::{
    edge_connectivity_by_flow, local_vertex_connectivity, local_vertex_separator,
    vertex_connectivity, VertexCut,
};
pub use cut::{edge_connectivity, stoer_wagner_weighted, EdgeCut};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is out of range")]
    InvalidVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("operation needs at least two vertices")]
    TooSmall,
    #[error("source and target are the same vertex {0}")]
    SameVertex(usize),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("graph order {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("independent computations disagree: {0}")]
    CrossCheck(String),
}

/// Named vertex roles (`a`, `b`, `c_3`, `W`, `junction_2`, ...). A role may
/// name several vertices; IDs under one role are kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Roles {
    map: BTreeMap<String, Vec<usize>>,
}

impl Roles {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `role` to exactly `v`, replacing earlier members.
    pub fn set(&mut self, role: impl Into<String>, v: usize) {
        self.map.insert(role.into(), vec![v]);
    }

    /// Adds `v` to the members of `role`.
    pub fn add(&mut self, role: impl Into<String>, v: usize) {
        let members = self.map.entry(role.into()).or_default();
        if let Err(pos) = members.binary_search(&v) {
            members.insert(pos, v);
        }
    }

    /// The lowest-ID member of `role`.
    pub fn get(&self, role: &str) -> Option<usize> {
        self.map.get(role).and_then(|m| m.first().copied())
    }

    pub fn all(&self, role: &str) -> &[usize] {
        self.map.get(role).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.map
            .iter()
            .flat_map(|(r, vs)| vs.iter().map(move |&v| (r.as_str(), v)))
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.values().map(Vec::len).sum()
    }

    /// Rewrites every member through `f`, dropping vertices mapped to `None`.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> Roles {
        let mut out = Roles::new();
        for (role, v) in self.iter() {
            if let Some(w) = f(v) {
                out.add(role, w);
            }
        }
        out
    }

    /// Copies every role with `prefix` prepended to its name.
    pub fn extend_prefixed(&mut self, other: &Roles, prefix: &str, f: impl Fn(usize) -> usize) {
        for (role, v) in other.iter() {
            self.add(format!("{prefix}{role}"), f(v));
        }
    }
}

/// A simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    roles: Roles,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            roles: Roles::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            for u in 0..v {
                g.add_edge(u, v).expect("valid edge");
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n).expect("valid edge");
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).expect("valid edge");
        }
        g
    }

    /// The Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
    pub fn petersen() -> Self {
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| ((i + 1)..5).map(move |j| (i, j)))
            .collect();
        let mut g = Graph::new(pairs.len());
        for (x, &(a, b)) in pairs.iter().enumerate() {
            for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
                if a != c && a != d && b != c && b != d {
                    g.add_edge(x, y).expect("valid edge");
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// Inserts `{u, v}`; returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let Err(pos) = self.adj[u].binary_search(&v) else {
            return Ok(false);
        };
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.edge_count += 1;
        Ok(true)
    }

    /// Deletes `{u, v}`; returns `false` when it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let Ok(pos) = self.adj[u].binary_search(&v) else {
            return false;
        };
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).expect("symmetric adjacency");
        self.adj[v].remove(pos);
        self.edge_count -= 1;
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn roles(&self) -> &Roles {
        &self.roles
    }

    pub fn roles_mut(&mut self) -> &mut Roles {
        &mut self.roles
    }

    pub fn with_roles(mut self, roles: Roles) -> Self {
        self.roles = roles;
        self
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        set.iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| w > v && inside[w]).count())
            .sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Removes `v`; vertices above it shift down by one. Returns the new graph
    /// and the old-to-new ID map.
    pub fn remove_vertex(&self, v: usize) -> (Graph, Vec<Option<usize>>) {
        let map: Vec<Option<usize>> = (0..self.n())
            .map(|w| match w.cmp(&v) {
                std::cmp::Ordering::Less => Some(w),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(w - 1),
            })
            .collect();
        let mut g = Graph::new(self.n() - 1);
        for (a, b) in self.edges() {
            if let (Some(x), Some(y)) = (map[a], map[b]) {
                g.add_edge(x, y).expect("valid edge");
            }
        }
        g.roles = self.roles.remap(|w| map[w]);
        (g, map)
    }

    /// Appends a disjoint copy of `other`; returns the ID offset of the copy.
    /// Roles of `other` are not copied.
    pub fn append(&mut self, other: &Graph) -> usize {
        let offset = self.n();
        self.adj.extend(
            other
                .adj
                .iter()
                .map(|nb| nb.iter().map(|&w| w + offset).collect()),
        );
        self.edge_count += other.edge_count;
        offset
    }

    /// Adds `extra` isolated vertices and returns the first new ID.
    pub fn add_vertices(&mut self, extra: usize) -> usize {
        let first = self.n();
        self.adj.resize(first + extra, Vec::new());
        first
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_bookkeeping() {
        let mut g = Graph::new(4);
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.add_edge(2, 2), Err(GraphError::SelfLoop(2)));
        assert_eq!(g.add_edge(0, 9), Err(GraphError::InvalidVertex(9)));
        g.add_edge(0, 3).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3)]);
        assert!(g.remove_edge(3, 0));
        assert!(!g.remove_edge(3, 0));
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn petersen_shape() {
        let g = Graph::petersen();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn remove_vertex_relabels_roles() {
        let mut g = Graph::path(4);
        g.roles_mut().set("end", 3);
        g.roles_mut().set("gone", 1);
        let (h, map) = g.remove_vertex(1);
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(h.roles().get("end"), Some(2));
        assert_eq!(h.roles().get("gone"), None);
    }

    #[test]
    fn roles_multi_valued() {
        let mut r = Roles::new();
        r.add("W", 5);
        r.add("W", 2);
        r.add("W", 5);
        r.set("a", 7);
        assert_eq!(r.all("W"), &[2, 5]);
        assert_eq!(r.get("W"), Some(2));
        assert_eq!(r.len(), 3);
        let pairs: Vec<_> = r.iter().collect();
        assert_eq!(pairs, vec![("W", 2), ("W", 5), ("a", 7)]);
    }
}
