use std::collections::VecDeque;

use rayon::prelude::*;

use super::{Graph, GraphError};

pub const UNREACHABLE: usize = usize::MAX;

/// Distance classes `V_0, V_1, ...` around a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerProfile {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
    /// `false` when some vertex is not reachable from the root; the layers
    /// then cover only the root's component.
    pub connected: bool,
}

impl LayerProfile {
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn eccentricity(&self) -> usize {
        self.layers.len() - 1
    }
}

pub fn bfs_distances(g: &Graph, root: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn bfs_layers(g: &Graph, root: usize) -> Result<LayerProfile, GraphError> {
    g.check_vertex(root)?;
    let dist = bfs_distances(g, root);
    let ecc = dist
        .iter()
        .filter(|&&d| d != UNREACHABLE)
        .max()
        .copied()
        .unwrap_or(0);
    let mut layers = vec![Vec::new(); ecc + 1];
    for (v, &d) in dist.iter().enumerate() {
        if d != UNREACHABLE {
            layers[d].push(v);
        }
    }
    Ok(LayerProfile {
        root,
        layers,
        connected: dist.iter().all(|&d| d != UNREACHABLE),
    })
}

pub fn distance(g: &Graph, u: usize, v: usize) -> Result<Option<usize>, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let d = bfs_distances(g, u)[v];
    Ok((d != UNREACHABLE).then_some(d))
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || bfs_distances(g, 0).iter().all(|&d| d != UNREACHABLE)
}

/// Eccentricity of every vertex (all-sources BFS, parallel over sources).
pub fn eccentricities(g: &Graph) -> Result<Vec<usize>, GraphError> {
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    Ok((0..g.n())
        .into_par_iter()
        .map(|v| bfs_distances(g, v).into_iter().max().unwrap_or(0))
        .collect())
}

pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    Ok(eccentricities(g)?.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn floyd_warshall_diameter(g: &Graph) -> Option<usize> {
        let n = g.n();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for v in 0..n {
            d[v][v] = 0;
            for &w in g.neighbors(v) {
                d[v][w] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        let max = d.iter().flatten().copied().max().unwrap_or(0);
        (max < inf).then_some(max)
    }

    #[test]
    fn layer_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(bfs_layers(&c5, 3).unwrap().sizes(), vec![1, 2, 2]);
        assert_eq!(bfs_layers(&Graph::new(1), 0).unwrap().sizes(), vec![1]);
        assert_eq!(
            bfs_layers(&c5, 5).unwrap_err(),
            GraphError::InvalidVertex(5)
        );
        let mut split = Graph::path(3);
        split.add_vertices(1);
        let prof = bfs_layers(&split, 0).unwrap();
        assert!(!prof.connected);
        assert_eq!(prof.sizes().iter().sum::<usize>(), 3);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&Graph::petersen()).unwrap(), 2);
        assert_eq!(diameter(&Graph::path(7)).unwrap(), 6);
        let mut g = Graph::path(3);
        g.add_vertices(1);
        assert_eq!(diameter(&g), Err(GraphError::Disconnected));
    }

    #[test]
    fn diameter_matches_floyd_warshall() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 60 {
            let n = rng.gen_range(2..=32);
            let p = rng.gen_range(0.05..0.5);
            let mut g = Graph::new(n);
            for v in 0..n {
                for u in 0..v {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            match floyd_warshall_diameter(&g) {
                Some(d) => {
                    assert_eq!(diameter(&g).unwrap(), d);
                    checked += 1;
                }
                None => assert_eq!(diameter(&g), Err(GraphError::Disconnected)),
            }
        }
    }
}
