//! Independent sets of the square graph: vertices pairwise at distance ≥ 3.

use crate::graph::Graph;

/// Graphs up to this order are searched exhaustively.
pub const EXACT_MAX_N: usize = 400;

struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

/// `ball[v]`: vertices within distance two of `v`, including `v`.
fn balls(g: &Graph) -> Vec<Bits> {
    (0..g.n())
        .map(|v| {
            let mut b = Bits::new(g.n());
            b.set(v);
            for &w in g.neighbors(v) {
                b.set(w);
                for &x in g.neighbors(w) {
                    b.set(x);
                }
            }
            b
        })
        .collect()
}

fn greedy(order: &[usize], ball: &[Bits], s: usize, start: usize) -> Option<Vec<usize>> {
    let mut picked: Vec<usize> = Vec::with_capacity(s);
    for &v in order[start..].iter().chain(&order[..start]) {
        if picked.iter().all(|&p| !ball[p].get(v)) {
            picked.push(v);
            if picked.len() == s {
                return Some(picked);
            }
        }
    }
    None
}

fn exact(order: &[usize], ball: &[Bits], s: usize, from: usize, picked: &mut Vec<usize>) -> bool {
    if picked.len() == s {
        return true;
    }
    for i in from..order.len() {
        if order.len() - i < s - picked.len() {
            return false;
        }
        let v = order[i];
        if picked.iter().all(|&p| !ball[p].get(v)) {
            picked.push(v);
            if exact(order, ball, s, i + 1, picked) {
                return true;
            }
            picked.pop();
        }
    }
    false
}

/// `s` vertices pairwise at distance at least 3, as a sorted list.
pub fn find_square_independent(g: &Graph, s: usize) -> Option<Vec<usize>> {
    find_square_independent_ordered(g, s, &[])
}

/// Like [`find_square_independent`], trying the vertices of `preferred`
/// first (in that order) and then the rest by ID.
pub fn find_square_independent_ordered(g: &Graph, s: usize, preferred: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    if s == 0 {
        return Some(Vec::new());
    }
    if s > n {
        return None;
    }
    let mut order: Vec<usize> = preferred.iter().copied().filter(|&v| v < n).collect();
    let mut seen = vec![false; n];
    order.retain(|&v| !std::mem::replace(&mut seen[v], true));
    order.extend((0..n).filter(|&v| !seen[v]));
    let ball = balls(g);

    let found = greedy(&order, &ball, s, 0).or_else(|| {
        if n <= EXACT_MAX_N {
            let mut picked = Vec::with_capacity(s);
            exact(&order, &ball, s, 0, &mut picked).then_some(picked)
        } else {
            (1..n).find_map(|start| greedy(&order, &ball, s, start))
        }
    });
    found.map(|mut v| {
        v.sort_unstable();
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs_distances;
    use rand::{Rng, SeedableRng};

    fn pairwise_far(g: &Graph, set: &[usize]) -> bool {
        set.iter().all(|&x| {
            let d = bfs_distances(g, x);
            set.iter().all(|&y| x == y || d[y] >= 3)
        })
    }

    /// Largest s with a solution, by trying every subset.
    fn max_brute(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                pairwise_far(g, &set)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(find_square_independent(&Graph::path(7), 3), Some(vec![0, 3, 6]));
        assert_eq!(find_square_independent(&Graph::petersen(), 2), None);
        assert_eq!(find_square_independent(&Graph::petersen(), 1), Some(vec![0]));
        assert_eq!(find_square_independent(&Graph::path(2), 3), None);
    }

    #[test]
    fn exact_matches_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..80 {
            let n = rng.gen_range(1..=11);
            let p = rng.gen_range(0.1..0.5);
            let mut g = Graph::new(n);
            for v in 0..n {
                for u in 0..v {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let best = max_brute(&g);
            let found = find_square_independent(&g, best).unwrap();
            assert!(pairwise_far(&g, &found));
            assert_eq!(find_square_independent(&g, best + 1), None);
        }
    }
}
