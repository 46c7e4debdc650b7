use super::Graph;

/// Outcome of the 4-cycle test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C4Check {
    pub free: bool,
    /// `[x, a, y, b]`: `a` and `b` are both common neighbors of `x` and `y`.
    pub witness: Option<[usize; 4]>,
}

/// A graph contains a (not necessarily induced) 4-cycle iff some pair of
/// vertices has two common neighbors. Runs in `O(sum deg^2)` and reports the
/// first such pair in vertex order.
pub fn is_c4_free(g: &Graph) -> C4Check {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let mut via = vec![NONE; n];
    let mut touched = Vec::new();
    for x in 0..n {
        for &a in g.neighbors(x) {
            for &y in g.neighbors(a) {
                if y <= x {
                    continue;
                }
                if via[y] != NONE {
                    return C4Check {
                        free: false,
                        witness: Some([x, via[y], y, a]),
                    };
                }
                via[y] = a;
                touched.push(y);
            }
        }
        for y in touched.drain(..) {
            via[y] = NONE;
        }
    }
    C4Check {
        free: true,
        witness: None,
    }
}
