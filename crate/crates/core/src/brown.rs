//! The Brown (Erdős–Rényi polarity) graph B(q): points of PG(2, q), with
//! `[x] ~ [y]` iff `x · y^T = 0`, and checks of its structural properties.

use std::fmt;

use thiserror::Error;

use crate::gf::{make_field_of_order, prime_power, FieldSpec};
use crate::graph::{is_c4_free, Graph};
use crate::projective::{enumerate_points, is_quadric, ProjPoint};

/// Largest q accepted by [`build_brown`].
pub const DEFAULT_MAX_Q: u32 = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrownError {
    #[error("q = {0} is not an odd prime power in the supported range 3..={1}")]
    UnsupportedQ(u32, u32),
}

#[derive(Debug, Clone)]
pub struct BrownGraph {
    pub graph: Graph,
    pub q: u32,
    pub field: FieldSpec,
    /// `point_of[v]` is the projective point of vertex `v`.
    pub point_of: Vec<ProjPoint>,
    /// Quadric vertices, sorted.
    pub quadric: Vec<usize>,
    /// Non-quadric vertices, sorted.
    pub non_quadric: Vec<usize>,
}

pub fn build_brown(q: u32) -> Result<BrownGraph, BrownError> {
    build_brown_with_limit(q, DEFAULT_MAX_Q)
}

pub fn build_brown_with_limit(q: u32, max_q: u32) -> Result<BrownGraph, BrownError> {
    let unsupported = BrownError::UnsupportedQ(q, max_q);
    if q < 3 || q > max_q || q.is_multiple_of(2) || prime_power(q as u64).is_none() {
        return Err(unsupported);
    }
    let field = make_field_of_order(q as u64).map_err(|_| unsupported)?;
    let points = enumerate_points(&field);
    let n = points.len();

    // Dot products through index tables; q is small.
    let qs = q as usize;
    let elems: Vec<_> = field.elements().collect();
    let mut add = vec![0u32; qs * qs];
    let mut mul = vec![0u32; qs * qs];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            add[i * qs + j] = field.index_of(&field.add(a, b));
            mul[i * qs + j] = field.index_of(&field.mul(a, b));
        }
    }
    let keys: Vec<[u32; 3]> = points.iter().map(|p| p.key(&field)).collect();
    let dot_is_zero = |x: &[u32; 3], y: &[u32; 3]| {
        let mut acc = 0usize;
        for k in 0..3 {
            let prod = mul[x[k] as usize * qs + y[k] as usize] as usize;
            acc = add[acc * qs + prod] as usize;
        }
        acc == 0
    };

    let mut graph = Graph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if dot_is_zero(&keys[i], &keys[j]) {
                graph.add_edge(i, j).expect("valid edge");
            }
        }
    }
    let (quadric, non_quadric): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&v| is_quadric(&field, &points[v]));
    for &w in &quadric {
        graph.roles_mut().add("W", w);
    }
    Ok(BrownGraph {
        graph,
        q,
        field,
        point_of: points,
        quadric,
        non_quadric,
    })
}

/// One verified property with an optional counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<Vec<usize>>,
}

impl fmt::Display for PropertyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} ({}) {}: {}", self.id, self.description, self.detail)?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrownCertificate {
    pub q: u32,
    pub checks: Vec<PropertyCheck>,
}

impl BrownCertificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

pub fn verify_brown(b: &BrownGraph) -> BrownCertificate {
    verify_polarity_properties(&b.graph, &b.quadric, b.q)
}

fn pass(id: &'static str, description: &'static str, detail: String) -> PropertyCheck {
    PropertyCheck {
        id,
        description,
        passed: true,
        detail,
        witness: None,
    }
}

fn fail(
    id: &'static str,
    description: &'static str,
    detail: String,
    witness: Vec<usize>,
) -> PropertyCheck {
    PropertyCheck {
        id,
        description,
        passed: false,
        detail,
        witness: Some(witness),
    }
}

/// Checks all seven B(q) properties of `g`, given its quadric set `w`.
/// Every check is exhaustive.
pub fn verify_polarity_properties(g: &Graph, w: &[usize], q: u32) -> BrownCertificate {
    let q = q as usize;
    let n = g.n();
    let mut in_w = vec![false; n];
    for &v in w {
        if v < n {
            in_w[v] = true;
        }
    }
    let mut checks = Vec::with_capacity(7);

    // (i) order, |W| and degrees.
    const D1: &str = "order q^2+q+1, |W| = q+1, degree q on W and q+1 on V";
    let bad_degree = (0..n).find(|&v| g.degree(v) != if in_w[v] { q } else { q + 1 });
    checks.push(if n != q * q + q + 1 {
        fail("i", D1, format!("order {n}, expected {}", q * q + q + 1), vec![])
    } else if w.len() != q + 1 {
        fail("i", D1, format!("|W| = {}, expected {}", w.len(), q + 1), w.to_vec())
    } else if let Some(v) = bad_degree {
        fail("i", D1, format!("vertex {v} has degree {}", g.degree(v)), vec![v])
    } else {
        pass("i", D1, format!("n = {n}, |W| = {}, |V| = {}", w.len(), n - w.len()))
    });

    // (ii) W independent.
    const D2: &str = "W is an independent set";
    let w_edge = w
        .iter()
        .flat_map(|&x| g.neighbors(x).iter().map(move |&y| (x, y)))
        .find(|&(x, y)| x < y && in_w[y]);
    checks.push(match w_edge {
        Some((x, y)) => fail("ii", D2, format!("edge {x}-{y} inside W"), vec![x, y]),
        None => pass("ii", D2, format!("{} quadric vertices, no edges among them", w.len())),
    });

    // (iii) no quadric vertex on a triangle.
    const D3: &str = "no quadric vertex lies on a triangle";
    let triangle = w.iter().find_map(|&x| {
        let nb = g.neighbors(x);
        nb.iter().enumerate().find_map(|(i, &a)| {
            nb[i + 1..]
                .iter()
                .find(|&&b| g.has_edge(a, b))
                .map(|&b| vec![x, a, b])
        })
    });
    checks.push(match triangle {
        Some(t) => fail("iii", D3, "triangle through a quadric vertex".into(), t),
        None => pass("iii", D3, "checked every neighbor pair of every quadric vertex".into()),
    });

    // (iv) nonadjacent pairs have exactly one common neighbor;
    // (v) pairs inside V have exactly one common neighbor.
    const D4: &str = "every two nonadjacent vertices have exactly one common neighbor";
    const D5: &str = "every two vertices of V have exactly one common neighbor";
    let mut bad_nonadjacent = None;
    let mut bad_v_pair = None;
    let mut nonadjacent_pairs = 0usize;
    let mut v_pairs = 0usize;
    for x in 0..n {
        for y in (x + 1)..n {
            let adjacent = g.has_edge(x, y);
            let both_v = !in_w[x] && !in_w[y];
            if adjacent && !both_v {
                continue;
            }
            let common = g.common_neighbors(x, y).len();
            if !adjacent {
                nonadjacent_pairs += 1;
                if common != 1 && bad_nonadjacent.is_none() {
                    bad_nonadjacent = Some((x, y, common));
                }
            }
            if both_v {
                v_pairs += 1;
                if common != 1 && bad_v_pair.is_none() {
                    bad_v_pair = Some((x, y, common));
                }
            }
        }
    }
    checks.push(match bad_nonadjacent {
        Some((x, y, c)) => fail("iv", D4, format!("{x},{y} have {c} common neighbors"), vec![x, y]),
        None => pass("iv", D4, format!("{nonadjacent_pairs} nonadjacent pairs")),
    });
    checks.push(match bad_v_pair {
        Some((x, y, c)) => fail("v", D5, format!("{x},{y} have {c} common neighbors"), vec![x, y]),
        None => pass("v", D5, format!("{v_pairs} pairs inside V")),
    });

    // (vi) every V vertex sees 0 or 2 quadric vertices.
    const D6: &str = "every vertex of V has exactly two or zero neighbors in W";
    let bad = (0..n).filter(|&v| !in_w[v]).find_map(|v| {
        let k = g.neighbors(v).iter().filter(|&&u| in_w[u]).count();
        (k != 0 && k != 2).then_some((v, k))
    });
    checks.push(match bad {
        Some((v, k)) => fail("vi", D6, format!("vertex {v} has {k} quadric neighbors"), vec![v]),
        None => pass("vi", D6, "all non-quadric vertices checked".into()),
    });

    // (vii) C4-free.
    const D7: &str = "no 4-cycle";
    let c4 = is_c4_free(g);
    checks.push(match c4.witness {
        Some(wit) => fail("vii", D7, "two vertices with two common neighbors".into(), wit.to_vec()),
        None => pass("vii", D7, "every pair has at most one common neighbor".into()),
    });

    BrownCertificate { q: q as u32, checks }
}
