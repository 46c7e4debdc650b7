//! Periodic layered graphs described by a left cap, a repeated period and a
//! right cap, each a small block of layers with explicit local edges.
//!
//! The patterns actually used are stored in `assets/gadgets.txt`. That file
//! is produced by [`derive_gadget`](super::derive_gadget) and is re-validated
//! the first time it is needed.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use crate::graph::{
    bfs_distances, bfs_layers, diameter, edge_connectivity, is_c4_free, stoer_wagner_weighted,
    Graph,
};

use super::ConstructionError;

/// The frozen gadget asset.
pub const FROZEN_GADGETS: &str = include_str!("../../assets/gadgets.txt");

const ASSET_HEADER: &str = "c4free-gadgets 1";

/// Period counts on which a gadget is validated.
pub(crate) const VALIDATION_KS: [usize; 3] = [1, 2, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Profile `1, 3, 4, (2, 3)^k, 2, 4, 3, 1`, λ = 3.
    Fig1,
    /// Middle chain `3, (4, 3)^k` between two 6-vertex attachment sets, λ ≥ 4.
    Fig1b,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Fig1, Family::Fig1b];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fig1 => "fig1",
            Family::Fig1b => "fig1b",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn lambda(self) -> usize {
        match self {
            Family::Fig1 => 3,
            Family::Fig1b => 4,
        }
    }

    /// Layer sizes of the left cap, the period and the right cap.
    pub fn layer_sizes(self) -> [Vec<usize>; 3] {
        match self {
            Family::Fig1 => [vec![1, 3, 4], vec![2, 3], vec![2, 4, 3, 1]],
            Family::Fig1b => [vec![3], vec![4, 3], vec![]],
        }
    }

    /// Number of outside vertices hanging off each end of the chain.
    pub fn attachments(self) -> usize {
        match self {
            Family::Fig1 => 0,
            Family::Fig1b => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A `(layer, index)` position inside a block.
pub type Slot = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Block {
    pub sizes: Vec<usize>,
    /// Edges between slots of the same or adjacent layers, each stored with
    /// the smaller slot first, sorted.
    pub edges: Vec<(Slot, Slot)>,
}

impl Block {
    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn first_len(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    fn last_len(&self) -> usize {
        self.sizes.last().copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGadget {
    pub family: Family,
    pub left: Block,
    pub period: Block,
    pub right: Block,
    /// `(i, j)`: last layer of the left cap to first layer of the period.
    pub left_link: Vec<(usize, usize)>,
    /// Last layer of a period to the first layer of the next period.
    pub period_link: Vec<(usize, usize)>,
    /// Last layer of the final period to the first layer of the right cap.
    pub right_link: Vec<(usize, usize)>,
    /// `attach[j]` is the end-layer index that outside vertex `j` is joined to.
    pub attach: Vec<usize>,
}

/// A concrete member of a family: the graph and its layers in order.
#[derive(Debug, Clone)]
pub struct LayeredInstance {
    pub graph: Graph,
    pub layers: Vec<Vec<usize>>,
}

impl LayeredGadget {
    /// A gadget with the family's layer sizes and no edges.
    pub fn empty(family: Family) -> Self {
        let [l, p, r] = family.layer_sizes();
        let n_attach = family.attachments();
        let end = l.first().copied().unwrap_or(1).max(1);
        LayeredGadget {
            family,
            left: Block { sizes: l, edges: Vec::new() },
            period: Block { sizes: p, edges: Vec::new() },
            right: Block { sizes: r, edges: Vec::new() },
            left_link: Vec::new(),
            period_link: Vec::new(),
            right_link: Vec::new(),
            attach: (0..n_attach).map(|j| j * end / n_attach).collect(),
        }
    }

    pub fn order(&self, k: usize) -> usize {
        self.left.order() + k * self.period.order() + self.right.order()
    }

    pub fn instantiate(&self, k: usize) -> LayeredInstance {
        let mut graph = Graph::new(self.order(k));
        let mut layers: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        let mut place = |block: &Block, layers: &mut Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            let ids: Vec<Vec<usize>> = block
                .sizes
                .iter()
                .map(|&s| {
                    let ids = (next..next + s).collect::<Vec<_>>();
                    next += s;
                    ids
                })
                .collect();
            layers.extend(ids.iter().cloned());
            ids
        };
        let add_block = |g: &mut Graph, ids: &[Vec<usize>], block: &Block| {
            for &((l1, i1), (l2, i2)) in &block.edges {
                g.add_edge(ids[l1][i1], ids[l2][i2]).expect("validated block edge");
            }
        };
        let link = |g: &mut Graph, from: &[usize], to: &[usize], pairs: &[(usize, usize)]| {
            for &(i, j) in pairs {
                g.add_edge(from[i], to[j]).expect("validated link");
            }
        };

        let left = place(&self.left, &mut layers);
        add_block(&mut graph, &left, &self.left);
        let mut prev_last = left.last().cloned();
        let mut prev_is_left = true;
        for _ in 0..k {
            let ids = place(&self.period, &mut layers);
            add_block(&mut graph, &ids, &self.period);
            if let Some(prev) = &prev_last {
                let pairs = if prev_is_left { &self.left_link } else { &self.period_link };
                link(&mut graph, prev, &ids[0], pairs);
            }
            prev_last = ids.last().cloned();
            prev_is_left = false;
        }
        if !self.right.sizes.is_empty() {
            let ids = place(&self.right, &mut layers);
            add_block(&mut graph, &ids, &self.right);
            if let Some(prev) = &prev_last {
                let pairs = if prev_is_left { &self.left_link } else { &self.right_link };
                link(&mut graph, prev, &ids[0], pairs);
            }
        }
        LayeredInstance { graph, layers }
    }

    /// Instance plus outside vertices: `2 * attach.len()` pendant vertices
    /// at the end, the first half joined to the first layer and the second
    /// half to the last layer.
    pub(crate) fn with_pendants(&self, k: usize) -> LayeredInstance {
        let mut inst = self.instantiate(k);
        let first = inst.layers[0].clone();
        let last = inst.layers.last().expect("nonempty").clone();
        for end in [&first, &last] {
            for &x in &self.attach {
                let p = inst.graph.add_vertices(1);
                inst.graph.add_edge(p, end[x]).expect("fresh vertex");
            }
        }
        inst
    }

    fn check_shape(&self) -> Result<(), String> {
        let [l, p, r] = self.family.layer_sizes();
        if self.left.sizes != l || self.period.sizes != p || self.right.sizes != r {
            return Err("layer sizes differ from the family profile".into());
        }
        for (name, block) in [("left", &self.left), ("period", &self.period), ("right", &self.right)] {
            let mut prev = None;
            for &(s, t) in &block.edges {
                let ok = s < t
                    && t.0 <= s.0 + 1
                    && s.0 < block.sizes.len()
                    && t.0 < block.sizes.len()
                    && s.1 < block.sizes[s.0]
                    && t.1 < block.sizes[t.0]
                    && prev.is_none_or(|p| p < (s, t));
                if !ok {
                    return Err(format!("bad or unsorted {name} edge {s:?}-{t:?}"));
                }
                prev = Some((s, t));
            }
        }
        let right_first = if self.right.sizes.is_empty() { 0 } else { self.right.first_len() };
        for (name, pairs, a, b) in [
            ("left-link", &self.left_link, self.left.last_len(), self.period.first_len()),
            ("period-link", &self.period_link, self.period.last_len(), self.period.first_len()),
            ("right-link", &self.right_link, self.period.last_len(), right_first),
        ] {
            if pairs.windows(2).any(|w| w[0] >= w[1]) || pairs.iter().any(|&(i, j)| i >= a || j >= b) {
                return Err(format!("bad or unsorted {name}"));
            }
        }
        let n_attach = self.family.attachments();
        if self.attach.len() != n_attach || self.attach.iter().any(|&x| x >= self.left.first_len()) {
            return Err("bad attachment list".into());
        }
        if self.left.first_len() != self.period.last_len() && n_attach > 0 {
            return Err("end layers differ in size".into());
        }
        Ok(())
    }

    /// Checks every property the family promises on the instances with
    /// [`VALIDATION_KS`] periods.
    pub fn validate(&self) -> Result<(), String> {
        self.check_shape()?;
        let lambda = self.family.lambda();
        let mut cross: Option<Vec<Vec<usize>>> = None;
        for k in VALIDATION_KS {
            let inst = self.instantiate(k);
            let g = &inst.graph;
            if let Some(w) = is_c4_free(g).witness {
                return Err(format!("k={k}: C4 {w:?}"));
            }
            for (i, pair) in inst.layers.windows(2).enumerate() {
                if let Some(&v) = pair[1].iter().find(|&&v| !pair[0].iter().any(|&w| g.has_edge(v, w))) {
                    return Err(format!("k={k}: vertex {v} in layer {} has no lower neighbor", i + 1));
                }
            }
            match self.family {
                Family::Fig1 => {
                    let u = inst.layers[0][0];
                    let profile = bfs_layers(g, u).map_err(|e| e.to_string())?;
                    let want: Vec<usize> = inst.layers.iter().map(Vec::len).collect();
                    if profile.sizes() != want {
                        return Err(format!("k={k}: profile {:?}", profile.sizes()));
                    }
                    let l = edge_connectivity(g).map_err(|e| e.to_string())?.value;
                    if l != lambda {
                        return Err(format!("k={k}: edge-connectivity {l}"));
                    }
                    let d = diameter(g).map_err(|e| e.to_string())?;
                    if d != 2 * k + 6 {
                        return Err(format!("k={k}: diameter {d}"));
                    }
                }
                Family::Fig1b => {
                    let l = self.proxy_lambda(&inst);
                    if l < lambda as u64 {
                        return Err(format!("k={k}: proxy edge-connectivity {l}"));
                    }
                    let d = self.end_to_end_distances(k);
                    if let Some(prev) = &cross {
                        let shifted = prev.iter().zip(&d).all(|(r0, r1)| {
                            r0.iter().zip(r1).all(|(&x, &y)| y == x + 2)
                        });
                        if !shifted {
                            return Err(format!("k={k}: end-to-end distances do not grow by 2"));
                        }
                    }
                    cross = Some(d);
                }
            }
        }
        Ok(())
    }

    /// λ of the instance with each end's outside vertices merged into one
    /// super-vertex. A lower bound for λ of any graph obtained by hanging
    /// the outside vertices in a graph of edge-connectivity at least as large.
    pub(crate) fn proxy_lambda(&self, inst: &LayeredInstance) -> u64 {
        let n = inst.graph.n();
        let mut edges: Vec<(usize, usize, u64)> = inst.graph.edges().map(|(u, v)| (u, v, 1)).collect();
        let last = inst.layers.last().expect("nonempty");
        for &x in &self.attach {
            edges.push((n, inst.layers[0][x], 1));
            edges.push((n + 1, last[x], 1));
        }
        stoer_wagner_weighted(n + 2, &edges).0
    }

    /// Distances from each left outside vertex to each right outside vertex.
    pub(crate) fn end_to_end_distances(&self, k: usize) -> Vec<Vec<usize>> {
        let inst = self.with_pendants(k);
        let m = self.attach.len();
        let base = inst.graph.n() - 2 * m;
        (0..m)
            .map(|i| {
                let dist = bfs_distances(&inst.graph, base + i);
                (0..m).map(|j| dist[base + m + j]).collect()
            })
            .collect()
    }

    pub fn to_asset_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "family {}", self.family);
        let _ = writeln!(out, "lambda {}", self.family.lambda());
        for (name, block) in [("left", &self.left), ("period", &self.period), ("right", &self.right)] {
            let sizes: Vec<String> = block.sizes.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", join(name, &sizes));
            let edges: Vec<String> = block
                .edges
                .iter()
                .map(|&((a, b), (c, d))| format!("{a}.{b}-{c}.{d}"))
                .collect();
            let _ = writeln!(out, "{}", join(&format!("{name}-edges"), &edges));
        }
        for (name, pairs) in [
            ("left-link", &self.left_link),
            ("period-link", &self.period_link),
            ("right-link", &self.right_link),
        ] {
            let tokens: Vec<String> = pairs.iter().map(|(i, j)| format!("{i}-{j}")).collect();
            let _ = writeln!(out, "{}", join(name, &tokens));
        }
        let attach: Vec<String> = self.attach.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", join("attach", &attach));
        out.push_str("end\n");
        out
    }
}

fn join(key: &str, tokens: &[String]) -> String {
    if tokens.is_empty() {
        key.to_string()
    } else {
        format!("{key} {}", tokens.join(" "))
    }
}

fn parse_usize(tok: &str) -> Result<usize, String> {
    tok.parse().map_err(|_| format!("bad integer {tok:?}"))
}

fn parse_pair(tok: &str) -> Result<(usize, usize), String> {
    let (a, b) = tok.split_once('-').ok_or_else(|| format!("bad pair {tok:?}"))?;
    Ok((parse_usize(a)?, parse_usize(b)?))
}

fn parse_slot(tok: &str) -> Result<Slot, String> {
    let (a, b) = tok.split_once('.').ok_or_else(|| format!("bad slot {tok:?}"))?;
    Ok((parse_usize(a)?, parse_usize(b)?))
}

fn parse_edge(tok: &str) -> Result<(Slot, Slot), String> {
    let (a, b) = tok.split_once('-').ok_or_else(|| format!("bad edge {tok:?}"))?;
    Ok((parse_slot(a)?, parse_slot(b)?))
}

/// Parses a gadget asset. Shape errors are reported; properties are not
/// checked here (see [`LayeredGadget::validate`]).
pub fn parse_gadgets(text: &str) -> Result<Vec<LayeredGadget>, String> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some(ASSET_HEADER) {
        return Err(format!("missing header {ASSET_HEADER:?}"));
    }
    let mut out = Vec::new();
    let mut cur: Option<LayeredGadget> = None;
    for line in lines {
        let mut toks = line.split_whitespace();
        let key = toks.next().expect("nonempty line");
        let rest: Vec<&str> = toks.collect();
        if key == "family" {
            if cur.is_some() {
                return Err("family started before previous end".into());
            }
            let name = rest.first().ok_or("family without a name")?;
            let family = Family::parse(name).ok_or_else(|| format!("unknown family {name:?}"))?;
            let mut g = LayeredGadget::empty(family);
            g.attach.clear();
            cur = Some(g);
            continue;
        }
        let g = cur.as_mut().ok_or_else(|| format!("{key:?} outside a family"))?;
        let ints = || rest.iter().map(|t| parse_usize(t)).collect::<Result<Vec<_>, _>>();
        let pairs = || rest.iter().map(|t| parse_pair(t)).collect::<Result<Vec<_>, _>>();
        let edges = || rest.iter().map(|t| parse_edge(t)).collect::<Result<Vec<_>, _>>();
        match key {
            "lambda" => {
                if ints()? != [g.family.lambda()] {
                    return Err(format!("{}: unexpected lambda", g.family));
                }
            }
            "left" => g.left.sizes = ints()?,
            "period" => g.period.sizes = ints()?,
            "right" => g.right.sizes = ints()?,
            "left-edges" => g.left.edges = edges()?,
            "period-edges" => g.period.edges = edges()?,
            "right-edges" => g.right.edges = edges()?,
            "left-link" => g.left_link = pairs()?,
            "period-link" => g.period_link = pairs()?,
            "right-link" => g.right_link = pairs()?,
            "attach" => g.attach = ints()?,
            "end" => {
                let g = cur.take().expect("checked above");
                g.check_shape().map_err(|e| format!("{}: {e}", g.family))?;
                out.push(g);
            }
            other => return Err(format!("unknown key {other:?}")),
        }
    }
    if cur.is_some() {
        return Err("missing end".into());
    }
    Ok(out)
}

/// Renders gadgets as a complete asset file.
pub fn gadgets_to_asset(gadgets: &[LayeredGadget]) -> String {
    let mut out = format!("{ASSET_HEADER}\n");
    for g in gadgets {
        out.push('\n');
        out.push_str(&g.to_asset_text());
    }
    out
}

/// The frozen gadget for `family`, validated on first use.
pub fn frozen_gadget(family: Family) -> Result<&'static LayeredGadget, ConstructionError> {
    static CACHE: OnceLock<BTreeMap<Family, Result<LayeredGadget, String>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let parsed = parse_gadgets(FROZEN_GADGETS);
        Family::ALL
            .into_iter()
            .map(|f| {
                let entry = match &parsed {
                    Err(e) => Err(e.clone()),
                    Ok(list) => match list.iter().find(|g| g.family == f) {
                        None => Err(format!("no {f} entry in the asset")),
                        Some(g) => g.validate().map(|()| g.clone()),
                    },
                };
                (f, entry)
            })
            .collect()
    });
    cache[&family]
        .as_ref()
        .map_err(|e| ConstructionError::GadgetUnavailable(format!("{family}: {e}")))
}
