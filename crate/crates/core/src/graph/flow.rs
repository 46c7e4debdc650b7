//! Integer-capacity max-flow by shortest augmenting paths. Every instance in
//! this crate has tiny flow values, so each augmentation is one BFS.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    first: Vec<usize>,
    // Arc `e` and its reverse `e ^ 1` are stored adjacently.
    head: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<u32>,
}

const NIL: usize = usize::MAX;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            first: vec![NIL; nodes],
            head: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.first.len()
    }

    fn push_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.head.push(to);
        self.cap.push(cap);
        self.next.push(self.first[from]);
        self.first[from] = self.head.len() - 1;
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.push_arc(from, to, cap);
        self.push_arc(to, from, 0);
    }

    /// An undirected edge: capacity `cap` in both directions on one arc pair.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u32) {
        self.push_arc(u, v, cap);
        self.push_arc(v, u, cap);
    }

    /// Pushes flow from `s` to `t` until none remains or `limit` is reached.
    /// Mutates residual capacities, so a network answers one query.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let n = self.nodes();
        let mut total = 0;
        let mut parent_arc = vec![NIL; n];
        let mut queue = VecDeque::new();
        while total < limit {
            parent_arc.fill(NIL);
            queue.clear();
            queue.push_back(s);
            let mut reached = false;
            'bfs: while let Some(v) = queue.pop_front() {
                let mut e = self.first[v];
                while e != NIL {
                    let w = self.head[e];
                    if self.cap[e] > 0 && w != s && parent_arc[w] == NIL {
                        parent_arc[w] = e;
                        if w == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                    e = self.next[e];
                }
            }
            if !reached {
                break;
            }
            let mut bottleneck = limit - total;
            let mut v = t;
            while v != s {
                let e = parent_arc[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = parent_arc[v];
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.head[e ^ 1];
            }
            total += bottleneck;
        }
        total
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            let mut e = self.first[v];
            while e != NIL {
                let w = self.head[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
                e = self.next[e];
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_flow() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 2);
        net.add_arc(0, 2, 1);
        net.add_arc(1, 3, 1);
        net.add_arc(2, 3, 2);
        net.add_arc(1, 2, 1);
        assert_eq!(net.max_flow(0, 3, u32::MAX), 3);
        let side = net.residual_reachable(0);
        assert!(side[0] && !side[3]);
    }

    #[test]
    fn limit_stops_early() {
        let mut net = FlowNetwork::new(2);
        net.add_edge(0, 1, 5);
        assert_eq!(net.max_flow(0, 1, 3), 3);
    }
}
