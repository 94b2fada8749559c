//! Vertex-disjoint path counts by unit-capacity max-flow on the split graph.

use std::collections::VecDeque;

use crate::graph::{TruncatedGraph, VertexSet};

struct Network {
    head: Vec<usize>,
    cap: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, from: usize, to: usize) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(1);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// One shortest augmenting path; arcs come in pairs `2i, 2i + 1`.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut queue = VecDeque::from([s]);
        let mut reached = vec![false; self.out.len()];
        reached[s] = true;
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &a in &self.out[u] {
                let v = self.head[a];
                if self.cap[a] > 0 && !reached[v] {
                    reached[v] = true;
                    via[v] = a;
                    queue.push_back(v);
                }
            }
        }
        if !reached[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let a = via[v];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            v = self.head[a ^ 1];
        }
        true
    }
}

/// Maximum number of vertex-disjoint paths inside `allowed` that start in
/// `sources` and end in `targets`. A vertex in both counts as a path of
/// length zero.
pub fn vertex_disjoint_paths(g: &TruncatedGraph, allowed: &VertexSet, sources: &VertexSet, targets: &VertexSet) -> usize {
    let members = allowed.to_vec();
    let mut slot = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in members.iter().enumerate() {
        slot[v] = i;
    }
    // vertex i splits into 2i (in) and 2i + 1 (out)
    let (s, t) = (2 * members.len(), 2 * members.len() + 1);
    let mut net = Network::new(t + 1);
    for (i, &v) in members.iter().enumerate() {
        net.arc(2 * i, 2 * i + 1);
        if sources.contains(v) {
            net.arc(s, 2 * i);
        }
        if targets.contains(v) {
            net.arc(2 * i + 1, t);
        }
        for &w in g.neighbors(v) {
            if allowed.contains(w) {
                net.arc(2 * i + 1, 2 * slot[w]);
            }
        }
    }
    let mut flow = 0;
    while net.augment(s, t) {
        flow += 1;
    }
    flow
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(w: usize, h: usize) -> TruncatedGraph {
        let name = |i: usize, j: usize| format!("{i},{j}");
        let mut names = Vec::new();
        let mut edges = Vec::new();
        for i in 0..w {
            for j in 0..h {
                names.push(name(i, j));
                if i + 1 < w {
                    edges.push((name(i, j), name(i + 1, j)));
                }
                if j + 1 < h {
                    edges.push((name(i, j), name(i, j + 1)));
                }
            }
        }
        TruncatedGraph::new(&names, &edges, &[] as &[String], None, None).unwrap()
    }

    #[test]
    fn grid_columns() {
        let g = grid(4, 3);
        let left = g.set_of(&["0,0", "0,1", "0,2"]).unwrap();
        let right = g.set_of(&["3,0", "3,1", "3,2"]).unwrap();
        assert_eq!(vertex_disjoint_paths(&g, &g.full_set(), &left, &right), 3);
        let narrow = g.full_set().difference(&g.set_of(&["1,0", "1,2"]).unwrap());
        assert_eq!(vertex_disjoint_paths(&g, &narrow, &left, &right), 1);
    }

    #[test]
    fn shared_vertex_is_a_path() {
        let g = grid(2, 1);
        let both = g.set_of(&["0,0"]).unwrap();
        assert_eq!(vertex_disjoint_paths(&g, &g.full_set(), &both, &both), 1);
        assert_eq!(vertex_disjoint_paths(&g, &g.empty_set(), &both, &both), 0);
    }
}
