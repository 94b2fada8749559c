//! Vertex permutations, automorphism checks, group closure and brute-force
//! automorphism enumeration by backtracking.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TruncatedGraph, Vertex, VertexSet};

/// Default cap on the number of group elements produced by a closure or an
/// enumeration.
pub const DEFAULT_GROUP_BUDGET: u64 = 1 << 20;

/// A permutation of `0..n`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(pub Vec<Vertex>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.0[v]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn apply_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(s.universe(), s.iter().map(|v| self.0[v]))
    }

    /// Checks that the table is a bijection of `0..n`.
    pub fn is_valid(&self, n: usize) -> bool {
        if self.0.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        self.0.iter().all(|&j| j < n && !std::mem::replace(&mut seen[j], true))
    }

    /// Builds a permutation of `g` from identifier pairs; unmentioned
    /// vertices are fixed.
    pub fn from_names<S: AsRef<str>>(g: &TruncatedGraph, pairs: &[(S, S)]) -> Result<Self> {
        let mut p = Permutation::identity(g.vertex_count());
        for (a, b) in pairs {
            p.0[g.vertex(a.as_ref())?] = g.vertex(b.as_ref())?;
        }
        if !p.is_valid(g.vertex_count()) {
            return Err(Error::input("mapping is not a bijection"));
        }
        Ok(p)
    }
}

/// Edge-preservation check, in both directions, plus frontier preservation.
pub fn is_automorphism(g: &TruncatedGraph, p: &Permutation) -> bool {
    p.is_valid(g.vertex_count()) && g.edges().iter().all(|&(u, v)| g.has_edge(p.apply(u), p.apply(v))) && g.frontier().iter().all(|v| g.is_frontier(p.apply(v)))
}

/// All products of the generators, breadth first from the identity.
pub fn group_closure(n: usize, generators: &[Permutation], budget: u64) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for s in generators {
            let q = s.compose(&p);
            if seen.insert(q.clone()) {
                if seen.len() as u64 > budget {
                    return Err(Error::Budget {
                        what: "group closure size",
                        budget,
                    });
                }
                order.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    order.sort();
    Ok(order)
}

/// Simple undirected graph on `0..n` given by sorted adjacency lists, with
/// vertex colors that automorphisms must respect.
pub struct ColoredGraph<'a> {
    pub adj: &'a [Vec<usize>],
    pub colors: &'a [u32],
}

impl ColoredGraph<'_> {
    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }
}

/// Enumerates every color-preserving automorphism by backtracking.
///
/// Vertices are assigned in breadth-first order so each new vertex usually has
/// an already mapped neighbor, whose image's neighborhood bounds the candidates.
pub fn enumerate_automorphisms(g: &ColoredGraph<'_>, budget: u64) -> Result<Vec<Permutation>> {
    let n = g.adj.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for root in 0..n {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &g.adj[v] {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut search = Backtrack {
        g,
        order: &order,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        nodes: 0,
        budget,
    };
    search.run(0)?;
    search.found.sort();
    Ok(search.found)
}

struct Backtrack<'a, 'g> {
    g: &'a ColoredGraph<'g>,
    order: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Permutation>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_, '_> {
    fn run(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget || self.found.len() as u64 > self.budget {
            return Err(Error::Budget {
                what: "automorphism search nodes",
                budget: self.budget,
            });
        }
        if depth == self.order.len() {
            self.found.push(Permutation(self.image.clone()));
            return Ok(());
        }
        let v = self.order[depth];
        let anchor = self.g.adj[v].iter().copied().find(|&u| self.image[u] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(u) => self.g.adj[self.image[u]].clone(),
            None => (0..self.g.adj.len()).collect(),
        };
        for c in candidates {
            if self.used[c] || !self.compatible(v, c) {
                continue;
            }
            self.image[v] = c;
            self.used[c] = true;
            self.run(depth + 1)?;
            self.used[c] = false;
            self.image[v] = usize::MAX;
        }
        Ok(())
    }

    fn compatible(&self, v: usize, c: usize) -> bool {
        if self.g.colors[v] != self.g.colors[c] || self.g.adj[v].len() != self.g.adj[c].len() {
            return false;
        }
        // adjacency to every mapped vertex must agree
        self.order.iter().all(|&u| {
            let iu = self.image[u];
            iu == usize::MAX || self.g.has_edge(v, u) == self.g.has_edge(c, iu)
        })
    }
}

/// Every automorphism of a truncation that maps the frontier to itself.
pub fn graph_automorphisms(g: &TruncatedGraph, budget: u64) -> Result<Vec<Permutation>> {
    let adj: Vec<Vec<usize>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
    let colors: Vec<u32> = g.vertices().map(|v| u32::from(g.is_frontier(v))).collect();
    enumerate_automorphisms(&ColoredGraph { adj: &adj, colors: &colors }, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_adj(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| {
                let mut a = vec![(i + 1) % n, (i + n - 1) % n];
                a.sort();
                a
            })
            .collect()
    }

    #[test]
    fn cycle_has_dihedral_group() {
        for n in 3..9 {
            let adj = cycle_adj(n);
            let colors = vec![0; n];
            let auts = enumerate_automorphisms(&ColoredGraph { adj: &adj, colors: &colors }, 1 << 20).unwrap();
            assert_eq!(auts.len(), 2 * n);
        }
    }

    #[test]
    fn star_group_is_symmetric_on_leaves() {
        let adj = vec![vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]];
        let colors = vec![0; 5];
        let auts = enumerate_automorphisms(&ColoredGraph { adj: &adj, colors: &colors }, 1 << 20).unwrap();
        assert_eq!(auts.len(), 24);
    }

    #[test]
    fn closure_of_rotation_and_reflection() {
        let r = Permutation(vec![1, 2, 3, 0]);
        let s = Permutation(vec![0, 3, 2, 1]);
        assert_eq!(group_closure(4, &[r.clone(), s], 100).unwrap().len(), 8);
        assert_eq!(group_closure(4, std::slice::from_ref(&r), 100).unwrap().len(), 4);
        assert!(group_closure(4, &[r], 2).unwrap_err().is_budget());
    }

    #[test]
    fn inverse_and_compose() {
        let p = Permutation(vec![2, 0, 1]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(!Permutation(vec![0, 0, 1]).is_valid(3));
    }
}
