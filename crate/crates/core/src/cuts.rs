//! Tight edge-cuts: classification, bounded enumeration through an edge and
//! the search for structure cuts.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, TruncatedGraph, Vertex, VertexSet};
use crate::perm::Permutation;
use crate::treeset::first_crossing;

/// Default cap on search nodes for tight-cut enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Triviality {
    Trivial,
    Nontrivial,
    /// The graph has no frontier, so every cut is trivial in the infinite
    /// sense and the flag carries no information.
    FrontierDependent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub side: VertexSet,
    pub boundary_size: usize,
    pub tight: bool,
    pub triviality: Triviality,
}

/// Computes boundary size, tightness and the non-triviality proxy.
pub fn classify_cut(g: &TruncatedGraph, e: &VertexSet) -> Result<Cut> {
    g.check_proper(e)?;
    let star = e.complement();
    let triviality = if g.frontier().is_empty() {
        Triviality::FrontierDependent
    } else if !e.is_disjoint(g.frontier()) && !star.is_disjoint(g.frontier()) {
        Triviality::Nontrivial
    } else {
        Triviality::Trivial
    };
    Ok(Cut {
        side: e.clone(),
        boundary_size: g.boundary_size(e),
        tight: g.is_connected_set(e) && g.is_connected_set(&star),
        triviality,
    })
}

/// Every tight cut `e` with `p ∈ δe` and `|δe| <= k`, one per complementary
/// pair: the side containing the smaller endpoint of `p`. Sorted.
///
/// Connected sets containing that endpoint are grown one neighbor at a time;
/// each neighbor is either taken or excluded for good, and a branch dies once
/// the edges already committed to the boundary exceed `k`.
pub fn enumerate_tight_cuts(g: &TruncatedGraph, p: Edge, k: usize, budget: u64) -> Result<Vec<Cut>> {
    let (u, v) = (p.0.min(p.1), p.0.max(p.1));
    if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
        return Err(Error::input("enumerate_tight_cuts: p is not an edge of the graph"));
    }
    if k == 0 {
        return Err(Error::input("enumerate_tight_cuts: k must be positive"));
    }
    let mut search = Grow {
        g,
        k,
        budget,
        nodes: 0,
        inside: g.empty_set(),
        excluded: g.empty_set(),
        found: Vec::new(),
    };
    search.inside.insert(u);
    search.excluded.insert(v);
    search.run(1)?;
    let mut out = Vec::with_capacity(search.found.len());
    for side in search.found {
        out.push(classify_cut(g, &side)?);
    }
    out.sort_by(|a, b| a.side.cmp(&b.side));
    Ok(out)
}

struct Grow<'a> {
    g: &'a TruncatedGraph,
    k: usize,
    budget: u64,
    nodes: u64,
    inside: VertexSet,
    excluded: VertexSet,
    found: Vec<VertexSet>,
}

impl Grow<'_> {
    /// `committed` counts the edges between `inside` and `excluded`.
    fn run(&mut self, committed: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                what: "tight-cut search nodes",
                budget: self.budget,
            });
        }
        let free = self
            .inside
            .iter()
            .flat_map(|x| self.g.neighbors(x).iter().copied())
            .filter(|&y| !self.inside.contains(y) && !self.excluded.contains(y))
            .min();
        let Some(w) = free else {
            // `inside` is closed: its boundary is exactly the committed edges
            let star = self.inside.complement();
            if !star.is_empty() && self.g.is_connected_set(&star) {
                self.found.push(self.inside.clone());
            }
            return Ok(());
        };
        let to_excluded = self.count_into(w, &self.excluded);
        let to_inside = self.count_into(w, &self.inside);

        if committed + to_excluded <= self.k {
            self.inside.insert(w);
            self.run(committed + to_excluded)?;
            self.inside.remove(w);
        }
        if committed + to_inside <= self.k {
            self.excluded.insert(w);
            self.run(committed + to_inside)?;
            self.excluded.remove(w);
        }
        Ok(())
    }

    fn count_into(&self, w: Vertex, s: &VertexSet) -> usize {
        self.g.neighbors(w).iter().filter(|&&y| s.contains(y)).count()
    }
}

/// All tight cuts with boundary size at most `k`, both orientations, sorted.
pub fn all_tight_cuts(g: &TruncatedGraph, k: usize, budget: u64) -> Result<Vec<Cut>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &p in g.edges() {
        for cut in enumerate_tight_cuts(g, p, k, budget)? {
            for side in [cut.side.complement(), cut.side] {
                if seen.insert(side.clone()) {
                    out.push(classify_cut(g, &side)?);
                }
            }
        }
    }
    out.sort_by(|a, b| a.side.cmp(&b.side));
    Ok(out)
}

/// Closure of `{e, e*}` under the group generated by `auts`, sorted.
pub fn orbit_closure(e: &VertexSet, auts: &[Permutation], budget: u64) -> Result<Vec<VertexSet>> {
    let mut seen = BTreeSet::from([e.clone(), e.complement()]);
    let mut queue: VecDeque<VertexSet> = seen.iter().cloned().collect();
    while let Some(s) = queue.pop_front() {
        for a in auts {
            let img = a.apply_set(&s);
            if seen.insert(img.clone()) {
                if seen.len() as u64 > budget {
                    return Err(Error::Budget {
                        what: "cut orbit size",
                        budget,
                    });
                }
                queue.push_back(img);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCut {
    /// Least member of the family `orbit(e) ∪ orbit(e*)`.
    pub cut: Cut,
    /// Size of that family.
    pub orbit_size: usize,
}

/// Nontrivial tight cuts with `|δe| <= k` whose orbit family, together with
/// complements, is nested. One entry per family, in order of representative.
pub fn find_structure_cuts(g: &TruncatedGraph, auts: &[Permutation], k: usize, node_budget: u64, group_budget: u64) -> Result<Vec<StructureCut>> {
    let candidates: Vec<Cut> = all_tight_cuts(g, k, node_budget)?
        .into_iter()
        .filter(|c| c.triviality == Triviality::Nontrivial)
        .collect();
    let mut covered: BTreeSet<VertexSet> = BTreeSet::new();
    let mut out = Vec::new();
    for cut in candidates {
        if covered.contains(&cut.side) {
            continue;
        }
        let family = orbit_closure(&cut.side, auts, group_budget)?;
        covered.extend(family.iter().cloned());
        if first_crossing(&family).is_none() {
            let rep = classify_cut(g, &family[0])?;
            out.push(StructureCut {
                cut: rep,
                orbit_size: family.len(),
            });
        }
    }
    Ok(out)
}

/// Checks `δ(e ∩ f) ⊆ δe ∪ δf` (vacuous when the intersection is empty or
/// the whole vertex set).
pub fn intersection_boundary_ok(g: &TruncatedGraph, e: &VertexSet, f: &VertexSet) -> bool {
    let both = e.intersection(f);
    if both.is_empty() || both.is_full() {
        return true;
    }
    g.edges().iter().all(|&(x, y)| {
        let crosses = |s: &VertexSet| s.contains(x) != s.contains(y);
        !crosses(&both) || crosses(e) || crosses(f)
    })
}
