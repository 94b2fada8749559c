//! The cut tree T(E), the vertex structure mapping φ, regions and induced
//! automorphisms.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TruncatedGraph, Vertex, VertexSet};
use crate::perm::{enumerate_automorphisms, graph_automorphisms, ColoredGraph, Permutation};
use crate::treeset::TreeSet;

pub type TreeVertex = usize;

/// T(E): vertices are coterminality classes, cut `e` is the directed edge
/// from the class of `e*` to the class of `e`.
#[derive(Debug)]
pub struct CutTree {
    classes: Vec<Vec<usize>>,
    class_of: Vec<TreeVertex>,
    complement: Vec<usize>,
    adj: Vec<Vec<TreeVertex>>,
    color: Vec<u8>,
    dist: OnceLock<Vec<u32>>,
}

impl Clone for CutTree {
    fn clone(&self) -> Self {
        CutTree {
            classes: self.classes.clone(),
            class_of: self.class_of.clone(),
            complement: self.complement.clone(),
            adj: self.adj.clone(),
            color: self.color.clone(),
            dist: OnceLock::new(),
        }
    }
}

pub fn build_cut_tree(ts: &TreeSet) -> Result<CutTree> {
    let classes = ts.coterminal_classes()?;
    let mut class_of = vec![0; ts.len()];
    for (v, class) in classes.iter().enumerate() {
        for &e in class {
            class_of[e] = v;
        }
    }
    let complement: Vec<usize> = (0..ts.len()).map(|e| ts.complement_of(e)).collect();
    let mut adj = vec![Vec::new(); classes.len()];
    for e in 0..ts.len() {
        let (o, t) = (class_of[complement[e]], class_of[e]);
        if o == t {
            return Err(Error::Structural(format!("cut {e} and its complement are coterminal")));
        }
        adj[o].push(t);
    }
    for list in &mut adj {
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        if list.len() != before {
            return Err(Error::Structural("two cuts give the same tree edge".into()));
        }
    }
    let tree = CutTree {
        color: Vec::new(),
        classes,
        class_of,
        complement,
        adj,
        dist: OnceLock::new(),
    };
    tree.verify(ts)?;
    let mut tree = tree;
    tree.color = tree.two_coloring();
    Ok(tree)
}

impl CutTree {
    /// Re-checks T1, T2 and that the underlying graph is a tree.
    pub fn verify(&self, ts: &TreeSet) -> Result<()> {
        for e in 0..ts.len() {
            let c = self.complement[e];
            if (self.origin(e), self.terminus(e)) != (self.terminus(c), self.origin(c)) {
                return Err(Error::Structural(format!("T1 fails for cut {e}")));
            }
            // T2, for f other than e*: e ≫ f iff t(e) = o(f)
            let expected: Vec<usize> = self.classes[self.terminus(e)]
                .iter()
                .map(|&g| self.complement[g])
                .filter(|&f| f != c)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if expected != ts.pointed_by(e) {
                return Err(Error::Structural(format!("T2 fails for cut {e}")));
            }
        }
        let n = self.vertex_count();
        let edges: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if edges + 1 != n || self.bfs(0).contains(&u32::MAX) {
            return Err(Error::Structural("the cut tree is not a tree".into()));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.len()
    }

    /// Cuts whose terminus is `v`: the class `v` itself.
    pub fn class(&self, v: TreeVertex) -> &[usize] {
        &self.classes[v]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, e: usize) -> TreeVertex {
        self.class_of[e]
    }

    pub fn origin(&self, e: usize) -> TreeVertex {
        self.class_of[self.complement[e]]
    }

    pub fn terminus(&self, e: usize) -> TreeVertex {
        self.class_of[e]
    }

    pub fn neighbors(&self, v: TreeVertex) -> &[TreeVertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: TreeVertex) -> usize {
        self.adj[v].len()
    }

    /// Undirected edges `(u, v)`, `u < v`, sorted.
    pub fn edges(&self) -> Vec<(TreeVertex, TreeVertex)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    /// Bipartite block (0 or 1) of each tree vertex.
    pub fn color(&self, v: TreeVertex) -> u8 {
        self.color[v]
    }

    pub fn name(&self, v: TreeVertex) -> String {
        format!("t{v}")
    }

    fn two_coloring(&self) -> Vec<u8> {
        self.bfs(0).iter().map(|&d| (d % 2) as u8).collect()
    }

    fn bfs(&self, s: TreeVertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: TreeVertex, v: TreeVertex) -> u32 {
        let n = self.vertex_count();
        let m = self.dist.get_or_init(|| (0..n).flat_map(|s| self.bfs(s)).collect());
        m[u * n + v]
    }

    /// All automorphisms of the underlying undirected tree.
    pub fn automorphisms(&self, budget: u64) -> Result<Vec<Permutation>> {
        let colors = vec![0; self.vertex_count()];
        enumerate_automorphisms(
            &ColoredGraph {
                adj: &self.adj,
                colors: &colors,
            },
            budget,
        )
    }

    /// Whether `p` maps tree edges to tree edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.is_valid(self.vertex_count()) && self.edges().iter().all(|&(u, v)| self.adj[p.apply(u)].binary_search(&p.apply(v)).is_ok())
    }
}

/// φ, the pointing cuts, preimages and regions.
#[derive(Debug, Clone)]
pub struct StructureMapping {
    /// φ on its domain: covered vertices off the frontier.
    pub phi: Vec<Option<TreeVertex>>,
    /// The common terminus of the pointing cuts, for every covered vertex
    /// including the frontier.
    pub phi_full: Vec<Option<TreeVertex>>,
    /// N(x), the cuts pointing at `x`, sorted.
    pub pointing: Vec<Vec<usize>>,
    /// Vertices lying in no cut.
    pub uncovered: Vec<Vertex>,
    pub preimages: Vec<VertexSet>,
    pub regions: Vec<VertexSet>,
    pub region_diameters: Vec<u32>,
}

impl StructureMapping {
    /// The vertices in φ's domain.
    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.phi.iter().enumerate().filter_map(|(x, v)| v.map(|_| x))
    }

    /// φ(VX) as a sorted list.
    pub fn image(&self) -> Vec<TreeVertex> {
        self.phi.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn preimage_diameter(&self, g: &TruncatedGraph, v: TreeVertex) -> Option<u32> {
        g.set_diameter(&self.preimages[v]).ok()
    }
}

/// The cuts containing a set `s` that contain no other cut containing `s`,
/// found through the inclusion forest of the sides avoiding vertex 0.
///
/// `deepest` is the smallest such side containing `s`, if any, and
/// `avoids(a)` tells whether side `a` is disjoint from `s`. Below `deepest`
/// (or among the roots) the minimal cuts are the complements `A*` of the
/// sides `A` disjoint from `s` all of whose proper ancestors meet `s`.
pub(crate) fn minimal_containing(ts: &TreeSet, deepest: Option<usize>, avoids: impl Fn(usize) -> bool, children: &[Vec<usize>], roots: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = match deepest {
        Some(b) => {
            out.push(b);
            children[b].clone()
        }
        None => roots.to_vec(),
    };
    while let Some(a) = stack.pop() {
        if avoids(a) {
            out.push(ts.complement_of(a));
        } else {
            stack.extend(children[a].iter().copied());
        }
    }
    out.sort_unstable();
    out
}

/// Children lists and roots of the forest of sides avoiding vertex 0.
pub(crate) fn far_forest(ts: &TreeSet) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut children = vec![Vec::new(); ts.len()];
    let mut roots = Vec::new();
    for e in (0..ts.len()).filter(|&e| ts.is_far(e)) {
        match ts.far_parent(e) {
            Some(p) => children[p].push(e),
            None => roots.push(e),
        }
    }
    (children, roots)
}

/// Computes φ and the regions. Fails with a coverage error when some vertex
/// lies in no cut, and with a structural error if the cuts pointing at a
/// vertex do not share a terminus.
pub fn phi(g: &TruncatedGraph, ts: &TreeSet, tree: &CutTree) -> Result<StructureMapping> {
    let m = phi_partial(g, ts, tree)?;
    if !m.uncovered.is_empty() {
        let names = m.uncovered.iter().map(|&x| g.name(x).to_string()).collect();
        return Err(Error::Coverage(names));
    }
    Ok(m)
}

/// As [`phi`], but uncovered vertices are listed instead of rejected.
pub fn phi_partial(g: &TruncatedGraph, ts: &TreeSet, tree: &CutTree) -> Result<StructureMapping> {
    let n = g.vertex_count();
    let (children, roots) = far_forest(ts);
    // deepest side avoiding vertex 0 that contains each vertex
    let mut far: Vec<usize> = (0..ts.len()).filter(|&e| ts.is_far(e)).collect();
    far.sort_by_key(|&e| std::cmp::Reverse(ts.cut(e).len()));
    let mut deepest: Vec<Option<usize>> = vec![None; n];
    for &e in &far {
        for x in ts.cut(e).iter() {
            deepest[x] = Some(e);
        }
    }

    let mut pointing = vec![Vec::new(); n];
    let mut phi_full = vec![None; n];
    let mut uncovered = Vec::new();
    for x in g.vertices() {
        let cuts = minimal_containing(ts, deepest[x], |a| !ts.cut(a).contains(x), &children, &roots);
        if cuts.is_empty() {
            uncovered.push(x);
            continue;
        }
        let t = tree.terminus(cuts[0]);
        if let Some(&bad) = cuts.iter().find(|&&c| tree.terminus(c) != t) {
            return Err(Error::Structural(format!(
                "cuts {} and {bad} point at {} but have different termini",
                cuts[0],
                g.name(x)
            )));
        }
        phi_full[x] = Some(t);
        pointing[x] = cuts;
    }
    let phi: Vec<Option<TreeVertex>> = g.vertices().map(|x| if g.is_frontier(x) { None } else { phi_full[x] }).collect();

    let mut preimages = vec![g.empty_set(); tree.vertex_count()];
    for (x, v) in phi.iter().enumerate() {
        if let Some(v) = v {
            preimages[*v].insert(x);
        }
    }
    let mut regions = preimages.clone();
    for (v, region) in regions.iter_mut().enumerate() {
        for &e in tree.class(v) {
            let outer = g.boundaries(ts.cut(e))?.outer;
            for y in outer.iter() {
                region.insert(y);
            }
        }
    }
    let region_diameters = regions
        .iter()
        .map(|r| if r.is_empty() { Ok(0) } else { g.set_diameter(r) })
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureMapping {
        phi,
        phi_full,
        pointing,
        uncovered,
        preimages,
        regions,
        region_diameters,
    })
}

/// A verified tree set with its cut tree and structure mapping.
#[derive(Debug, Clone)]
pub struct Structure {
    pub tree_set: TreeSet,
    pub tree: CutTree,
    pub mapping: StructureMapping,
}

impl Structure {
    /// Runs the tree-set check, builds T(E) and computes φ.
    pub fn build(g: &TruncatedGraph, cuts: &[VertexSet]) -> Result<Self> {
        let tree_set = crate::treeset::check_tree_set(g, cuts)?;
        let tree = build_cut_tree(&tree_set)?;
        let mapping = phi(g, &tree_set, &tree)?;
        Ok(Structure { tree_set, tree, mapping })
    }
}

/// Region of a tree vertex recomputed from its definition, with its diameter.
pub fn region(g: &TruncatedGraph, ts: &TreeSet, tree: &CutTree, mapping: &StructureMapping, v: TreeVertex) -> Result<(VertexSet, u32)> {
    if v >= tree.vertex_count() {
        return Err(Error::input("unknown tree vertex"));
    }
    let mut r = mapping.preimages[v].clone();
    for e in 0..ts.len() {
        if tree.terminus(e) == v {
            for y in g.boundaries(ts.cut(e))?.outer.iter() {
                r.insert(y);
            }
        }
    }
    let d = if r.is_empty() { 0 } else { g.set_diameter(&r)? };
    Ok((r, d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedAut {
    pub source: Permutation,
    /// Action on the cuts.
    pub on_cuts: Permutation,
    /// Action on the tree vertices.
    pub action: Permutation,
    /// Whether φ(VX) is a proper subset of VT, so that part of the action
    /// was not determined by φ alone.
    pub extended: bool,
}

/// The automorphism of T induced by a graph automorphism preserving E.
///
/// The action on tree vertices comes from the action on cuts. On φ(VX) it is
/// checked against `v ↦ φ g φ⁻¹(v)` together with the compatibilities
/// `g φ⁻¹φ(x) = φ⁻¹φ g(x)`, `φ⁻¹ ḡ(v) = g φ⁻¹(v)` and `ḡ φ(x) = φ g(x)`.
pub fn induced_aut(g: &TruncatedGraph, ts: &TreeSet, tree: &CutTree, mapping: &StructureMapping, a: &Permutation) -> Result<InducedAut> {
    if !a.is_valid(g.vertex_count()) {
        return Err(Error::input("not a permutation of the graph's vertices"));
    }
    let mut on_cuts = Vec::with_capacity(ts.len());
    for e in ts.cuts() {
        match ts.index_of(&a.apply_set(e)) {
            Ok(i) => on_cuts.push(i),
            Err(_) => return Err(Error::input("the automorphism does not preserve the cut family")),
        }
    }
    let mut action = vec![usize::MAX; tree.vertex_count()];
    for (e, &img) in on_cuts.iter().enumerate() {
        let (v, w) = (tree.terminus(e), tree.terminus(img));
        if action[v] != usize::MAX && action[v] != w {
            return Err(Error::Structural("induced action on tree vertices is ill-defined".into()));
        }
        action[v] = w;
    }
    let action = Permutation(action);
    if !tree.is_automorphism(&action) {
        return Err(Error::Structural("induced action is not a tree automorphism".into()));
    }
    for x in mapping.domain() {
        let gx = a.apply(x);
        let (Some(px), Some(pgx)) = (mapping.phi[x], mapping.phi[gx]) else {
            return Err(Error::input("the automorphism moves a vertex out of φ's domain"));
        };
        if action.apply(px) != pgx {
            return Err(Error::Structural(format!("ḡφ(x) ≠ φg(x) at {}", g.name(x))));
        }
    }
    for v in mapping.image() {
        if a.apply_set(&mapping.preimages[v]) != mapping.preimages[action.apply(v)] {
            return Err(Error::Structural(format!("φ⁻¹ḡ(v) ≠ gφ⁻¹(v) at {}", tree.name(v))));
        }
    }
    Ok(InducedAut {
        source: a.clone(),
        on_cuts: Permutation(on_cuts),
        action,
        extended: mapping.image().len() != tree.vertex_count(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LReport {
    /// Frontier-preserving automorphisms of the graph that preserve E.
    pub aut_x: u64,
    pub aut_t: u64,
    pub image: u64,
    pub injective: bool,
    pub surjective: bool,
}

/// Counts for the map `L: g ↦ gᵀ`, by brute-force enumeration of both groups.
pub fn l_analysis(g: &TruncatedGraph, ts: &TreeSet, tree: &CutTree, mapping: &StructureMapping, budget: u64) -> Result<LReport> {
    let auts = graph_automorphisms(g, budget)?;
    let tree_auts = tree.automorphisms(budget)?;
    let mut preserving = 0u64;
    let mut image = BTreeSet::new();
    for a in &auts {
        match induced_aut(g, ts, tree, mapping, a) {
            Ok(ind) => {
                preserving += 1;
                image.insert(ind.action);
            }
            Err(Error::Input(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let image = image.len() as u64;
    let aut_t = tree_auts.len() as u64;
    Ok(LReport {
        aut_x: preserving,
        aut_t,
        image,
        injective: image == preserving,
        surjective: image == aut_t,
    })
}

/// Graphviz rendering of T with preimage sizes as labels.
pub fn tree_to_dot(tree: &CutTree, mapping: Option<&StructureMapping>) -> String {
    let mut out = String::from("graph T {\n");
    for v in 0..tree.vertex_count() {
        let label = match mapping {
            Some(m) => format!("{} ({})", tree.name(v), m.preimages[v].len()),
            None => tree.name(v),
        };
        let _ = writeln!(out, "  {} [label=\"{label}\"];", tree.name(v));
    }
    for (u, v) in tree.edges() {
        let _ = writeln!(out, "  {} -- {};", tree.name(u), tree.name(v));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family, FamilySpec};
    use crate::treeset::check_tree_set;

    fn setup(f: Family, r: u32) -> (crate::generators::FamilyBundle, TreeSet, CutTree, StructureMapping) {
        let b = generate(FamilySpec::new(f, r)).unwrap();
        let ts = check_tree_set(&b.graph, &b.canonical_cuts).unwrap();
        let tree = build_cut_tree(&ts).unwrap();
        let m = phi(&b.graph, &ts, &tree).unwrap();
        (b, ts, tree, m)
    }

    #[test]
    fn pendant_cycle_tree_is_a_star() {
        let (b, _, tree, m) = setup(Family::CycleWithPendantPairs(4), 2);
        assert_eq!(tree.vertex_count(), 5);
        let mut degrees: Vec<usize> = (0..5).map(|v| tree.degree(v)).collect();
        degrees.sort();
        assert_eq!(degrees, [1, 1, 1, 1, 4]);
        let g = &b.graph;
        let center = (0..5).find(|&v| tree.degree(v) == 4).unwrap();
        for i in 1..=4 {
            assert_eq!(m.phi[g.vertex(&format!("v{i}")).unwrap()], Some(center));
            let a = m.phi[g.vertex(&format!("v{i}a")).unwrap()].unwrap();
            assert_eq!(m.phi[g.vertex(&format!("v{i}b")).unwrap()], Some(a));
            assert_ne!(a, center);
        }
    }

    #[test]
    fn line_star_and_regions() {
        let r = 5;
        let (b, ts, tree, m) = setup(Family::TwoSidedLine, r);
        let g = &b.graph;
        let center = (0..tree.vertex_count()).max_by_key(|&v| tree.degree(v)).unwrap();
        assert_eq!(tree.degree(center) as u32, 2 * r - 1);
        assert!(m.preimages[center].is_empty());
        assert_eq!(m.region_diameters[center], 2 * (r - 1));
        let x2 = g.vertex("x:2").unwrap();
        let leaf = m.phi[x2].unwrap();
        assert_eq!(g.set_names(&m.preimages[leaf]), ["x:2"]);
        let (reg, d) = region(g, &ts, &tree, &m, leaf).unwrap();
        assert_eq!(g.set_names(&reg), ["x:1", "x:2", "x:3"]);
        assert_eq!(d, 2);
        assert_eq!(m.phi[g.vertex("x:5").unwrap()], None);
    }

    #[test]
    fn single_pair_tree() {
        let b = generate(FamilySpec::new(Family::BiregularTree(2, 3), 3)).unwrap();
        let e = b.canonical_cuts[0].clone();
        let ts = check_tree_set(&b.graph, &[e.clone(), e.complement()]).unwrap();
        let tree = build_cut_tree(&ts).unwrap();
        assert_eq!(tree.vertex_count(), 2);
        assert_eq!(tree.edges(), [(0, 1)]);
    }

    #[test]
    fn l_analysis_on_pendant_cycle() {
        let (b, ts, tree, m) = setup(Family::CycleWithPendantPairs(4), 2);
        let rep = l_analysis(&b.graph, &ts, &tree, &m, 1 << 20).unwrap();
        assert_eq!((rep.aut_x, rep.aut_t, rep.image), (128, 24, 8));
        assert!(!rep.injective && !rep.surjective);
    }

    #[test]
    fn induced_actions() {
        let (b, ts, tree, m) = setup(Family::CycleWithPendantPairs(4), 2);
        let g = &b.graph;
        let id = induced_aut(g, &ts, &tree, &m, &Permutation::identity(g.vertex_count())).unwrap();
        assert!(id.action.is_identity());
        // generators: rotation, reflection, swap at v1
        let rot = induced_aut(g, &ts, &tree, &m, &b.aut_generators[0]).unwrap();
        let center = (0..5).find(|&v| tree.degree(v) == 4).unwrap();
        assert_eq!(rot.action.apply(center), center);
        let mut v = (center + 1) % 5;
        for _ in 0..4 {
            v = rot.action.apply(v);
        }
        assert_eq!(v, (center + 1) % 5);
        assert!(rot.action.0.iter().enumerate().filter(|&(i, &j)| i != j).count() == 4);
        let swap = induced_aut(g, &ts, &tree, &m, &b.aut_generators[2]).unwrap();
        assert!(swap.action.is_identity());
    }

    #[test]
    fn foreign_automorphism_is_rejected() {
        let (b, ts, tree, m) = setup(Family::TwoSidedLine, 3);
        let g = &b.graph;
        let half = g.set_of(&["x:-3", "x:-2", "x:-1"]).unwrap();
        let ts2 = check_tree_set(g, &[half.clone(), half.complement()]).unwrap();
        let tree2 = build_cut_tree(&ts2).unwrap();
        let m2 = phi(g, &ts2, &tree2).unwrap();
        // the reflection preserves E_L but not the half-line pair
        assert!(induced_aut(g, &ts, &tree, &m, &b.aut_generators[0]).is_ok());
        assert!(matches!(induced_aut(g, &ts2, &tree2, &m2, &b.aut_generators[0]), Err(Error::Input(_))));
    }

    #[test]
    fn dot_is_deterministic() {
        let (_, _, tree, m) = setup(Family::CycleWithPendantPairs(4), 2);
        let a = tree_to_dot(&tree, Some(&m));
        assert_eq!(a, tree_to_dot(&tree, Some(&m)));
        assert_eq!(a.matches(" -- ").count(), 4);
    }
}
