//! Brute-force oracles and the instance list shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use structree::{
    generate, graph_automorphisms, induced_aut, qi_constants, Edge, Error, Family, FamilySpec, Permutation, Structure, TreeSet, TruncatedGraph, VertexSet,
};

pub fn adjacency(g: &TruncatedGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for &(x, y) in g.edges() {
        adj[x].push(y);
        adj[y].push(x);
    }
    adj
}

fn connected(adj: &[Vec<usize>], inside: &[bool]) -> bool {
    let Some(start) = inside.iter().position(|&b| b) else {
        return false;
    };
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if inside[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == inside.iter().filter(|&&b| b).count()
}

/// Tight cuts through `p` with at most `k` boundary edges, by trying every
/// subset that holds the smaller endpoint and misses the other.
pub fn brute_tight_cuts(g: &TruncatedGraph, p: Edge, k: usize) -> Vec<VertexSet> {
    let n = g.vertex_count();
    assert!(n <= 20, "subset filtering is exponential");
    let (u, v) = (p.0.min(p.1), p.0.max(p.1));
    let adj = adjacency(g);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << u) == 0 || mask & (1 << v) != 0 {
            continue;
        }
        let inside: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        let outside: Vec<bool> = inside.iter().map(|b| !b).collect();
        let boundary = g.edges().iter().filter(|&&(x, y)| inside[x] != inside[y]).count();
        if boundary <= k && connected(&adj, &inside) && connected(&adj, &outside) {
            out.push(VertexSet::from_vertices(n, (0..n).filter(|&i| inside[i])));
        }
    }
    out.sort();
    out
}

/// Every color-preserving automorphism, by plain backtracking.
pub fn brute_automorphisms(adj: &[Vec<usize>], colors: &[u32]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut edge = vec![vec![false; n]; n];
    for (v, ns) in adj.iter().enumerate() {
        for &w in ns {
            edge[v][w] = true;
        }
    }
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(i: usize, edge: &[Vec<bool>], adj: &[Vec<usize>], colors: &[u32], image: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = adj.len();
        if i == n {
            out.push(image.to_vec());
            return;
        }
        for c in 0..n {
            if used[c] || colors[c] != colors[i] || adj[c].len() != adj[i].len() {
                continue;
            }
            if (0..i).any(|j| edge[i][j] != edge[c][image[j]]) {
                continue;
            }
            image[i] = c;
            used[c] = true;
            go(i + 1, edge, adj, colors, image, used, out);
            used[c] = false;
        }
        image[i] = usize::MAX;
    }
    go(0, &edge, adj, colors, &mut image, &mut used, &mut out);
    out
}

/// Automorphisms of a graph that keep the frontier in place.
pub fn brute_graph_automorphisms(g: &TruncatedGraph) -> Vec<Vec<usize>> {
    let colors: Vec<u32> = g.vertices().map(|v| u32::from(g.is_frontier(v))).collect();
    brute_automorphisms(&adjacency(g), &colors)
}

/// Cuts pointing at `x`: members containing `x` with no other member
/// containing `x` strictly inside them.
pub fn pointing_by_definition(ts: &TreeSet, x: usize) -> Vec<usize> {
    let holding: Vec<usize> = (0..ts.len()).filter(|&e| ts.cut(e).contains(x)).collect();
    holding
        .iter()
        .copied()
        .filter(|&e| !holding.iter().any(|&f| f != e && ts.cut(f).is_strict_subset(ts.cut(e))))
        .collect()
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i:02}")).collect()
}

/// Connected graph on `n` vertices: a random spanning tree plus `extra`
/// random edges. No frontier.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> TruncatedGraph {
    let names = numbered(n);
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.insert((j, i));
    }
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let pairs: Vec<(String, String)> = edges.into_iter().map(|(a, b)| (names[a].clone(), names[b].clone())).collect();
    TruncatedGraph::new(&names, &pairs, &[], None, None).unwrap()
}

pub fn path(n: usize) -> TruncatedGraph {
    let names = numbered(n);
    let pairs: Vec<(String, String)> = (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
    TruncatedGraph::new(&names, &pairs, &[], None, None).unwrap()
}

pub fn cycle(n: usize) -> TruncatedGraph {
    let names = numbered(n);
    let pairs: Vec<(String, String)> = (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
    TruncatedGraph::new(&names, &pairs, &[], None, None).unwrap()
}

/// A random tree; its edge cuts (both sides of every edge) form a tree set.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> (TruncatedGraph, Vec<VertexSet>) {
    let g = random_connected(rng, n, 0);
    let cuts = edge_cuts(&g);
    (g, cuts)
}

pub fn edge_cuts(g: &TruncatedGraph) -> Vec<VertexSet> {
    let adj = adjacency(g);
    let mut cuts = Vec::new();
    for &(x, y) in g.edges() {
        let mut inside = vec![false; g.vertex_count()];
        inside[x] = true;
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !inside[w] && !(v == x && w == y) {
                    inside[w] = true;
                    stack.push(w);
                }
            }
        }
        let side = VertexSet::from_vertices(g.vertex_count(), (0..g.vertex_count()).filter(|&i| inside[i]));
        cuts.push(side.complement());
        cuts.push(side);
    }
    cuts
}

pub struct Instance {
    pub label: String,
    pub graph: TruncatedGraph,
    pub cuts: Vec<VertexSet>,
    pub auts: Vec<Permutation>,
}

/// Every family that ships cuts, at a few radii, plus seeded random trees.
pub fn instances() -> Vec<Instance> {
    let mut plan: Vec<(Family, Vec<u32>)> = vec![
        (Family::TwoSidedLine, vec![3, 4, 5, 6]),
        (Family::CycleWithPendantPairs(3), vec![2]),
        (Family::CycleWithPendantPairs(4), vec![2]),
        (Family::CycleWithPendantPairs(5), vec![2]),
        (Family::BiregularTree(2, 3), vec![2, 3, 4]),
        (Family::BiregularTree(3, 3), vec![2, 3]),
        (Family::RegularTree(3), vec![2, 3, 4]),
        (Family::FreeProductABC, vec![1, 2, 3]),
        (Family::FreeProductAZ2Block, vec![1, 2, 3]),
    ];
    let mut out = Vec::new();
    for (family, radii) in plan.drain(..) {
        for r in radii {
            let b = generate(FamilySpec::new(family, r)).unwrap();
            let mut auts = b.aut_generators.clone();
            // products of pairs reach elements the generators alone miss
            for x in &b.aut_generators {
                for y in &b.aut_generators {
                    auts.push(x.compose(y));
                }
            }
            if b.graph.vertex_count() <= 40 {
                if let Ok(all) = graph_automorphisms(&b.graph, 5_000) {
                    auts.extend(all);
                }
            }
            out.push(Instance {
                label: format!("{family}@{r}"),
                graph: b.graph,
                cuts: b.canonical_cuts,
                auts: dedup(auts),
            });
        }
    }
    let mut rng = rand::SeedableRng::seed_from_u64(7);
    for i in 0..12 {
        let n = 4 + i % 9;
        let (graph, cuts) = random_tree(&mut rng, n);
        let auts = graph_automorphisms(&graph, 5_000).unwrap_or_default();
        out.push(Instance {
            label: format!("random_tree#{i}"),
            graph,
            cuts,
            auts,
        });
    }
    out
}

fn dedup(auts: Vec<Permutation>) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    auts.into_iter().filter(|a| seen.insert(a.0.clone())).collect()
}

/// Re-checks the tree-set, cut-tree, φ and equivariance properties of one
/// instance against definitions. Returns readable violations.
pub fn property_violations(inst: &Instance) -> Vec<String> {
    let mut bad = Vec::new();
    let g = &inst.graph;
    let s = match Structure::build(g, &inst.cuts) {
        Ok(s) => s,
        Err(e) => return vec![format!("build: {e}")],
    };
    let (ts, tree, m) = (&s.tree_set, &s.tree, &s.mapping);
    let n = g.vertex_count();
    let cuts = ts.len();

    if let Err(e) = tree.verify(ts) {
        bad.push(format!("verify: {e}"));
    }

    // ≫ from its definition
    let scan: BTreeSet<(usize, usize)> = ts.points_to_by_scan().into_iter().collect();
    if scan != ts.points_to_pairs().into_iter().collect::<BTreeSet<_>>() {
        bad.push("points-to differs from the scan".into());
    }
    let points = |e: usize, f: usize| scan.contains(&(e, f));

    for e in 0..cuts {
        let c = ts.complement_of(e);
        if ts.cut(c) != &ts.cut(e).complement() {
            bad.push(format!("complement of cut {e}"));
        }
        if tree.origin(c) != tree.terminus(e) || tree.terminus(c) != tree.origin(e) {
            bad.push(format!("T1 at cut {e}"));
        }
        for f in (0..cuts).filter(|&f| f != c && f != e) {
            if points(e, f) != (tree.terminus(e) == tree.origin(f)) {
                bad.push(format!("T2 at cuts {e}, {f}"));
            }
        }
    }

    // coterminality: e = f or e ≫ f*
    let cot = |e: usize, f: usize| e == f || points(e, ts.complement_of(f));
    for e in 0..cuts {
        for f in 0..cuts {
            if cot(e, f) != cot(f, e) {
                bad.push(format!("coterminality not symmetric at {e}, {f}"));
            }
            if cot(e, f) != (tree.terminus(e) == tree.terminus(f)) {
                bad.push(format!("coterminal classes differ from termini at {e}, {f}"));
            }
            if cot(e, f) {
                for d in 0..cuts {
                    if cot(f, d) && !cot(e, d) {
                        bad.push(format!("coterminality not transitive at {e}, {f}, {d}"));
                    }
                }
            }
        }
    }

    // cuts pointing at a vertex share a terminus
    for x in 0..n {
        let pointing = pointing_by_definition(ts, x);
        if pointing != m.pointing[x] {
            bad.push(format!("N({}) differs", g.name(x)));
        }
        let termini: BTreeSet<usize> = pointing.iter().map(|&e| tree.terminus(e)).collect();
        if termini.len() != 1 {
            bad.push(format!("pointing cuts at {} have termini {termini:?}", g.name(x)));
            continue;
        }
        let t = *termini.iter().next().unwrap();
        if m.phi_full[x] != Some(t) || m.phi[x] != (!g.is_frontier(x)).then_some(t) {
            bad.push(format!("φ({}) is not the common terminus", g.name(x)));
        }
    }

    // general Q1 over every pair
    match qi_constants(g, &s) {
        Ok(q) => {
            for x in 0..n {
                for y in x + 1..n {
                    if let (Some(px), Some(py)) = (m.phi_full[x], m.phi_full[y]) {
                        if tree.distance(px, py) > q.a * g.distance(x, y) {
                            bad.push(format!("Q1 fails at {}, {}", g.name(x), g.name(y)));
                        }
                    }
                }
            }
        }
        Err(e) => bad.push(format!("qi_constants: {e}")),
    }

    // regions against their definition
    for v in 0..tree.vertex_count() {
        match structree::region(g, ts, tree, m, v) {
            Ok((r, d)) if r == m.regions[v] && d == m.region_diameters[v] => {}
            _ => bad.push(format!("region of {}", tree.name(v))),
        }
    }

    // equivariance under every automorphism that preserves the cuts
    let domain: Vec<usize> = m.domain().collect();
    let image = m.image();
    for a in &inst.auts {
        if a.0.iter().enumerate().any(|(x, &y)| g.is_frontier(x) != g.is_frontier(y)) || !structree::is_automorphism(g, a) {
            continue;
        }
        let ind = match induced_aut(g, ts, tree, m, a) {
            Ok(i) => i,
            Err(Error::Input(_)) => continue,
            Err(e) => {
                bad.push(format!("induced automorphism: {e}"));
                continue;
            }
        };
        let act = &ind.action;
        let phi = |x: usize| m.phi[x].unwrap();
        for &x in &domain {
            for &y in &domain {
                if tree.distance(phi(x), phi(y)) != tree.distance(phi(a.apply(x)), phi(a.apply(y))) {
                    bad.push(format!("tree distance not preserved at {}, {}", g.name(x), g.name(y)));
                }
            }
        }
        for &v in &image {
            let moved = a.apply_set(&m.preimages[v]);
            for &w in &image {
                if (act.apply(v) == w) != (moved == m.preimages[w]) {
                    bad.push(format!("gᵀ(v) = w disagrees with gφ⁻¹(v) = φ⁻¹(w) at {}, {}", tree.name(v), tree.name(w)));
                }
            }
            let w = act.apply(v);
            if g.set_diameter(&m.preimages[v]).ok() != g.set_diameter(&m.preimages[w]).ok() {
                bad.push(format!("preimage diameter changes along {} -> {}", tree.name(v), tree.name(w)));
            }
        }
        for v in 0..tree.vertex_count() {
            let w = act.apply(v);
            if m.region_diameters[v] != m.region_diameters[w] {
                bad.push(format!("region diameter changes along {} -> {}", tree.name(v), tree.name(w)));
            }
        }
    }

    // δ(e ∩ f) ⊆ δe ∪ δf
    let crosses = |s: &VertexSet, x: usize, y: usize| s.contains(x) != s.contains(y);
    for e in 0..cuts {
        for f in e + 1..cuts {
            let (a, b) = (ts.cut(e), ts.cut(f));
            let both = a.intersection(b);
            let ok = g.edges().iter().all(|&(x, y)| !crosses(&both, x, y) || crosses(a, x, y) || crosses(b, x, y));
            if !ok || !structree::cuts::intersection_boundary_ok(g, a, b) {
                bad.push(format!("δ(e∩f) at cuts {e}, {f}"));
            }
        }
    }
    bad.sort();
    bad.dedup();
    bad
}
