mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{adjacency, brute_automorphisms, brute_graph_automorphisms, brute_tight_cuts, cycle, path, random_connected};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structree::cuts::all_tight_cuts;
use structree::{enumerate_tight_cuts, generate, graph_automorphisms, l_analysis, Family, FamilySpec, Structure, TruncatedGraph, VertexSet};

const BUDGET: u64 = 10_000_000;

fn compare_tight_cuts(g: &TruncatedGraph, label: &str) {
    for &p in g.edges() {
        for k in 1..=3 {
            let fast: Vec<VertexSet> = enumerate_tight_cuts(g, p, k, BUDGET).unwrap().into_iter().map(|c| c.side).collect();
            assert_eq!(fast, brute_tight_cuts(g, p, k), "{label} p={p:?} k={k}");
        }
    }
}

#[test]
fn tight_cuts_on_paths_and_cycles() {
    for n in 5..=8 {
        compare_tight_cuts(&path(n), &format!("P{n}"));
    }
    for n in 3..=8 {
        compare_tight_cuts(&cycle(n), &format!("C{n}"));
    }
}

#[test]
fn tight_cuts_on_a_random_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..50 {
        let n = rng.gen_range(2..=9);
        let extra = rng.gen_range(0..=n);
        let g = random_connected(&mut rng, n, extra);
        compare_tight_cuts(&g, &format!("sample {i}"));
    }
}

#[test]
fn all_tight_cuts_takes_both_sides() {
    let g = cycle(6);
    let all: BTreeSet<VertexSet> = all_tight_cuts(&g, 2, BUDGET).unwrap().into_iter().map(|c| c.side).collect();
    // arcs of a 6-cycle: 6 starting points times lengths 1..5
    assert_eq!(all.len(), 30);
    assert!(all.iter().all(|s| all.contains(&s.complement())));
}

#[test]
fn automorphism_counts_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut graphs = vec![path(5), cycle(6), cycle(7)];
    for _ in 0..20 {
        let n = rng.gen_range(2..=8);
        let extra = rng.gen_range(0..=3);
        graphs.push(random_connected(&mut rng, n, extra));
    }
    for r in 1..=3 {
        graphs.push(generate(FamilySpec::new(Family::TwoSidedLine, r)).unwrap().graph);
        graphs.push(generate(FamilySpec::new(Family::BiregularTree(2, 3), r)).unwrap().graph);
    }
    graphs.push(generate(FamilySpec::new(Family::CycleWithPendantPairs(4), 2)).unwrap().graph);
    for g in &graphs {
        let fast: BTreeSet<Vec<usize>> = graph_automorphisms(g, BUDGET).unwrap().into_iter().map(|p| p.0).collect();
        let slow: BTreeSet<Vec<usize>> = brute_graph_automorphisms(g).into_iter().collect();
        assert_eq!(fast, slow, "{} vertices", g.vertex_count());
    }
}

/// Counts for L from scratch: automorphisms of X preserving E, of T, and the
/// distinct actions on coterminality classes.
fn brute_l_counts(g: &TruncatedGraph, s: &Structure) -> (usize, usize, usize) {
    let ts = &s.tree_set;
    let members: BTreeMap<VertexSet, usize> = ts.cuts().iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut preserving = 0;
    let mut actions = BTreeSet::new();
    for a in brute_graph_automorphisms(g) {
        let image = |e: &VertexSet| VertexSet::from_vertices(g.vertex_count(), e.iter().map(|x| a[x]));
        let Some(on_cuts) = ts.cuts().iter().map(|e| members.get(&image(e)).copied()).collect::<Option<Vec<usize>>>() else {
            continue;
        };
        preserving += 1;
        let action: Vec<usize> = (0..s.tree.vertex_count()).map(|v| s.tree.class_of(on_cuts[s.tree.class(v)[0]])).collect();
        actions.insert(action);
    }
    let n = s.tree.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in s.tree.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let tree_auts = brute_automorphisms(&adj, &vec![0; n]).len();
    (preserving, tree_auts, actions.len())
}

#[test]
fn pendant_cycle_l_counts() {
    let b = generate(FamilySpec::new(Family::CycleWithPendantPairs(4), 2)).unwrap();
    let s = Structure::build(&b.graph, &b.canonical_cuts).unwrap();
    let brute = brute_l_counts(&b.graph, &s);
    assert_eq!(brute, (128, 24, 8));
    let l = l_analysis(&b.graph, &s.tree_set, &s.tree, &s.mapping, BUDGET).unwrap();
    assert_eq!((l.aut_x as usize, l.aut_t as usize, l.image as usize), brute);
    assert!(!l.injective && !l.surjective);
}

#[test]
fn l_counts_on_small_instances() {
    for (family, r) in [
        (Family::CycleWithPendantPairs(3), 2),
        (Family::CycleWithPendantPairs(5), 2),
        (Family::TwoSidedLine, 3),
        (Family::BiregularTree(2, 3), 2),
    ] {
        let b = generate(FamilySpec::new(family, r)).unwrap();
        let s = Structure::build(&b.graph, &b.canonical_cuts).unwrap();
        let l = l_analysis(&b.graph, &s.tree_set, &s.tree, &s.mapping, BUDGET).unwrap();
        assert_eq!((l.aut_x as usize, l.aut_t as usize, l.image as usize), brute_l_counts(&b.graph, &s), "{family}");
    }
}

#[test]
fn tree_automorphisms_match_brute_force() {
    let b = generate(FamilySpec::new(Family::BiregularTree(2, 3), 3)).unwrap();
    let s = Structure::build(&b.graph, &b.canonical_cuts).unwrap();
    let n = s.tree.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in s.tree.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let fast: BTreeSet<Vec<usize>> = s.tree.automorphisms(BUDGET).unwrap().into_iter().map(|p| p.0).collect();
    let slow: BTreeSet<Vec<usize>> = brute_automorphisms(&adj, &vec![0; n]).into_iter().collect();
    assert_eq!(fast, slow);
}

#[test]
fn adjacency_oracle_is_symmetric() {
    let g = cycle(5);
    let adj = adjacency(&g);
    assert!(adj.iter().all(|ns| ns.len() == 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_equals_subset_filtering(seed in any::<u64>(), n in 2usize..=9, extra in 0usize..=6, k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, extra);
        for &p in g.edges() {
            let fast: Vec<VertexSet> = enumerate_tight_cuts(&g, p, k, BUDGET).unwrap().into_iter().map(|c| c.side).collect();
            prop_assert_eq!(fast, brute_tight_cuts(&g, p, k));
        }
    }
}
