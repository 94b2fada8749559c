//! Truncations of the example graph families, each bundled with its canonical
//! cut family, frontier-preserving automorphisms and orbit claims.
//!
//! Every family assigns each vertex a *level*: the exhaustion index used for
//! truncating. For locally finite families the level is the distance from the
//! center, so the radius-`r` truncation is the ball `B(center, r)`. The
//! non-locally-finite families (`broom`, `mixed_end_fan`, `free_product_a_Z2block`)
//! have balls of radius one that are already infinite; there the level is the
//! generator's construction depth and the truncation keeps levels `<= r`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TruncatedGraph, Vertex, VertexSet};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    TwoSidedLine,
    CycleWithPendantPairs(u32),
    BiregularTree(u32, u32),
    RegularTree(u32),
    Grid2d,
    FreeProductABC,
    FreeProductAZ2Block,
    Broom,
    MixedEndFan,
}

impl Family {
    pub const ALL_NAMES: [&'static str; 9] = [
        "two_sided_line",
        "cycle_with_pendant_pairs:N",
        "biregular_tree:P,Q",
        "regular_tree:D",
        "grid2d",
        "free_product_a_b_c",
        "free_product_a_Z2block",
        "broom",
        "mixed_end_fan",
    ];

    /// Smallest radius at which the family's core fits.
    pub fn min_radius(self) -> u32 {
        match self {
            Family::CycleWithPendantPairs(_) | Family::MixedEndFan => 2,
            _ => 1,
        }
    }

    pub fn has_canonical_cuts(self) -> bool {
        !matches!(self, Family::Grid2d | Family::Broom | Family::MixedEndFan)
    }

    /// Whether the truncation is the whole (finite) graph.
    pub fn is_finite(self) -> bool {
        matches!(self, Family::CycleWithPendantPairs(_))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::TwoSidedLine => write!(f, "two_sided_line"),
            Family::CycleWithPendantPairs(n) => write!(f, "cycle_with_pendant_pairs:{n}"),
            Family::BiregularTree(p, q) => write!(f, "biregular_tree:{p},{q}"),
            Family::RegularTree(d) => write!(f, "regular_tree:{d}"),
            Family::Grid2d => write!(f, "grid2d"),
            Family::FreeProductABC => write!(f, "free_product_a_b_c"),
            Family::FreeProductAZ2Block => write!(f, "free_product_a_Z2block"),
            Family::Broom => write!(f, "broom"),
            Family::MixedEndFan => write!(f, "mixed_end_fan"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let nums = |a: Option<&str>| -> Result<Vec<u32>> {
            a.ok_or_else(|| Error::input(format!("family {name} needs parameters")))?
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::input(format!("bad family parameter {x:?}"))))
                .collect()
        };
        let family = match name {
            "two_sided_line" => Family::TwoSidedLine,
            "grid2d" => Family::Grid2d,
            "free_product_a_b_c" => Family::FreeProductABC,
            "free_product_a_Z2block" => Family::FreeProductAZ2Block,
            "broom" => Family::Broom,
            "mixed_end_fan" => Family::MixedEndFan,
            "cycle_with_pendant_pairs" => match nums(args)?.as_slice() {
                &[n] if n >= 3 => Family::CycleWithPendantPairs(n),
                _ => return Err(Error::input("cycle_with_pendant_pairs needs one n >= 3")),
            },
            "biregular_tree" => match nums(args)?.as_slice() {
                &[p, q] if p >= 2 && q >= 2 => Family::BiregularTree(p, q),
                _ => return Err(Error::input("biregular_tree needs p,q >= 2")),
            },
            "regular_tree" => match nums(args)?.as_slice() {
                &[d] if d >= 2 => Family::RegularTree(d),
                _ => return Err(Error::input("regular_tree needs d >= 2")),
            },
            _ => {
                return Err(Error::input(format!(
                    "unknown family {name:?}; expected one of {}",
                    Family::ALL_NAMES.join(", ")
                )))
            }
        };
        if args.is_some()
            && matches!(
                name,
                "two_sided_line" | "grid2d" | "free_product_a_b_c" | "free_product_a_Z2block" | "broom" | "mixed_end_fan"
            )
        {
            return Err(Error::input(format!("family {name} takes no parameters")));
        }
        Ok(family)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub radius: u32,
}

impl FamilySpec {
    pub fn new(family: Family, radius: u32) -> Self {
        FamilySpec { family, radius }
    }
}

/// A claimed vertex orbit of the (infinite) automorphism group, restricted to
/// the truncation, together with the covering radius `r(x0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClaim {
    pub representative: Vertex,
    pub orbit: VertexSet,
    pub radius: u32,
}

#[derive(Debug, Clone)]
pub struct FamilyBundle {
    pub spec: FamilySpec,
    pub graph: TruncatedGraph,
    /// Exhaustion level of every vertex.
    pub levels: Vec<u32>,
    pub canonical_cuts: Vec<VertexSet>,
    pub aut_generators: Vec<Permutation>,
    pub orbit_claims: Vec<OrbitClaim>,
    /// Orbit claims for the stabilizer of an end, where the family has one
    /// acting almost transitively.
    pub end_stabilizer_claims: Vec<OrbitClaim>,
    /// Vertices whose degree grows without bound with the truncation radius.
    pub unbounded_degree: VertexSet,
}

impl FamilyBundle {
    /// Vertices with level at most `r`.
    pub fn level_set(&self, r: u32) -> VertexSet {
        VertexSet::from_vertices(self.graph.vertex_count(), self.graph.vertices().filter(|&v| self.levels[v] <= r))
    }
}

/// Builds the radius-`r` truncation of a family.
pub fn generate(spec: FamilySpec) -> Result<FamilyBundle> {
    let min = spec.family.min_radius();
    if spec.radius < min {
        return Err(Error::input(format!("{} needs radius >= {min}, got {}", spec.family, spec.radius)));
    }
    let raw = match spec.family {
        Family::TwoSidedLine => line(spec.radius),
        Family::CycleWithPendantPairs(n) => cycle_with_pendants(n),
        Family::BiregularTree(p, q) => tree(p, q, spec.radius),
        Family::RegularTree(d) => tree(d, d, spec.radius),
        Family::Grid2d => grid(spec.radius),
        Family::FreeProductABC => free_product(spec.radius, false),
        Family::FreeProductAZ2Block => free_product(spec.radius, true),
        Family::Broom => broom(spec.radius),
        Family::MixedEndFan => fan(spec.radius),
    };
    raw.finish(spec)
}

/// Family data keyed by identifiers, before indexing.
#[derive(Default)]
struct Raw {
    levels: BTreeMap<String, u32>,
    edges: Vec<(String, String)>,
    center: String,
    /// Whether `radius` is recorded on the graph (levels equal distances).
    metric_radius: bool,
    finite: bool,
    cuts: Vec<Vec<String>>,
    /// Cut family given by edges: the side containing the second endpoint.
    edge_cuts: Vec<(String, String)>,
    auts: Vec<HashMap<String, String>>,
    orbit_claims: Vec<(String, Vec<String>, u32)>,
    end_claims: Vec<(String, Vec<String>, u32)>,
    unbounded_degree: Vec<String>,
}

impl Raw {
    fn vertex(&mut self, name: impl Into<String>, level: u32) {
        self.levels.insert(name.into(), level);
    }

    fn edge(&mut self, u: impl Into<String>, v: impl Into<String>) {
        self.edges.push((u.into(), v.into()));
    }

    fn finish(self, spec: FamilySpec) -> Result<FamilyBundle> {
        let names: Vec<&str> = self.levels.keys().map(String::as_str).collect();
        let max_level = if self.finite { None } else { Some(spec.radius) };
        let frontier: Vec<&str> = match max_level {
            Some(r) => self.levels.iter().filter(|&(_, &l)| l == r).map(|(n, _)| n.as_str()).collect(),
            None => Vec::new(),
        };
        let radius = if self.metric_radius { max_level } else { None };
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
        let graph = TruncatedGraph::new(&names, &edges, &frontier, Some(&self.center), radius)?;
        let levels: Vec<u32> = graph.names().iter().map(|n| self.levels[n]).collect();

        let mut canonical_cuts = Vec::new();
        for c in &self.cuts {
            canonical_cuts.push(graph.set_of(c)?);
        }
        for (u, v) in &self.edge_cuts {
            let side = edge_side(&graph, graph.vertex(u)?, graph.vertex(v)?);
            canonical_cuts.push(side);
        }
        let mut all: BTreeSet<VertexSet> = BTreeSet::new();
        for c in canonical_cuts {
            all.insert(c.complement());
            all.insert(c);
        }
        let canonical_cuts: Vec<VertexSet> = all.into_iter().collect();

        let mut aut_generators = Vec::new();
        for map in &self.auts {
            let pairs: Vec<(&str, &str)> = map
                .iter()
                .filter(|(a, _)| self.levels.contains_key(*a))
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            aut_generators.push(Permutation::from_names(&graph, &pairs)?);
        }
        let claims = |list: &[(String, Vec<String>, u32)]| -> Result<Vec<OrbitClaim>> {
            list.iter()
                .map(|(rep, orbit, r)| {
                    Ok(OrbitClaim {
                        representative: graph.vertex(rep)?,
                        orbit: graph.set_of(orbit)?,
                        radius: *r,
                    })
                })
                .collect()
        };
        let orbit_claims = claims(&self.orbit_claims)?;
        let end_stabilizer_claims = claims(&self.end_claims)?;
        let unbounded_degree = graph.set_of(&self.unbounded_degree)?;
        Ok(FamilyBundle {
            spec,
            graph,
            levels,
            canonical_cuts,
            aut_generators,
            orbit_claims,
            end_stabilizer_claims,
            unbounded_degree,
        })
    }
}

/// Component of `g - {u v}` containing `v`.
fn edge_side(g: &TruncatedGraph, u: Vertex, v: Vertex) -> VertexSet {
    let mut side = g.empty_set();
    side.insert(v);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if (x == v && y == u) || (x == u && y == v) || side.contains(y) {
                continue;
            }
            side.insert(y);
            queue.push_back(y);
        }
    }
    side
}

fn all_names(raw: &Raw) -> Vec<String> {
    raw.levels.keys().cloned().collect()
}

fn line(r: u32) -> Raw {
    let r = r as i64;
    let name = |k: i64| format!("x:{k}");
    let mut raw = Raw {
        center: name(0),
        metric_radius: true,
        ..Raw::default()
    };
    for k in -r..=r {
        raw.vertex(name(k), k.unsigned_abs() as u32);
        if k > -r {
            raw.edge(name(k - 1), name(k));
        }
    }
    raw.cuts = (-r + 1..r).map(|k| vec![name(k)]).collect();
    raw.auts.push((-r..=r).map(|k| (name(k), name(-k))).collect());
    let all = all_names(&raw);
    raw.orbit_claims.push((name(0), all.clone(), 0));
    raw.end_claims.push((name(0), all, 0));
    raw
}

fn cycle_with_pendants(n: u32) -> Raw {
    let v = |i: u32| format!("v{}", i % n + 1);
    let leaf = |i: u32, s: &str| format!("v{}{s}", i % n + 1);
    let mut raw = Raw {
        center: v(0),
        finite: true,
        ..Raw::default()
    };
    for i in 0..n {
        // levels: distance from v1
        let d = i.min(n - i);
        raw.vertex(v(i), d);
        raw.vertex(leaf(i, "a"), d + 1);
        raw.vertex(leaf(i, "b"), d + 1);
        raw.edge(v(i), v(i + 1));
        raw.edge(v(i), leaf(i, "a"));
        raw.edge(v(i), leaf(i, "b"));
        raw.cuts.push(vec![leaf(i, "a"), leaf(i, "b")]);
    }
    let mut rotation = HashMap::new();
    let mut reflection = HashMap::new();
    for i in 0..n {
        let j = n - i;
        for s in ["", "a", "b"] {
            rotation.insert(leaf(i, s), leaf(i + 1, s));
            reflection.insert(leaf(i, s), leaf(j, s));
        }
    }
    let swap: HashMap<String, String> = [(leaf(0, "a"), leaf(0, "b")), (leaf(0, "b"), leaf(0, "a"))].into_iter().collect();
    raw.auts = vec![rotation, reflection, swap];
    let cycle: Vec<String> = (0..n).map(v).collect();
    raw.orbit_claims.push((v(0), cycle, 1));
    raw
}

/// Ball of radius `r` in the semi-regular tree whose degrees alternate `p`
/// (even depth) and `q` (odd depth) from the center. Vertices are named by
/// their child-index path from the root `t`.
fn tree(p: u32, q: u32, r: u32) -> Raw {
    let mut raw = Raw {
        center: "t".into(),
        metric_radius: true,
        ..Raw::default()
    };
    let children = |depth: u32| -> u32 {
        match (depth, depth % 2) {
            (0, _) => p,
            (_, 0) => p - 1,
            _ => q - 1,
        }
    };
    let mut layer: Vec<String> = vec!["t".into()];
    raw.vertex("t", 0);
    let mut even = vec!["t".to_string()];
    let mut odd = Vec::new();
    for depth in 0..r {
        let mut next = Vec::new();
        for u in &layer {
            let k = children(depth);
            for i in 0..k {
                let c = format!("{u}.{i}");
                raw.vertex(c.clone(), depth + 1);
                raw.edge(u.clone(), c.clone());
                raw.edge_cuts.push((u.clone(), c.clone()));
                if (depth + 1) % 2 == 0 {
                    even.push(c.clone());
                } else {
                    odd.push(c.clone());
                }
                next.push(c);
            }
            // adjacent transpositions of child subtrees
            for i in 0..k.saturating_sub(1) {
                let (a, b) = (format!("{u}.{i}"), format!("{u}.{}", i + 1));
                raw.auts.push(subtree_swap(&a, &b));
            }
        }
        layer = next;
    }
    // the swaps were built before the deeper vertices existed; fill them in
    let names = all_names(&raw);
    for map in &mut raw.auts {
        let pairs: Vec<(String, String)> = map.drain().collect();
        for (a, b) in pairs {
            for n in &names {
                if let Some(rest) = n.strip_prefix(&a) {
                    if rest.is_empty() || rest.starts_with('.') {
                        map.insert(n.clone(), format!("{b}{rest}"));
                        map.insert(format!("{b}{rest}"), n.clone());
                    }
                }
            }
        }
    }
    if p == q {
        raw.orbit_claims.push(("t".into(), names.clone(), 0));
        raw.end_claims.push(("t".into(), names, 0));
    } else {
        raw.orbit_claims.push(("t".into(), even.clone(), 1));
        raw.end_claims.push(("t".into(), even, 1));
    }
    raw
}

fn subtree_swap(a: &str, b: &str) -> HashMap<String, String> {
    HashMap::from([(a.to_string(), b.to_string())])
}

fn grid(r: u32) -> Raw {
    let r = r as i64;
    let name = |i: i64, j: i64| format!("g:{i},{j}");
    let mut raw = Raw {
        center: name(0, 0),
        metric_radius: true,
        ..Raw::default()
    };
    let mut rot = HashMap::new();
    let mut refl = HashMap::new();
    for i in -r..=r {
        for j in -r..=r {
            let l = i.abs() + j.abs();
            if l > r {
                continue;
            }
            raw.vertex(name(i, j), l as u32);
            if (i + 1).abs() + j.abs() <= r {
                raw.edge(name(i, j), name(i + 1, j));
            }
            if i.abs() + (j + 1).abs() <= r {
                raw.edge(name(i, j), name(i, j + 1));
            }
            rot.insert(name(i, j), name(-j, i));
            refl.insert(name(i, j), name(j, i));
        }
    }
    raw.auts = vec![rot, refl];
    let all = all_names(&raw);
    raw.orbit_claims.push((name(0, 0), all, 0));
    raw
}

/// A syllable of a normal-form word in Z * Z^2 = <a> * <b, c>.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Syllable {
    A(i64),
    Z(i64, i64),
}

type Word = Vec<Syllable>;

fn word_name(w: &[Syllable]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|s| match s {
            Syllable::A(k) => format!("a{k}"),
            Syllable::Z(i, j) => format!("b{i}c{j}"),
        })
        .collect::<Vec<_>>()
        .join(".")
}

fn word_length(w: &[Syllable]) -> u32 {
    w.iter()
        .map(|s| match *s {
            Syllable::A(k) => k.unsigned_abs() as u32,
            Syllable::Z(i, j) => (i.abs() + j.abs()) as u32,
        })
        .sum()
}

/// Right multiplication by a syllable, keeping normal form.
fn multiply(w: &[Syllable], s: Syllable) -> Word {
    let mut out = w.to_vec();
    match (out.last().copied(), s) {
        (Some(Syllable::A(k)), Syllable::A(l)) => {
            out.pop();
            if k + l != 0 {
                out.push(Syllable::A(k + l));
            }
        }
        (Some(Syllable::Z(i, j)), Syllable::Z(k, l)) => {
            out.pop();
            if (i + k, j + l) != (0, 0) {
                out.push(Syllable::Z(i + k, j + l));
            }
        }
        _ => out.push(s),
    }
    out
}

/// Ball of radius `r` in the Cayley graph of Z * Z^2 for generators
/// `a, b, c`. With `block` set, the Z^2 syllables become single generators:
/// every coset `pZ^2` (cut to the words of the ball) is a clique, the levels
/// stay the `a, b, c` word lengths.
fn free_product(r: u32, block: bool) -> Raw {
    let gens = [
        Syllable::A(1),
        Syllable::A(-1),
        Syllable::Z(1, 0),
        Syllable::Z(-1, 0),
        Syllable::Z(0, 1),
        Syllable::Z(0, -1),
    ];
    let mut words: BTreeMap<Word, u32> = BTreeMap::from([(Vec::new(), 0)]);
    let mut queue = VecDeque::from([Vec::new()]);
    while let Some(w) = queue.pop_front() {
        let l = words[&w];
        if l == r {
            continue;
        }
        for &s in &gens {
            let x = multiply(&w, s);
            if !words.contains_key(&x) {
                debug_assert_eq!(word_length(&x), l + 1);
                words.insert(x.clone(), l + 1);
                queue.push_back(x);
            }
        }
    }

    let mut raw = Raw {
        center: "1".into(),
        metric_radius: !block,
        ..Raw::default()
    };
    for (w, &l) in &words {
        raw.vertex(word_name(w), l);
    }
    let mut blocks: BTreeMap<Word, Vec<String>> = BTreeMap::new();
    for w in words.keys() {
        for &s in &gens[..1] {
            let x = multiply(w, s);
            if words.contains_key(&x) {
                raw.edge(word_name(w), word_name(&x));
                raw.edge_cuts.push((word_name(w), word_name(&x)));
            }
        }
        if block {
            let prefix: Word = match w.last() {
                Some(Syllable::Z(..)) => w[..w.len() - 1].to_vec(),
                _ => w.clone(),
            };
            blocks.entry(prefix).or_default().push(word_name(w));
        } else {
            for &s in &gens[2..] {
                let x = multiply(w, s);
                if words.contains_key(&x) && word_name(w) < word_name(&x) {
                    raw.edge(word_name(w), word_name(&x));
                }
            }
        }
    }
    for members in blocks.values() {
        for (i, u) in members.iter().enumerate() {
            for v in &members[i + 1..] {
                raw.edge(u.clone(), v.clone());
            }
        }
    }
    if block {
        raw.unbounded_degree = all_names(&raw);
    }

    // generator-permuting group automorphisms preserve word length
    let maps: [fn(Syllable) -> Syllable; 3] = [
        |s| match s {
            Syllable::A(k) => Syllable::A(-k),
            z => z,
        },
        |s| match s {
            Syllable::Z(i, j) => Syllable::Z(j, i),
            a => a,
        },
        |s| match s {
            Syllable::Z(i, j) => Syllable::Z(-i, j),
            a => a,
        },
    ];
    for f in maps {
        raw.auts.push(
            words
                .keys()
                .map(|w| {
                    let img: Word = w.iter().map(|&s| f(s)).collect();
                    (word_name(w), word_name(&img))
                })
                .collect(),
        );
    }
    let all = all_names(&raw);
    raw.orbit_claims.push(("1".into(), all, 0));
    raw
}

/// A hub with pendant paths ("tails") of lengths 1..=r.
fn broom(r: u32) -> Raw {
    let mut raw = Raw {
        center: "hub".into(),
        metric_radius: true,
        ..Raw::default()
    };
    raw.vertex("hub", 0);
    for k in 1..=r {
        let mut prev = "hub".to_string();
        for i in 1..=k {
            let v = format!("t{k}.{i}");
            raw.vertex(v.clone(), i);
            raw.edge(prev, v.clone());
            prev = v;
        }
    }
    raw.unbounded_degree = vec!["hub".into()];
    // tails have distinct lengths, so every orbit is a single vertex
    raw.orbit_claims.push(("hub".into(), vec!["hub".into()], 2));
    raw
}

/// A hub joined to every vertex `h_k` of a ray, and a second ray `d_k` with
/// `d_0 = h_0` whose vertex `d_k` hangs over `h_k` by a path of length `k`.
/// Column `k` (the vertices `h_k`, `d_k` and the path between them) has
/// level `k + 1`; the radius-`r` truncation keeps columns `0..r`.
fn fan(r: u32) -> Raw {
    let mut raw = Raw {
        center: "hub".into(),
        ..Raw::default()
    };
    raw.vertex("hub", 0);
    let col = |k: u32, j: u32| -> String {
        if j == 0 {
            format!("h{k}")
        } else if j == k {
            format!("d{k}")
        } else {
            format!("c{k}.{j}")
        }
    };
    for k in 0..r {
        for j in 0..=k {
            raw.vertex(col(k, j), k + 1);
            if j > 0 {
                raw.edge(col(k, j - 1), col(k, j));
            }
        }
        raw.edge("hub", col(k, 0));
        if k > 0 {
            raw.edge(col(k - 1, 0), col(k, 0));
            raw.edge(col(k - 1, k - 1), col(k, k));
        }
    }
    raw.unbounded_degree = vec!["hub".into()];
    raw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::is_automorphism;

    fn gen(f: Family, r: u32) -> FamilyBundle {
        generate(FamilySpec::new(f, r)).unwrap()
    }

    #[test]
    fn cycle_with_pendants_counts() {
        let b = gen(Family::CycleWithPendantPairs(4), 2);
        assert_eq!(b.graph.vertex_count(), 12);
        assert_eq!(b.graph.edge_count(), 12);
        assert_eq!(b.canonical_cuts.len(), 8);
        assert!(b.graph.frontier().is_empty());
    }

    #[test]
    fn radius_too_small_is_rejected() {
        assert!(generate(FamilySpec::new(Family::CycleWithPendantPairs(4), 1)).is_err());
        assert!(generate(FamilySpec::new(Family::TwoSidedLine, 0)).is_err());
    }

    #[test]
    fn line_shape() {
        for r in 1..6 {
            let b = gen(Family::TwoSidedLine, r);
            assert_eq!(b.graph.vertex_count() as u32, 2 * r + 1);
            assert_eq!(b.graph.set_names(b.graph.frontier()), [format!("x:-{r}"), format!("x:{r}")]);
            assert_eq!(b.canonical_cuts.len() as u32, 2 * (2 * r - 1));
        }
    }

    #[test]
    fn broom_has_tails_one_to_r() {
        let b = gen(Family::Broom, 5);
        assert_eq!(b.graph.vertex_count(), 1 + 15);
        assert_eq!(b.graph.degree(b.graph.vertex("hub").unwrap()), 5);
        assert!(b.canonical_cuts.is_empty());
        assert_eq!(b.graph.set_names(b.graph.frontier()), ["t5.5"]);
    }

    #[test]
    fn fan_and_block_have_unbounded_degree_vertices() {
        let f = gen(Family::MixedEndFan, 4);
        let hub = f.graph.vertex("hub").unwrap();
        assert_eq!(f.graph.degree(hub), 4);
        assert!(f.unbounded_degree.contains(hub));
        let z = gen(Family::FreeProductAZ2Block, 2);
        let one = z.graph.vertex("1").unwrap();
        // 12 other block elements of length <= 2 plus a and a^-1
        assert_eq!(z.graph.degree(one), 14);
    }

    #[test]
    fn free_product_sizes() {
        let sizes: Vec<usize> = (1..5).map(|r| gen(Family::FreeProductABC, r).graph.vertex_count()).collect();
        assert_eq!(sizes, [7, 33, 143, 609]);
    }

    #[test]
    fn biregular_tree_degrees() {
        let b = gen(Family::BiregularTree(2, 3), 4);
        let g = &b.graph;
        for v in g.vertices() {
            if g.is_frontier(v) {
                assert_eq!(g.degree(v), 1);
            } else {
                let want = if b.levels[v].is_multiple_of(2) { 2 } else { 3 };
                assert_eq!(g.degree(v), want, "{}", g.name(v));
            }
        }
        assert_eq!(b.canonical_cuts.len(), 2 * g.edge_count());
    }

    #[test]
    fn declared_automorphisms_verify() {
        for f in [
            Family::TwoSidedLine,
            Family::CycleWithPendantPairs(5),
            Family::BiregularTree(2, 3),
            Family::RegularTree(3),
            Family::Grid2d,
            Family::FreeProductABC,
            Family::FreeProductAZ2Block,
        ] {
            let b = gen(f, 3);
            assert!(!b.aut_generators.is_empty());
            for a in &b.aut_generators {
                assert!(is_automorphism(&b.graph, a), "{f}");
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for s in [
            "two_sided_line",
            "cycle_with_pendant_pairs:4",
            "biregular_tree:2,3",
            "regular_tree:3",
            "free_product_a_Z2block",
        ] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        assert!("cycle_with_pendant_pairs:2".parse::<Family>().is_err());
        assert!("nope".parse::<Family>().is_err());
        assert!("broom:3".parse::<Family>().is_err());
    }
}
