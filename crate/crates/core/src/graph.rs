//! Finite graphs standing in for balls of (possibly infinite) graphs.
//!
//! A [`TruncatedGraph`] is a connected simple graph together with an optional
//! truncation center, radius and the frontier sphere where the finite model
//! was cut out of the infinite one. Vertex identifiers are strings; internally
//! every vertex is an index into the identifier list sorted ascending, so
//! index order and identifier order coincide.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex inside one [`TruncatedGraph`].
pub type Vertex = usize;

/// Unordered edge, stored with the smaller index first.
pub type Edge = (Vertex, Vertex);

/// A set of vertices of one graph. The complement is taken relative to the
/// graph the set was created for.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Size of the ambient vertex set.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: Vertex) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.bits.set(v, false);
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.bits.ones().next()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_strict_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSet { bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSet { bits }
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

/// Lexicographic order of the sorted member lists, which is the same as the
/// order of the sorted identifier lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Edge- and vertex-boundaries of a vertex set `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundaries {
    /// δe: edges with exactly one endpoint in `e`.
    pub edges: Vec<Edge>,
    /// θe: vertices outside `e` adjacent to `e`.
    pub outer: VertexSet,
    /// Iθe = θ(e*): vertices of `e` adjacent to the complement.
    pub inner: VertexSet,
}

/// A connected piece of an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub members: VertexSet,
    pub touches_frontier: bool,
}

/// Serialized form of a graph: identifiers are strings, edges are listed with
/// sorted endpoints and the list is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub frontier: Vec<String>,
    pub center: Option<String>,
    pub radius: Option<u32>,
}

#[derive(Debug)]
pub struct TruncatedGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
    frontier: VertexSet,
    center: Option<Vertex>,
    radius: Option<u32>,
    dist: OnceLock<Vec<u32>>,
}

impl Clone for TruncatedGraph {
    fn clone(&self) -> Self {
        TruncatedGraph {
            names: self.names.clone(),
            index: self.index.clone(),
            adj: self.adj.clone(),
            edges: self.edges.clone(),
            frontier: self.frontier.clone(),
            center: self.center,
            radius: self.radius,
            dist: OnceLock::new(),
        }
    }
}

impl TruncatedGraph {
    /// Builds and validates a graph. Vertex identifiers may be given in any
    /// order; they are sorted internally.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)], frontier: &[S], center: Option<&str>, radius: Option<u32>) -> Result<Self> {
        let mut names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_owned()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate vertex {:?}", w[0])));
        }
        if names.is_empty() {
            return Err(Error::input("graph has no vertices"));
        }
        let index: HashMap<String, Vertex> = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::input(format!("unknown vertex {s:?}")));

        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        let mut edge_list = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let (u, v) = (lookup(u.as_ref())?, lookup(v.as_ref())?);
            if u == v {
                return Err(Error::input(format!("loop at {:?}", names[u])));
            }
            edge_list.push((u.min(v), u.max(v)));
        }
        edge_list.sort_unstable();
        if let Some(w) = edge_list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("multiple edge {:?}-{:?}", names[w[0].0], names[w[0].1])));
        }
        for &(u, v) in &edge_list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }

        let mut frontier_set = VertexSet::empty(n);
        for f in frontier {
            frontier_set.insert(lookup(f.as_ref())?);
        }
        let center = center.map(lookup).transpose()?;

        let g = TruncatedGraph {
            names,
            index,
            adj,
            edges: edge_list,
            frontier: frontier_set,
            center,
            radius,
            dist: OnceLock::new(),
        };
        if !g.is_connected() {
            return Err(Error::input("graph is not connected"));
        }
        if let (Some(c), Some(r)) = (g.center, g.radius) {
            let from_center = g.bfs(c);
            if let Some(f) = g.frontier.iter().find(|&f| from_center[f] != r) {
                return Err(Error::input(format!("frontier vertex {:?} is not at distance {r} from the center", g.names[f])));
            }
        }
        Ok(g)
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let edges: Vec<(&str, &str)> = json.edges.iter().map(|[u, v]| (u.as_str(), v.as_str())).collect();
        let vertices: Vec<&str> = json.vertices.iter().map(String::as_str).collect();
        let frontier: Vec<&str> = json.frontier.iter().map(String::as_str).collect();
        TruncatedGraph::new(&vertices, &edges, &frontier, json.center.as_deref(), json.radius)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self.edges.iter().map(|&(u, v)| [self.names[u].clone(), self.names[v].clone()]).collect(),
            frontier: self.frontier.iter().map(|v| self.names[v].clone()).collect(),
            center: self.center.map(|c| self.names[c].clone()),
            radius: self.radius,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index.get(name).copied().ok_or_else(|| Error::input(format!("unknown vertex {name:?}")))
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut s = self.empty_set();
        for n in names {
            s.insert(self.vertex(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn set_names(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.names[v].clone()).collect()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn frontier(&self) -> &VertexSet {
        &self.frontier
    }

    pub fn is_frontier(&self, v: Vertex) -> bool {
        self.frontier.contains(v)
    }

    pub fn center(&self) -> Option<Vertex> {
        self.center
    }

    pub fn radius(&self) -> Option<u32> {
        self.radius
    }

    fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    /// Breadth-first distances from one vertex, without building the
    /// all-pairs table.
    pub fn bfs(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
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

    fn matrix(&self) -> &[u32] {
        self.dist.get_or_init(|| {
            let mut m = Vec::with_capacity(self.vertex_count() * self.vertex_count());
            for v in self.vertices() {
                m.extend(self.bfs(v));
            }
            m
        })
    }

    /// Graph distance between two vertices.
    pub fn distance(&self, x: Vertex, y: Vertex) -> u32 {
        self.matrix()[x * self.vertex_count() + y]
    }

    /// Distance between identifiers, rejecting unknown ones.
    pub fn distance_by_name(&self, x: &str, y: &str) -> Result<u32> {
        Ok(self.distance(self.vertex(x)?, self.vertex(y)?))
    }

    /// Distances from one vertex to every vertex.
    pub fn distances_from(&self, x: Vertex) -> &[u32] {
        let n = self.vertex_count();
        &self.matrix()[x * n..(x + 1) * n]
    }

    /// Distance from a vertex to a nonempty set.
    pub fn distance_to_set(&self, x: Vertex, s: &VertexSet) -> u32 {
        let row = self.distances_from(x);
        s.iter().map(|y| row[y]).min().unwrap_or(u32::MAX)
    }

    /// Distance between two nonempty sets.
    pub fn set_distance(&self, a: &VertexSet, b: &VertexSet) -> u32 {
        a.iter().map(|x| self.distance_to_set(x, b)).min().unwrap_or(u32::MAX)
    }

    /// Closed ball `B(x, r)`.
    pub fn ball(&self, x: Vertex, r: u32) -> VertexSet {
        let row = self.distances_from(x);
        VertexSet::from_vertices(self.vertex_count(), self.vertices().filter(|&v| row[v] <= r))
    }

    /// δe, θe and Iθe of a nonempty proper vertex set.
    pub fn boundaries(&self, e: &VertexSet) -> Result<Boundaries> {
        self.check_proper(e)?;
        let mut edges = Vec::new();
        let mut outer = self.empty_set();
        let mut inner = self.empty_set();
        for &(u, v) in &self.edges {
            match (e.contains(u), e.contains(v)) {
                (true, false) => {
                    edges.push((u, v));
                    inner.insert(u);
                    outer.insert(v);
                }
                (false, true) => {
                    edges.push((u, v));
                    inner.insert(v);
                    outer.insert(u);
                }
                _ => {}
            }
        }
        Ok(Boundaries { edges, outer, inner })
    }

    /// |δe| without building the boundary sets.
    pub fn boundary_size(&self, e: &VertexSet) -> usize {
        self.edges.iter().filter(|&&(u, v)| e.contains(u) != e.contains(v)).count()
    }

    pub(crate) fn check_proper(&self, e: &VertexSet) -> Result<()> {
        if e.universe() != self.vertex_count() {
            return Err(Error::input("vertex set belongs to a different graph"));
        }
        if e.is_empty() {
            return Err(Error::input("empty vertex set has no boundary"));
        }
        if e.is_full() {
            return Err(Error::input("the full vertex set has no boundary"));
        }
        Ok(())
    }

    /// Connected pieces of the subgraph induced on `s`, in order of their
    /// smallest member.
    pub fn components(&self, s: &VertexSet) -> Vec<Component> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for start in s.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut members = self.empty_set();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                members.insert(v);
                for &w in &self.adj[v] {
                    if s.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            let touches_frontier = !members.is_disjoint(&self.frontier);
            out.push(Component { members, touches_frontier });
        }
        out
    }

    /// Whether the induced subgraph on `s` is connected (the empty set is not).
    pub fn is_connected_set(&self, s: &VertexSet) -> bool {
        let Some(start) = s.first() else {
            return false;
        };
        let mut seen = self.empty_set();
        seen.insert(start);
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if s.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == s.len()
    }

    /// Diameter of a nonempty vertex set, measured in the whole graph.
    pub fn set_diameter(&self, s: &VertexSet) -> Result<u32> {
        if s.is_empty() {
            return Err(Error::input("diameter of the empty set"));
        }
        let members = s.to_vec();
        let mut best = 0;
        for (i, &x) in members.iter().enumerate() {
            let row = self.distances_from(x);
            for &y in &members[i + 1..] {
                best = best.max(row[y]);
            }
        }
        Ok(best)
    }

    /// Subgraph induced on `s`, keeping identifiers. The frontier is the part
    /// of the old frontier inside `s`; center and radius are supplied by the
    /// caller.
    pub fn induced(&self, s: &VertexSet, frontier: &VertexSet, center: Option<Vertex>, radius: Option<u32>) -> Result<Self> {
        let vertices: Vec<&str> = s.iter().map(|v| self.name(v)).collect();
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| s.contains(u) && s.contains(v))
            .map(|&(u, v)| (self.name(u), self.name(v)))
            .collect();
        let frontier: Vec<&str> = frontier.iter().filter(|&v| s.contains(v)).map(|v| self.name(v)).collect();
        TruncatedGraph::new(&vertices, &edges, &frontier, center.map(|c| self.name(c)), radius)
    }
}
