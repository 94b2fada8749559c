//! Tree sets: verification of the nesting axioms and the pointing relations.
//!
//! Once a family is known to be nested, the sides avoiding vertex 0 form a
//! laminar family. The relation `e ≫ f` is read off the inclusion forest of
//! that family instead of scanning all triples:
//!
//! * `A ≫ B` iff `A` is the parent of `B`,
//! * `A* ≫ B` iff `A` and `B` are distinct siblings (or distinct roots),
//! * `A* ≫ B*` iff `B` is the parent of `A`,
//!
//! where `A`, `B` range over the sides avoiding vertex 0. `points_to_by_scan`
//! recomputes the relation from the definition for cross-checking.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{TruncatedGraph, VertexSet};

/// Which of the four inclusions of the nesting axiom holds for `(e, f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nesting {
    /// e ⊆ f
    Subset,
    /// e ⊆ f*
    Disjoint,
    /// e* ⊆ f
    Covering,
    /// e* ⊆ f*
    Superset,
}

pub fn nesting(e: &VertexSet, f: &VertexSet) -> Option<Nesting> {
    if e.is_subset(f) {
        Some(Nesting::Subset)
    } else if e.is_disjoint(f) {
        Some(Nesting::Disjoint)
    } else if e.union(f).is_full() {
        Some(Nesting::Covering)
    } else if f.is_subset(e) {
        Some(Nesting::Superset)
    } else {
        None
    }
}

/// First crossing pair `(i, j)`, `i < j`, of a list of sets.
pub fn first_crossing(cuts: &[VertexSet]) -> Option<(usize, usize)> {
    (0..cuts.len()).find_map(|i| (i + 1..cuts.len()).find(|&j| nesting(&cuts[i], &cuts[j]).is_none()).map(|j| (i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeSetViolation {
    #[error("the cut list is empty")]
    NoCuts,
    #[error("S3: the empty set is listed")]
    EmptyMember,
    #[error("S3: the full vertex set is listed")]
    FullMember,
    #[error("S4: complement of {0:?} is missing")]
    MissingComplement(Vec<String>),
    #[error("S1: {0:?} and {1:?} cross")]
    Crossing(Vec<String>, Vec<String>),
    #[error("tightness: {0:?} is not a tight cut")]
    NotTight(Vec<String>),
}

impl TreeSetViolation {
    /// Short name of the violated condition.
    pub fn axiom(&self) -> &'static str {
        match self {
            TreeSetViolation::NoCuts => "input",
            TreeSetViolation::EmptyMember | TreeSetViolation::FullMember => "S3",
            TreeSetViolation::MissingComplement(_) => "S4",
            TreeSetViolation::Crossing(..) => "S1",
            TreeSetViolation::NotTight(_) => "tightness",
        }
    }
}

/// A verified tree set. Cuts are indexed in sorted order.
#[derive(Debug, Clone)]
pub struct TreeSet {
    cuts: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    complement: Vec<usize>,
    tight: Vec<bool>,
    points_to: Vec<Vec<usize>>,
    /// For sides avoiding vertex 0: the smallest such side strictly containing it.
    parent: Vec<Option<usize>>,
}

/// Verifies S1, S3 and S4 (S2 holds for any finite family) and records which
/// members are tight.
pub fn check_tree_set(g: &TruncatedGraph, cuts: &[VertexSet]) -> Result<TreeSet> {
    TreeSet::build(g, cuts, false)
}

/// As [`check_tree_set`], and additionally rejects members that are not tight.
pub fn check_tree_set_strict(g: &TruncatedGraph, cuts: &[VertexSet]) -> Result<TreeSet> {
    TreeSet::build(g, cuts, true)
}

impl TreeSet {
    fn build(g: &TruncatedGraph, cuts: &[VertexSet], strict: bool) -> Result<Self> {
        let n = g.vertex_count();
        if cuts.iter().any(|c| c.universe() != n) {
            return Err(Error::input("cut belongs to a different graph"));
        }
        let violation = |v: TreeSetViolation| Err(Error::TreeSet(v));
        if cuts.is_empty() {
            return violation(TreeSetViolation::NoCuts);
        }
        let mut sorted = cuts.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.iter().any(VertexSet::is_empty) {
            return violation(TreeSetViolation::EmptyMember);
        }
        if sorted.iter().any(VertexSet::is_full) {
            return violation(TreeSetViolation::FullMember);
        }
        let index: HashMap<VertexSet, usize> = sorted.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut complement = Vec::with_capacity(sorted.len());
        for c in &sorted {
            match index.get(&c.complement()) {
                Some(&j) => complement.push(j),
                None => return violation(TreeSetViolation::MissingComplement(g.set_names(c))),
            }
        }
        // S1 is symmetric under complementing either argument, so checking
        // the sides avoiding vertex 0 against each other covers every pair.
        let far: Vec<usize> = (0..sorted.len()).filter(|&i| !sorted[i].contains(0)).collect();
        let mut witness: Option<(usize, usize)> = None;
        'outer: for (a, &i) in far.iter().enumerate() {
            for &j in &far[a + 1..] {
                if !(sorted[i].is_disjoint(&sorted[j]) || sorted[i].is_subset(&sorted[j]) || sorted[j].is_subset(&sorted[i])) {
                    witness = Some((i, j));
                    break 'outer;
                }
            }
        }
        if let Some((i, j)) = witness {
            // report the lexicographically first crossing pair of the whole list
            let (i, j) = first_crossing(&sorted).unwrap_or((i, j));
            return violation(TreeSetViolation::Crossing(g.set_names(&sorted[i]), g.set_names(&sorted[j])));
        }
        let tight: Vec<bool> = sorted.iter().map(|c| g.is_connected_set(c) && g.is_connected_set(&c.complement())).collect();
        if strict {
            if let Some(i) = tight.iter().position(|t| !t) {
                return violation(TreeSetViolation::NotTight(g.set_names(&sorted[i])));
            }
        }

        // inclusion forest of the far sides: insert largest first; the
        // current owner of a member is the smallest side seen containing it
        let mut parent = vec![None; sorted.len()];
        let mut order = far.clone();
        order.sort_by_key(|&i| std::cmp::Reverse(sorted[i].len()));
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for &i in &order {
            let first = sorted[i].first().expect("nonempty");
            parent[i] = owner[first];
            for v in sorted[i].iter() {
                owner[v] = Some(i);
            }
        }
        let mut children: HashMap<Option<usize>, Vec<usize>> = HashMap::new();
        for &i in &far {
            children.entry(parent[i]).or_default().push(i);
        }
        let mut points_to = vec![Vec::new(); sorted.len()];
        for &b in &far {
            if let Some(a) = parent[b] {
                points_to[a].push(b);
                points_to[complement[b]].push(complement[a]);
            }
            for &a in &children[&parent[b]] {
                if a != b {
                    points_to[complement[a]].push(b);
                }
            }
        }
        for list in &mut points_to {
            list.sort_unstable();
        }
        Ok(TreeSet {
            cuts: sorted,
            index,
            complement,
            tight,
            points_to,
            parent,
        })
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn cuts(&self) -> &[VertexSet] {
        &self.cuts
    }

    pub fn cut(&self, i: usize) -> &VertexSet {
        &self.cuts[i]
    }

    pub fn index_of(&self, e: &VertexSet) -> Result<usize> {
        self.index.get(e).copied().ok_or_else(|| Error::input("set is not a member of the tree set"))
    }

    pub fn complement_of(&self, i: usize) -> usize {
        self.complement[i]
    }

    pub fn is_tight(&self, i: usize) -> bool {
        self.tight[i]
    }

    pub fn all_tight(&self) -> bool {
        self.tight.iter().all(|&t| t)
    }

    /// Sides avoiding vertex 0 are nested or disjoint; this is the smallest
    /// one strictly containing cut `i`, for such `i`.
    pub fn far_parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    /// Whether cut `i` avoids vertex 0.
    pub fn is_far(&self, i: usize) -> bool {
        !self.cuts[i].contains(0)
    }

    /// `e ≫ f`.
    pub fn points(&self, e: usize, f: usize) -> bool {
        self.points_to[e].binary_search(&f).is_ok()
    }

    /// Every `f` with `e ≫ f`, sorted.
    pub fn pointed_by(&self, e: usize) -> &[usize] {
        &self.points_to[e]
    }

    /// All pairs `(e, f)` with `e ≫ f`, sorted.
    pub fn points_to_pairs(&self) -> Vec<(usize, usize)> {
        self.points_to.iter().enumerate().flat_map(|(e, fs)| fs.iter().map(move |&f| (e, f))).collect()
    }

    /// `e ⇌ f`: `e* ≫ f` and `f* ≫ e`, or `e = f`.
    pub fn points_away(&self, e: usize, f: usize) -> bool {
        e == f || (self.points(self.complement[e], f) && self.points(self.complement[f], e))
    }

    /// `e = f` or `e ≫ f*`.
    pub fn coterminal(&self, e: usize, f: usize) -> bool {
        e == f || self.points(e, self.complement[f])
    }

    pub fn relation(&self, e: usize, f: usize) -> Relation {
        if e == f {
            Relation::Equal
        } else if self.points(e, f) {
            Relation::Points
        } else if self.points(f, e) {
            Relation::PointedBy
        } else if self.points_away(e, f) {
            Relation::PointAway
        } else if self.cuts[e].is_subset(&self.cuts[f]) || self.cuts[f].is_subset(&self.cuts[e]) {
            Relation::ComparableDistant
        } else {
            Relation::IncomparableViaComplement
        }
    }

    /// Relation between two members given as sets.
    pub fn relation_of(&self, e: &VertexSet, f: &VertexSet) -> Result<Relation> {
        Ok(self.relation(self.index_of(e)?, self.index_of(f)?))
    }

    /// The nesting witness for every ordered pair, row by row.
    pub fn relation_table(&self) -> Vec<Vec<Nesting>> {
        self.cuts
            .iter()
            .map(|e| self.cuts.iter().map(|f| nesting(e, f).expect("verified tree set")).collect())
            .collect()
    }

    /// Members strictly between `e` and `f` (`e ⊂ d ⊂ f`).
    pub fn strict_interval(&self, e: usize, f: usize) -> Vec<usize> {
        let (a, b) = (&self.cuts[e], &self.cuts[f]);
        (0..self.cuts.len())
            .filter(|&d| d != e && d != f && a.is_subset(&self.cuts[d]) && self.cuts[d].is_subset(b))
            .collect()
    }

    /// `≫` recomputed from its definition by scanning all triples.
    pub fn points_to_by_scan(&self) -> Vec<(usize, usize)> {
        let m = self.cuts.len();
        let mut out = Vec::new();
        for e in 0..m {
            for f in 0..m {
                if e != f && self.cuts[f].is_strict_subset(&self.cuts[e]) && self.strict_interval(f, e).is_empty() {
                    out.push((e, f));
                }
            }
        }
        out
    }

    /// Coterminality classes, each sorted, ordered by least member. Fails
    /// with a structural error naming a witness triple if coterminality is
    /// not an equivalence relation.
    pub fn coterminal_classes(&self) -> Result<Vec<Vec<usize>>> {
        let m = self.cuts.len();
        let mut uf: Vec<usize> = (0..m).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let next = uf[y];
                uf[y] = r;
                y = next;
            }
            r
        }
        for (e, f) in self.points_to_pairs() {
            if !self.coterminal(self.complement[f], e) {
                return Err(Error::Structural(format!(
                    "coterminality is not symmetric for cuts {e} and {}",
                    self.complement[f]
                )));
            }
            let (a, b) = (find(&mut uf, e), find(&mut uf, self.complement[f]));
            uf[a] = b;
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in 0..m {
            let r = find(&mut uf, e);
            groups.entry(r).or_default().push(e);
        }
        let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
        for class in &mut classes {
            class.sort_unstable();
            for (i, &e) in class.iter().enumerate() {
                for &f in &class[i + 1..] {
                    if !self.coterminal(e, f) {
                        let via = class.iter().find(|&&d| self.coterminal(e, d) && self.coterminal(d, f));
                        return Err(Error::Structural(format!(
                            "coterminality is not transitive: cuts {e}, {}, {f}",
                            via.map_or("?".to_string(), |d| d.to_string())
                        )));
                    }
                }
            }
        }
        classes.sort();
        Ok(classes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    /// e ≫ f
    Points,
    /// f ≫ e
    PointedBy,
    /// e ⇌ f
    PointAway,
    ComparableDistant,
    IncomparableViaComplement,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family, FamilySpec};

    fn cycle(n: usize) -> TruncatedGraph {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
        TruncatedGraph::new(&names, &edges, &[], None, None).unwrap()
    }

    fn with_complements(sets: &[VertexSet]) -> Vec<VertexSet> {
        sets.iter().flat_map(|s| [s.clone(), s.complement()]).collect()
    }

    fn violation(r: Result<TreeSet>) -> TreeSetViolation {
        match r {
            Err(Error::TreeSet(v)) => v,
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn crossing_arcs_violate_s1() {
        let g = cycle(6);
        let cuts = with_complements(&[g.set_of(&["v1", "v2"]).unwrap(), g.set_of(&["v2", "v3"]).unwrap()]);
        assert_eq!(violation(check_tree_set(&g, &cuts)).axiom(), "S1");
    }

    #[test]
    fn s3_and_s4() {
        let g = cycle(4);
        let e = g.set_of(&["v0"]).unwrap();
        assert_eq!(violation(check_tree_set(&g, &[g.empty_set(), e.clone(), e.complement()])).axiom(), "S3");
        assert_eq!(violation(check_tree_set(&g, &[e])).axiom(), "S4");
        assert_eq!(violation(check_tree_set(&g, &[])).axiom(), "input");
    }

    #[test]
    fn line_relations() {
        let b = generate(FamilySpec::new(Family::TwoSidedLine, 4)).unwrap();
        let g = &b.graph;
        let ts = check_tree_set(g, &b.canonical_cuts).unwrap();
        assert!(!ts.all_tight());
        assert_eq!(violation(check_tree_set_strict(g, &b.canonical_cuts)).axiom(), "tightness");
        let x1 = g.set_of(&["x:1"]).unwrap();
        let x2 = g.set_of(&["x:2"]).unwrap();
        assert_eq!(ts.relation_of(&x1.complement(), &x2).unwrap(), Relation::Points);
        assert_eq!(ts.relation_of(&x1, &x2).unwrap(), Relation::PointAway);
        assert_eq!(ts.relation_of(&x1, &x1).unwrap(), Relation::Equal);
        assert!(ts.relation_of(&g.full_set(), &x1).is_err());
    }

    #[test]
    fn forest_relation_matches_scan() {
        for (f, r) in [
            (Family::TwoSidedLine, 4),
            (Family::CycleWithPendantPairs(4), 2),
            (Family::BiregularTree(2, 3), 3),
            (Family::FreeProductABC, 2),
            (Family::FreeProductAZ2Block, 2),
        ] {
            let b = generate(FamilySpec::new(f, r)).unwrap();
            let ts = check_tree_set(&b.graph, &b.canonical_cuts).unwrap();
            assert_eq!(ts.points_to_pairs(), ts.points_to_by_scan(), "{f}");
        }
    }

    #[test]
    fn single_pair() {
        let g = cycle(5);
        let e = g.set_of(&["v0", "v1"]).unwrap();
        let ts = check_tree_set(&g, &with_complements(&[e])).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts.points_to_pairs(), Vec::new());
        assert_eq!(ts.coterminal_classes().unwrap(), vec![vec![0], vec![1]]);
    }
}
