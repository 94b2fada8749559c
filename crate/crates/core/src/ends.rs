//! Ends at truncation scale: nested complement components, star balls,
//! end labels and the end map Φ into the cut tree.
//!
//! One truncation is generated at radius `m_k + 2` for levels
//! `m_1 < ... < m_k`. The chain element of a shadow at level `m` is a
//! component of the vertices of level greater than `m`; the two levels above
//! `m` form the window in which rays and disjoint paths are counted.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::cuttree::{far_forest, minimal_containing, CutTree, Structure, TreeVertex};
use crate::error::{Error, Result};
use crate::flow::vertex_disjoint_paths;
use crate::generators::{generate, Family, FamilyBundle, FamilySpec};
use crate::graph::{TruncatedGraph, Vertex, VertexSet};
use crate::perm::{is_automorphism, Permutation};
use crate::qi::{check_radii, classify_trend, covering_ball_check, qi_trend, CoveringBall, Trend, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainElement {
    pub level: u32,
    pub members: VertexSet,
    pub touches_frontier: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndShadow {
    /// One component per level, outermost first.
    pub chain: Vec<ChainElement>,
    pub carries_ray: bool,
    pub carries_infinite_degree_vertex: bool,
    /// Largest distance from the center inside each window.
    pub ray_widths: Vec<u32>,
    /// A vertex of growing degree with neighbors in every chain element, and
    /// its neighbor count per level.
    pub infinite_degree_vertex: Option<(Vertex, Vec<u32>)>,
    /// Vertex-disjoint paths across each window.
    pub disjoint_paths: Vec<u32>,
}

impl EndShadow {
    pub fn deepest(&self) -> &VertexSet {
        &self.chain.last().expect("chains are nonempty").members
    }

    pub fn label(&self) -> EndLabel {
        let kind = match (self.carries_ray, self.carries_infinite_degree_vertex) {
            (true, true) => EndKind::Mixed,
            (true, false) => EndKind::Proper,
            (false, _) => EndKind::Point,
        };
        let counts: Vec<u64> = self.disjoint_paths.iter().map(|&c| u64::from(c)).collect();
        let thickness = match classify_trend(&counts) {
            Trend::Bounded => Thickness::Thin,
            Trend::UnboundedTrend => Thickness::Thick,
            Trend::Inconclusive => Thickness::UnknownHeuristic,
        };
        EndLabel { kind, thickness }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndKind {
    Point,
    Mixed,
    Proper,
}

/// A heuristic: thin when the disjoint-path count is stable, thick when it
/// keeps growing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Thickness {
    Thin,
    Thick,
    UnknownHeuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndLabel {
    pub kind: EndKind,
    pub thickness: Thickness,
}

#[derive(Debug, Clone)]
pub struct EndAnalysis {
    pub bundle: FamilyBundle,
    pub levels: Vec<u32>,
    /// Frontier-touching components per level.
    pub component_counts: Vec<usize>,
    pub shadows: Vec<EndShadow>,
}

impl EndAnalysis {
    pub fn labels(&self) -> Vec<EndLabel> {
        self.shadows.iter().map(EndShadow::label).collect()
    }
}

fn center_of(g: &TruncatedGraph) -> Result<Vertex> {
    g.center().ok_or_else(|| Error::input("graph has no center"))
}

/// Nested chains of frontier-touching components, one per component at the
/// deepest level.
pub fn end_shadows(family: Family, radii: &[u32]) -> Result<EndAnalysis> {
    check_radii(radii)?;
    let top = radii[radii.len() - 1] + 2;
    let bundle = generate(FamilySpec::new(family, top.max(family.min_radius())))?;
    let g = &bundle.graph;
    let n = g.vertex_count();
    let center = center_of(g)?;
    let from_center = g.bfs(center);

    let per_level: Vec<Vec<VertexSet>> = radii
        .iter()
        .map(|&m| {
            let beyond = VertexSet::from_vertices(n, g.vertices().filter(|&v| bundle.levels[v] > m));
            g.components(&beyond).into_iter().filter(|c| c.touches_frontier).map(|c| c.members).collect()
        })
        .collect();
    let component_counts = per_level.iter().map(Vec::len).collect();

    let mut shadows = Vec::new();
    for deepest in &per_level[radii.len() - 1] {
        let probe = deepest.first().expect("components are nonempty");
        let chain: Vec<ChainElement> = radii
            .iter()
            .zip(&per_level)
            .map(|(&level, comps)| {
                let members = comps
                    .iter()
                    .find(|c| c.contains(probe))
                    .expect("deeper components lie inside shallower ones")
                    .clone();
                ChainElement {
                    level,
                    members,
                    touches_frontier: true,
                }
            })
            .collect();
        shadows.push(describe(&bundle, &from_center, chain));
    }
    Ok(EndAnalysis {
        levels: radii.to_vec(),
        component_counts,
        shadows,
        bundle,
    })
}

fn describe(bundle: &FamilyBundle, from_center: &[u32], chain: Vec<ChainElement>) -> EndShadow {
    let g = &bundle.graph;
    let levels = &bundle.levels;
    let window = |c: &ChainElement| -> VertexSet { VertexSet::from_vertices(g.vertex_count(), c.members.iter().filter(|&v| levels[v] <= c.level + 2)) };

    let ray_widths: Vec<u32> = chain.iter().map(|c| window(c).iter().map(|v| from_center[v]).max().unwrap_or(0)).collect();
    let carries_ray = classify_trend(&ray_widths.iter().map(|&w| u64::from(w)).collect::<Vec<_>>()) == Trend::UnboundedTrend;

    let outer = &chain[0].members;
    let deepest = &chain[chain.len() - 1].members;
    let infinite_degree_vertex = bundle
        .unbounded_degree
        .iter()
        .filter(|&x| !outer.contains(x) && g.neighbors(x).iter().any(|&y| deepest.contains(y)))
        .map(|x| {
            let counts = chain
                .iter()
                .map(|c| g.neighbors(x).iter().filter(|&&y| c.members.contains(y)).count() as u32)
                .collect::<Vec<_>>();
            (x, counts)
        })
        .find(|(_, counts)| counts.iter().all(|&c| c > 0));

    let disjoint_paths = chain
        .iter()
        .map(|c| {
            let w = window(c);
            let inner = VertexSet::from_vertices(g.vertex_count(), w.iter().filter(|&v| g.neighbors(v).iter().any(|&y| !c.members.contains(y))));
            let top = VertexSet::from_vertices(g.vertex_count(), w.iter().filter(|&v| levels[v] == c.level + 2));
            vertex_disjoint_paths(g, &w, &inner, &top) as u32
        })
        .collect();

    EndShadow {
        carries_ray,
        carries_infinite_degree_vertex: infinite_degree_vertex.is_some(),
        ray_widths,
        infinite_degree_vertex,
        disjoint_paths,
        chain,
    }
}

/// Shadows with their labels.
pub fn classify_ends(family: Family, radii: &[u32]) -> Result<Vec<(EndShadow, EndLabel)>> {
    let a = end_shadows(family, radii)?;
    Ok(a.shadows
        .into_iter()
        .map(|s| {
            let l = s.label();
            (s, l)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EndTarget {
    Vertex {
        vertex: TreeVertex,
    },
    /// A tree end, given by the geodesic from φ(center) out to the deepest
    /// terminus.
    End {
        ray: Vec<TreeVertex>,
    },
}

impl EndTarget {
    pub fn is_vertex(&self) -> bool {
        matches!(self, EndTarget::Vertex { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiEnd {
    pub target: EndTarget,
    /// Minimal cuts containing each chain element.
    pub cuts: Vec<Vec<usize>>,
    /// Their common terminus (the least one when they disagree).
    pub termini: Vec<TreeVertex>,
    /// Tree distance from φ(center) to each terminus.
    pub descents: Vec<u32>,
    pub trend: Trend,
    /// Some level had minimal containing cuts with different termini.
    pub ambiguous: bool,
}

/// The cuts of `s` containing `set` that are minimal under inclusion.
pub fn minimal_cuts_containing(s: &Structure, set: &VertexSet) -> Vec<usize> {
    let ts = &s.tree_set;
    let (children, roots) = far_forest(ts);
    let Some(probe) = set.first() else {
        return Vec::new();
    };
    let mut deepest = (0..ts.len())
        .filter(|&e| ts.is_far(e) && ts.cut(e).contains(probe))
        .min_by_key(|&e| ts.cut(e).len());
    while let Some(b) = deepest {
        if set.is_subset(ts.cut(b)) {
            break;
        }
        deepest = ts.far_parent(b);
    }
    minimal_containing(ts, deepest, |a| ts.cut(a).is_disjoint(set), &children, &roots)
}

/// Where the shadow goes in T: a tree end when the termini of the cuts
/// containing it keep moving away from φ(center), otherwise the deepest
/// terminus.
pub fn phi_end(g: &TruncatedGraph, s: &Structure, shadow: &EndShadow) -> Result<PhiEnd> {
    let center = center_of(g)?;
    let origin = s.mapping.phi_full[center].ok_or_else(|| Error::Structural("the center lies in no cut".into()))?;
    let mut cuts = Vec::new();
    let mut termini = Vec::new();
    let mut ambiguous = false;
    for c in &shadow.chain {
        let minimal = minimal_cuts_containing(s, &c.members);
        let ends: Vec<TreeVertex> = minimal.iter().map(|&e| s.tree.terminus(e)).collect();
        let Some(&t) = ends.iter().min() else {
            return Err(Error::Coverage(g.set_names(&c.members)));
        };
        ambiguous |= ends.iter().any(|&u| u != t);
        termini.push(t);
        cuts.push(minimal);
    }
    let descents: Vec<u32> = termini.iter().map(|&t| s.tree.distance(origin, t)).collect();
    let trend = classify_trend(&descents.iter().map(|&d| u64::from(d)).collect::<Vec<_>>());
    let last = termini[termini.len() - 1];
    let target = if trend == Trend::UnboundedTrend {
        EndTarget::End {
            ray: tree_path(&s.tree, origin, last),
        }
    } else {
        EndTarget::Vertex { vertex: last }
    };
    Ok(PhiEnd {
        target,
        cuts,
        termini,
        descents,
        trend,
        ambiguous,
    })
}

fn tree_path(tree: &CutTree, from: TreeVertex, to: TreeVertex) -> Vec<TreeVertex> {
    let mut path = vec![from];
    let mut at = from;
    while at != to {
        let d = tree.distance(at, to);
        at = *tree.neighbors(at).iter().find(|&&w| tree.distance(w, to) < d).expect("T is connected");
        path.push(at);
    }
    path
}

#[derive(Debug, Clone)]
pub struct EndMap {
    pub structure: Structure,
    pub targets: Vec<PhiEnd>,
    /// Point-labeled shadows go to vertices and the others to ends, among
    /// the settled shadows.
    pub p1: bool,
    /// Shadows whose descent trend is inconclusive: their chain changes end
    /// between levels, so they are left out of `p1`.
    pub unsettled: Vec<usize>,
    /// Pairs of shadows sent to tree ends with the same deepest terminus.
    pub collisions: Vec<(usize, usize)>,
}

/// Φ for every shadow of an analysis, using the family's canonical cuts on
/// the same truncation.
pub fn map_ends(a: &EndAnalysis) -> Result<EndMap> {
    let family = a.bundle.spec.family;
    if !family.has_canonical_cuts() {
        return Err(Error::input(format!("{family} ships no canonical cuts")));
    }
    let g = &a.bundle.graph;
    let structure = Structure::build(g, &a.bundle.canonical_cuts)?;
    let targets = a.shadows.iter().map(|sh| phi_end(g, &structure, sh)).collect::<Result<Vec<_>>>()?;
    let p1 = a
        .shadows
        .iter()
        .zip(&targets)
        .filter(|(_, t)| t.trend != Trend::Inconclusive)
        .all(|(sh, t)| t.target.is_vertex() == (sh.label().kind == EndKind::Point));
    let unsettled = (0..targets.len()).filter(|&i| targets[i].trend == Trend::Inconclusive).collect();
    let mut collisions = Vec::new();
    for i in 0..targets.len() {
        for j in i + 1..targets.len() {
            let both = !targets[i].target.is_vertex() && !targets[j].target.is_vertex();
            if both && targets[i].termini.last() == targets[j].termini.last() {
                collisions.push((i, j));
            }
        }
    }
    Ok(EndMap {
        structure,
        targets,
        p1,
        unsettled,
        collisions,
    })
}

/// T in Graphviz form with Φ targets colored by the kind of shadow they
/// receive.
pub fn end_overlay_dot(map: &EndMap, labels: &[EndLabel]) -> String {
    let tree = &map.structure.tree;
    let mut kinds: Vec<Vec<EndKind>> = vec![Vec::new(); tree.vertex_count()];
    for (t, l) in map.targets.iter().zip(labels) {
        let v = match &t.target {
            EndTarget::Vertex { vertex } => *vertex,
            EndTarget::End { ray } => ray[ray.len() - 1],
        };
        kinds[v].push(l.kind);
    }
    let mut out = String::from("graph T {\n");
    for (v, ks) in kinds.iter().enumerate() {
        let color = if ks.contains(&EndKind::Point) {
            "red"
        } else if ks.contains(&EndKind::Mixed) {
            "orange"
        } else if ks.contains(&EndKind::Proper) {
            "blue"
        } else {
            "black"
        };
        let _ = writeln!(out, "  {} [color={color}];", tree.name(v));
    }
    for (u, v) in tree.edges() {
        let _ = writeln!(out, "  {} -- {};", tree.name(u), tree.name(v));
    }
    out.push_str("}\n");
    out
}

fn diameter(g: &TruncatedGraph, s: &VertexSet) -> u32 {
    s.iter()
        .map(|x| {
            let d = g.bfs(x);
            s.iter().map(|y| d[y]).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarBallRow {
    pub ball_radius: u32,
    /// Largest diameter of a complement component missing the frontier, per
    /// truncation radius.
    pub diameters: Vec<u32>,
    pub trend: Trend,
    pub star_ball_trend: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarBallScan {
    pub radii: Vec<u32>,
    pub balls: Vec<StarBallRow>,
    /// Eccentricity of the center per radius; it grows exactly when the
    /// diameter does.
    pub eccentricities: Vec<u32>,
    pub diameter_trend: Trend,
    pub connected: bool,
    pub uniformly_ramifying: bool,
}

/// Balls `B(center, m)` for `m < radii[0]`, watched across the truncations.
pub fn star_ball_scan(family: Family, radii: &[u32]) -> Result<StarBallScan> {
    check_radii(radii)?;
    let balls: Vec<u32> = (0..radii[0]).collect();
    let mut table = vec![Vec::new(); balls.len()];
    let mut eccentricities = Vec::new();
    let mut connected = true;
    for &r in radii {
        let b = generate(FamilySpec::new(family, r))?;
        let g = &b.graph;
        connected &= g.is_connected_set(&g.full_set());
        let from_center = g.bfs(center_of(g)?);
        eccentricities.push(from_center.iter().copied().max().unwrap_or(0));
        for (row, &m) in table.iter_mut().zip(&balls) {
            let outside = VertexSet::from_vertices(g.vertex_count(), g.vertices().filter(|&v| from_center[v] > m));
            let worst = g
                .components(&outside)
                .iter()
                .filter(|c| !c.touches_frontier)
                .map(|c| diameter(g, &c.members))
                .max()
                .unwrap_or(0);
            row.push(worst);
        }
    }
    let trend_of = |v: &[u32]| classify_trend(&v.iter().map(|&x| u64::from(x)).collect::<Vec<_>>());
    let balls: Vec<StarBallRow> = balls
        .into_iter()
        .zip(table)
        .map(|(m, diameters)| {
            let trend = trend_of(&diameters);
            StarBallRow {
                ball_radius: m,
                star_ball_trend: trend == Trend::UnboundedTrend,
                diameters,
                trend,
            }
        })
        .collect();
    let diameter_trend = trend_of(&eccentricities);
    let uniformly_ramifying = connected && diameter_trend == Trend::UnboundedTrend && balls.iter().all(|b| !b.star_ball_trend);
    Ok(StarBallScan {
        radii: radii.to_vec(),
        balls,
        eccentricities,
        diameter_trend,
        connected,
        uniformly_ramifying,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityRow {
    pub representative: String,
    pub claim_radius: u32,
    pub holds: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityScan {
    pub radii: Vec<u32>,
    pub claims: Vec<TransitivityRow>,
    /// Some claim holds at every radius.
    pub almost_transitive: bool,
}

/// Covering-ball checks of the declared orbit claims across radii.
pub fn almost_transitivity(family: Family, radii: &[u32]) -> Result<TransitivityScan> {
    check_radii(radii)?;
    let mut claims: Vec<TransitivityRow> = Vec::new();
    for (i, &r) in radii.iter().enumerate() {
        let b = generate(FamilySpec::new(family, r))?;
        for (j, c) in b.orbit_claims.iter().enumerate() {
            let holds = covering_ball_check(&b.graph, &c.orbit, c.radius)?.holds;
            if i == 0 {
                claims.push(TransitivityRow {
                    representative: b.graph.name(c.representative).to_string(),
                    claim_radius: c.radius,
                    holds: vec![holds],
                });
            } else if let Some(row) = claims.get_mut(j) {
                row.holds.push(holds);
            }
        }
    }
    let almost_transitive = claims.iter().any(|c| c.holds.len() == radii.len() && c.holds.iter().all(|&h| h));
    Ok(TransitivityScan {
        radii: radii.to_vec(),
        claims,
        almost_transitive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MfRow {
    pub level: u32,
    /// Index of the cut `f` in the tree set.
    pub cut: usize,
    pub size: usize,
    pub diameter: u32,
    /// `2 · diam M_f`.
    pub n0: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndStabReport {
    pub claim_radius: Option<u32>,
    pub covering: Option<CoveringBall>,
    pub m_f: Vec<MfRow>,
    pub phi_end: PhiEnd,
    pub predicts_qi: bool,
    pub diagnostic: Option<String>,
}

/// Covering balls for the stabilizer of one shadow, and the sets
/// `M_f = {x ∈ f* : d(f, x) <= 4 r0}` for the minimal cuts `f` containing it.
pub fn end_stab_check(a: &EndAnalysis, map: &EndMap, shadow: usize, auts: &[Permutation]) -> Result<EndStabReport> {
    let g = &a.bundle.graph;
    let sh = a.shadows.get(shadow).ok_or_else(|| Error::input(format!("no shadow {shadow}")))?;
    for p in auts {
        if !is_automorphism(g, p) {
            return Err(Error::input("supplied permutation is not an automorphism"));
        }
        if sh.chain.iter().any(|c| p.apply_set(&c.members) != c.members) {
            return Err(Error::input("supplied automorphism does not fix the end"));
        }
    }
    let phi = map.targets[shadow].clone();
    let claim = a.bundle.end_stabilizer_claims.first();
    let covering = match claim {
        Some(c) => {
            let mut orbit = c.orbit.clone();
            let mut frontier: Vec<Vertex> = orbit.to_vec();
            while let Some(x) = frontier.pop() {
                for p in auts {
                    let y = p.apply(x);
                    if !orbit.contains(y) {
                        orbit.insert(y);
                        frontier.push(y);
                    }
                }
            }
            Some(covering_ball_check(g, &orbit, c.radius)?)
        }
        None => None,
    };
    let r0 = claim.map(|c| c.radius);

    let ts = &map.structure.tree_set;
    let mut m_f = Vec::new();
    if let Some(r0) = r0 {
        for (c, cuts) in sh.chain.iter().zip(&phi.cuts) {
            for &f in cuts {
                let near = ball_around(g, ts.cut(f), 4 * r0);
                let m = near.difference(ts.cut(f));
                let diameter = diameter(g, &m);
                m_f.push(MfRow {
                    level: c.level,
                    cut: f,
                    size: m.len(),
                    diameter,
                    n0: 2 * diameter,
                });
            }
        }
    }

    let found = covering.is_some_and(|c| c.holds);
    let predicts_qi = found && !phi.target.is_vertex();
    let diagnostic = if !found {
        Some("no covering ball under the stabilizer; inconclusive".to_string())
    } else if let EndTarget::Vertex { vertex } = phi.target {
        Some(format!(
            "the end maps to tree vertex {}: the cuts containing it do not descend, its region grows with the radius and (Q2) fails",
            map.structure.tree.name(vertex)
        ))
    } else {
        None
    };
    Ok(EndStabReport {
        claim_radius: r0,
        covering,
        m_f,
        phi_end: phi,
        predicts_qi,
        diagnostic,
    })
}

/// Truncation proxies for three equivalent statements about a family: the
/// qi verdict, uniform ramification with (P1), and almost transitivity with
/// (P1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceProxies {
    pub qi: Verdict,
    pub uniformly_ramifying: bool,
    pub almost_transitive: bool,
    pub p1: bool,
}

impl EquivalenceProxies {
    pub fn statements(&self) -> [bool; 3] {
        [self.qi == Verdict::Qi, self.uniformly_ramifying && self.p1, self.almost_transitive && self.p1]
    }

    pub fn agree(&self) -> bool {
        let s = self.statements();
        s.iter().all(|&x| x == s[0])
    }
}

/// `radii` drive the qi trend, the star-ball scan and the covering balls;
/// `end_levels` the end analysis, which truncates two levels deeper.
pub fn equivalence_proxies(family: Family, radii: &[u32], end_levels: &[u32]) -> Result<EquivalenceProxies> {
    let qi = qi_trend(family, radii)?.verdict;
    let uniformly_ramifying = star_ball_scan(family, radii)?.uniformly_ramifying;
    let almost_transitive = almost_transitivity(family, radii)?.almost_transitive;
    let p1 = map_ends(&end_shadows(family, end_levels)?)?.p1;
    Ok(EquivalenceProxies {
        qi,
        uniformly_ramifying,
        almost_transitive,
        p1,
    })
}

fn ball_around(g: &TruncatedGraph, s: &VertexSet, r: u32) -> VertexSet {
    let mut dist = vec![u32::MAX; g.vertex_count()];
    let mut queue: std::collections::VecDeque<Vertex> = s.iter().collect();
    for v in s.iter() {
        dist[v] = 0;
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] == r {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    VertexSet::from_vertices(g.vertex_count(), g.vertices().filter(|&v| dist[v] <= r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_has_two_thin_proper_shadows() {
        let a = end_shadows(Family::TwoSidedLine, &[2, 3, 4]).unwrap();
        assert_eq!(a.shadows.len(), 2);
        for l in a.labels() {
            assert_eq!(
                l,
                EndLabel {
                    kind: EndKind::Proper,
                    thickness: Thickness::Thin
                }
            );
        }
        let map = map_ends(&a).unwrap();
        assert!(map.targets.iter().all(|t| t.target.is_vertex()));
        assert!(!map.p1);
    }

    #[test]
    fn fan_has_one_mixed_shadow() {
        let a = end_shadows(Family::MixedEndFan, &[2, 3, 4]).unwrap();
        assert_eq!(a.shadows.len(), 1);
        assert_eq!(
            a.shadows[0].label(),
            EndLabel {
                kind: EndKind::Mixed,
                thickness: Thickness::Thin
            }
        );
    }

    #[test]
    fn grid_is_one_thick_end() {
        let a = end_shadows(Family::Grid2d, &[2, 3, 4]).unwrap();
        assert_eq!(a.shadows.len(), 1);
        assert_eq!(a.shadows[0].label().thickness, Thickness::Thick);
    }

    #[test]
    fn broom_star_ball() {
        let s = star_ball_scan(Family::Broom, &[3, 4, 5, 6, 7, 8]).unwrap();
        assert!(s.balls[1].star_ball_trend);
        assert!(!s.uniformly_ramifying);
        let s = star_ball_scan(Family::Grid2d, &[2, 3, 4]).unwrap();
        assert!(s.uniformly_ramifying);
    }

    fn fixing(a: &EndAnalysis, shadow: usize) -> Vec<Permutation> {
        let chain = &a.shadows[shadow].chain;
        a.bundle
            .aut_generators
            .iter()
            .filter(|p| chain.iter().all(|c| p.apply_set(&c.members) == c.members))
            .cloned()
            .collect()
    }

    #[test]
    fn stabilizer_of_a_tree_end() {
        let a = end_shadows(Family::BiregularTree(2, 3), &[2, 3, 4]).unwrap();
        let map = map_ends(&a).unwrap();
        let auts = fixing(&a, 0);
        assert!(!auts.is_empty());
        let r = end_stab_check(&a, &map, 0, &auts).unwrap();
        assert!(r.predicts_qi);
        assert!(r.m_f.iter().all(|m| m.size > 0 && m.n0 == 2 * m.diameter));

        let moving: Vec<Permutation> = a.bundle.aut_generators.iter().filter(|p| !auts.contains(p)).take(1).cloned().collect();
        assert!(end_stab_check(&a, &map, 0, &moving).is_err());
    }

    #[test]
    fn line_end_is_flagged() {
        let a = end_shadows(Family::TwoSidedLine, &[2, 3, 4]).unwrap();
        let map = map_ends(&a).unwrap();
        let r = end_stab_check(&a, &map, 1, &[]).unwrap();
        assert!(r.covering.unwrap().holds);
        assert!(!r.predicts_qi);
        assert!(r.diagnostic.unwrap().contains("(Q2)"));
    }
}
