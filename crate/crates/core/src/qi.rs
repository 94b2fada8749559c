//! Quasi-isometry constants between a truncation and its cut tree, trend
//! tests across radii and covering balls.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cuttree::{CutTree, Structure, StructureMapping, TreeVertex};
use crate::error::{Error, Result};
use crate::generators::{generate, Family, FamilySpec};
use crate::graph::{TruncatedGraph, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Qi,
    NotQiTrend,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    /// Equal over the last three values.
    Bounded,
    /// Increasing by at least one per step over the last three values.
    UnboundedTrend,
    Inconclusive,
}

/// Reads the last three values of a sequence.
pub fn classify_trend(values: &[u64]) -> Trend {
    match values {
        [.., a, b, c] if a == b && b == c => Trend::Bounded,
        [.., a, b, c] if b > a && c > b => Trend::UnboundedTrend,
        _ => Trend::Inconclusive,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BCase {
    /// φ(VX) lies in one bipartite block: image vertices are two apart.
    SameBlock,
    /// Some image vertices are adjacent.
    Adjacent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiReport {
    pub a: u32,
    pub a_witness: (Vertex, Vertex),
    pub b: Ratio<u64>,
    pub b_case: BCase,
    pub b_witness: (TreeVertex, TreeVertex),
    /// Smallest `b` for which (Q2) holds on this truncation.
    pub b_observed: Ratio<u64>,
    pub b_observed_witness: (TreeVertex, TreeVertex),
    pub c: u32,
    pub c_witness: TreeVertex,
    pub d: u32,
    pub d_witness: TreeVertex,
    /// r(v) for every tree vertex.
    pub r: Vec<TreeVertex>,
    /// ψ(v) for every tree vertex.
    pub psi: Vec<Vertex>,
    /// Failed exhaustive checks, as readable lines.
    pub violations: Vec<String>,
    pub verdict: Verdict,
}

/// The constants of (Q1)-(Q4) for φ and the quasi-inverse ψ, with every
/// bound checked over all pairs.
///
/// `a` is the largest tree distance across an edge (φ extended to the
/// frontier by its pointing cuts). `b` follows the case split of the region
/// criterion: if φ(VX) is one bipartite block, the worst
/// `diam φ⁻¹(v) + diam φ⁻¹(w) + diam R(u)` over paths `v u w` (not halved:
/// a tree vertex `u` off the image has `ψ(u) = ψ(v)` for a neighbor `v`, so
/// the pair `u, w` sits at tree distance one);
/// otherwise the worst `diam R(v) + diam R(w) + 1` over adjacent image
/// vertices. `c` is the largest preimage diameter, `d = max d_T(φψ(v), v)`.
pub fn qi_constants(g: &TruncatedGraph, s: &Structure) -> Result<QiReport> {
    let (tree, m) = (&s.tree, &s.mapping);
    if !m.uncovered.is_empty() {
        return Err(Error::Coverage(m.uncovered.iter().map(|&x| g.name(x).to_string()).collect()));
    }
    let image = m.image();
    if image.is_empty() {
        return Err(Error::input("φ has an empty domain"));
    }
    let in_image: Vec<bool> = {
        let mut v = vec![false; tree.vertex_count()];
        image.iter().for_each(|&i| v[i] = true);
        v
    };
    let full = |x: Vertex| m.phi_full[x].expect("covered");

    let (mut a, mut a_witness) = (0, g.edges()[0]);
    for &(x, y) in g.edges() {
        let d = tree.distance(full(x), full(y));
        if d > a {
            (a, a_witness) = (d, (x, y));
        }
    }

    let pre_diam: Vec<u32> = (0..tree.vertex_count()).map(|v| m.preimage_diameter(g, v).unwrap_or(0)).collect();
    let adjacent_images = image.iter().any(|&v| tree.neighbors(v).iter().any(|&w| in_image[w]));
    let (b_case, mut b, mut b_witness) = (
        if adjacent_images { BCase::Adjacent } else { BCase::SameBlock },
        Ratio::from_integer(0u64),
        (image[0], image[0]),
    );
    for &v in &image {
        match b_case {
            BCase::Adjacent => {
                for &w in tree.neighbors(v).iter().filter(|&&w| in_image[w] && w > v) {
                    let val = Ratio::from_integer(u64::from(m.region_diameters[v]) + u64::from(m.region_diameters[w]) + 1);
                    if val > b {
                        (b, b_witness) = (val, (v, w));
                    }
                }
            }
            BCase::SameBlock => {
                for &u in tree.neighbors(v) {
                    for &w in tree.neighbors(u).iter().filter(|&&w| in_image[w] && w > v) {
                        let sum = u64::from(pre_diam[v]) + u64::from(pre_diam[w]) + u64::from(m.region_diameters[u]);
                        let val = Ratio::from_integer(sum);
                        if val > b {
                            (b, b_witness) = (val, (v, w));
                        }
                    }
                }
            }
        }
    }
    if b == Ratio::from_integer(0) {
        b = Ratio::from_integer(1);
    }

    let (mut c, mut c_witness) = (0, image[0]);
    for &v in &image {
        if pre_diam[v] > c {
            (c, c_witness) = (pre_diam[v], v);
        }
    }

    // r(v): v itself on the image, else the nearest image vertex (least index)
    let r: Vec<TreeVertex> = (0..tree.vertex_count())
        .map(|v| {
            if in_image[v] {
                v
            } else {
                *image.iter().min_by_key(|&&w| (tree.distance(v, w), w)).expect("nonempty image")
            }
        })
        .collect();
    let psi: Vec<Vertex> = r.iter().map(|&v| m.preimages[v].first().expect("image vertex")).collect();
    let (mut d, mut d_witness) = (0, 0);
    for v in 0..tree.vertex_count() {
        let dv = tree.distance(r[v], v);
        if dv > d {
            (d, d_witness) = (dv, v);
        }
    }

    let mut violations = Vec::new();
    let covered: Vec<Vertex> = g.vertices().collect();
    for (i, &x) in covered.iter().enumerate() {
        for &y in &covered[i + 1..] {
            if tree.distance(full(x), full(y)) > a * g.distance(x, y) {
                violations.push(format!("Q1 fails at {} {}", g.name(x), g.name(y)));
            }
        }
    }
    let domain: Vec<Vertex> = m.domain().collect();
    for (i, &x) in domain.iter().enumerate() {
        let px = m.phi[x].expect("domain");
        if u64::from(g.distance(psi[px], x)) > u64::from(c) {
            violations.push(format!("Q3 fails at {}", g.name(x)));
        }
        for &y in &domain[i + 1..] {
            let dt = u64::from(tree.distance(px, m.phi[y].expect("domain")));
            let bound = b * Ratio::from_integer(dt) + Ratio::from_integer(2 * u64::from(c));
            if Ratio::from_integer(u64::from(g.distance(x, y))) > bound {
                violations.push(format!("two-sided bound fails at {} {}", g.name(x), g.name(y)));
            }
        }
    }
    let (mut b_observed, mut b_observed_witness) = (Ratio::from_integer(0u64), (0, 0));
    for y1 in 0..tree.vertex_count() {
        for y2 in y1 + 1..tree.vertex_count() {
            let val = Ratio::new(u64::from(g.distance(psi[y1], psi[y2])), u64::from(tree.distance(y1, y2)));
            if val > b_observed {
                (b_observed, b_observed_witness) = (val, (y1, y2));
            }
        }
    }
    if b_observed > b {
        violations.push(format!(
            "Q2 fails at {} {}: ratio {b_observed} exceeds b = {b}",
            tree.name(b_observed_witness.0),
            tree.name(b_observed_witness.1)
        ));
    }
    if d > 1 {
        violations.push(format!("Q4: d = {d} exceeds 1"));
    }
    violations.extend(lemma_11_violations(g, s, &pre_diam));
    let verdict = if violations.is_empty() { Verdict::Qi } else { Verdict::Inconclusive };
    Ok(QiReport {
        a,
        a_witness,
        b,
        b_case,
        b_witness,
        b_observed,
        b_observed_witness,
        c,
        c_witness,
        d,
        d_witness,
        r,
        psi,
        violations,
        verdict,
    })
}

/// `diam R(v) <= diam φ⁻¹(v) + 2 max{ d(x, φ⁻¹(v)) : x ∈ Iθe, o(e) = v }`
/// for every `v` with nonempty preimage.
fn lemma_11_violations(g: &TruncatedGraph, s: &Structure, pre_diam: &[u32]) -> Vec<String> {
    let (ts, tree, m) = (&s.tree_set, &s.tree, &s.mapping);
    let mut out = Vec::new();
    for v in m.image() {
        let pre = &m.preimages[v];
        let mut reach = 0;
        for &f in tree.class(v) {
            let e = ts.complement_of(f);
            if let Ok(b) = g.boundaries(ts.cut(e)) {
                for x in b.inner.iter() {
                    reach = reach.max(g.distance_to_set(x, pre));
                }
            }
        }
        if m.region_diameters[v] > pre_diam[v] + 2 * reach {
            out.push(format!("region bound fails at {}", tree.name(v)));
        }
    }
    out
}

/// Tree vertex with the largest region, and that region's diameter.
pub fn max_region(m: &StructureMapping, tree: &CutTree) -> (TreeVertex, u32) {
    (0..tree.vertex_count())
        .map(|v| (v, m.region_diameters[v]))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
        .expect("nonempty tree")
}

pub(crate) fn check_radii(radii: &[u32]) -> Result<()> {
    if radii.len() < 3 || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("radii must be increasing, at least three of them"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrendRow {
    pub radius: u32,
    pub max_region_diameter: u32,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionTrend {
    pub rows: Vec<TrendRow>,
    pub verdict: Trend,
}

/// Largest region diameter of the canonical cut tree at each radius.
pub fn region_trend(family: Family, radii: &[u32]) -> Result<RegionTrend> {
    check_radii(radii)?;
    if !family.has_canonical_cuts() {
        return Err(Error::input(format!("{family} ships no canonical cuts")));
    }
    let mut rows = Vec::new();
    for &r in radii {
        let b = generate(FamilySpec::new(family, r))?;
        let s = Structure::build(&b.graph, &b.canonical_cuts)?;
        let (v, d) = max_region(&s.mapping, &s.tree);
        rows.push(TrendRow {
            radius: r,
            max_region_diameter: d,
            witness: s.tree.name(v),
        });
    }
    let verdict = classify_trend(&rows.iter().map(|r| u64::from(r.max_region_diameter)).collect::<Vec<_>>());
    Ok(RegionTrend { rows, verdict })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiRow {
    pub radius: u32,
    pub report: QiReport,
    pub max_region_diameter: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiAssessment {
    pub rows: Vec<QiRow>,
    pub region_trend: Trend,
    pub b_trend: Trend,
    pub verdict: Verdict,
}

/// Quasi-isometry constants across radii. Growth of the regions or of `b`
/// gives `not-qi-trend`; stable constants with every check passing give `qi`.
pub fn qi_trend(family: Family, radii: &[u32]) -> Result<QiAssessment> {
    check_radii(radii)?;
    if !family.has_canonical_cuts() {
        return Err(Error::input(format!("{family} ships no canonical cuts")));
    }
    let mut rows = Vec::new();
    for &r in radii {
        let b = generate(FamilySpec::new(family, r))?;
        let s = Structure::build(&b.graph, &b.canonical_cuts)?;
        let report = qi_constants(&b.graph, &s)?;
        rows.push(QiRow {
            radius: r,
            max_region_diameter: max_region(&s.mapping, &s.tree).1,
            report,
        });
    }
    let region_trend = classify_trend(&rows.iter().map(|r| u64::from(r.max_region_diameter)).collect::<Vec<_>>());
    let b_trend = classify_trend(&rows.iter().map(|r| r.report.b.ceil().to_integer()).collect::<Vec<_>>());
    let stable = |f: fn(&QiReport) -> u64| classify_trend(&rows.iter().map(|r| f(&r.report)).collect::<Vec<_>>()) == Trend::Bounded;
    let verdict = if region_trend == Trend::UnboundedTrend || b_trend == Trend::UnboundedTrend {
        Verdict::NotQiTrend
    } else if region_trend == Trend::Bounded
        && b_trend == Trend::Bounded
        && stable(|q| u64::from(q.a))
        && stable(|q| u64::from(q.c))
        && rows.iter().all(|r| r.report.verdict == Verdict::Qi)
    {
        Verdict::Qi
    } else {
        Verdict::Inconclusive
    };
    Ok(QiAssessment {
        rows,
        region_trend,
        b_trend,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoveringBall {
    pub holds: bool,
    /// A vertex farthest from the orbit, and its distance.
    pub farthest: Vertex,
    pub distance: u32,
}

/// Whether every vertex lies within `r` of the claimed orbit.
pub fn covering_ball_check(g: &TruncatedGraph, orbit: &VertexSet, r: u32) -> Result<CoveringBall> {
    if orbit.is_empty() {
        return Err(Error::input("claimed orbit is empty"));
    }
    let (farthest, distance) = g
        .vertices()
        .map(|x| (x, g.distance_to_set(x, orbit)))
        .max_by_key(|&(x, d)| (d, std::cmp::Reverse(x)))
        .expect("nonempty graph");
    Ok(CoveringBall {
        holds: distance <= r,
        farthest,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn structure(f: Family, r: u32) -> (TruncatedGraph, Structure) {
        let b = generate(FamilySpec::new(f, r)).unwrap();
        let s = Structure::build(&b.graph, &b.canonical_cuts).unwrap();
        (b.graph, s)
    }

    #[test]
    fn trend_reading() {
        assert_eq!(classify_trend(&[4, 6, 8]), Trend::UnboundedTrend);
        assert_eq!(classify_trend(&[1, 2, 2, 2]), Trend::Bounded);
        assert_eq!(classify_trend(&[2, 3, 3]), Trend::Inconclusive);
        assert_eq!(classify_trend(&[2, 2]), Trend::Inconclusive);
    }

    #[test]
    fn line_constants() {
        for r in 3..7 {
            let (g, s) = structure(Family::TwoSidedLine, r);
            let q = qi_constants(&g, &s).unwrap();
            assert_eq!(q.b_case, BCase::SameBlock);
            assert_eq!(q.b, Ratio::from_integer(u64::from(2 * (r - 1))));
            assert_eq!(q.c, 0);
            assert!(q.violations.is_empty(), "{:?}", q.violations);
        }
    }

    #[test]
    fn biregular_tree_constants_are_finite_and_checked() {
        let (g, s) = structure(Family::BiregularTree(2, 3), 4);
        let q = qi_constants(&g, &s).unwrap();
        assert!(q.violations.is_empty(), "{:?}", q.violations);
        assert_eq!(q.verdict, Verdict::Qi);
        assert!(q.d <= 1);
    }

    #[test]
    fn line_region_trend() {
        let t = region_trend(Family::TwoSidedLine, &[3, 4, 5, 6, 7, 8]).unwrap();
        let diams: Vec<u32> = t.rows.iter().map(|r| r.max_region_diameter).collect();
        assert_eq!(diams, [4, 6, 8, 10, 12, 14]);
        assert_eq!(t.verdict, Trend::UnboundedTrend);
        assert!(region_trend(Family::Broom, &[3, 4, 5]).is_err());
        assert!(region_trend(Family::TwoSidedLine, &[3, 4]).is_err());
    }

    #[test]
    fn covering_balls() {
        let b = generate(FamilySpec::new(Family::CycleWithPendantPairs(4), 2)).unwrap();
        let cb = covering_ball_check(&b.graph, &b.orbit_claims[0].orbit, 1).unwrap();
        assert!(cb.holds);
        let broom = generate(FamilySpec::new(Family::Broom, 6)).unwrap();
        let hub = broom.graph.set_of(&["hub"]).unwrap();
        let cb = covering_ball_check(&broom.graph, &hub, 2).unwrap();
        assert!(!cb.holds);
        assert_eq!(broom.graph.name(cb.farthest), "t6.6");
    }
}
