//! JSON documents for every analysis. Vertices and tree vertices appear by
//! name, cuts as sorted lists of vertex names, and all lists in a fixed
//! order so that equal inputs give byte-identical output.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cuts::{Cut, Triviality};
use crate::cuttree::{CutTree, LReport, Structure};
use crate::ends::{EndAnalysis, EndLabel, EndMap, EndTarget, StarBallScan, TransitivityScan};
use crate::error::{Error, Result};
use crate::generators::FamilySpec;
use crate::graph::{TruncatedGraph, VertexSet};
use crate::qi::{BCase, QiAssessment, QiReport, RegionTrend, Trend, Verdict};
use crate::treeset::TreeSet;

/// A cut as the sorted names of its side.
pub fn cut_names(g: &TruncatedGraph, e: &VertexSet) -> Vec<String> {
    let mut names = g.set_names(e);
    names.sort();
    names
}

/// The `cuts.json` list, sorted.
pub fn cuts_to_json(g: &TruncatedGraph, cuts: &[VertexSet]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = cuts.iter().map(|e| cut_names(g, e)).collect();
    out.sort();
    out
}

pub fn cuts_from_json(g: &TruncatedGraph, lists: &[Vec<String>]) -> Result<Vec<VertexSet>> {
    lists.iter().map(|l| g.set_of(l)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRecord {
    pub side: Vec<String>,
    pub boundary_size: usize,
    pub tight: bool,
    pub triviality: Triviality,
}

pub fn cut_record(g: &TruncatedGraph, c: &Cut) -> CutRecord {
    CutRecord {
        side: cut_names(g, &c.side),
        boundary_size: c.boundary_size,
        tight: c.tight,
        triviality: c.triviality,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSetDoc {
    pub cuts: Vec<Vec<String>>,
    pub tight: Vec<bool>,
    /// Pairs `[e, f]` of indices into `cuts` with `e` pointing to `f`.
    pub points_to: Vec<[usize; 2]>,
}

pub fn treeset_doc(g: &TruncatedGraph, ts: &TreeSet) -> TreeSetDoc {
    TreeSetDoc {
        cuts: ts.cuts().iter().map(|e| cut_names(g, e)).collect(),
        tight: (0..ts.len()).map(|e| ts.is_tight(e)).collect(),
        points_to: ts.points_to_pairs().into_iter().map(|(e, f)| [e, f]).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub cuts: Vec<Vec<String>>,
    pub tree_vertices: Vec<String>,
    /// Cut indices making up each tree vertex.
    pub classes: Vec<Vec<usize>>,
    /// One entry per complementary pair: `[origin, terminus]` of the cut
    /// with the smaller index.
    pub edges: Vec<[String; 2]>,
    /// φ on its domain, and the frontier extension, by vertex name.
    pub phi: BTreeMap<String, String>,
    pub phi_frontier: BTreeMap<String, String>,
    pub uncovered: Vec<String>,
    pub preimages: BTreeMap<String, Vec<String>>,
    pub regions: BTreeMap<String, Vec<String>>,
    pub region_diameters: BTreeMap<String, u32>,
}

pub fn structure_doc(g: &TruncatedGraph, s: &Structure) -> StructureDoc {
    let ts = &s.tree_set;
    let tree = &s.tree;
    let m = &s.mapping;
    let names: Vec<String> = (0..tree.vertex_count()).map(|v| tree.name(v)).collect();
    let edges = (0..ts.len())
        .filter(|&e| e < ts.complement_of(e))
        .map(|e| [names[tree.origin(e)].clone(), names[tree.terminus(e)].clone()])
        .collect();
    let mut phi = BTreeMap::new();
    let mut phi_frontier = BTreeMap::new();
    for x in g.vertices() {
        match (m.phi[x], m.phi_full[x]) {
            (Some(t), _) => {
                phi.insert(g.name(x).to_string(), names[t].clone());
            }
            (None, Some(t)) => {
                phi_frontier.insert(g.name(x).to_string(), names[t].clone());
            }
            (None, None) => {}
        }
    }
    let by_tree = |sets: &[VertexSet]| -> BTreeMap<String, Vec<String>> { sets.iter().enumerate().map(|(v, s)| (names[v].clone(), cut_names(g, s))).collect() };
    let mut uncovered: Vec<String> = m.uncovered.iter().map(|&x| g.name(x).to_string()).collect();
    uncovered.sort();
    StructureDoc {
        cuts: ts.cuts().iter().map(|e| cut_names(g, e)).collect(),
        tree_vertices: names.clone(),
        classes: tree.classes().to_vec(),
        edges,
        phi,
        phi_frontier,
        uncovered,
        preimages: by_tree(&m.preimages),
        regions: by_tree(&m.regions),
        region_diameters: m.region_diameters.iter().enumerate().map(|(v, &d)| (names[v].clone(), d)).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LDoc {
    pub aut_x: u64,
    pub aut_t: u64,
    pub image: u64,
    pub injective: bool,
    pub surjective: bool,
}

impl From<&LReport> for LDoc {
    fn from(r: &LReport) -> Self {
        LDoc {
            aut_x: r.aut_x,
            aut_t: r.aut_t,
            image: r.image,
            injective: r.injective,
            surjective: r.surjective,
        }
    }
}

fn ratio(r: Ratio<u64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QiDoc {
    pub a: u32,
    pub a_witness: [String; 2],
    /// Exact value, `p` or `p/q`.
    pub b: String,
    pub b_case: BCase,
    pub b_witness: [String; 2],
    pub b_observed: String,
    pub b_observed_witness: [String; 2],
    pub c: u32,
    pub c_witness: String,
    pub d: u32,
    pub d_witness: String,
    pub psi: BTreeMap<String, String>,
    pub violations: Vec<String>,
    pub verdict: Verdict,
}

pub fn qi_doc(g: &TruncatedGraph, tree: &CutTree, q: &QiReport) -> QiDoc {
    let t = |v| tree.name(v);
    QiDoc {
        a: q.a,
        a_witness: [g.name(q.a_witness.0).into(), g.name(q.a_witness.1).into()],
        b: ratio(q.b),
        b_case: q.b_case,
        b_witness: [t(q.b_witness.0), t(q.b_witness.1)],
        b_observed: ratio(q.b_observed),
        b_observed_witness: [t(q.b_observed_witness.0), t(q.b_observed_witness.1)],
        c: q.c,
        c_witness: t(q.c_witness),
        d: q.d,
        d_witness: t(q.d_witness),
        psi: q.psi.iter().enumerate().map(|(v, &x)| (t(v), g.name(x).to_string())).collect(),
        violations: q.violations.clone(),
        verdict: q.verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrendRowDoc {
    pub radius: u32,
    pub max_region_diameter: u32,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrendDoc {
    pub family: String,
    pub rows: Vec<TrendRowDoc>,
    pub verdict: Trend,
}

pub fn trend_doc(spec_family: &str, t: &RegionTrend) -> TrendDoc {
    TrendDoc {
        family: spec_family.to_string(),
        rows: t
            .rows
            .iter()
            .map(|r| TrendRowDoc {
                radius: r.radius,
                max_region_diameter: r.max_region_diameter,
                witness: r.witness.clone(),
            })
            .collect(),
        verdict: t.verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QiTrendRowDoc {
    pub radius: u32,
    pub a: u32,
    pub b: String,
    pub c: u32,
    pub d: u32,
    pub max_region_diameter: u32,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QiTrendDoc {
    pub rows: Vec<QiTrendRowDoc>,
    pub region_trend: Trend,
    pub b_trend: Trend,
    pub verdict: Verdict,
}

pub fn qi_trend_doc(a: &QiAssessment) -> QiTrendDoc {
    QiTrendDoc {
        rows: a
            .rows
            .iter()
            .map(|r| QiTrendRowDoc {
                radius: r.radius,
                a: r.report.a,
                b: ratio(r.report.b),
                c: r.report.c,
                d: r.report.d,
                max_region_diameter: r.max_region_diameter,
                violations: r.report.violations.len(),
            })
            .collect(),
        region_trend: a.region_trend,
        b_trend: a.b_trend,
        verdict: a.verdict,
    }
}

/// A chain element identified by its size and least member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub level: u32,
    pub size: usize,
    pub least: String,
    pub touches_frontier: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TargetDoc {
    Vertex { vertex: String },
    End { ray: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEndDoc {
    pub target: TargetDoc,
    pub termini: Vec<String>,
    pub descents: Vec<u32>,
    pub trend: Trend,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowDoc {
    pub chain: Vec<Fingerprint>,
    pub carries_ray: bool,
    pub carries_infinite_degree_vertex: bool,
    pub ray_widths: Vec<u32>,
    pub infinite_degree_vertex: Option<String>,
    pub disjoint_paths: Vec<u32>,
    pub label: EndLabel,
    pub phi: Option<PhiEndDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarBallRowDoc {
    pub ball_radius: u32,
    pub diameters: Vec<u32>,
    pub trend: Trend,
    pub star_ball_trend: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarBallDoc {
    pub radii: Vec<u32>,
    pub balls: Vec<StarBallRowDoc>,
    pub eccentricities: Vec<u32>,
    pub diameter_trend: Trend,
    pub connected: bool,
    pub uniformly_ramifying: bool,
}

pub fn star_ball_doc(s: &StarBallScan) -> StarBallDoc {
    StarBallDoc {
        radii: s.radii.clone(),
        balls: s
            .balls
            .iter()
            .map(|b| StarBallRowDoc {
                ball_radius: b.ball_radius,
                diameters: b.diameters.clone(),
                trend: b.trend,
                star_ball_trend: b.star_ball_trend,
            })
            .collect(),
        eccentricities: s.eccentricities.clone(),
        diameter_trend: s.diameter_trend,
        connected: s.connected,
        uniformly_ramifying: s.uniformly_ramifying,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityRowDoc {
    pub representative: String,
    pub claim_radius: u32,
    pub holds: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityDoc {
    pub radii: Vec<u32>,
    pub claims: Vec<TransitivityRowDoc>,
    pub almost_transitive: bool,
}

pub fn transitivity_doc(t: &TransitivityScan) -> TransitivityDoc {
    TransitivityDoc {
        radii: t.radii.clone(),
        claims: t
            .claims
            .iter()
            .map(|c| TransitivityRowDoc {
                representative: c.representative.clone(),
                claim_radius: c.claim_radius,
                holds: c.holds.clone(),
            })
            .collect(),
        almost_transitive: t.almost_transitive,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndsDoc {
    pub family: String,
    pub truncation_radius: u32,
    pub levels: Vec<u32>,
    pub component_counts: Vec<usize>,
    pub shadows: Vec<ShadowDoc>,
    /// Present when the family ships canonical cuts.
    pub p1: Option<bool>,
    pub unsettled: Vec<usize>,
    pub collisions: Vec<[usize; 2]>,
    pub star_balls: StarBallDoc,
    pub almost_transitivity: TransitivityDoc,
}

pub fn ends_doc(a: &EndAnalysis, map: Option<&EndMap>, star: &StarBallScan, at: &TransitivityScan) -> EndsDoc {
    let g = &a.bundle.graph;
    let shadows = a
        .shadows
        .iter()
        .enumerate()
        .map(|(i, sh)| ShadowDoc {
            chain: sh
                .chain
                .iter()
                .map(|c| Fingerprint {
                    level: c.level,
                    size: c.members.len(),
                    least: cut_names(g, &c.members).into_iter().next().unwrap_or_default(),
                    touches_frontier: c.touches_frontier,
                })
                .collect(),
            carries_ray: sh.carries_ray,
            carries_infinite_degree_vertex: sh.carries_infinite_degree_vertex,
            ray_widths: sh.ray_widths.clone(),
            infinite_degree_vertex: sh.infinite_degree_vertex.as_ref().map(|(x, _)| g.name(*x).to_string()),
            disjoint_paths: sh.disjoint_paths.clone(),
            label: sh.label(),
            phi: map.map(|m| {
                let p = &m.targets[i];
                let tree = &m.structure.tree;
                PhiEndDoc {
                    target: match &p.target {
                        EndTarget::Vertex { vertex } => TargetDoc::Vertex { vertex: tree.name(*vertex) },
                        EndTarget::End { ray } => TargetDoc::End {
                            ray: ray.iter().map(|&v| tree.name(v)).collect(),
                        },
                    },
                    termini: p.termini.iter().map(|&v| tree.name(v)).collect(),
                    descents: p.descents.clone(),
                    trend: p.trend,
                    ambiguous: p.ambiguous,
                }
            }),
        })
        .collect();
    EndsDoc {
        family: a.bundle.spec.family.to_string(),
        truncation_radius: a.bundle.spec.radius,
        levels: a.levels.clone(),
        component_counts: a.component_counts.clone(),
        shadows,
        p1: map.map(|m| m.p1),
        unsettled: map.map(|m| m.unsettled.clone()).unwrap_or_default(),
        collisions: map.map(|m| m.collisions.iter().map(|&(i, j)| [i, j]).collect()).unwrap_or_default(),
        star_balls: star_ball_doc(star),
        almost_transitivity: transitivity_doc(at),
    }
}

/// Header naming what a document was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Source {
    pub family: Option<String>,
    pub radius: Option<u32>,
}

impl From<FamilySpec> for Source {
    fn from(s: FamilySpec) -> Self {
        Source {
            family: Some(s.family.to_string()),
            radius: Some(s.radius),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::input(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}
