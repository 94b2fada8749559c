use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use structree::cuts::{all_tight_cuts, find_structure_cuts, orbit_closure};
use structree::ends::{almost_transitivity, end_overlay_dot, map_ends, star_ball_scan};
use structree::io::{self, Source};
use structree::perm::DEFAULT_GROUP_BUDGET;
use structree::{
    check_tree_set, check_tree_set_strict, end_shadows, enumerate_tight_cuts, generate, graph_automorphisms, l_analysis, qi_constants, qi_trend, region_trend,
    tree_to_dot, Error, Family, FamilyBundle, FamilySpec, GraphJson, Permutation, Structure, TruncatedGraph, Verdict as QiVerdict, VertexSet,
};

use crate::args::{Format, Input, Output, Radii, Verb};

/// What went wrong, sorted by exit status.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

fn input_error(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// A graph with the cuts and automorphisms that came with it.
struct Loaded {
    source: Source,
    bundle: Option<FamilyBundle>,
    graph: TruncatedGraph,
    cuts: Option<Vec<VertexSet>>,
    inputs: Vec<PathBuf>,
}

fn default_radius(f: Family) -> u32 {
    f.min_radius().max(3)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let mut inputs = Vec::new();
    let (source, bundle, graph) = match (&input.family, &input.graph) {
        (Some(f), None) => {
            let spec = FamilySpec::new(*f, input.radius.unwrap_or_else(|| default_radius(*f)));
            let b = generate(spec)?;
            (Source::from(spec), Some(b.clone()), b.graph)
        }
        (None, Some(path)) => {
            let json: GraphJson = read_json(path)?;
            inputs.push(path.clone());
            let g = TruncatedGraph::from_json(&json)?;
            (
                Source {
                    family: None,
                    radius: g.radius(),
                },
                None,
                g,
            )
        }
        _ => return Err(input_error("give exactly one of --family and --graph")),
    };
    let cuts = match &input.cuts {
        Some(path) => {
            let lists: Vec<Vec<String>> = read_json(path)?;
            inputs.push(path.clone());
            Some(io::cuts_from_json(&graph, &lists)?)
        }
        None => bundle.as_ref().filter(|b| b.spec.family.has_canonical_cuts()).map(|b| b.canonical_cuts.clone()),
    };
    Ok(Loaded {
        source,
        bundle,
        graph,
        cuts,
        inputs,
    })
}

impl Loaded {
    fn cuts(&self) -> Result<&[VertexSet], Failure> {
        self.cuts.as_deref().ok_or_else(|| input_error("no cuts: the family ships none, pass --cuts"))
    }

    fn structure(&self) -> Result<Structure, Failure> {
        Ok(Structure::build(&self.graph, self.cuts()?)?)
    }

    fn automorphisms(&self, budget: u64) -> Result<Vec<Permutation>, Failure> {
        match &self.bundle {
            Some(b) => Ok(b.aut_generators.clone()),
            None => Ok(graph_automorphisms(&self.graph, budget)?),
        }
    }
}

fn emit(output: &Output, inputs: &[PathBuf], text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => {
            write_checked(path, inputs, text)?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_checked(path: &Path, inputs: &[PathBuf], text: &str) -> Result<(), Failure> {
    let same = |a: &Path| match (fs::canonicalize(a), fs::canonicalize(path)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == path,
    };
    if inputs.iter().any(|i| same(i)) {
        return Err(input_error(format!("refusing to overwrite input {}", path.display())));
    }
    fs::write(path, text).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))
}

fn emit_json<T: Serialize>(output: &Output, inputs: &[PathBuf], value: &T) -> Result<(), Failure> {
    emit(output, inputs, &io::to_pretty(value)?)
}

#[derive(Serialize)]
struct TreeSetReport {
    source: Source,
    valid: bool,
    violation: Option<Violation>,
    tree_set: Option<io::TreeSetDoc>,
}

#[derive(Serialize)]
struct Violation {
    axiom: &'static str,
    message: String,
}

#[derive(Serialize)]
struct QiOutput {
    source: Source,
    report: Option<io::QiDoc>,
    trend: Option<io::QiTrendDoc>,
}

#[derive(Serialize)]
struct Document<T> {
    source: Source,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct GraphSummary {
    vertices: usize,
    edges: usize,
    frontier: usize,
}

#[derive(Serialize)]
struct ReportDoc {
    source: Source,
    graph: GraphSummary,
    tree_set: io::TreeSetDoc,
    structure: io::StructureDoc,
    qi: io::QiDoc,
    l_analysis: Option<io::LDoc>,
    region_trend: Option<io::TrendDoc>,
    qi_trend: Option<io::QiTrendDoc>,
    ends: Option<io::EndsDoc>,
}

fn ends_document(family: Family, levels: &[u32]) -> Result<(io::EndsDoc, bool, String), Failure> {
    let analysis = end_shadows(family, levels)?;
    let map = if family.has_canonical_cuts() { Some(map_ends(&analysis)?) } else { None };
    let radii: Vec<u32> = levels.iter().map(|l| l + 2).collect();
    let star = star_ball_scan(family, &radii)?;
    let at = almost_transitivity(family, &radii)?;
    let doc = io::ends_doc(&analysis, map.as_ref(), &star, &at);
    let clean = map.as_ref().is_none_or(|m| m.p1 && m.collisions.is_empty());
    let dot = map.as_ref().map(|m| end_overlay_dot(m, &analysis.labels())).unwrap_or_default();
    Ok((doc, clean, dot))
}

/// Runs one verb. `Ok(false)` means a violation or not-qi verdict under
/// `--strict`.
pub fn run(verb: &Verb) -> Outcome {
    match verb {
        Verb::Generate { input, cuts_out, output } => {
            let l = load(input)?;
            emit_json(output, &l.inputs, &l.graph.to_json())?;
            if let Some(path) = cuts_out {
                let cuts = l.cuts.clone().unwrap_or_default();
                write_checked(path, &l.inputs, &io::to_pretty(&io::cuts_to_json(&l.graph, &cuts))?)?;
            }
            Ok(true)
        }
        Verb::Cuts {
            input,
            k,
            edge,
            structure,
            budget,
            output,
        } => {
            let l = load(input)?;
            let g = &l.graph;
            let sides: Vec<VertexSet> = if *structure {
                let auts = l.automorphisms(DEFAULT_GROUP_BUDGET)?;
                let mut all = Vec::new();
                for s in find_structure_cuts(g, &auts, *k, *budget, DEFAULT_GROUP_BUDGET)? {
                    all.extend(orbit_closure(&s.cut.side, &auts, DEFAULT_GROUP_BUDGET)?);
                }
                all
            } else if let Some(e) = edge {
                let (u, v) = e.split_once(',').ok_or_else(|| input_error("--edge takes u,v"))?;
                let p = (g.vertex(u.trim())?, g.vertex(v.trim())?);
                enumerate_tight_cuts(g, p, *k, *budget)?.into_iter().map(|c| c.side).collect()
            } else {
                all_tight_cuts(g, *k, *budget)?.into_iter().map(|c| c.side).collect()
            };
            let mut lists = io::cuts_to_json(g, &sides);
            lists.dedup();
            emit_json(output, &l.inputs, &lists)?;
            Ok(true)
        }
        Verb::Treeset {
            input,
            require_tight,
            verdict,
            output,
        } => {
            let l = load(input)?;
            let cuts = l.cuts()?;
            let checked = if *require_tight {
                check_tree_set_strict(&l.graph, cuts)
            } else {
                check_tree_set(&l.graph, cuts)
            };
            let report = match checked {
                Ok(ts) => TreeSetReport {
                    source: l.source.clone(),
                    valid: true,
                    violation: None,
                    tree_set: Some(io::treeset_doc(&l.graph, &ts)),
                },
                Err(Error::TreeSet(v)) => TreeSetReport {
                    source: l.source.clone(),
                    valid: false,
                    violation: Some(Violation {
                        axiom: v.axiom(),
                        message: v.to_string(),
                    }),
                    tree_set: None,
                },
                Err(e) => return Err(e.into()),
            };
            emit_json(output, &l.inputs, &report)?;
            Ok(report.valid || !verdict.strict)
        }
        Verb::Tree { input, output } => {
            let l = load(input)?;
            let s = l.structure()?;
            match output.format.unwrap_or(Format::Dot) {
                Format::Dot => emit(output, &l.inputs, &tree_to_dot(&s.tree, None))?,
                Format::Json => emit_json(
                    output,
                    &l.inputs,
                    &Document {
                        source: l.source.clone(),
                        body: io::structure_doc(&l.graph, &s),
                    },
                )?,
            }
            Ok(true)
        }
        Verb::Phi { input, output } => {
            let l = load(input)?;
            let s = l.structure()?;
            match output.format.unwrap_or(Format::Json) {
                Format::Dot => emit(output, &l.inputs, &tree_to_dot(&s.tree, Some(&s.mapping)))?,
                Format::Json => emit_json(
                    output,
                    &l.inputs,
                    &Document {
                        source: l.source.clone(),
                        body: io::structure_doc(&l.graph, &s),
                    },
                )?,
            }
            Ok(true)
        }
        Verb::Qi { input, radii, verdict, output } => {
            if let Some(Radii(radii)) = radii {
                let family = input.family.ok_or_else(|| input_error("--radii needs --family"))?;
                let a = qi_trend(family, radii)?;
                let doc = QiOutput {
                    source: Source {
                        family: Some(family.to_string()),
                        radius: None,
                    },
                    report: None,
                    trend: Some(io::qi_trend_doc(&a)),
                };
                emit_json(output, &[], &doc)?;
                return Ok(a.verdict == QiVerdict::Qi || !verdict.strict);
            }
            let l = load(input)?;
            let s = l.structure()?;
            let q = qi_constants(&l.graph, &s)?;
            let doc = QiOutput {
                source: l.source.clone(),
                report: Some(io::qi_doc(&l.graph, &s.tree, &q)),
                trend: None,
            };
            emit_json(output, &l.inputs, &doc)?;
            Ok(q.verdict == QiVerdict::Qi || !verdict.strict)
        }
        Verb::Trend {
            family,
            radii,
            verdict,
            output,
        } => {
            let t = region_trend(*family, &radii.0)?;
            emit_json(output, &[], &io::trend_doc(&family.to_string(), &t))?;
            Ok(t.verdict != structree::Trend::UnboundedTrend || !verdict.strict)
        }
        Verb::Ends {
            family,
            radii,
            verdict,
            output,
        } => {
            let (doc, clean, dot) = ends_document(*family, &radii.0)?;
            match output.format.unwrap_or(Format::Json) {
                Format::Json => emit_json(output, &[], &doc)?,
                Format::Dot if family.has_canonical_cuts() => emit(output, &[], &dot)?,
                Format::Dot => return Err(input_error(format!("{family} ships no canonical cuts, so there is no tree to draw"))),
            }
            Ok(clean || !verdict.strict)
        }
        Verb::LAnalysis { input, budget, output } => {
            let l = load(input)?;
            let s = l.structure()?;
            let r = l_analysis(&l.graph, &s.tree_set, &s.tree, &s.mapping, *budget)?;
            emit_json(
                output,
                &l.inputs,
                &Document {
                    source: l.source.clone(),
                    body: io::LDoc::from(&r),
                },
            )?;
            Ok(true)
        }
        Verb::Report {
            family,
            radius,
            radii,
            budget,
            verdict,
            output,
        } => {
            let spec = FamilySpec::new(*family, radius.unwrap_or_else(|| default_radius(*family)));
            let b = generate(spec)?;
            let g = &b.graph;
            if !family.has_canonical_cuts() {
                return Err(input_error(format!("{family} ships no canonical cuts")));
            }
            let s = Structure::build(g, &b.canonical_cuts)?;
            let q = qi_constants(g, &s)?;
            let l = match l_analysis(g, &s.tree_set, &s.tree, &s.mapping, *budget) {
                Ok(r) => Some(io::LDoc::from(&r)),
                Err(e) if e.is_budget() => None,
                Err(e) => return Err(e.into()),
            };
            let radii = radii
                .clone()
                .map(|r| r.0)
                .unwrap_or_else(|| (spec.radius.saturating_sub(2).max(family.min_radius())..=spec.radius).collect());
            let (region, trend) = if radii.len() >= 3 {
                (
                    Some(io::trend_doc(&family.to_string(), &region_trend(*family, &radii)?)),
                    Some(io::qi_trend_doc(&qi_trend(*family, &radii)?)),
                )
            } else {
                (None, None)
            };
            // levels two to four below the radius, so the end truncation is this one
            let ends = if spec.radius >= 4 && !family.is_finite() {
                let levels: Vec<u32> = (spec.radius - 4..=spec.radius - 2).collect();
                Some(ends_document(*family, &levels)?.0)
            } else {
                None
            };
            let qi_ok = trend.as_ref().map_or(q.verdict, |t| t.verdict) == QiVerdict::Qi;
            let doc = ReportDoc {
                source: Source::from(spec),
                graph: GraphSummary {
                    vertices: g.vertex_count(),
                    edges: g.edge_count(),
                    frontier: g.frontier().len(),
                },
                tree_set: io::treeset_doc(g, &s.tree_set),
                structure: io::structure_doc(g, &s),
                qi: io::qi_doc(g, &s.tree, &q),
                l_analysis: l,
                region_trend: region,
                qi_trend: trend,
                ends,
            };
            emit_json(output, &[], &doc)?;
            Ok(qi_ok || !verdict.strict)
        }
    }
}
