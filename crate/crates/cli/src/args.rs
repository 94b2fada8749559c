use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use structree::Family;

#[derive(Debug, Parser)]
#[command(
    name = "structree",
    version,
    about = "Structure trees, quasi-isometry checks and end analysis on graph truncations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Write a family truncation as a JSON graph, optionally with its cuts.
    Generate {
        #[command(flatten)]
        input: Input,
        /// Also write the family's canonical cuts here.
        #[arg(long)]
        cuts_out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Tight cuts with boundary size at most k.
    Cuts {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Only cuts whose boundary contains this edge, given as `u,v`.
        #[arg(long)]
        edge: Option<String>,
        /// Keep only the orbit families that are nested, closed under the
        /// family's automorphism generators.
        #[arg(long)]
        structure: bool,
        #[arg(long, default_value_t = structree::cuts::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Check the tree-set axioms and list the points-to relation.
    Treeset {
        #[command(flatten)]
        input: Input,
        /// Reject cuts that are not tight.
        #[arg(long)]
        require_tight: bool,
        #[command(flatten)]
        verdict: Verdict,
        #[command(flatten)]
        output: Output,
    },
    /// The cut tree T(E); DOT by default.
    Tree {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// The structure mapping φ with regions.
    Phi {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Quasi-isometry constants at one radius, or their trend over `--radii`.
    Qi {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_radii)]
        radii: Option<Radii>,
        #[command(flatten)]
        verdict: Verdict,
        #[command(flatten)]
        output: Output,
    },
    /// Largest region diameter across radii.
    Trend {
        #[arg(long)]
        family: Family,
        #[arg(long, value_parser = parse_radii)]
        radii: Radii,
        #[command(flatten)]
        verdict: Verdict,
        #[command(flatten)]
        output: Output,
    },
    /// End shadows, labels, the end map, star balls and covering balls.
    /// `--radii` are the shadow levels; the truncation goes two deeper.
    Ends {
        #[arg(long)]
        family: Family,
        #[arg(long, value_parser = parse_radii)]
        radii: Radii,
        #[command(flatten)]
        verdict: Verdict,
        #[command(flatten)]
        output: Output,
    },
    /// Counts for the map from Aut(X) to Aut(T).
    LAnalysis {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = structree::perm::DEFAULT_GROUP_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// The whole pipeline for one family in one document.
    Report {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long, value_parser = parse_radii)]
        radii: Option<Radii>,
        #[arg(long, default_value_t = structree::perm::DEFAULT_GROUP_BUDGET)]
        budget: u64,
        #[command(flatten)]
        verdict: Verdict,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// Family name, with parameters after a colon, e.g. `biregular_tree:2,3`.
    #[arg(long, conflicts_with = "graph")]
    pub family: Option<Family>,
    #[arg(long)]
    pub radius: Option<u32>,
    /// A JSON graph instead of a family.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// A cut list to use instead of the family's canonical cuts.
    #[arg(long)]
    pub cuts: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct Verdict {
    /// Exit with status 1 on a violation or a not-qi verdict.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radii(pub Vec<u32>);

/// `A..B`, both ends included, or a comma list.
pub fn parse_radii(s: &str) -> Result<Radii, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad radius {t:?}: {e}"));
    let list = match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            (a..=b).collect()
        }
        None => s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?,
    };
    Ok(Radii(list))
}
