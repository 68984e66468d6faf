use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spun_core::cones::{RelativeConstraint, DEFAULT_CAP};
use spun_core::gluing::QuadType;

#[derive(Parser, Debug)]
#[command(
    name = "spun",
    version,
    about = "Spun-normal surfaces, boundary slopes and incompressibility checks"
)]
pub struct Cli {
    /// Worker threads for enumeration (defaults to the number of CPUs).
    #[arg(long, env = "SPUN_THREADS", global = true, value_parser = positive)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Gluing-data JSON file, or `-` for stdin.
    #[arg(long, short)]
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List vertex surfaces with their weights and per-cusp slopes.
    Vertices {
        #[command(flatten)]
        input: InputArgs,
        /// Restrict to the extreme rays of one quad type, e.g. `00120`.
        #[arg(long, short)]
        quad_type: Option<QuadType>,
        /// Refuse to enumerate all quad types above this many tetrahedra.
        #[arg(long, default_value_t = DEFAULT_CAP, value_parser = positive)]
        cap: usize,
        /// Output format [default: table].
        #[arg(long, short)]
        format: Option<Format>,
    },
    /// List fundamental surfaces (Hilbert-basis elements).
    Fundamental {
        #[command(flatten)]
        input: InputArgs,
        /// Restrict to the Hilbert basis of one quad type.
        #[arg(long, short)]
        quad_type: Option<QuadType>,
        /// Refuse to enumerate all quad types above this many tetrahedra.
        #[arg(long, default_value_t = DEFAULT_CAP, value_parser = positive)]
        cap: usize,
        /// Output format [default: table].
        #[arg(long, short)]
        format: Option<Format>,
    },
    /// Check a surface against the vertex-surface criterion. Exits 3 when the
    /// criterion is not met.
    Criterion {
        #[command(flatten)]
        input: InputArgs,
        /// Quad type of the surface [default: all 0].
        #[arg(long, short)]
        quad_type: Option<QuadType>,
        /// Quad weights, comma separated.
        #[arg(long, short, value_delimiter = ',', required = true)]
        surface: Vec<u64>,
        /// Output format [default: json].
        #[arg(long, short)]
        format: Option<Format>,
    },
    /// Relative criterion with every cusp but cusp 0 filled. Without
    /// `--surface` the relative kernel generator is checked. Exits 3 when the
    /// criterion is not met.
    Relative {
        #[command(flatten)]
        input: InputArgs,
        /// Quad type [default: all 0].
        #[arg(long, short)]
        quad_type: Option<QuadType>,
        /// Quad weights, comma separated.
        #[arg(long, short, value_delimiter = ',')]
        surface: Option<Vec<u64>>,
        /// Filling `cusp=p/q` meaning the curve p·μ + q·λ; repeat per cusp.
        #[arg(long, value_parser = parse_fill, required = true)]
        fill: Vec<RelativeConstraint>,
        /// Output format [default: json].
        #[arg(long, short)]
        format: Option<Format>,
    },
    /// Emit the first-order system of the edge equations along a
    /// degeneration vector.
    FirstOrder {
        #[command(flatten)]
        input: InputArgs,
        /// Quad type whose parameters the equations are written in [default: all 0].
        #[arg(long, short)]
        quad_type: Option<QuadType>,
        /// Degeneration vector, comma separated.
        #[arg(long, short, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        degeneration: Vec<i64>,
        /// Output format [default: table, the plain equations].
        #[arg(long, short)]
        format: Option<Format>,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Parses `cusp=p/q`; a bare `p` means `p/1`.
fn parse_fill(s: &str) -> Result<RelativeConstraint, String> {
    let (cusp, slope) = s
        .split_once('=')
        .ok_or_else(|| format!("expected cusp=p/q, got {s:?}"))?;
    let cusp: usize = cusp.trim().parse().map_err(|_| format!("bad cusp index {cusp:?}"))?;
    let (p, q) = slope.split_once('/').unwrap_or((slope, "1"));
    let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator {p:?}"))?;
    let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator {q:?}"))?;
    RelativeConstraint::new(cusp, p, q).map_err(|e| e.to_string())
}
