//! `spun`: spun-normal surface enumeration and incompressibility checks.
//!
//! Exit codes: 0 success or criterion satisfied, 1 usage error, 2 data
//! error, 3 criterion not met.

mod args;
mod output;

use std::fmt;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use spun_core::cones::{
    all_fundamental_surfaces, enumerate_vertex_surfaces_with_cap, extreme_rays, fundamental_surfaces, SurfaceVector,
};
use spun_core::criteria::{theorem1_check, theorem3_at_quad_type, theorem3_check, CriterionReport};
use spun_core::first_order::{
    build_first_order, emit_system, is_trivially_inconsistent, monomial_sign_solvable, validate_degeneration,
};
use spun_core::gluing::{qmatching_matrix, rotate_row, GluingSystem, QuadType};

use args::{Cli, Command, Format, InputArgs};
use output::{FirstOrderOutput, RelativeOutput, SurfaceListing, SurfaceRow};

/// An error in the invocation rather than in the data.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl fmt::Display) -> anyhow::Error {
    Usage(e.to_string()).into()
}

fn load(input: &InputArgs) -> Result<GluingSystem> {
    let text = if input.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading gluing data from stdin")?
    } else {
        std::fs::read_to_string(&input.input).with_context(|| format!("reading {}", input.input.display()))?
    };
    let sys = GluingSystem::from_json(&text).with_context(|| format!("parsing {}", input.input.display()))?;
    for w in sys.validation_warnings() {
        eprintln!("warning: {w}");
    }
    Ok(sys)
}

fn quad_type_or_default(sys: &GluingSystem, q: Option<QuadType>) -> Result<QuadType> {
    let q = q.unwrap_or_else(|| QuadType::uniform(sys.num_tetrahedra(), 0));
    q.check_len(sys.num_tetrahedra()).map_err(usage)?;
    Ok(q)
}

fn surface(sys: &GluingSystem, q: Option<QuadType>, weights: Vec<u64>) -> Result<SurfaceVector> {
    let q = quad_type_or_default(sys, q)?;
    if weights.len() != sys.num_tetrahedra() {
        return Err(usage(format!(
            "surface has {} weights but the triangulation has {} tetrahedra",
            weights.len(),
            sys.num_tetrahedra()
        )));
    }
    SurfaceVector::new(q, weights).map_err(usage)
}

fn listing(sys: &GluingSystem, surfaces: &[SurfaceVector]) -> Result<SurfaceListing> {
    let rows = surfaces
        .iter()
        .map(|s| SurfaceRow::new(sys, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(SurfaceListing {
        name: sys.name.clone(),
        num_tetrahedra: sys.num_tetrahedra(),
        surfaces: rows,
    })
}

fn report_exit(report: &CriterionReport) -> u8 {
    if report.is_satisfied() {
        0
    } else {
        3
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Vertices {
            input,
            quad_type,
            cap,
            format,
        } => {
            let sys = load(&input)?;
            let surfaces = match quad_type {
                Some(q) => extreme_rays(&sys, &quad_type_or_default(&sys, Some(q))?),
                None => enumerate_vertex_surfaces_with_cap(&sys, cap).map_err(usage)?,
            };
            listing(&sys, &surfaces)?.print(format.unwrap_or(Format::Table))?;
            Ok(0)
        }
        Command::Fundamental {
            input,
            quad_type,
            cap,
            format,
        } => {
            let sys = load(&input)?;
            let surfaces = match quad_type {
                Some(q) => fundamental_surfaces(&sys, &quad_type_or_default(&sys, Some(q))?),
                None => all_fundamental_surfaces(&sys, cap).map_err(usage)?,
            };
            listing(&sys, &surfaces)?.print(format.unwrap_or(Format::Table))?;
            Ok(0)
        }
        Command::Criterion {
            input,
            quad_type,
            surface: weights,
            format,
        } => {
            let sys = load(&input)?;
            let s = surface(&sys, quad_type, weights)?;
            let report = theorem1_check(&sys, &s)?;
            output::print_report(&report, format.unwrap_or(Format::Json))?;
            Ok(report_exit(&report))
        }
        Command::Relative {
            input,
            quad_type,
            surface: weights,
            fill,
            format,
        } => {
            let sys = load(&input)?;
            let q = quad_type_or_default(&sys, quad_type.clone())?;
            let (report, s) = match weights {
                Some(w) => {
                    let s = surface(&sys, quad_type, w)?;
                    (theorem3_check(&sys, &s, &fill).map_err(usage)?, Some(s))
                }
                None => theorem3_at_quad_type(&sys, &q, &fill).map_err(usage)?,
            };
            let out = RelativeOutput::new(&sys, &q, &fill, s.as_ref(), report)?;
            out.print(format.unwrap_or(Format::Json))?;
            Ok(report_exit(&out.report))
        }
        Command::FirstOrder {
            input,
            quad_type,
            degeneration,
            format,
        } => {
            let sys = load(&input)?;
            let q = quad_type_or_default(&sys, quad_type)?;
            if degeneration.len() != sys.num_tetrahedra() {
                return Err(usage(format!(
                    "degeneration vector has {} entries but the triangulation has {} tetrahedra",
                    degeneration.len(),
                    sys.num_tetrahedra()
                )));
            }
            if !validate_degeneration(&qmatching_matrix(&sys, &q), &degeneration) {
                return Err(usage(
                    "degeneration vector must be nonzero, nonnegative and in the kernel of the Q-matching matrix",
                ));
            }
            let rows: Vec<_> = sys.edges().iter().map(|r| rotate_row(r, &q)).collect();
            let fos = build_first_order(&rows, &degeneration).map_err(usage)?;
            let monomial_solvable = if fos.is_monomial() {
                let (a, c) = fos.exponent_matrix();
                Some(monomial_sign_solvable(&a, &c)?)
            } else {
                None
            };
            let out = FirstOrderOutput {
                quad_type: q.to_string(),
                text: emit_system(&fos),
                trivially_inconsistent: is_trivially_inconsistent(&fos),
                monomial_solvable,
                system: fos,
            };
            out.print(format.unwrap_or(Format::Table))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<Usage>().is_some() { 1 } else { 2 })
        }
    }
}
