//! Serializable command results and their table renderings.

use std::io::Write;

use anyhow::{anyhow, Result};
use serde::{Deserialize, Serialize};

use spun_core::cones::{relative_kernel, RelativeConstraint, SurfaceVector};
use spun_core::criteria::{boundary_class, CriterionReport, CuspBoundary, Slope};
use spun_core::first_order::FirstOrderSystem;
use spun_core::gluing::{GluingSystem, QuadType};

use crate::args::Format;

fn emit_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn slopes(boundary: &[CuspBoundary]) -> String {
    boundary
        .iter()
        .map(|b| b.slope.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn weights(w: &[u64]) -> String {
    w.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub quad_type: QuadType,
    pub weights: Vec<u64>,
    pub boundary: Vec<CuspBoundary>,
}

impl SurfaceRow {
    pub fn new(sys: &GluingSystem, s: &SurfaceVector) -> Result<Self> {
        Ok(Self {
            quad_type: s.quad_type().clone(),
            weights: s.weights().to_vec(),
            boundary: boundary_class(sys, s)?,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SurfaceListing {
    pub name: String,
    pub num_tetrahedra: usize,
    pub surfaces: Vec<SurfaceRow>,
}

impl SurfaceListing {
    pub fn print(&self, format: Format) -> Result<()> {
        if format == Format::Json {
            return emit_json(self);
        }
        let cells: Vec<[String; 3]> = self
            .surfaces
            .iter()
            .map(|r| [r.quad_type.to_string(), weights(&r.weights), slopes(&r.boundary)])
            .collect();
        let header = ["quad type".to_string(), "weights".to_string(), "slopes".to_string()];
        let width = |k: usize| {
            cells
                .iter()
                .chain([&header])
                .map(|c| c[k].chars().count())
                .max()
                .unwrap_or(0)
        };
        let (w0, w1) = (width(0), width(1));
        let mut out = std::io::stdout().lock();
        writeln!(out, "{:<w0$}  {:<w1$}  {}", header[0], header[1], header[2])?;
        for c in &cells {
            writeln!(out, "{:<w0$}  {:<w1$}  {}", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

fn write_report(out: &mut impl Write, report: &CriterionReport) -> Result<()> {
    let verdict = if report.is_satisfied() {
        "satisfied"
    } else {
        "not satisfied"
    };
    writeln!(out, "{}: {verdict}", report.criterion)?;
    let e = &report.evidence;
    if let (Some(rank), Some(required)) = (e.rank, e.required_rank) {
        writeln!(out, "rank {rank} (need {required})")?;
    }
    if !e.boundary.is_empty() {
        writeln!(out, "slopes {}", slopes(&e.boundary))?;
    }
    if let Some(g) = e.gamma0 {
        writeln!(out, "gamma0 {g}")?;
    }
    for r in &report.reasons {
        writeln!(out, "  - {r}")?;
    }
    Ok(())
}

pub fn print_report(report: &CriterionReport, format: Format) -> Result<()> {
    match format {
        Format::Json => emit_json(report),
        Format::Table => write_report(&mut std::io::stdout().lock(), report),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RelativeOutput {
    pub quad_type: QuadType,
    pub fillings: Vec<RelativeConstraint>,
    pub kernel: Vec<Vec<i64>>,
    pub surface: Option<Vec<u64>>,
    pub gamma0: Option<Slope>,
    pub report: CriterionReport,
}

impl RelativeOutput {
    pub fn new(
        sys: &GluingSystem,
        q: &QuadType,
        fillings: &[RelativeConstraint],
        surface: Option<&SurfaceVector>,
        report: CriterionReport,
    ) -> Result<Self> {
        let (kernel, _) = relative_kernel(sys, q, fillings)?;
        let kernel = kernel
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| i64::try_from(x).map_err(|_| anyhow!("kernel entry {x} does not fit in 64 bits")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            quad_type: q.clone(),
            fillings: fillings.to_vec(),
            kernel,
            surface: surface.map(|s| s.weights().to_vec()),
            gamma0: report.evidence.gamma0,
            report,
        })
    }

    pub fn print(&self, format: Format) -> Result<()> {
        if format == Format::Json {
            return emit_json(self);
        }
        let mut out = std::io::stdout().lock();
        writeln!(out, "quad type {}", self.quad_type)?;
        for f in &self.fillings {
            writeln!(out, "fill cusp {} with {}", f.cusp, Slope::from_pair(f.p, f.q))?;
        }
        for v in &self.kernel {
            writeln!(
                out,
                "kernel {}",
                v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
            )?;
        }
        if let Some(w) = &self.surface {
            writeln!(out, "surface {}", weights(w))?;
        }
        write_report(&mut out, &self.report)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FirstOrderOutput {
    pub quad_type: String,
    pub text: String,
    pub trivially_inconsistent: bool,
    pub monomial_solvable: Option<bool>,
    pub system: FirstOrderSystem,
}

impl FirstOrderOutput {
    pub fn print(&self, format: Format) -> Result<()> {
        if format == Format::Json {
            return emit_json(self);
        }
        let mut out = std::io::stdout().lock();
        if !self.text.is_empty() {
            writeln!(out, "{}", self.text)?;
        }
        Ok(())
    }
}
