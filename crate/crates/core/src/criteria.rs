//! Boundary slopes and the linear-algebraic incompressibility criteria.
//!
//! A verdict of `NotSatisfied` only means a sufficient criterion failed; it
//! says nothing about the surface being compressible.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{constraint_row, relative_kernel, RelativeConstraint, SurfaceVector};
use crate::error::{Error, Result};
use crate::gluing::{cusp_matrix, qmatching_matrix, GluingSystem, QuadType};
use crate::linalg::{dot, kernel_basis, rank, IntMatrix};

/// Orders of vanishing of the meridian and longitude holonomies along a
/// surface: `m = μ·w`, `l = λ·w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryClass {
    pub m: i64,
    pub l: i64,
}

impl BoundaryClass {
    pub fn is_empty(&self) -> bool {
        self.m == 0 && self.l == 0
    }

    pub fn slope(&self) -> Slope {
        Slope::from_pair(-self.l, self.m)
    }
}

/// Unoriented slope `p μ + q λ` on a cusp torus, or no boundary at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Slope {
    Empty,
    /// Reduced, with `q > 0`, or `(p, q) = (1, 0)`.
    Curve {
        p: i64,
        q: i64,
    },
}

impl Slope {
    /// Reduces `(p, q)` to canonical form; `(0, 0)` is `Empty`.
    pub fn from_pair(p: i64, q: i64) -> Self {
        if p == 0 && q == 0 {
            return Slope::Empty;
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Slope::Curve { p, q }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Slope::Empty)
    }

    /// `p/q` as a rational; `None` for `Empty` and `1/0`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match *self {
            Slope::Curve { p, q } if q != 0 => Some(BigRational::new(p.into(), q.into())),
            _ => None,
        }
    }

    /// Whether the curve `p μ + q λ` is parallel to this slope.
    pub fn matches(&self, p: i64, q: i64) -> bool {
        *self == Slope::from_pair(p, q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Empty => f.write_str("∅"),
            Slope::Curve { p, q } => write!(f, "{p}/{q}"),
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∅" {
            return Ok(Slope::Empty);
        }
        let bad = || Error::InvalidFilling(format!("cannot parse slope {s:?}"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if p == 0 && q == 0 {
            return Err(bad());
        }
        Ok(Slope::from_pair(p, q))
    }
}

impl From<Slope> for String {
    fn from(s: Slope) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for Slope {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Boundary of a surface on one cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspBoundary {
    pub cusp: usize,
    pub m: i64,
    pub l: i64,
    pub slope: Slope,
}

impl CuspBoundary {
    pub fn class(&self) -> BoundaryClass {
        BoundaryClass { m: self.m, l: self.l }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    NotSatisfied,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required_rank: Option<usize>,
    pub totally_positive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfies_equations: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub on_kernel_ray: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<CuspBoundary>,
    /// Slope on the distinguished cusp for relative checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<Slope>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub verdict: Verdict,
    pub summary: String,
    pub evidence: Evidence,
    pub reasons: Vec<String>,
}

impl CriterionReport {
    fn conclude(criterion: &str, evidence: Evidence, reasons: Vec<String>) -> Self {
        let (verdict, summary) = if reasons.is_empty() {
            (Verdict::Satisfied, "criterion satisfied")
        } else {
            (Verdict::NotSatisfied, "criterion not met")
        };
        Self {
            criterion: criterion.to_string(),
            verdict,
            summary: summary.to_string(),
            evidence,
            reasons,
        }
    }

    pub fn is_satisfied(&self) -> bool {
        self.verdict == Verdict::Satisfied
    }
}

fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Domain(format!("{what} {x} does not fit in 64 bits")))
}

fn check_surface(sys: &GluingSystem, s: &SurfaceVector) -> Result<()> {
    if s.num_tetrahedra() != sys.num_tetrahedra() {
        return Err(Error::LengthMismatch {
            context: "surface".into(),
            expected: sys.num_tetrahedra(),
            found: s.num_tetrahedra(),
        });
    }
    Ok(())
}

/// Per-cusp boundary class and slope of `s`, using the cusp rows rotated to
/// the surface's quad type.
pub fn boundary_class(sys: &GluingSystem, s: &SurfaceVector) -> Result<Vec<CuspBoundary>> {
    check_surface(sys, s)?;
    let w = s.weights_big();
    let cm = cusp_matrix(sys, s.quad_type());
    (0..sys.num_cusps())
        .map(|k| {
            let class = BoundaryClass {
                m: to_i64(&dot(cm.row(2 * k), &w), "meridian order")?,
                l: to_i64(&dot(cm.row(2 * k + 1), &w), "longitude order")?,
            };
            Ok(CuspBoundary {
                cusp: k,
                m: class.m,
                l: class.l,
                slope: class.slope(),
            })
        })
        .collect()
}

fn zero_weight_reason(s: &SurfaceVector) -> Option<String> {
    let zeros: Vec<String> = s
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, &w)| w == 0)
        .map(|(i, _)| i.to_string())
        .collect();
    (!zeros.is_empty()).then(|| format!("zero quad weight in tetrahedron {{{}}}", zeros.join(",")))
}

/// Whether `w` is a positive multiple of the single kernel generator.
fn on_ray(kernel: &[Vec<BigInt>], w: &[BigInt]) -> bool {
    let [v] = kernel else { return false };
    if w.iter().all(Zero::is_zero) {
        return false;
    }
    let both = IntMatrix::from_rows(w.len(), &[v.clone(), w.to_vec()]);
    let same_direction = v.iter().zip(w).any(|(a, b)| !b.is_zero() && a.signum() == b.signum());
    rank(&both) == 1 && same_direction
}

/// Vertex-surface criterion with a quadrilateral in every tetrahedron: all
/// weights positive, `ker A_q` one-dimensional and containing `s`, and
/// nonempty boundary on at least one cusp.
pub fn theorem1_check(sys: &GluingSystem, s: &SurfaceVector) -> Result<CriterionReport> {
    check_surface(sys, s)?;
    let n = sys.num_tetrahedra();
    let w = s.weights_big();
    let a = qmatching_matrix(sys, s.quad_type());
    let kernel = kernel_basis(&a);
    let boundary = boundary_class(sys, s)?;
    let satisfies = a.mul_vec(&w).iter().all(Zero::is_zero);
    let on_kernel_ray = on_ray(&kernel, &w);

    let mut reasons = Vec::new();
    reasons.extend(zero_weight_reason(s));
    if !satisfies {
        reasons.push("surface does not satisfy the Q-matching equations".into());
    }
    if kernel.len() != 1 {
        reasons.push(format!(
            "kernel of the Q-matching matrix has dimension {}, not 1",
            kernel.len()
        ));
    } else if satisfies && !on_kernel_ray {
        reasons.push("surface is not on the kernel ray".into());
    }
    if boundary.iter().all(|b| b.slope.is_empty()) {
        reasons.push("boundary is empty on every cusp".into());
    }

    let evidence = Evidence {
        kernel_dim: Some(kernel.len()),
        rank: Some(n - kernel.len()),
        required_rank: Some(n.saturating_sub(1)),
        totally_positive: s.weights().iter().all(|&x| x > 0),
        satisfies_equations: Some(satisfies),
        on_kernel_ray: Some(on_kernel_ray),
        boundary,
        gamma0: None,
    };
    Ok(CriterionReport::conclude("theorem1", evidence, reasons))
}

/// Validates that `fillings` name every cusp except cusp 0 exactly once.
fn check_fillings(sys: &GluingSystem, fillings: &[RelativeConstraint]) -> Result<()> {
    let mut seen = vec![false; sys.num_cusps()];
    for f in fillings {
        if f.cusp == 0 {
            return Err(Error::InvalidFilling(
                "cusp 0 is the distinguished cusp and cannot be filled".into(),
            ));
        }
        RelativeConstraint::new(f.cusp, f.p, f.q)?;
        match seen.get_mut(f.cusp) {
            None => {
                return Err(Error::InvalidFilling(format!(
                    "cusp {} does not exist ({} cusps)",
                    f.cusp,
                    sys.num_cusps()
                )))
            }
            Some(true) => return Err(Error::InvalidFilling(format!("cusp {} filled twice", f.cusp))),
            Some(s) => *s = true,
        }
    }
    let missing: Vec<String> = (1..sys.num_cusps())
        .filter(|&k| !seen[k])
        .map(|k| k.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Precondition(format!(
            "no filling given for cusp {}",
            missing.join(", ")
        )));
    }
    Ok(())
}

/// Relative vertex-surface criterion: all weights positive, nonempty boundary
/// on every cusp with slope `γ_k` on each filled cusp, and the relative
/// kernel one-dimensional and containing `s`. Reports `γ_0`.
pub fn theorem3_check(
    sys: &GluingSystem,
    s: &SurfaceVector,
    fillings: &[RelativeConstraint],
) -> Result<CriterionReport> {
    check_surface(sys, s)?;
    check_fillings(sys, fillings)?;
    let n = sys.num_tetrahedra();
    let w = s.weights_big();
    let q = s.quad_type();
    let (kernel, rank_total) = relative_kernel(sys, q, fillings)?;
    let boundary = boundary_class(sys, s)?;
    let satisfies = qmatching_matrix(sys, q).mul_vec(&w).iter().all(Zero::is_zero);
    let on_kernel_ray = on_ray(&kernel, &w);

    let mut reasons = Vec::new();
    reasons.extend(zero_weight_reason(s));
    if !satisfies {
        reasons.push("surface does not satisfy the Q-matching equations".into());
    }
    for b in boundary.iter().filter(|b| b.slope.is_empty()) {
        reasons.push(format!("boundary is empty on cusp {}", b.cusp));
    }
    for f in fillings {
        if !dot(&constraint_row(sys, q, f)?, &w).is_zero() {
            reasons.push(format!(
                "boundary slope {} on cusp {} is not the filling {}",
                boundary[f.cusp].slope,
                f.cusp,
                Slope::from_pair(f.p, f.q)
            ));
        }
    }
    if rank_total + 1 != n {
        reasons.push(format!(
            "relative matrix has rank {rank_total}, not n-1 = {}",
            n.saturating_sub(1)
        ));
    } else if satisfies && !on_kernel_ray {
        reasons.push("surface is not on the relative kernel ray".into());
    }

    let evidence = Evidence {
        kernel_dim: Some(kernel.len()),
        rank: Some(rank_total),
        required_rank: Some(n.saturating_sub(1)),
        totally_positive: s.weights().iter().all(|&x| x > 0),
        satisfies_equations: Some(satisfies),
        on_kernel_ray: Some(on_kernel_ray),
        gamma0: boundary.first().map(|b| b.slope),
        boundary,
    };
    Ok(CriterionReport::conclude("theorem3", evidence, reasons))
}

/// Runs the relative criterion at quad type `q` without a given surface. The
/// candidate is the generator of the relative kernel when that kernel is a
/// single ray meeting the nonnegative orthant; otherwise no surface is
/// returned and the report explains why.
pub fn theorem3_at_quad_type(
    sys: &GluingSystem,
    q: &QuadType,
    fillings: &[RelativeConstraint],
) -> Result<(CriterionReport, Option<SurfaceVector>)> {
    q.check_len(sys.num_tetrahedra())?;
    check_fillings(sys, fillings)?;
    let (kernel, rank_total) = relative_kernel(sys, q, fillings)?;
    let candidate = match kernel.as_slice() {
        [v] if v.iter().all(|x| !x.is_negative()) => Some(v.clone()),
        [v] if v.iter().all(|x| !x.is_positive()) => Some(v.iter().map(|x| -x).collect()),
        _ => None,
    };
    if let Some(v) = candidate {
        let s = SurfaceVector::from_big(q.clone(), &v);
        return Ok((theorem3_check(sys, &s, fillings)?, Some(s)));
    }
    let n = sys.num_tetrahedra();
    let reason = if kernel.len() == 1 {
        "relative kernel ray has coordinates of both signs".to_string()
    } else {
        format!("relative kernel has dimension {}, not 1", kernel.len())
    };
    let evidence = Evidence {
        kernel_dim: Some(kernel.len()),
        rank: Some(rank_total),
        required_rank: Some(n.saturating_sub(1)),
        ..Evidence::default()
    };
    Ok((CriterionReport::conclude("theorem3", evidence, vec![reason]), None))
}

/// Genuineness test for a degeneration vector: `d` totally positive and
/// `rank A = n - 1`.
pub fn kabaya_check(a: &IntMatrix, d: &[BigInt]) -> Result<CriterionReport> {
    let n = a.ncols();
    if d.len() != n {
        return Err(Error::LengthMismatch {
            context: "degeneration vector".into(),
            expected: n,
            found: d.len(),
        });
    }
    if d.iter().any(Signed::is_negative) || d.iter().all(Zero::is_zero) {
        return Err(Error::Precondition(
            "degeneration vector must be nonzero and nonnegative".into(),
        ));
    }
    if !a.mul_vec(d).iter().all(Zero::is_zero) {
        return Err(Error::Precondition(
            "degeneration vector is not in the kernel of A".into(),
        ));
    }
    let r = rank(a);
    let zeros: Vec<String> = d
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(i, _)| i.to_string())
        .collect();
    let mut reasons = Vec::new();
    if !zeros.is_empty() {
        reasons.push(format!(
            "degeneration vector is not totally positive (zero in coordinate {{{}}})",
            zeros.join(",")
        ));
    }
    if r + 1 != n {
        reasons.push(format!("rank of A is {r}, not n-1 = {}", n.saturating_sub(1)));
    }
    let evidence = Evidence {
        kernel_dim: Some(n - r),
        rank: Some(r),
        required_rank: Some(n.saturating_sub(1)),
        totally_positive: zeros.is_empty(),
        ..Evidence::default()
    };
    Ok(CriterionReport::conclude("kabaya", evidence, reasons))
}

/// Applies a unimodular change of peripheral basis to a slope:
/// `(p', q')ᵀ = M (p, q)ᵀ`.
pub fn rebase_slope(s: Slope, m: [[i64; 2]; 2]) -> Result<Slope> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() != 1 {
        return Err(Error::NotUnimodular(det));
    }
    Ok(match s {
        Slope::Empty => Slope::Empty,
        Slope::Curve { p, q } => Slope::from_pair(m[0][0] * p + m[0][1] * q, m[1][0] * p + m[1][1] * q),
    })
}
