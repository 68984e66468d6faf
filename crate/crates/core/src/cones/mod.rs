//! Cones of spun-normal solutions: extreme rays, vertex-surface enumeration,
//! Hilbert bases and relative kernels.

mod dd;
mod enumerate;
mod hilbert;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gluing::{cusp_matrix, qmatching_matrix, GluingSystem, QuadType};
use crate::linalg::{kernel_basis, IntMatrix};

pub use dd::cone_extreme_rays;
pub use enumerate::{enumerate_vertex_surfaces, enumerate_vertex_surfaces_with_cap, DEFAULT_CAP};
pub use hilbert::cone_hilbert_basis;

/// An admissible surface: a quad type and a nonnegative weight per
/// tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceVector {
    quad_type: QuadType,
    weights: Vec<u64>,
}

impl SurfaceVector {
    pub fn new(quad_type: QuadType, weights: Vec<u64>) -> Result<Self> {
        if quad_type.len() != weights.len() {
            return Err(Error::LengthMismatch {
                context: "surface weights vs quad type".into(),
                expected: quad_type.len(),
                found: weights.len(),
            });
        }
        Ok(Self { quad_type, weights })
    }

    /// Panics if an entry is negative or does not fit in `u64`.
    pub(crate) fn from_big(quad_type: QuadType, weights: &[BigInt]) -> Self {
        let weights = weights
            .iter()
            .map(|w| w.to_u64().unwrap_or_else(|| panic!("weight {w} is not a u64")))
            .collect();
        Self { quad_type, weights }
    }

    pub fn quad_type(&self) -> &QuadType {
        &self.quad_type
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn num_tetrahedra(&self) -> usize {
        self.weights.len()
    }

    pub fn weights_big(&self) -> Vec<BigInt> {
        self.weights.iter().map(|&w| BigInt::from(w)).collect()
    }

    /// Coordinates in `Z^{3n}`: weight `w_i` in slot `3i + t_i`.
    pub fn q_coords(&self) -> Vec<u64> {
        let mut q = vec![0; 3 * self.weights.len()];
        for (i, &w) in self.weights.iter().enumerate() {
            q[3 * i + self.quad_type.get(i) as usize] = w;
        }
        q
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn scaled(&self, k: u64) -> Self {
        Self {
            quad_type: self.quad_type.clone(),
            weights: self.weights.iter().map(|&w| w * k).collect(),
        }
    }

    /// Same surface with the quad type set to 0 wherever the weight is 0.
    pub fn canonical(&self) -> Self {
        let types = self
            .weights
            .iter()
            .zip(self.quad_type.as_slice())
            .map(|(&w, &t)| if w == 0 { 0 } else { t })
            .collect();
        Self {
            quad_type: QuadType::new(types).expect("types stay in range"),
            weights: self.weights.clone(),
        }
    }

    /// Sum of two surfaces whose quads agree wherever both are nonzero.
    pub fn add(&self, other: &Self) -> Option<Self> {
        if self.weights.len() != other.weights.len() {
            return None;
        }
        let mut types = Vec::with_capacity(self.weights.len());
        let mut weights = Vec::with_capacity(self.weights.len());
        for i in 0..self.weights.len() {
            let (w1, w2) = (self.weights[i], other.weights[i]);
            let (t1, t2) = (self.quad_type.get(i), other.quad_type.get(i));
            let t = match (w1, w2) {
                (0, _) => t2,
                (_, 0) => t1,
                _ if t1 == t2 => t1,
                _ => return None,
            };
            types.push(t);
            weights.push(w1 + w2);
        }
        Some(Self {
            quad_type: QuadType::new(types).ok()?,
            weights,
        })
    }

    /// Whether the weights lie in the kernel of `qmatching_matrix(sys, quad_type)`.
    pub fn satisfies_matching(&self, sys: &GluingSystem) -> bool {
        if self.num_tetrahedra() != sys.num_tetrahedra() {
            return false;
        }
        let a = qmatching_matrix(sys, &self.quad_type);
        a.mul_vec(&self.weights_big()).iter().all(Zero::is_zero)
    }

    pub fn gcd(&self) -> u64 {
        self.weights.iter().fold(0u64, |g, &w| g.gcd(&w))
    }
}

impl PartialOrd for SurfaceVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `q_coords`.
impl Ord for SurfaceVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q_coords().cmp(&other.q_coords())
    }
}

/// Requires the boundary on cusp `cusp` to be empty or parallel to the
/// slope `p μ + q λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelativeConstraint {
    pub cusp: usize,
    pub p: i64,
    pub q: i64,
}

impl RelativeConstraint {
    pub fn new(cusp: usize, p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidFilling(format!("cusp {cusp}: slope 0/0")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidFilling(format!(
                "cusp {cusp}: {p}/{q} is not in lowest terms"
            )));
        }
        Ok(Self { cusp, p, q })
    }
}

/// Extreme rays of `{x >= 0 : A_q x = 0}`, primitive, sorted by `q_coords`.
pub fn extreme_rays(sys: &GluingSystem, q: &QuadType) -> Vec<SurfaceVector> {
    let a = qmatching_matrix(sys, q);
    cone_extreme_rays(&a)
        .iter()
        .map(|r| SurfaceVector::from_big(q.clone(), r))
        .collect()
}

/// Hilbert basis of the monoid of integer points of `{x >= 0 : A_q x = 0}`.
pub fn fundamental_surfaces(sys: &GluingSystem, q: &QuadType) -> Vec<SurfaceVector> {
    let a = qmatching_matrix(sys, q);
    cone_hilbert_basis(&a)
        .iter()
        .map(|r| SurfaceVector::from_big(q.clone(), r))
        .collect()
}

/// Fundamental surfaces over every quad type, deduplicated on `q_coords`.
/// Iterates all `3^n` quad types, so it honours the same cap as vertex
/// enumeration.
pub fn all_fundamental_surfaces(sys: &GluingSystem, cap: usize) -> Result<Vec<SurfaceVector>> {
    let n = sys.num_tetrahedra();
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let mut out: Vec<SurfaceVector> = enumerate::all_quad_types(n)
        .flat_map(|q| fundamental_surfaces(sys, &q))
        .map(|s| s.canonical())
        .collect();
    out.sort();
    out.dedup_by(|a, b| a.q_coords() == b.q_coords());
    Ok(out)
}

/// a-part of the row `p·μ_k + q·λ_k` under quad type `q`: its dot product
/// with a surface's weights is the intersection number of the slope with the
/// surface's boundary on that cusp.
pub fn constraint_row(sys: &GluingSystem, quad: &QuadType, c: &RelativeConstraint) -> Result<Vec<BigInt>> {
    if c.cusp >= sys.num_cusps() {
        return Err(Error::InvalidFilling(format!(
            "cusp {} does not exist ({} cusps)",
            c.cusp,
            sys.num_cusps()
        )));
    }
    let cm = cusp_matrix(sys, quad);
    let (p, q) = (BigInt::from(c.p), BigInt::from(c.q));
    Ok(cm
        .row(2 * c.cusp)
        .iter()
        .zip(cm.row(2 * c.cusp + 1))
        .map(|(mu, la)| &p * mu + &q * la)
        .collect())
}

/// `A_q` stacked with one constraint row per filling.
pub fn relative_matrix(sys: &GluingSystem, q: &QuadType, constraints: &[RelativeConstraint]) -> Result<IntMatrix> {
    let a = qmatching_matrix(sys, q);
    let rows = constraints
        .iter()
        .map(|c| constraint_row(sys, q, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(a.vstack(&IntMatrix::from_rows(sys.num_tetrahedra(), &rows)))
}

/// Kernel basis and rank of the relative matrix.
pub fn relative_kernel(
    sys: &GluingSystem,
    q: &QuadType,
    constraints: &[RelativeConstraint],
) -> Result<(Vec<Vec<BigInt>>, usize)> {
    let m = relative_matrix(sys, q, constraints)?;
    Ok((kernel_basis(&m), m.rank()))
}
