//! The 8-tetrahedron triangulation of the 2-fusion link complement and the
//! surface family whose `γ_0` slopes are boundary slopes of the knots
//! `L(m1, m2)` obtained by `(-1/m1, -1/m2)` filling.

use std::sync::OnceLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cones::{RelativeConstraint, SurfaceVector};
use crate::criteria::{boundary_class, rebase_slope, theorem3_check, CriterionReport, Slope, Verdict};
use crate::error::{Error, Result};
use crate::gluing::{cusp_matrix, qmatching_matrix, GluingSystem, QuadType};
use crate::linalg::IntMatrix;

const FIXTURE: &str = include_str!("../data/two_fusion.json");

/// Edge-equation a-parts at the all-0 quad type.
pub const EDGE_A: [[i64; 8]; 8] = [
    [1, 0, -1, 0, 0, 0, 0, 0],
    [0, -1, 0, 1, 0, 0, 0, 1],
    [-1, 1, 1, -1, 0, -2, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 2, 1, -1],
    [0, 0, 0, 1, -1, 0, 0, 0],
    [0, 0, 1, -1, 1, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
];

/// Cusp a-parts, rows `μ0, λ0, μ1, λ1, μ2, λ2`.
pub const CUSP_A: [[i64; 8]; 6] = [
    [0, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, -1],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, -1],
];

/// Generators of the kernel at the all-0 quad type.
pub const S1: [u64; 8] = [0, 1, 0, 1, 1, 0, 0, 0];
pub const S2: [u64; 8] = [0, 2, 0, 0, 0, 1, 0, 2];
pub const S3: [u64; 8] = [1, 0, 1, 0, 0, 0, 1, 0];

fn rows_to_matrix<const R: usize>(rows: &[[i64; 8]; R]) -> IntMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    IntMatrix::from_rows(8, &rows)
}

/// The embedded triangulation. Panics if its a-parts ever drift from
/// `EDGE_A` and `CUSP_A`.
pub fn two_fusion_fixture() -> &'static GluingSystem {
    static SYS: OnceLock<GluingSystem> = OnceLock::new();
    SYS.get_or_init(|| {
        let sys = GluingSystem::from_json(FIXTURE).expect("embedded fixture parses");
        let q = QuadType::uniform(8, 0);
        assert_eq!(
            qmatching_matrix(&sys, &q),
            rows_to_matrix(&EDGE_A),
            "fixture edge a-parts"
        );
        assert_eq!(cusp_matrix(&sys, &q), rows_to_matrix(&CUSP_A), "fixture cusp a-parts");
        sys
    })
}

pub fn basis_surface(v: [u64; 8]) -> SurfaceVector {
    SurfaceVector::new(QuadType::uniform(8, 0), v.to_vec()).expect("length 8")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFusionParams {
    m1: i64,
    m2: i64,
}

impl TwoFusionParams {
    pub fn new(m1: i64, m2: i64) -> Result<Self> {
        if m1 <= 1 || m2 <= 0 {
            return Err(Error::Precondition(format!("need m1 > 1 and m2 > 0, got ({m1}, {m2})")));
        }
        Ok(Self { m1, m2 })
    }

    pub fn m1(&self) -> i64 {
        self.m1
    }

    pub fn m2(&self) -> i64 {
        self.m2
    }

    /// Fillings `-1/m1` on cusp 1 and `-1/m2` on cusp 2.
    pub fn fillings(&self) -> [RelativeConstraint; 2] {
        [
            RelativeConstraint::new(1, -1, self.m1).expect("coprime"),
            RelativeConstraint::new(2, -1, self.m2).expect("coprime"),
        ]
    }

    /// `4 m1 + 9 m2`, the shift from the link longitude to the homological
    /// longitude of the filled knot.
    pub fn longitude_shift(&self) -> i64 {
        4 * self.m1 + 9 * self.m2
    }
}

/// `2(m1-1) S1 + m2 S2 + 2(m1-1) m2 S3` at the all-0 quad type.
pub fn family_surface(p: &TwoFusionParams) -> SurfaceVector {
    let a1 = 2 * (p.m1 as u64 - 1);
    let a2 = p.m2 as u64;
    let a3 = a1 * a2;
    let w = (0..8).map(|i| a1 * S1[i] + a2 * S2[i] + a3 * S3[i]).collect();
    SurfaceVector::new(QuadType::uniform(8, 0), w).expect("length 8")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySlopes {
    pub gamma0: BigRational,
    pub gamma1: BigRational,
    pub gamma2: BigRational,
    pub gamma0_rebased: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Closed-form slopes of the family.
pub fn family_slopes(p: &TwoFusionParams) -> FamilySlopes {
    let (m1, m2) = (p.m1, p.m2);
    let gamma0 = -ratio((m1 - 3) * m2 - 2 * m1 + 2, m1 + m2 - 1);
    FamilySlopes {
        gamma0_rebased: &gamma0 + ratio(p.longitude_shift(), 1),
        gamma0,
        gamma1: ratio(-1, m1),
        gamma2: ratio(-1, m2),
    }
}

/// Runs the relative criterion on the family surface and cross-checks every
/// computed slope against the closed forms.
pub fn verify_family(p: &TwoFusionParams) -> Result<CriterionReport> {
    let sys = two_fusion_fixture();
    let s = family_surface(p);
    let mut report = theorem3_check(sys, &s, &p.fillings())?;
    let expected = family_slopes(p);
    let boundary = boundary_class(sys, &s)?;

    let mut mismatches = Vec::new();
    for (k, want) in [&expected.gamma0, &expected.gamma1, &expected.gamma2]
        .into_iter()
        .enumerate()
    {
        let got = boundary[k].slope;
        if got.as_rational().as_ref() != Some(want) {
            mismatches.push(format!("slope {got} on cusp {k} differs from closed form {want}"));
        }
    }
    let rebased = rebase_slope(boundary[0].slope, [[1, p.longitude_shift()], [0, 1]])?;
    if rebased.as_rational().as_ref() != Some(&expected.gamma0_rebased) {
        mismatches.push(format!(
            "rebased slope {rebased} differs from closed form {}",
            expected.gamma0_rebased
        ));
    }
    if !mismatches.is_empty() {
        report.reasons.extend(mismatches);
        report.verdict = Verdict::NotSatisfied;
        report.summary = "criterion not met".into();
    }
    Ok(report)
}

/// `γ_0` in the homological basis of the filled knot, as computed from the
/// surface.
pub fn rebased_gamma0(p: &TwoFusionParams) -> Result<Slope> {
    let sys = two_fusion_fixture();
    let slope = boundary_class(sys, &family_surface(p))?[0].slope;
    rebase_slope(slope, [[1, p.longitude_shift()], [0, 1]])
}
