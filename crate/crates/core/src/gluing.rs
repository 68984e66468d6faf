//! Gluing data of an ideal triangulation in exponent ("rect") form.
//!
//! Each relation is a row `(a, b, c)` standing for
//! `∏ z_i^{a_i} (1 - z_i)^{b_i} = c` with `c = ±1`. Edge rows are the edge
//! equations; each cusp carries a meridian row and a longitude row.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Right-hand side of a relation, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(value: i64) -> Option<Self> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^e`
    pub fn parity(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `self^e`; only the parity of `e` matters.
    pub fn pow(self, e: i64) -> Self {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::parity(e),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// One relation `∏ z_i^{a_i} (1 - z_i)^{b_i} = c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EqRow {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Sign,
}

impl EqRow {
    pub fn new(a: Vec<i64>, b: Vec<i64>, c: Sign) -> Self {
        assert_eq!(a.len(), b.len(), "a and b parts must have equal length");
        Self { a, b, c }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// Per-tetrahedron choice of preferred shape parameter, equivalently of the
/// quadrilateral type: 0 for `z`, 1 for `z' = 1/(1-z)`, 2 for
/// `z'' = (z-1)/z`. Type 0 is the quad disjoint from the edges carrying `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct QuadType(Vec<u8>);

/// Alternative labels for quad types 0, 1, 2 in the vertex-pair notation of
/// some triangulation software (`Q23`, `Q03`, `Q13`). Display only.
pub const QUAD_ALIASES: [&str; 3] = ["Q23", "Q03", "Q13"];

impl QuadType {
    pub fn new(types: Vec<u8>) -> Result<Self> {
        if let Some((i, t)) = types.iter().enumerate().find(|(_, &t)| t > 2) {
            return Err(Error::InvalidQuadType(format!(
                "entry {i} is {t}; quad types are 0, 1 or 2"
            )));
        }
        Ok(Self(types))
    }

    /// The same type `t` in each of `n` tetrahedra.
    pub fn uniform(n: usize, t: u8) -> Self {
        assert!(t <= 2, "quad type must be 0, 1 or 2");
        Self(vec![t; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn aliases(&self) -> Vec<&'static str> {
        self.0.iter().map(|&t| QUAD_ALIASES[t as usize]).collect()
    }

    /// Checks that this quad type fits a system with `n` tetrahedra.
    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::LengthMismatch {
                context: "quad type".into(),
                expected: n,
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl FromStr for QuadType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let types = s
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::InvalidQuadType(format!(
                    "character {i} of {s:?} is {ch:?}; expected 0, 1 or 2"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self(types))
    }
}

impl TryFrom<String> for QuadType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<QuadType> for String {
    fn from(q: QuadType) -> String {
        q.to_string()
    }
}

impl fmt::Display for QuadType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Rewrites a single tetrahedron's `(a, b)` exponents and the sign factor it
/// contributes when the preferred parameter changes to quad type `t`.
///
/// From `z = (z'-1)/z'` and `z = 1/(1-z'')`.
pub fn rotate_exponents(a: i64, b: i64, t: u8) -> (i64, i64, Sign) {
    match t {
        0 => (a, b, Sign::Plus),
        1 => (-a - b, a, Sign::parity(a)),
        2 => (b, -a - b, Sign::parity(b)),
        _ => panic!("quad type {t} out of range"),
    }
}

/// Expresses `row` in the preferred shape parameters selected by `q`.
pub fn rotate_row(row: &EqRow, q: &QuadType) -> EqRow {
    assert_eq!(row.len(), q.len(), "row and quad type lengths differ");
    let mut a = Vec::with_capacity(row.len());
    let mut b = Vec::with_capacity(row.len());
    let mut c = row.c;
    for i in 0..row.len() {
        let (ai, bi, s) = rotate_exponents(row.a[i], row.b[i], q.get(i));
        a.push(ai);
        b.push(bi);
        c = c * s;
    }
    EqRow { a, b, c }
}

/// Peripheral rows of one cusp.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub meridian: EqRow,
    pub longitude: EqRow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSystem {
    pub name: String,
    n: usize,
    edges: Vec<EqRow>,
    cusps: Vec<Cusp>,
}

impl GluingSystem {
    pub fn new(name: impl Into<String>, n: usize, edges: Vec<EqRow>, cusps: Vec<Cusp>) -> Result<Self> {
        let check = |row: &EqRow, context: String| -> Result<()> {
            for (part, len) in [("a", row.a.len()), ("b", row.b.len())] {
                if len != n {
                    return Err(Error::LengthMismatch {
                        context: format!("{context}, field {part}"),
                        expected: n,
                        found: len,
                    });
                }
            }
            Ok(())
        };
        for (i, row) in edges.iter().enumerate() {
            check(row, format!("edge row {i}"))?;
        }
        for (i, cusp) in cusps.iter().enumerate() {
            check(&cusp.meridian, format!("cusp {i} meridian"))?;
            check(&cusp.longitude, format!("cusp {i} longitude"))?;
        }
        Ok(Self {
            name: name.into(),
            n,
            edges,
            cusps,
        })
    }

    pub fn num_tetrahedra(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[EqRow] {
        &self.edges
    }

    pub fn cusps(&self) -> &[Cusp] {
        &self.cusps
    }

    pub fn num_cusps(&self) -> usize {
        self.cusps.len()
    }

    /// Non-fatal irregularities, e.g. an edge-row count different from the
    /// tetrahedron count.
    pub fn validation_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        if self.edges.len() != self.n {
            warnings.push(format!(
                "{} edge rows for {} tetrahedra (an ideal triangulation has one edge per tetrahedron)",
                self.edges.len(),
                self.n
            ));
        }
        warnings
    }

    pub fn from_json(text: &str) -> Result<Self> {
        parse_gluing_json(text)
    }

    pub fn to_json(&self) -> String {
        let doc = SystemJson {
            name: self.name.clone(),
            num_tetrahedra: self.n,
            edges: self.edges.iter().map(RowJson::from).collect(),
            cusps: self
                .cusps
                .iter()
                .map(|c| CuspJson {
                    meridian: RowJson::from(&c.meridian),
                    longitude: RowJson::from(&c.longitude),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("gluing data serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowJson {
    a: Vec<i64>,
    b: Vec<i64>,
    c: i64,
}

impl From<&EqRow> for RowJson {
    fn from(row: &EqRow) -> Self {
        Self {
            a: row.a.clone(),
            b: row.b.clone(),
            c: row.c.as_i64(),
        }
    }
}

impl RowJson {
    fn into_row(self, context: String) -> Result<EqRow> {
        let c = Sign::from_i64(self.c).ok_or(Error::InvalidSign { context, value: self.c })?;
        Ok(EqRow {
            a: self.a,
            b: self.b,
            c,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CuspJson {
    meridian: RowJson,
    longitude: RowJson,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    name: String,
    num_tetrahedra: usize,
    edges: Vec<RowJson>,
    cusps: Vec<CuspJson>,
}

/// Parses and validates the JSON gluing-data format.
pub fn parse_gluing_json(text: &str) -> Result<GluingSystem> {
    let doc: SystemJson = serde_json::from_str(text)?;
    let edges = doc
        .edges
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.into_row(format!("edge row {i}")))
        .collect::<Result<Vec<_>>>()?;
    let cusps = doc
        .cusps
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(Cusp {
                meridian: c.meridian.into_row(format!("cusp {i} meridian"))?,
                longitude: c.longitude.into_row(format!("cusp {i} longitude"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GluingSystem::new(doc.name, doc.num_tetrahedra, edges, cusps)
}

fn a_part_matrix<'a>(n: usize, rows: impl Iterator<Item = &'a EqRow>, q: &QuadType) -> IntMatrix {
    let rows: Vec<Vec<i64>> = rows.map(|r| rotate_row(r, q).a).collect();
    IntMatrix::from_rows(n, &rows)
}

/// Q-matching matrix `A_q`: a-parts of the edge rows rewritten in the
/// parameters chosen by `q`. Its kernel is the space of solutions supported
/// on the quads of `q`.
pub fn qmatching_matrix(sys: &GluingSystem, q: &QuadType) -> IntMatrix {
    assert_eq!(q.len(), sys.n, "quad type length differs from tetrahedron count");
    a_part_matrix(sys.n, sys.edges.iter(), q)
}

/// Peripheral a-parts, rows ordered `μ_0, λ_0, μ_1, λ_1, …`.
pub fn cusp_matrix(sys: &GluingSystem, q: &QuadType) -> IntMatrix {
    assert_eq!(q.len(), sys.n, "quad type length differs from tetrahedron count");
    a_part_matrix(sys.n, sys.cusps.iter().flat_map(|c| [&c.meridian, &c.longitude]), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_of_single_factor() {
        // z(1-z) written in z': substitute z = (z'-1)/z'.
        let row = EqRow::new(vec![1], vec![1], Sign::Plus);
        let r = rotate_row(&row, &QuadType::uniform(1, 1));
        assert_eq!(r, EqRow::new(vec![-2], vec![1], Sign::Minus));
    }

    #[test]
    fn identity_rotation() {
        let row = EqRow::new(vec![3, -1], vec![0, 2], Sign::Minus);
        assert_eq!(rotate_row(&row, &QuadType::uniform(2, 0)), row);
    }

    #[test]
    fn rotation_has_order_three() {
        let row = EqRow::new(vec![3, -1, 0], vec![-2, 2, 5], Sign::Minus);
        let q = QuadType::uniform(3, 1);
        let thrice = rotate_row(&rotate_row(&rotate_row(&row, &q), &q), &q);
        assert_eq!(thrice, row);
    }

    #[test]
    fn quad_type_parsing() {
        let q: QuadType = "0120".parse().unwrap();
        assert_eq!(q.as_slice(), &[0, 1, 2, 0]);
        assert_eq!(q.to_string(), "0120");
        assert!("013".parse::<QuadType>().is_err());
        assert!(QuadType::new(vec![0, 3]).is_err());
    }

    #[test]
    fn short_row_is_rejected() {
        let text = r#"{"name":"x","num_tetrahedra":2,
            "edges":[{"a":[1],"b":[0,0],"c":1}],"cusps":[]}"#;
        let err = parse_gluing_json(text).unwrap_err();
        assert!(
            matches!(
                err,
                Error::LengthMismatch {
                    expected: 2,
                    found: 1,
                    ..
                }
            ),
            "{err}"
        );
        assert!(err.to_string().contains("edge row 0"));
    }

    #[test]
    fn bad_sign_is_rejected() {
        let text = r#"{"name":"x","num_tetrahedra":1,
            "edges":[{"a":[1],"b":[0],"c":1},{"a":[1],"b":[0],"c":2}],"cusps":[]}"#;
        let err = parse_gluing_json(text).unwrap_err();
        assert!(matches!(err, Error::InvalidSign { value: 2, .. }));
        assert!(err.to_string().contains("edge row 1"));
    }

    #[test]
    fn missing_longitude_is_rejected() {
        let text = r#"{"name":"x","num_tetrahedra":1,"edges":[],
            "cusps":[{"meridian":{"a":[1],"b":[0],"c":1}}]}"#;
        assert!(matches!(parse_gluing_json(text), Err(Error::Json(_))));
    }

    #[test]
    fn edge_count_mismatch_only_warns() {
        let text = r#"{"name":"x","num_tetrahedra":2,"edges":[],"cusps":[]}"#;
        let sys = parse_gluing_json(text).unwrap();
        assert_eq!(sys.validation_warnings().len(), 1);
    }

    #[test]
    fn quad_columns_sum_to_zero() {
        let row = EqRow::new(vec![2, -1], vec![-1, 3], Sign::Plus);
        let sys = GluingSystem::new("t", 2, vec![row], vec![]).unwrap();
        let cols: Vec<IntMatrix> = (0..3)
            .map(|t| qmatching_matrix(&sys, &QuadType::uniform(2, t)))
            .collect();
        for j in 0..2 {
            let s: num_bigint::BigInt = cols.iter().map(|m| m.get(0, j).clone()).sum();
            assert_eq!(s, 0.into());
        }
    }
}
