//! First-order systems of gluing equations along a degeneration vector.
//!
//! Substituting `z_i = t^{d_i} β_i (1 + O(t))` into `∏ z^a (1-z)^b = c` and
//! letting `t → 0` leaves `∏ β_i^{a_i} ∏_{d_i = 0} (1-β_i)^{b_i} = c`; the
//! power of `t` cancels because `A d = 0`. The variables are only defined up
//! to a common rescaling of the `d_i > 0` coordinates, so the first of them
//! is normalized to 1 and dropped.
//!
//! Text form, one equation per line:
//!
//! ```text
//! system   = [ equation { "\n" equation } ] ;
//! equation = lhs " = " rhs ;
//! lhs      = "1" | factor { " * " factor } ;
//! factor   = "b" index "^" exponent | "(1-b" index ")^" exponent ;
//! rhs      = "1" | "-1" ;
//! index    = digit { digit } ;            (* 1-based *)
//! exponent = [ "-" ] digit { digit } ;    (* nonzero *)
//! ```
//!
//! Factors are ordered by variable, with `bK` before `(1-bK)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gluing::{EqRow, Sign};
use crate::linalg::{left_kernel_lattice, IntMatrix};

/// `∏ β_i^{beta[i]} ∏ (1-β_i)^{one_minus[i]} = rhs`, zero exponents omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialEquation {
    pub beta: BTreeMap<usize, i64>,
    pub one_minus: BTreeMap<usize, i64>,
    #[serde(with = "sign_serde")]
    pub rhs: Sign,
}

impl MonomialEquation {
    pub fn is_constant(&self) -> bool {
        self.beta.is_empty() && self.one_minus.is_empty()
    }
}

mod sign_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::gluing::Sign;

    pub fn serialize<S: Serializer>(s: &Sign, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_i64(s.as_i64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Sign, D::Error> {
        let v = i64::deserialize(de)?;
        Sign::from_i64(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, found {v}")))
    }
}

/// Allowed values of a variable at evaluation time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// `β ≠ 0`
    NonZero,
    /// `β ∉ {0, 1}`
    NonZeroNonOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstOrderSystem {
    pub equations: Vec<MonomialEquation>,
    /// 0-based index of the variable normalized to 1.
    pub folded_index: usize,
    pub degeneration: Vec<i64>,
}

impl FirstOrderSystem {
    pub fn num_vars(&self) -> usize {
        self.degeneration.len()
    }

    /// Domain of variable `i`; `None` for the folded variable.
    pub fn domain(&self, i: usize) -> Option<Domain> {
        if i == self.folded_index {
            None
        } else if self.degeneration[i] == 0 {
            Some(Domain::NonZeroNonOne)
        } else {
            Some(Domain::NonZero)
        }
    }

    /// No `(1-β)` factors anywhere.
    pub fn is_monomial(&self) -> bool {
        self.equations.iter().all(|e| e.one_minus.is_empty())
    }

    /// `β` exponents as a matrix over the unfolded variables, with the
    /// right-hand signs. Meaningful for monomial systems.
    pub fn exponent_matrix(&self) -> (IntMatrix, Vec<Sign>) {
        let vars: Vec<usize> = (0..self.num_vars()).filter(|&i| i != self.folded_index).collect();
        let rows: Vec<Vec<i64>> = self
            .equations
            .iter()
            .map(|e| vars.iter().map(|i| e.beta.get(i).copied().unwrap_or(0)).collect())
            .collect();
        let signs = self.equations.iter().map(|e| e.rhs).collect();
        (IntMatrix::from_rows(vars.len(), &rows), signs)
    }
}

/// `d ≠ 0`, `d ≥ 0` and `A d = 0`.
pub fn validate_degeneration(a: &IntMatrix, d: &[i64]) -> bool {
    if d.len() != a.ncols() || d.iter().any(|&x| x < 0) || d.iter().all(|&x| x == 0) {
        return false;
    }
    let d: Vec<BigInt> = d.iter().map(|&x| x.into()).collect();
    a.mul_vec(&d).iter().all(Zero::is_zero)
}

fn a_part(rows: &[EqRow], n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.a.clone()).collect();
    IntMatrix::from_rows(n, &rows)
}

pub fn build_first_order(rows: &[EqRow], d: &[i64]) -> Result<FirstOrderSystem> {
    let n = d.len();
    for (k, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::LengthMismatch {
                context: format!("row {k}"),
                expected: n,
                found: r.len(),
            });
        }
    }
    let folded_index = d
        .iter()
        .position(|&x| x > 0)
        .ok_or_else(|| Error::Precondition("degeneration vector has no positive entry".into()))?;
    if !validate_degeneration(&a_part(rows, n), d) {
        return Err(Error::Precondition(
            "degeneration vector must be nonnegative and in the kernel of A".into(),
        ));
    }
    let equations = rows
        .iter()
        .map(|r| MonomialEquation {
            beta: (0..n)
                .filter(|&i| i != folded_index && r.a[i] != 0)
                .map(|i| (i, r.a[i]))
                .collect(),
            one_minus: (0..n)
                .filter(|&i| d[i] == 0 && r.b[i] != 0)
                .map(|i| (i, r.b[i]))
                .collect(),
            rhs: r.c,
        })
        .collect();
    Ok(FirstOrderSystem {
        equations,
        folded_index,
        degeneration: d.to_vec(),
    })
}

/// Conservative: true only when some equation reads `1 = -1`.
pub fn is_trivially_inconsistent(fos: &FirstOrderSystem) -> bool {
    fos.equations.iter().any(|e| e.is_constant() && e.rhs == Sign::Minus)
}

/// Whether `∏ β^{A'} = c` has a solution in the torus: every integer left
/// kernel vector `y` of `A'` must satisfy `∏ c_j^{y_j} = 1`.
pub fn monomial_sign_solvable(a: &IntMatrix, c: &[Sign]) -> Result<bool> {
    if c.len() != a.nrows() {
        return Err(Error::LengthMismatch {
            context: "sign vector".into(),
            expected: a.nrows(),
            found: c.len(),
        });
    }
    Ok(left_kernel_lattice(a).iter().all(|y| {
        let odd = y
            .iter()
            .zip(c)
            .filter(|(e, &s)| s == Sign::Minus && !(*e % 2u8).is_zero())
            .count();
        odd % 2 == 0
    }))
}

pub fn emit_system(fos: &FirstOrderSystem) -> String {
    let lines: Vec<String> = fos
        .equations
        .iter()
        .map(|e| {
            let mut factors = Vec::new();
            for i in 0..fos.num_vars() {
                if let Some(x) = e.beta.get(&i) {
                    factors.push(format!("b{}^{x}", i + 1));
                }
                if let Some(x) = e.one_minus.get(&i) {
                    factors.push(format!("(1-b{})^{x}", i + 1));
                }
            }
            let lhs = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join(" * ")
            };
            let mut line = lhs;
            let _ = write!(line, " = {}", e.rhs.as_i64());
            line
        })
        .collect();
    lines.join("\n")
}

/// Parses text in the emitted grammar back into a system for the given
/// degeneration vector.
pub fn parse_system(text: &str, degeneration: &[i64]) -> Result<FirstOrderSystem> {
    let n = degeneration.len();
    let folded_index = degeneration
        .iter()
        .position(|&x| x > 0)
        .ok_or_else(|| Error::Precondition("degeneration vector has no positive entry".into()))?;
    if degeneration.iter().any(|&x| x < 0) {
        return Err(Error::Precondition("degeneration vector must be nonnegative".into()));
    }
    let mut equations = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |reason: String| Error::Syntax { line, reason };
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let (lhs, rhs) = raw.split_once('=').ok_or_else(|| err("missing '='".into()))?;
        let rhs = match rhs.trim() {
            "1" => Sign::Plus,
            "-1" => Sign::Minus,
            other => return Err(err(format!("right-hand side must be 1 or -1, found {other:?}"))),
        };
        let mut eq = MonomialEquation {
            beta: BTreeMap::new(),
            one_minus: BTreeMap::new(),
            rhs,
        };
        let lhs = lhs.trim();
        if lhs != "1" {
            for factor in lhs.split('*') {
                let factor = factor.trim();
                let (base, exp) = factor
                    .rsplit_once('^')
                    .ok_or_else(|| err(format!("factor {factor:?} has no exponent")))?;
                let exp: i64 = exp
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad exponent in {factor:?}")))?;
                let base = base.trim();
                let (name, one_minus) = match base.strip_prefix("(1-").and_then(|s| s.strip_suffix(')')) {
                    Some(inner) => (inner.trim(), true),
                    None => (base, false),
                };
                let i = name
                    .strip_prefix('b')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&i| (1..=n).contains(&i))
                    .ok_or_else(|| err(format!("unknown variable in {factor:?}")))?
                    - 1;
                if i == folded_index && !one_minus {
                    return Err(err(format!("b{} is the folded variable", i + 1)));
                }
                if one_minus && degeneration[i] != 0 {
                    return Err(err(format!("(1-b{}) factor where d is positive", i + 1)));
                }
                let map = if one_minus { &mut eq.one_minus } else { &mut eq.beta };
                *map.entry(i).or_insert(0) += exp;
            }
            eq.beta.retain(|_, e| *e != 0);
            eq.one_minus.retain(|_, e| *e != 0);
        }
        equations.push(eq);
    }
    Ok(FirstOrderSystem {
        equations,
        folded_index,
        degeneration: degeneration.to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationResidual {
    pub equation: usize,
    /// Exact value of the left-hand side, as `p/q` or `p`.
    pub lhs: String,
    pub rhs: i64,
    pub matches: bool,
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Evaluates every equation at `point` (one value per variable; the folded
/// coordinate is ignored).
pub fn evaluate_system(fos: &FirstOrderSystem, point: &[BigRational]) -> Result<Vec<EquationResidual>> {
    if point.len() != fos.num_vars() {
        return Err(Error::LengthMismatch {
            context: "evaluation point".into(),
            expected: fos.num_vars(),
            found: point.len(),
        });
    }
    for (i, x) in point.iter().enumerate() {
        match fos.domain(i) {
            Some(_) if x.is_zero() => return Err(Error::Domain(format!("b{} = 0", i + 1))),
            Some(Domain::NonZeroNonOne) if x.is_one() => {
                return Err(Error::Domain(format!(
                    "b{} = 1 but (1-b{}) must be nonzero",
                    i + 1,
                    i + 1
                )))
            }
            _ => {}
        }
    }
    let one = BigRational::one();
    Ok(fos
        .equations
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let mut lhs = one.clone();
            for (&i, &x) in &e.beta {
                lhs *= pow(&point[i], x);
            }
            for (&i, &x) in &e.one_minus {
                lhs *= pow(&(&one - &point[i]), x);
            }
            let rhs = e.rhs.as_i64();
            EquationResidual {
                equation: k,
                matches: lhs == BigRational::from_integer(rhs.into()),
                lhs: lhs.to_string(),
                rhs,
            }
        })
        .collect())
}
