//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's linear algebra.

#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spun_core::gluing::{Cusp, EqRow, GluingSystem, Sign};

pub fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    std::fs::read_to_string(path).expect("fixture readable")
}

pub fn fixture(name: &str) -> GluingSystem {
    GluingSystem::from_json(&data(name)).expect("fixture parses")
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(rows: &[Vec<i64>], cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn oracle_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Rational nullspace, one integer primitive vector per free column.
pub fn oracle_nullspace(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigInt>> {
    let (m, pivots) = rref(rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            to_primitive(&v)
        })
        .collect()
}

pub fn to_primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

pub fn mat_vec(rows: &[Vec<i64>], v: &[BigInt]) -> Vec<BigInt> {
    rows.iter()
        .map(|r| r.iter().zip(v).map(|(&a, x)| BigInt::from(a) * x).sum())
        .collect()
}

/// Extreme rays of `{x >= 0 : A x = 0}` by brute force over zero sets: a
/// nonzero cone point is extreme iff fixing its zero coordinates leaves a
/// one-dimensional solution space.
pub fn oracle_extreme_rays(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << cols) {
        let mut sys = rows.to_vec();
        for i in 0..cols {
            if mask & (1 << i) != 0 {
                let mut e = vec![0; cols];
                e[i] = 1;
                sys.push(e);
            }
        }
        let null = oracle_nullspace(&sys, cols);
        if null.len() != 1 {
            continue;
        }
        let mut v = null.into_iter().next().unwrap();
        if v.iter().any(Signed::is_negative) {
            if v.iter().any(Signed::is_positive) {
                continue;
            }
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        out.push(v);
    }
    out.sort();
    out.dedup();
    out
}

/// Hilbert basis by enumerating every cone point in the box `[0, bound]^n`
/// and discarding those that are sums of two nonzero points.
pub fn oracle_hilbert_basis(rows: &[Vec<i64>], cols: usize, bound: &[i64]) -> Vec<Vec<BigInt>> {
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; cols];
    loop {
        let zero = x.iter().all(|&v| v == 0);
        if !zero
            && rows
                .iter()
                .all(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() == 0)
        {
            points.push(x.clone());
        }
        let mut k = 0;
        while k < cols {
            x[k] += 1;
            if x[k] <= bound[k] {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == cols {
            break;
        }
    }
    let set: std::collections::HashSet<Vec<i64>> = points.iter().cloned().collect();
    let mut out: Vec<Vec<BigInt>> = points
        .iter()
        .filter(|p| {
            !points.iter().any(|y| {
                y != *p && {
                    let diff: Vec<i64> = p.iter().zip(y).map(|(a, b)| a - b).collect();
                    diff.iter().all(|&d| d >= 0) && set.contains(&diff)
                }
            })
        })
        .map(|p| big(p))
        .collect();
    out.sort();
    out
}

pub fn random_row(rng: &mut ChaCha8Rng, n: usize, range: i64) -> EqRow {
    let a = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
    let b = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
    let c = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    EqRow::new(a, b, c)
}

pub fn random_system(rng: &mut ChaCha8Rng, n: usize, edges: usize, cusps: usize, range: i64) -> GluingSystem {
    let edge_rows = (0..edges).map(|_| random_row(rng, n, range)).collect();
    let cusp_rows = (0..cusps)
        .map(|_| Cusp {
            meridian: random_row(rng, n, range),
            longitude: random_row(rng, n, range),
        })
        .collect();
    GluingSystem::new("random", n, edge_rows, cusp_rows).unwrap()
}
