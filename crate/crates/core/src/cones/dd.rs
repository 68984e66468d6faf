//! Double description for cones of the form `{x >= 0 : A x = 0}`.
//!
//! The cone is parameterized by an integer kernel basis of `A`, which starts
//! out as a lineality space; the sign constraints `x_i >= 0` are then added
//! one at a time. Rays are kept in `x` coordinates throughout, so the
//! constraint being added is simply a coordinate.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{kernel_basis, make_primitive, IntMatrix};

struct Ray {
    v: Vec<BigInt>,
    /// Processed constraints that vanish on `v`.
    zeros: FixedBitSet,
}

/// `alpha·x - beta·y`, made primitive.
fn eliminate(alpha: &BigInt, x: &[BigInt], beta: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| alpha * a - beta * b).collect();
    make_primitive(&mut out);
    out
}

/// Extreme rays of `{x >= 0 : A x = 0}` as primitive nonnegative vectors,
/// sorted lexicographically.
pub fn cone_extreme_rays(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.ncols();
    let mut lineality = kernel_basis(a);
    let mut rays: Vec<Ray> = Vec::new();

    for i in 0..n {
        if let Some(pos) = lineality.iter().position(|l| !l[i].is_zero()) {
            let mut l0 = lineality.remove(pos);
            if l0[i].is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
            }
            for l in lineality.iter_mut() {
                if !l[i].is_zero() {
                    *l = eliminate(&l0[i], l, &l[i].clone(), &l0);
                }
            }
            for r in rays.iter_mut() {
                if !r.v[i].is_zero() {
                    r.v = eliminate(&l0[i], &r.v, &r.v[i].clone(), &l0);
                }
                r.zeros.insert(i);
            }
            let mut zeros = FixedBitSet::with_capacity(n);
            zeros.insert_range(0..i);
            rays.push(Ray { v: l0, zeros });
            continue;
        }

        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (k, r) in rays.iter().enumerate() {
            if r.v[i].is_positive() {
                pos.push(k);
            } else if r.v[i].is_negative() {
                neg.push(k);
            }
        }
        if neg.is_empty() {
            for r in rays.iter_mut().filter(|r| r.v[i].is_zero()) {
                r.zeros.insert(i);
            }
            continue;
        }

        let mut created = Vec::new();
        for &p in &pos {
            for &m in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[m].zeros);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == m || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let (rp, rm) = (&rays[p].v, &rays[m].v);
                // rp[i] > 0 > rm[i]; both coefficients positive.
                let v = eliminate(&rp[i], rm, &rm[i], rp);
                common.insert(i);
                created.push(Ray { v, zeros: common });
            }
        }
        let mut next: Vec<Ray> = rays.into_iter().filter(|r| !r.v[i].is_negative()).collect();
        for r in next.iter_mut().filter(|r| r.v[i].is_zero()) {
            r.zeros.insert(i);
        }
        next.extend(created);
        rays = next;
    }
    debug_assert!(lineality.is_empty(), "cone in the orthant must be pointed");

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(cols, &rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant_with_no_constraints() {
        let rays = cone_extreme_rays(&IntMatrix::zeros(0, 3));
        assert_eq!(rays, vec![big(&[0, 0, 1]), big(&[0, 1, 0]), big(&[1, 0, 0])]);
    }

    #[test]
    fn trivial_kernel_gives_no_rays() {
        assert!(cone_extreme_rays(&IntMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_outside_orthant_gives_no_rays() {
        // ker = span(1, 1) but x1 + x2 = 0 forces x = 0 in the orthant.
        assert!(cone_extreme_rays(&m(2, &[&[1, 1]])).is_empty());
    }

    #[test]
    fn square_cross_section() {
        // x1 + x2 = x3 + x4: four rays e_i + e_j with i in {1,2}, j in {3,4}.
        let rays = cone_extreme_rays(&m(4, &[&[1, 1, -1, -1]]));
        assert_eq!(
            rays,
            vec![
                big(&[0, 1, 0, 1]),
                big(&[0, 1, 1, 0]),
                big(&[1, 0, 0, 1]),
                big(&[1, 0, 1, 0])
            ]
        );
    }
}
