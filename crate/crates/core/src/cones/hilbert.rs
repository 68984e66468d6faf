//! Hilbert bases of the monoids `{x in Z^n : x >= 0, A x = 0}`.
//!
//! The cone is cut into simplicial cones by a pulling triangulation. Every
//! irreducible element of the monoid is either a generator of one of those
//! simplicial cones or a lattice point of its half-open fundamental
//! parallelepiped, so collecting those candidates and discarding any that
//! dominate another candidate leaves exactly the Hilbert basis.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dd::cone_extreme_rays;
use crate::linalg::{column_lattice_diagonal, kernel_basis, lattice_coordinates, rank, IntMatrix};

pub fn cone_hilbert_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.ncols();
    let rays = cone_extreme_rays(a);
    if rays.is_empty() {
        return Vec::new();
    }

    // Lattice of the linear span of the cone. It can be smaller than the
    // kernel lattice when the cone is not full-dimensional in ker A.
    let orth = kernel_basis(&IntMatrix::from_rows(n, &rays));
    let span_basis = kernel_basis(&IntMatrix::from_rows(n, &orth));
    let dim = span_basis.len();
    let coords: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| lattice_coordinates(&span_basis, r).expect("ray lies in its own span"))
        .collect();

    let mut simplices = Vec::new();
    let all: Vec<usize> = (0..rays.len()).collect();
    triangulate(&all, dim, &rays, &coords, &mut simplices);

    let mut candidates: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for simplex in &simplices {
        for &g in simplex {
            candidates.insert(rays[g].clone());
        }
        parallelepiped_points(simplex, &rays, &coords, &mut candidates);
    }

    let candidates: Vec<Vec<BigInt>> = candidates.into_iter().collect();
    candidates
        .iter()
        .filter(|x| {
            !candidates
                .iter()
                .any(|y| y != *x && y.iter().zip(x.iter()).all(|(yi, xi)| yi <= xi))
        })
        .cloned()
        .collect()
}

/// Pulling triangulation of the face spanned by `face` (ray indices), whose
/// linear span has dimension `dim`.
fn triangulate(face: &[usize], dim: usize, rays: &[Vec<BigInt>], coords: &[Vec<BigInt>], out: &mut Vec<Vec<usize>>) {
    if face.len() == dim {
        out.push(face.to_vec());
        return;
    }
    let apex = face[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, x) in rays[apex].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let sub: Vec<usize> = face.iter().copied().filter(|&r| rays[r][i].is_zero()).collect();
        if sub.len() + 1 < dim || facets.contains(&sub) {
            continue;
        }
        let rows: Vec<Vec<BigInt>> = sub.iter().map(|&r| coords[r].clone()).collect();
        if rank(&IntMatrix::from_rows(coords[apex].len(), &rows)) == dim - 1 {
            facets.insert(sub);
        }
    }
    for facet in facets {
        let mut sub = Vec::new();
        triangulate(&facet, dim - 1, rays, coords, &mut sub);
        for mut simplex in sub {
            simplex.push(apex);
            out.push(simplex);
        }
    }
}

/// Adds the nonzero lattice points of the half-open parallelepiped spanned
/// by the simplex generators.
fn parallelepiped_points(
    simplex: &[usize],
    rays: &[Vec<BigInt>],
    coords: &[Vec<BigInt>],
    out: &mut BTreeSet<Vec<BigInt>>,
) {
    let d = simplex.len();
    // Generators as columns.
    let mut gen = IntMatrix::zeros(d, d);
    for (j, &g) in simplex.iter().enumerate() {
        for (i, x) in coords[g].iter().take(d).enumerate() {
            gen.set(i, j, x.clone());
        }
    }
    let diag = column_lattice_diagonal(&gen);
    if diag.iter().all(One::is_one) {
        return;
    }
    let inverse = RationalInverse::new(&gen);
    let n = rays[simplex[0]].len();

    let mut rep = vec![BigInt::zero(); d];
    loop {
        let lambda = inverse.apply(&rep);
        let mut point = vec![BigRational::zero(); n];
        for (j, l) in lambda.iter().enumerate() {
            let frac = l - l.floor();
            if frac.is_zero() {
                continue;
            }
            for (p, x) in point.iter_mut().zip(&rays[simplex[j]]) {
                *p += &frac * BigRational::from_integer(x.clone());
            }
        }
        if point.iter().any(|p| !p.is_zero()) {
            out.insert(
                point
                    .into_iter()
                    .map(|p| {
                        debug_assert!(p.is_integer());
                        p.to_integer()
                    })
                    .collect(),
            );
        }
        // Odometer over 0 <= rep_i < diag_i.
        let mut k = 0;
        while k < d {
            rep[k] += 1;
            if rep[k] < diag[k] {
                break;
            }
            rep[k] = BigInt::zero();
            k += 1;
        }
        if k == d {
            break;
        }
    }
}

/// Inverse of a nonsingular integer matrix over the rationals.
struct RationalInverse {
    inv: Vec<Vec<BigRational>>,
}

impl RationalInverse {
    fn new(m: &IntMatrix) -> Self {
        let d = m.nrows();
        let mut a: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
                row.extend((0..d).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..d {
            let p = (col..d).find(|&r| !a[r][col].is_zero()).expect("nonsingular");
            a.swap(col, p);
            let pivot = a[col][col].clone();
            a[col].iter_mut().for_each(|x| *x /= &pivot);
            for r in 0..d {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let (src, dst) = if r < col {
                        let (lo, hi) = a.split_at_mut(col);
                        (&hi[0], &mut lo[r])
                    } else {
                        let (lo, hi) = a.split_at_mut(r);
                        (&lo[col], &mut hi[0])
                    };
                    for (x, s) in dst.iter_mut().zip(src.iter()) {
                        *x -= &f * s;
                    }
                }
            }
        }
        Self {
            inv: a.into_iter().map(|row| row[d..].to_vec()).collect(),
        }
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigRational> {
        self.inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(r, x)| r * BigRational::from_integer(x.clone()))
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .collect()
    }
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
    fn single_ray() {
        // ker = span(2, 1) after saturation: cone is one ray.
        assert_eq!(cone_hilbert_basis(&m(2, &[&[1, -2]])), vec![big(&[2, 1])]);
    }

    #[test]
    fn two_dim_cone_needs_interior_point() {
        // x1 + x2 = 2 x3 in Z^3: rays (2,0,1), (0,2,1); (1,1,1) is irreducible.
        let hb = cone_hilbert_basis(&m(3, &[&[1, 1, -2]]));
        assert_eq!(hb, vec![big(&[0, 2, 1]), big(&[1, 1, 1]), big(&[2, 0, 1])]);
    }

    #[test]
    fn non_simplicial_cone() {
        // x1 + x2 = x3 + x4: four rays, unimodular, Hilbert basis = rays.
        let hb = cone_hilbert_basis(&m(4, &[&[1, 1, -1, -1]]));
        assert_eq!(hb.len(), 4);
    }
}
