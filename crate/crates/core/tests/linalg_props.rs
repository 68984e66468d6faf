mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use common::{big, oracle_nullspace, oracle_rank, to_primitive};
use spun_core::linalg::{hermite_normal_form, kernel_basis, lattice_coordinates, left_kernel_lattice, rank, IntMatrix};

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=6, 0usize..=6).prop_flat_map(|(cols, rows)| {
        (
            Just(cols),
            prop::collection::vec(prop::collection::vec(-5i64..=5, cols), rows),
        )
    })
}

/// Rank-deficient matrices are rare at random; build some from a product.
fn low_rank_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=6, 1usize..=6, 1usize..=3).prop_flat_map(|(cols, rows, inner)| {
        (
            Just(cols),
            prop::collection::vec(prop::collection::vec(-3i64..=3, inner), rows),
            prop::collection::vec(prop::collection::vec(-3i64..=3, cols), inner),
        )
            .prop_map(|(cols, l, r)| {
                let m = l
                    .iter()
                    .map(|lr| {
                        (0..cols)
                            .map(|j| lr.iter().zip(&r).map(|(a, rr)| a * rr[j]).sum())
                            .collect()
                    })
                    .collect();
                (cols, m)
            })
    })
}

fn check_kernel(cols: usize, rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let m = IntMatrix::from_rows(cols, rows);
    let kernel = kernel_basis(&m);
    for v in &kernel {
        prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
    }
    prop_assert_eq!(rank(&m), oracle_rank(rows, cols));
    prop_assert_eq!(rank(&m) + kernel.len(), cols);
    prop_assert_eq!(hermite_normal_form(&kernel), kernel.clone());

    // Every integer kernel vector is an integer combination of the basis.
    let rational = oracle_nullspace(rows, cols);
    for (k, v) in rational.iter().enumerate() {
        prop_assert!(lattice_coordinates(&kernel, v).is_some(), "oracle vector {:?}", v);
        // A primitive mixture of two oracle vectors as well.
        if let Some(w) = rational.get(k + 1) {
            let mix: Vec<BigRational> = v
                .iter()
                .zip(w)
                .map(|(a, b)| BigRational::new(a.clone(), 3.into()) + BigRational::new(b.clone(), 7.into()))
                .collect();
            prop_assert!(lattice_coordinates(&kernel, &to_primitive(&mix)).is_some());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn kernel_is_exact_and_saturated((cols, rows) in matrix()) {
        check_kernel(cols, &rows)?;
    }

    #[test]
    fn kernel_of_low_rank_product((cols, rows) in low_rank_matrix()) {
        check_kernel(cols, &rows)?;
    }

    #[test]
    fn saturation_by_box_enumeration((cols, rows) in low_rank_matrix().prop_filter("small", |(c, _)| *c <= 4)) {
        let m = IntMatrix::from_rows(cols, &rows);
        let kernel = kernel_basis(&m);
        let mut w = vec![-3i64; cols];
        loop {
            let v = big(&w);
            if m.mul_vec(&v).iter().all(Zero::is_zero) {
                prop_assert!(lattice_coordinates(&kernel, &v).is_some(), "{:?} not in lattice", w);
            }
            let mut k = 0;
            while k < cols {
                w[k] += 1;
                if w[k] <= 3 { break; }
                w[k] = -3;
                k += 1;
            }
            if k == cols { break; }
        }
    }

    #[test]
    fn left_kernel_annihilates((cols, rows) in low_rank_matrix()) {
        let m = IntMatrix::from_rows(cols, &rows);
        let left = left_kernel_lattice(&m);
        prop_assert_eq!(left.len() + rank(&m), m.nrows());
        for y in &left {
            let prod: Vec<BigInt> = (0..cols)
                .map(|j| y.iter().zip(&rows).map(|(a, r)| a * BigInt::from(r[j])).sum())
                .collect();
            prop_assert!(prod.iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn two_fusion_rank_and_left_kernel() {
    let a = IntMatrix::from_rows(8, &spun_core::two_fusion::EDGE_A.map(|r| r.to_vec()));
    assert_eq!(rank(&a), 5);
    assert_eq!(left_kernel_lattice(&a).len(), 3);
}

#[test]
fn single_row_kernel() {
    let m = IntMatrix::from_rows(2, &[vec![2, -4]]);
    assert_eq!(kernel_basis(&m), vec![big(&[2, 1])]);
    assert_eq!(
        left_kernel_lattice(&IntMatrix::from_rows(1, &[vec![1], vec![1]])).len(),
        1
    );
    assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
    assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
}
