mod common;

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::fixture;
use spun_core::cones::{enumerate_vertex_surfaces, SurfaceVector};
use spun_core::criteria::{boundary_class, rebase_slope, theorem1_check, BoundaryClass, Slope};
use spun_core::first_order::{
    build_first_order, emit_system, evaluate_system, monomial_sign_solvable, parse_system, validate_degeneration,
};
use spun_core::gluing::{EqRow, QuadType, Sign};
use spun_core::linalg::IntMatrix;
use spun_core::two_fusion::{
    family_slopes, family_surface, two_fusion_fixture, verify_family, TwoFusionParams, S1, S2, S3,
};

proptest! {
    #[test]
    fn slope_ignores_orientation(m in -50i64..50, l in -50i64..50) {
        let c = BoundaryClass { m, l };
        prop_assert_eq!(c.slope(), BoundaryClass { m: -m, l: -l }.slope());
        prop_assert_eq!(c.slope().is_empty(), m == 0 && l == 0);
        prop_assert_eq!(c.slope().to_string().parse::<Slope>().unwrap(), c.slope());
    }

    #[test]
    fn boundary_class_is_additive(a in prop::array::uniform3(0u64..6), b in prop::array::uniform3(0u64..6)) {
        let sys = two_fusion_fixture();
        let combo = |c: [u64; 3]| {
            let w = (0..8).map(|i| c[0] * S1[i] + c[1] * S2[i] + c[2] * S3[i]).collect();
            SurfaceVector::new(QuadType::uniform(8, 0), w).unwrap()
        };
        let (x, y) = (combo(a), combo(b));
        let sum = x.add(&y).unwrap();
        let (bx, by, bs) = (
            boundary_class(sys, &x).unwrap(),
            boundary_class(sys, &y).unwrap(),
            boundary_class(sys, &sum).unwrap(),
        );
        for k in 0..3 {
            prop_assert_eq!((bs[k].m, bs[k].l), (bx[k].m + by[k].m, bx[k].l + by[k].l));
        }
    }

    #[test]
    fn rebase_round_trips(p in -40i64..40, q in -40i64..40, k in -20i64..20) {
        prop_assume!(p != 0 || q != 0);
        let s = Slope::from_pair(p, q);
        let there = rebase_slope(s, [[1, k], [0, 1]]).unwrap();
        prop_assert_eq!(rebase_slope(there, [[1, -k], [0, 1]]).unwrap(), s);
        prop_assert_eq!(rebase_slope(s, [[1, 0], [0, 1]]).unwrap(), s);
        prop_assert_eq!(rebase_slope(s, [[0, 1], [1, 0]]).unwrap(), Slope::from_pair(q, p));
    }
}

#[test]
fn theorem1_verdict_is_scale_invariant() {
    for name in ["figure_eight.json", "knot_6_3_canonical.json"] {
        let sys = fixture(name);
        for s in enumerate_vertex_surfaces(&sys).unwrap() {
            let base = theorem1_check(&sys, &s).unwrap();
            for k in [2, 3, 7] {
                assert_eq!(theorem1_check(&sys, &s.scaled(k)).unwrap().verdict, base.verdict);
            }
        }
    }
}

#[test]
fn two_fusion_family_sweep() {
    let sys = two_fusion_fixture();
    for m1 in 2..=10 {
        for m2 in 1..=10 {
            let p = TwoFusionParams::new(m1, m2).unwrap();
            let r = verify_family(&p).unwrap();
            assert!(r.is_satisfied(), "({m1},{m2}): {:?}", r.reasons);
            let s = family_surface(&p);
            assert!(s.weights().iter().all(|&w| w > 0));
            let b = boundary_class(sys, &s).unwrap();
            // The λ coefficient of p μ + q λ = -l μ + m λ is m.
            assert!(b.iter().all(|c| c.m != 0), "λ coefficient vanishes at ({m1},{m2})");

            let closed = family_slopes(&p);
            assert_eq!(b[0].slope.as_rational().unwrap(), closed.gamma0);
            let alt = BigRational::from_integer((3 * (1 + m1) + 9 * m2).into())
                + BigRational::new(((m1 - 1) * (m1 - 1)).into(), (m1 + m2 - 1).into());
            assert_eq!(closed.gamma0_rebased, alt);
        }
    }
}

fn random_degenerate_system(rng: &mut ChaCha8Rng, positive: bool) -> (Vec<EqRow>, Vec<i64>, Vec<BigRational>) {
    let n = rng.gen_range(2..=6);
    let mut d: Vec<i64> = (0..n)
        .map(|_| rng.gen_range(if positive { 1 } else { 0 }..=3))
        .collect();
    let first = rng.gen_range(0..n);
    d[first] = d[first].max(1);
    // A point on the first-order system: β_fold = 1, ±1 on the other
    // positive coordinates, and -1 where d vanishes.
    let fold = d.iter().position(|&x| x > 0).unwrap();
    let point: Vec<BigRational> = (0..n)
        .map(|i| {
            let v = if i == fold {
                1
            } else if d[i] > 0 {
                if rng.gen_bool(0.5) {
                    1
                } else {
                    -1
                }
            } else {
                -1
            };
            BigRational::from_integer(v.into())
        })
        .collect();
    let rows = (0..rng.gen_range(1..=n + 2))
        .map(|_| {
            // a orthogonal to d: random, then fix one positive coordinate.
            let mut a: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            a[fold] = 0;
            let rest: i64 = a.iter().zip(&d).map(|(x, y)| x * y).sum();
            let scale = d[fold];
            a.iter_mut().for_each(|x| *x *= scale);
            a[fold] = -rest;
            // Where d vanishes 1 - β = 2, so those b exponents sum to zero.
            let mut b: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let twos: Vec<usize> = (0..n).filter(|&i| d[i] == 0).collect();
            if let Some((&last, init)) = twos.split_last() {
                b[last] = -init.iter().map(|&i| b[i]).sum::<i64>();
            }
            let mut value = BigRational::one();
            for i in 0..n {
                if i != fold {
                    value *= num_traits::pow::Pow::pow(&point[i], a[i] as i32);
                }
                if d[i] == 0 {
                    value *= num_traits::pow::Pow::pow(&(BigRational::one() - &point[i]), b[i] as i32);
                }
            }
            let c = if value == BigRational::one() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            assert!(value == BigRational::one() || value == -BigRational::one(), "{value}");
            EqRow::new(a, b, c)
        })
        .collect();
    (rows, d, point)
}

#[test]
fn first_order_systems_at_known_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..300 {
        let positive = k % 2 == 0;
        let (rows, d, point) = random_degenerate_system(&mut rng, positive);
        let n = d.len();
        let a = IntMatrix::from_rows(n, &rows.iter().map(|r| r.a.clone()).collect::<Vec<_>>());
        assert!(validate_degeneration(&a, &d));
        let fos = build_first_order(&rows, &d).unwrap();

        let residuals = evaluate_system(&fos, &point).unwrap();
        assert!(
            residuals.iter().all(|r| r.matches),
            "{}\n{residuals:?}",
            emit_system(&fos)
        );
        assert_eq!(parse_system(&emit_system(&fos), &d).unwrap(), fos);

        if positive {
            assert!(fos.is_monomial());
            let (a_prime, signs) = fos.exponent_matrix();
            assert!(monomial_sign_solvable(&a_prime, &signs).unwrap());
        }
        for e in &fos.equations {
            assert!(!e.beta.contains_key(&fos.folded_index));
            assert!(e.one_minus.keys().all(|&i| d[i] == 0));
        }
    }
}
