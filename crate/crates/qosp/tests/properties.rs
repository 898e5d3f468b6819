//! Randomized property tests: field axioms for the scalar arithmetic,
//! the graded tensor multiplication law, supertrace identities.

use num::rational::Rational64;
use proptest::prelude::*;
use qosp::galgebra::{graded_tensor, GradedMatrix};
use qosp::scalar::QScalar;

fn arb_rational() -> impl Strategy<Value = Rational64> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational64::new(n, d))
}

/// A small Laurent polynomial in q^{1/2} packaged as a scalar.
fn arb_poly_scalar() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((arb_rational(), -4i64..=4), 0..4).prop_map(|terms| {
        let mut acc = QScalar::zero();
        for (c, e) in terms {
            acc = acc + QScalar::from_rational(c) * QScalar::q_half_pow(e);
        }
        acc
    })
}

fn arb_scalar() -> impl Strategy<Value = QScalar> {
    (arb_poly_scalar(), arb_poly_scalar()).prop_map(|(num, den)| {
        if den.is_zero() {
            num
        } else {
            num / den
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_add_associative(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!((&a + &b) + c.clone(), a + (b + c));
    }

    #[test]
    fn scalar_mul_associative(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!((&a * &b) * c.clone(), a * (b * c));
    }

    #[test]
    fn scalar_distributive(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn scalar_additive_inverse(a in arb_scalar()) {
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_multiplicative_inverse(a in arb_scalar()) {
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn q_power_additive(x in arb_rational(), y in arb_rational()) {
        prop_assert_eq!(
            &QScalar::q_pow(x) * &QScalar::q_pow(y),
            QScalar::q_pow(x + y)
        );
    }

    #[test]
    fn eval_is_ring_homomorphism(a in arb_scalar(), b in arb_scalar()) {
        // Checked away from poles at a generic point.
        let q0 = 1.7;
        if let (Ok(ea), Ok(eb)) = (a.eval_f64(q0), b.eval_f64(q0)) {
            let sum = (&a + &b).eval_f64(q0).unwrap();
            let prod = (&a * &b).eval_f64(q0).unwrap();
            let scale = 1.0 + ea.abs() + eb.abs() + (ea * eb).abs();
            prop_assert!(((ea + eb) - sum).abs() <= 1e-12 * scale);
            prop_assert!((ea * eb - prod).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn display_parse_round_trip(a in arb_scalar()) {
        let s = a.to_string();
        let back = QScalar::parse(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

/// Homogeneous matrix of a given operator degree on a graded basis.
fn arb_homogeneous(
    grading: Vec<u8>,
    degree: u8,
) -> impl Strategy<Value = GradedMatrix> {
    let dim = grading.len();
    prop::collection::vec(arb_rational(), dim * dim).prop_map(move |coeffs| {
        let mut m = GradedMatrix::zero(grading.clone());
        for r in 0..dim {
            for c in 0..dim {
                if (grading[r] + grading[c]) % 2 == degree % 2 {
                    m.set(r, c, QScalar::from_rational(coeffs[r * dim + c]));
                }
            }
        }
        m
    })
}

/// Four homogeneous operators with their degrees, for the sign law.
fn arb_tensor_quad() -> impl Strategy<Value = ((GradedMatrix, GradedMatrix, GradedMatrix, GradedMatrix), (u8, u8))> {
    (0u8..2, 0u8..2, 0u8..2, 0u8..2).prop_flat_map(|(da, db, dc, dd)| {
        let g1 = vec![0u8, 1];
        let g2 = vec![1u8, 0, 1];
        (
            arb_homogeneous(g1.clone(), da),
            arb_homogeneous(g2.clone(), db),
            arb_homogeneous(g1, dc),
            arb_homogeneous(g2, dd),
        )
            .prop_map(move |(a, b, c, d)| ((a, b, c, d), (db, dc)))
    })
}

fn arb_homogeneous_pair() -> impl Strategy<Value = ((GradedMatrix, GradedMatrix), (u8, u8))> {
    (0u8..2, 0u8..2).prop_flat_map(|(da, db)| {
        let g = vec![0u8, 1, 0];
        (arb_homogeneous(g.clone(), da), arb_homogeneous(g, db))
            .prop_map(move |(a, b)| ((a, b), (da, db)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graded_tensor_multiplication_rule(((a, b, c, d), (db, dc)) in arb_tensor_quad()) {
        // (A (x) B)(C (x) D) = (-1)^{[B][C]} (AC (x) BD) for homogeneous ops.
        let lhs = graded_tensor(&a, &b).mul(&graded_tensor(&c, &d));
        let mut rhs = graded_tensor(&a.mul(&c), &b.mul(&d));
        if db % 2 == 1 && dc % 2 == 1 {
            rhs = rhs.neg();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supertrace_graded_cyclicity(((a, b), (da, db)) in arb_homogeneous_pair()) {
        let lhs = a.mul(&b).supertrace();
        let mut rhs = b.mul(&a).supertrace();
        if da % 2 == 1 && db % 2 == 1 {
            rhs = -rhs;
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supertrace_multiplicative_and_tensor_associative(
        a in arb_homogeneous(vec![0, 1], 0),
        b in arb_homogeneous(vec![1, 0], 0),
        c in arb_homogeneous(vec![0, 0, 1], 0),
    ) {
        prop_assert_eq!(
            graded_tensor(&a, &b).supertrace(),
            &a.supertrace() * &b.supertrace()
        );
        prop_assert_eq!(
            graded_tensor(&graded_tensor(&a, &b), &c),
            graded_tensor(&a, &graded_tensor(&b, &c))
        );
    }
}
