//! Property tests for the polynomial and matrix kernels.

use num_traits::{One, Zero};
use proptest::prelude::*;
use weylinv::matrix::Mat;
use weylinv::poly::Poly;
use weylinv::scalar::{int, rat, Qx, Rat, Scalar};

fn poly_strategy(nvars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), -20i64..=20),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            p = p.add(&Poly::monomial(nvars, exps, int(c)));
        }
        p
    })
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_then_parsing_is_the_identity(p in poly_strategy(3, 4, 6)) {
        let parsed = Poly::<Rat>::parse(&p.to_string(), 3).unwrap();
        prop_assert_eq!(parsed, p);
    }

    #[test]
    fn multiplication_is_commutative_and_distributive(
        a in poly_strategy(3, 3, 5),
        b in poly_strategy(3, 3, 5),
        c in poly_strategy(3, 3, 5),
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn derivative_satisfies_the_leibniz_rule(
        a in poly_strategy(2, 4, 5),
        b in poly_strategy(2, 4, 5),
        v in 0usize..2,
    ) {
        let lhs = a.mul(&b).derivative(v);
        let rhs = a.derivative(v).mul(&b).add(&a.mul(&b.derivative(v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(
        a in poly_strategy(2, 3, 4),
        b in poly_strategy(2, 3, 4),
        x in small_rat(),
        y in small_rat(),
    ) {
        let at = [x, y];
        prop_assert_eq!(a.mul(&b).eval(&at), a.eval(&at) * b.eval(&at));
        prop_assert_eq!(a.add(&b).eval(&at), a.eval(&at) + b.eval(&at));
    }

    #[test]
    fn gradient_pairing_is_symmetric_for_symmetric_gram(
        a in poly_strategy(2, 4, 5),
        b in poly_strategy(2, 4, 5),
        g00 in small_rat(), g01 in small_rat(), g11 in small_rat(),
    ) {
        let gram = Mat::from_rows(vec![
            vec![g00, g01.clone()],
            vec![g01, g11],
        ]);
        prop_assert_eq!(
            Poly::gradient_pairing(&a, &b, &gram),
            Poly::gradient_pairing(&b, &a, &gram)
        );
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        a in poly_strategy(2, 3, 4),
        s in poly_strategy(2, 2, 3),
        x in small_rat(),
        y in small_rat(),
    ) {
        let at = [x, y];
        let direct = a.substitute(0, &s).eval(&at);
        let via = a.eval(&[s.eval(&at), at[1].clone()]);
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn homogeneous_degree_is_multiplicative(
        a in poly_strategy(2, 3, 1),
        b in poly_strategy(2, 3, 1),
    ) {
        // Single-term polynomials are homogeneous; degrees add under product.
        if let (Some(da), Some(db)) = (a.homogeneous_degree(), b.homogeneous_degree()) {
            prop_assert_eq!(a.mul(&b).homogeneous_degree(), Some(da + db));
        }
    }

    #[test]
    fn inverse_and_solve_agree_with_the_matrix(
        entries in prop::collection::vec(-9i64..=9, 9),
        rhs in prop::collection::vec(-9i64..=9, 3),
    ) {
        let m = Mat::from_fn(3, 3, |i, j| int(entries[3 * i + j]));
        let b: Vec<Rat> = rhs.iter().map(|&v| int(v)).collect();
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(&m * &inv, Mat::identity(3));
                let x = m.solve(&b).expect("invertible system solves");
                let back = m.mul_vec(&x);
                prop_assert_eq!(back, b);
                prop_assert!(m.kernel_basis().is_empty());
            }
            None => {
                prop_assert!(m.det().is_zero());
                let kernel = m.kernel_basis();
                prop_assert!(!kernel.is_empty());
                for v in kernel {
                    let img = m.mul_vec(&v);
                    prop_assert!(img.iter().all(Rat::is_zero));
                }
            }
        }
    }

    #[test]
    fn quadratic_extension_is_a_commutative_ring(
        a1 in small_rat(), a2 in small_rat(),
        b1 in small_rat(), b2 in small_rat(),
        c1 in small_rat(), c2 in small_rat(),
    ) {
        let d = -3i64;
        let a = Qx::new(a1, a2, d);
        let b = Qx::new(b1, b2, d);
        let c = Qx::new(c1, c2, d);
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert_eq!(a.clone() * Qx::one(), a.clone());
        prop_assert_eq!(a.clone() + Qx::zero(), a);
    }

    #[test]
    fn coefficient_strings_round_trip(n in -200i64..=200, d in 1i64..=40) {
        let c = rat(n, d);
        let s = c.coeff_string();
        let back = Rat::parse_coeff(&s).unwrap();
        prop_assert_eq!(back, c);
    }
}
