use fifteenj::{factorial_factors, triangle_ok, AlgebraicNumber, HalfInt};
use proptest::prelude::*;
use rug::{Integer, Rational};

/// Small sums of `q √r` over a few radicands, some of them not square-free
/// before canonicalization.
fn algebraic() -> impl Strategy<Value = AlgebraicNumber> {
    prop::collection::vec((-40i64..=40, 1i64..=60, 1u32..=12, 1i64..=30), 0..4).prop_map(|terms| {
        let mut x = AlgebraicNumber::zero();
        for (n, d, rad, k) in terms {
            let root = AlgebraicNumber::sqrt_of_rational(&Rational::from(rad * k as u32)).unwrap();
            x += &root.scale(&Rational::from((n, d)));
        }
        x
    })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn distributive(a in algebraic(), b in algebraic(), c in algebraic()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn ring_laws(a in algebraic(), b in algebraic(), c in algebraic()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn float_is_a_homomorphism(a in algebraic(), b in algebraic()) {
        prop_assert!(close((&a + &b).to_f64(), a.to_f64() + b.to_f64()));
        prop_assert!(close((&a * &b).to_f64(), a.to_f64() * b.to_f64()));
    }

    #[test]
    fn sign_matches_float(a in algebraic()) {
        let f = a.to_f64();
        prop_assert_eq!(a.signum(), if a.is_zero() { 0 } else if f > 0.0 { 1 } else { -1 });
    }

    #[test]
    fn parse_round_trip(a in algebraic()) {
        let back: AlgebraicNumber = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn square_root_squares_back(n in 0i64..5000, d in 1i64..5000) {
        let q = Rational::from((n, d));
        let r = AlgebraicNumber::sqrt_of_rational(&q).unwrap();
        prop_assert_eq!(&r * &r, AlgebraicNumber::from_rational(q));
    }

    #[test]
    fn triangle_symmetric(a in 0i64..20, b in 0i64..20, c in 0i64..20) {
        let [x, y, z] = [a, b, c].map(HalfInt::from_twice);
        let t = triangle_ok(x, y, z);
        prop_assert_eq!(t, triangle_ok(y, x, z));
        prop_assert_eq!(t, triangle_ok(z, y, x));
        prop_assert_eq!(t, triangle_ok(x, z, y));
        let direct = (a + b + c) % 2 == 0 && c <= a + b && c >= (a - b).abs();
        prop_assert_eq!(t, direct);
    }

    #[test]
    fn halfint_round_trip(t in -200i64..200) {
        let j = HalfInt::from_twice(t);
        prop_assert_eq!(j.to_string().parse::<HalfInt>().unwrap(), j);
    }

    #[test]
    fn factorial_ratio(n in 0u64..60) {
        // n! / (n-1)! = n
        let f = factorial_factors(n);
        let value: Integer = f.to_integer();
        let prev: Integer = factorial_factors(n.saturating_sub(1)).to_integer();
        prop_assert_eq!(value, prev * Integer::from(n.max(1)));
    }
}
