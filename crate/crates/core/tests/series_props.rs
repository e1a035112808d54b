use proptest::prelude::*;
use qstab_core::series::{BivariateQZSeries, RatSeries, RationalHalfQSeries};
use rug::Rational;

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::from((n, d)))
}

fn series(order: usize) -> impl Strategy<Value = RatSeries> {
    prop::collection::vec(rat(), order).prop_map(RatSeries::from_coeffs)
}

/// `c_0 + c_1 x + …` with the constant forced.
fn with_constant(order: usize, c: i64) -> impl Strategy<Value = RatSeries> {
    series(order).prop_map(move |s| {
        let mut v = s.coeffs().to_vec();
        v[0] = Rational::from(c);
        RatSeries::from_coeffs(v)
    })
}

fn halfq(order: u32) -> impl Strategy<Value = RationalHalfQSeries> {
    prop::collection::vec(rat(), order as usize)
        .prop_map(move |v| RationalHalfQSeries::from_terms(v.into_iter().enumerate().map(|(k, c)| (k as u32, c)), order))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(7), b in series(7), c in series(7)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatSeries::zero(7));
        prop_assert_eq!(&a * &RatSeries::one(7), a.clone());
    }

    #[test]
    fn inverse_is_inverse(a in with_constant(8, 3)) {
        prop_assert_eq!(&a * &a.inverse().unwrap(), RatSeries::one(8));
    }

    #[test]
    fn exp_log_round_trip(a in with_constant(8, 1), b in with_constant(8, 0)) {
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a.clone());
        prop_assert_eq!(b.exp().unwrap().log().unwrap(), b.clone());
        // log turns products into sums
        let a2 = &a * &a;
        prop_assert_eq!(a2.log().unwrap(), &a.log().unwrap() + &a.log().unwrap());
    }

    #[test]
    fn reversion_inverts_composition(tail in series(6)) {
        let mut v = vec![Rational::new(), Rational::from(1)];
        v.extend(tail.coeffs()[..5].iter().cloned());
        let f = RatSeries::from_coeffs(v);
        let g = f.reversion().unwrap();
        prop_assert_eq!(f.compose(&g).unwrap(), RatSeries::variable(7));
        prop_assert_eq!(g.compose(&f).unwrap(), RatSeries::variable(7));
    }

    #[test]
    fn negate_u_is_an_involutive_ring_map(a in halfq(10), b in halfq(10)) {
        prop_assert_eq!(a.negate_u().negate_u(), a.clone());
        prop_assert_eq!((&a * &b).negate_u(), &a.negate_u() * &b.negate_u());
        prop_assert_eq!((&a + &b).negate_u(), &a.negate_u() + &b.negate_u());
    }

    #[test]
    fn formal_log_exp_in_z(parts in prop::collection::vec(halfq(6), 4)) {
        let mut parts = parts;
        parts[0] = RationalHalfQSeries::one(6);
        let e = BivariateQZSeries::from_parts(parts);
        let back = e.formal_log_z().unwrap().formal_exp_z().unwrap();
        prop_assert_eq!(back, e.clone());
        // log(E·E) = 2 log E
        let sq = (&e * &e).formal_log_z().unwrap();
        prop_assert_eq!(sq, e.formal_log_z().unwrap().scale(&Rational::from(2)));
    }
}

#[test]
fn exp_requires_zero_constant() {
    let s = RatSeries::from_integers([1, 1, 0]);
    assert!(s.exp().is_err());
    let s = RatSeries::from_integers([2, 1, 0]);
    assert!(s.log().is_err());
}
