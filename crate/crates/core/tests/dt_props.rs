use proptest::prelude::*;
use qstab_core::dt::{
    dilog_coefficient_exact, dilog_of, quantum_dilog, DilogNormalization, LaurentPoly, QuantumTorusElement, RatFunc,
};
use rug::Rational;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..4).prop_map(|terms| {
        terms.into_iter().fold(LaurentPoly::monomial(Rational::new(), 0), |acc, (k, c)| {
            &acc + &LaurentPoly::monomial(Rational::from(c), k)
        })
    })
}

fn monomial_elem() -> impl Strategy<Value = QuantumTorusElement> {
    (0u32..3, 0u32..3, -3i64..=3, 1i64..=4).prop_map(|(a, b, k, c)| {
        let coeff = RatFunc::from_poly(LaurentPoly::monomial(Rational::from(c), k));
        QuantumTorusElement::monomial(coeff, a, b, 6)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn u_to_minus_u_twice_is_identity(p in poly(), q in poly()) {
        prop_assert_eq!(p.negate_u().negate_u(), p.clone());
        prop_assert_eq!((&p * &q).negate_u(), &p.negate_u() * &q.negate_u());
        let f = RatFunc::from_poly(p.clone());
        prop_assert_eq!(f.negate_u().negate_u(), f.clone());
    }

    #[test]
    fn torus_is_associative(a in monomial_elem(), b in monomial_elem(), c in monomial_elem()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn rational_function_distributes(a in poly(), b in poly(), c in poly()) {
        let (a, b, c) = (RatFunc::from_poly(a), RatFunc::from_poly(b), RatFunc::from_poly(c));
        prop_assert!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c));
    }
}

/// Expands `num/den` in nonnegative powers of `u` through `u^{order-1}`;
/// `den` must have a nonzero lowest term.
fn expand(f: &RatFunc, order: i64) -> Vec<Rational> {
    let (num, den) = (&f.num, &f.den);
    let lo = (-64..=64).find(|&k| den.coeff(k) != 0).unwrap();
    let d0 = den.coeff(lo);
    let mut out = vec![Rational::new(); order as usize];
    // out[k] = (num[k+lo] − Σ_{j>0} den[lo+j] out[k−j]) / d0
    for k in 0..order {
        let mut acc = num.coeff(k + lo);
        for j in 1..=k {
            acc -= den.coeff(lo + j) * out[(k - j) as usize].clone();
        }
        out[k as usize] = acc / &d0;
    }
    out
}

#[test]
fn exact_coefficients_match_series() {
    let e = quantum_dilog(5, 24).unwrap();
    for m in 0..5u32 {
        let exact = expand(&dilog_coefficient_exact(m), 24);
        for k in 0..24u32 {
            assert_eq!(exact[k as usize], e.part(m as usize).coeff(k), "z^{m} u^{k}");
        }
    }
}

#[test]
fn substituted_normalization_negates_u() {
    let one = RatFunc::from_poly(LaurentPoly::one());
    let a = dilog_of(&one, 1, 0, 4, DilogNormalization::AsDisplayed);
    let b = dilog_of(&one, 1, 0, 4, DilogNormalization::Substituted);
    for m in 0..=4 {
        assert!(a.coeff(m, 0).negate_u() == b.coeff(m, 0), "y^{m}");
    }
}
