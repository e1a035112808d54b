use proptest::prelude::*;
use qstab_core::a1::{a1_central, a1_periods, a1_periods_ordered, A1Object, A1Parameters, RootOrder};
use qstab_core::numeric;
use rug::Complex;

const P: u32 = 128;

fn c(re: f64, im: f64) -> Complex {
    numeric::from_f64(P, re, im)
}

fn diff(a: &Complex, b: &Complex) -> f64 {
    numeric::abs_f64(&Complex::with_val(P, a - b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `(a1, a2, a3) ↦ (λ μ² a1, λ μ a2, λ a3)` fixes `x` and `ϖ_1`.
    #[test]
    fn varpi1_depends_only_on_x(
        re in -2.0f64..2.0, im in -2.0f64..2.0,
        lambda in 0.1f64..10.0, mu in 0.1f64..10.0,
    ) {
        prop_assume!(re.hypot(im) > 1e-3 && (re - 0.25).hypot(im) > 1e-3);
        let p = A1Parameters::from_x(c(re, im));
        let (l, m) = (c(lambda, 0.0), c(mu, 0.0));
        let m2 = Complex::with_val(P, m.square_ref());
        let q = A1Parameters::new(
            Complex::with_val(P, &p.a1 * &l) * &m2,
            Complex::with_val(P, &p.a2 * &l) * &m,
            Complex::with_val(P, &p.a3 * &l),
        ).unwrap();
        prop_assert!(diff(&p.x().unwrap(), &q.x().unwrap()) < 1e-25);
        let (_, w) = a1_periods(&p, P).unwrap();
        let (_, v) = a1_periods(&q, P).unwrap();
        prop_assert!(diff(&w, &v) < 1e-25, "{} vs {}", w, v);
    }

    #[test]
    fn root_swap_negates(re in -2.0f64..2.0, im in -2.0f64..2.0) {
        prop_assume!(re.hypot(im) > 1e-3 && (re - 0.25).hypot(im) > 1e-3);
        let p = A1Parameters::from_x(c(re, im));
        let (_, a) = a1_periods_ordered(&p, P, RootOrder::Canonical).unwrap();
        let (_, b) = a1_periods_ordered(&p, P, RootOrder::Swapped).unwrap();
        prop_assert!(numeric::abs_f64(&Complex::with_val(P, &a + &b)) < 1e-25);
    }

    #[test]
    fn simple_charges_sum_to_skyscraper(re in -2.0f64..2.0, im in -2.0f64..2.0) {
        prop_assume!(re.hypot(im) > 1e-3 && (re - 0.25).hypot(im) > 1e-3);
        let p = A1Parameters::from_x(c(re, im));
        let z0 = a1_central(A1Object::Simple(0), &p, P).unwrap();
        let z1 = a1_central(A1Object::Simple(1), &p, P).unwrap();
        let sky = a1_central(A1Object::Skyscraper, &p, P).unwrap();
        prop_assert!(diff(&Complex::with_val(P, &z0 + &z1), &sky) < 1e-30);
    }
}
