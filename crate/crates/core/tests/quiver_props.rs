mod common;

use std::sync::Arc;

use proptest::prelude::*;
use qstab_core::numeric;
use qstab_core::quiver::{
    build_kronecker_doubled, build_linear_a, hn_filtration, make_stability, wallcross_second_kind, LiftPolicy, Quiver,
    RegimeTag, StabilityData,
};

fn charge() -> impl Strategy<Value = (i32, i32)> {
    (-256i32..=256, 1i32..=256)
}

fn stability(q: &Arc<Quiver>, zs: &[(i32, i32)]) -> StabilityData {
    let charges = zs.iter().map(|&(re, im)| numeric::from_f64(64, re as f64 / 64.0, im as f64 / 64.0)).collect();
    make_stability(q.clone(), charges, LiftPolicy::PrincipalArg, RegimeTag::Bridgeland).unwrap()
}

fn classes(rep: &qstab_core::quiver::QuiverRep, sd: &StabilityData) -> Vec<Vec<usize>> {
    hn_filtration(rep, sd).unwrap().layers.into_iter().map(|l| l.class).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn greedy_matches_oracle_on_a3(zs in prop::collection::vec(charge(), 3)) {
        let sd = stability(&Arc::new(build_linear_a(3)), &zs);
        for rep in common::thin_reps_linear(3) {
            prop_assert!(common::hn_agrees(&rep, &sd).is_ok(), "{:?}", common::hn_agrees(&rep, &sd));
        }
    }

    #[test]
    fn greedy_matches_oracle_on_kronecker(zs in prop::collection::vec(charge(), 2)) {
        let sd = stability(&Arc::new(build_kronecker_doubled()), &zs);
        for rep in common::kronecker_family() {
            prop_assert!(common::hn_agrees(&rep, &sd).is_ok(), "{:?}", common::hn_agrees(&rep, &sd));
        }
    }

    /// Multiplying every charge by one nonzero number moves no filtration
    /// and produces no second-kind witness.
    #[test]
    fn dilation_and_rotation_invariance(
        zs in prop::collection::vec(charge(), 3),
        scale in 0.05f64..20.0,
        angle in -3.0f64..3.0,
    ) {
        let sd = stability(&Arc::new(build_linear_a(3)), &zs);
        let factor = numeric::from_f64(64, scale * angle.cos(), scale * angle.sin());
        let moved = sd.rotated(&factor).unwrap();
        prop_assert_eq!(wallcross_second_kind(&sd, &moved).unwrap(), None);
        for rep in common::thin_reps_linear(3) {
            prop_assert_eq!(classes(&rep, &sd), classes(&rep, &moved));
        }
    }
}

#[test]
fn kronecker_family_is_nilpotent() {
    for rep in common::kronecker_family() {
        assert!(rep.is_nilpotent());
    }
    let q = Arc::new(build_kronecker_doubled());
    let sd = stability(&q, &[(-64, 64), (64, 64)]);
    // a family member with only (a, b) nonzero is stable when S_1 sits above S_2
    let rep = &common::kronecker_family()[1];
    assert_eq!(hn_filtration(rep, &sd).unwrap().layers.len(), 1);
}
