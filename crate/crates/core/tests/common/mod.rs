//! Shared generators for the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use qstab_core::numeric;
use qstab_core::quiver::{
    build_kronecker_doubled, build_linear_a, hn_bruteforce_oracle, hn_filtration, make_stability, LiftPolicy, Quiver,
    QuiverRep, RegimeTag, StabilityData,
};
use rand::Rng;
use rug::Complex;

/// Every thin representation of the linear `A_n` quiver with 0/1 scalars,
/// zero representation excluded.
pub fn thin_reps_linear(n: usize) -> Vec<QuiverRep> {
    let q = Arc::new(build_linear_a(n));
    let arrows = q.arrows().len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let support: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        for smask in 0u32..(1 << arrows) {
            let scalars: Vec<i64> = (0..arrows).map(|k| (smask >> k & 1) as i64).collect();
            let valid = q.arrows().iter().zip(&scalars).all(|(a, &s)| s == 0 || (support[a.source] && support[a.target]));
            if valid {
                out.push(QuiverRep::thin(q.clone(), &support, &scalars).unwrap());
            }
        }
    }
    out
}

/// Points of `P^1` used for the Kronecker family.
pub const P1_POINTS: [(i64, i64); 8] = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (1, 3), (3, -2)];

/// The dimension-`(1,1)` family: `(a, b) = (λ, μ)` or `(a', b') = (λ, μ)`,
/// plus the semisimple one.
pub fn kronecker_family() -> Vec<QuiverRep> {
    let q = Arc::new(build_kronecker_doubled());
    let mut out = vec![QuiverRep::thin(q.clone(), &[true, true], &[0; 4]).unwrap()];
    for (l, m) in P1_POINTS {
        out.push(QuiverRep::thin(q.clone(), &[true, true], &[l, m, 0, 0]).unwrap());
        out.push(QuiverRep::thin(q.clone(), &[true, true], &[0, 0, l, m]).unwrap());
    }
    out
}

/// A dyadic charge in the upper half plane, exact at 64 bits.
pub fn random_charge<R: Rng>(rng: &mut R) -> Complex {
    let re = rng.gen_range(-256i32..=256) as f64 / 64.0;
    let im = rng.gen_range(1i32..=256) as f64 / 64.0;
    numeric::from_f64(64, re, im)
}

pub fn random_stability<R: Rng>(q: &Arc<Quiver>, rng: &mut R) -> StabilityData {
    let charges = (0..q.vertex_count()).map(|_| random_charge(rng)).collect();
    make_stability(q.clone(), charges, LiftPolicy::PrincipalArg, RegimeTag::Bridgeland).unwrap()
}

/// Greedy against the oracle, plus exact additivity of the layer charges.
pub fn hn_agrees(rep: &QuiverRep, sd: &StabilityData) -> Result<(), String> {
    let greedy = hn_filtration(rep, sd).map_err(|e| e.to_string())?;
    let oracle = hn_bruteforce_oracle(rep, sd).map_err(|e| e.to_string())?;
    if greedy != oracle {
        return Err(format!("greedy {greedy:?} oracle {oracle:?}"));
    }
    if greedy.total_class() != rep.dims() {
        return Err(format!("classes {:?} do not sum to {:?}", greedy.total_class(), rep.dims()));
    }
    if greedy.total_charge() != Some(sd.class_charge(rep.dims())) {
        return Err("layer charges do not add up".into());
    }
    if !greedy.phases_strictly_decrease() {
        return Err("phases not strictly decreasing".into());
    }
    Ok(())
}
