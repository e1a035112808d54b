//! Central charges on simples with lifted phases.
//!
//! Semistable classes are the simples and their self-direct-sums. The phase
//! of any other class `d` is the lift of `Arg Z(d)` nearest to the
//! mass-weighted mean of the phases of its composition factors; on the upper
//! half plane this is the principal argument.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use rug::Complex;

use super::graph::{build_a3_5, Quiver};
use crate::charges::{ChargeAssignment, Regime, SimpleIndex};
use crate::error::{Error, Result};
use crate::numeric;

const TAU: f64 = 2.0 * PI;

/// Agreement of a lifted phase with `Arg Z` modulo `2π`, and of the
/// arguments of charges sharing one level.
pub const PHASE_TOLERANCE: f64 = 1e-9;

/// How phases are lifted from arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftPolicy {
    /// `φ = Arg Z ∈ (−π, π]`; the Bridgeland case for charges in the upper
    /// half plane.
    PrincipalArg,
    /// Level 0 gets its principal argument; each next level adds the
    /// increment in `(0, 2π]` matching the arguments. Needs an acyclic
    /// quiver whose vertices on one level share an argument.
    MonotoneInLevel,
}

/// Where the stability data come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    Bridgeland,
    Lcc,
    LccModified,
    Gepner,
    A1,
    Custom,
}

impl From<Regime> for RegimeTag {
    fn from(r: Regime) -> Self {
        match r {
            Regime::Lcc => RegimeTag::Lcc,
            Regime::LccModified => RegimeTag::LccModified,
            Regime::Gepner => RegimeTag::Gepner,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityData {
    quiver: Arc<Quiver>,
    charges: Vec<Complex>,
    phases: Vec<f64>,
    regime: RegimeTag,
}

fn wrap(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

fn check_charges(quiver: &Quiver, charges: &[Complex]) -> Result<()> {
    if charges.len() != quiver.vertex_count() {
        return Err(Error::Quiver(format!("{} charges for {} vertices", charges.len(), quiver.vertex_count())));
    }
    if let Some(v) = charges.iter().position(|z| z.is_zero() || !numeric::is_finite(z)) {
        return Err(Error::ZeroCharge(format!("vertex {}", quiver.vertex_label(v))));
    }
    Ok(())
}

fn monotone_lift(quiver: &Quiver, args: &[f64]) -> Result<Vec<f64>> {
    let levels = quiver.levels().ok_or_else(|| Error::LiftInfeasible("quiver has an oriented cycle".into()))?;
    let top = levels.iter().copied().max().unwrap_or(0) as usize;
    let mut rep: Vec<Option<f64>> = vec![None; top + 1];
    for (v, &l) in levels.iter().enumerate() {
        match rep[l as usize] {
            None => rep[l as usize] = Some(args[v]),
            Some(a) if wrap(args[v] - a).abs() > PHASE_TOLERANCE => {
                return Err(Error::LiftInfeasible(format!("level {l} carries distinct arguments")));
            }
            Some(_) => {}
        }
    }
    let mut lifted = Vec::with_capacity(top + 1);
    let mut prev: Option<f64> = None;
    for a in rep {
        let a = a.ok_or_else(|| Error::LiftInfeasible("empty level".into()))?;
        let phi = match prev {
            None => a,
            Some(p) => {
                let mut inc = (a - p).rem_euclid(TAU);
                if inc == 0.0 {
                    inc = TAU;
                }
                p + inc
            }
        };
        lifted.push(phi);
        prev = Some(phi);
    }
    Ok(levels.iter().map(|&l| lifted[l as usize]).collect())
}

/// Stability data on `quiver` from per-vertex charges. Fails on a zero
/// charge, an infeasible lift, or a violation of condition (2).
pub fn make_stability(quiver: Arc<Quiver>, charges: Vec<Complex>, policy: LiftPolicy, regime: RegimeTag) -> Result<StabilityData> {
    check_charges(&quiver, &charges)?;
    let args: Vec<f64> = charges.iter().map(numeric::arg_f64).collect();
    let phases = match policy {
        LiftPolicy::PrincipalArg => args,
        LiftPolicy::MonotoneInLevel => monotone_lift(&quiver, &args)?,
    };
    let sd = StabilityData { quiver, charges, phases, regime };
    let bad = check_condition2(&sd);
    if !bad.is_empty() {
        return Err(Error::Condition2(bad.len()));
    }
    Ok(sd)
}

/// Stability data with explicitly given phases; each must agree with
/// `Arg Z` modulo `2π`. Condition (2) is not enforced.
pub fn with_phases(quiver: Arc<Quiver>, charges: Vec<Complex>, phases: Vec<f64>, regime: RegimeTag) -> Result<StabilityData> {
    check_charges(&quiver, &charges)?;
    if phases.len() != charges.len() {
        return Err(Error::LiftInfeasible("phase count differs from charge count".into()));
    }
    for (v, (z, &phi)) in charges.iter().zip(&phases).enumerate() {
        if wrap(phi - numeric::arg_f64(z)).abs() > PHASE_TOLERANCE || !phi.is_finite() {
            return Err(Error::LiftInfeasible(format!("phase of vertex {v} is not a lift of its argument")));
        }
    }
    Ok(StabilityData { quiver, charges, phases, regime })
}

/// Arrow pairs `(source, target)` whose lifted phases differ by `π` or more.
pub fn check_condition2(sd: &StabilityData) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = sd
        .quiver
        .arrows()
        .iter()
        .filter(|a| a.source != a.target && (sd.phases[a.source] - sd.phases[a.target]).abs() >= PI)
        .map(|a| (a.source, a.target))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl StabilityData {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn regime(&self) -> RegimeTag {
        self.regime
    }

    pub fn charge(&self, v: usize) -> &Complex {
        &self.charges[v]
    }

    pub fn charges(&self) -> &[Complex] {
        &self.charges
    }

    pub fn phase(&self, v: usize) -> f64 {
        self.phases[v]
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn mass(&self, v: usize) -> f64 {
        numeric::abs_f64(&self.charges[v])
    }

    /// `Z(d) = Σ d_v Z(S_v)`.
    pub fn class_charge(&self, dims: &[usize]) -> Complex {
        let prec = self.charges[0].prec().0;
        let mut z = Complex::new(prec);
        for (d, c) in dims.iter().zip(&self.charges) {
            if *d > 0 {
                z += Complex::with_val(prec, c * *d as u32);
            }
        }
        z
    }

    /// Lifted phase of a nonzero class.
    pub fn class_phase(&self, dims: &[usize]) -> Result<f64> {
        let z = self.class_charge(dims);
        if z.is_zero() {
            return Err(Error::ZeroCharge(format!("class {dims:?}")));
        }
        let (mut wsum, mut acc) = (0.0, 0.0);
        for (v, &d) in dims.iter().enumerate() {
            if d > 0 {
                let w = d as f64 * self.mass(v);
                wsum += w;
                acc += w * self.phases[v];
            }
        }
        let mean = acc / wsum;
        let arg = numeric::arg_f64(&z);
        Ok(arg + TAU * ((mean - arg) / TAU).round())
    }

    /// Charges multiplied by `factor`, phases moved by `Arg factor`.
    pub fn rotated(&self, factor: &Complex) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::ZeroCharge("rotation factor".into()));
        }
        let shift = numeric::arg_f64(factor);
        let charges: Vec<Complex> =
            self.charges.iter().map(|z| Complex::with_val(z.prec(), z * factor)).collect();
        let phases = self.phases.iter().map(|p| p + shift).collect();
        Ok(StabilityData { quiver: self.quiver.clone(), charges, phases, regime: self.regime })
    }
}

/// The shared `A_3^{⊗5}` quiver.
pub fn a3_5_quiver() -> Arc<Quiver> {
    static Q: OnceLock<Arc<Quiver>> = OnceLock::new();
    Q.get_or_init(|| Arc::new(build_a3_5())).clone()
}

/// Stability data on `mod A_3^{⊗5}` from the period charges of a regime,
/// lifted monotonically in level. For [`Regime::Gepner`] the point is `ψ`.
pub fn a3_5_stability(regime: Regime, x: &Complex, prec: u32) -> Result<StabilityData> {
    let ca = ChargeAssignment::new(regime, x, prec)?;
    let charges = SimpleIndex::all().map(|s| ca.of(&s).clone()).collect();
    make_stability(a3_5_quiver(), charges, LiftPolicy::MonotoneInLevel, regime.into())
}

/// Phase gaps between consecutive levels of an acyclic quiver.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelGaps {
    /// `φ(level l+1) − φ(level l)`.
    pub gaps: Vec<f64>,
    /// `a_0..a_3`: the first four gaps.
    pub a: [f64; 4],
    /// `a_4 = 2πk − Σ a_i` with the least `k ≥ 0` making it non-negative.
    pub a4: f64,
    pub k: i64,
}

pub fn level_gaps(sd: &StabilityData) -> Result<LevelGaps> {
    let levels = sd.quiver.levels().ok_or_else(|| Error::LiftInfeasible("quiver has an oriented cycle".into()))?;
    let top = levels.iter().copied().max().unwrap_or(0) as usize;
    let mut phase = vec![None; top + 1];
    for (v, &l) in levels.iter().enumerate() {
        phase[l as usize].get_or_insert(sd.phases[v]);
    }
    let phase: Vec<f64> = phase.into_iter().map(|p| p.expect("every level occupied")).collect();
    if phase.len() < 5 {
        return Err(Error::Unsupported("fewer than five levels".into()));
    }
    let gaps: Vec<f64> = phase.windows(2).map(|w| w[1] - w[0]).collect();
    let a = [gaps[0], gaps[1], gaps[2], gaps[3]];
    let sum: f64 = a.iter().sum();
    let k = (sum / TAU).ceil().max(0.0) as i64;
    Ok(LevelGaps { gaps, a, a4: TAU * k as f64 - sum, k })
}
