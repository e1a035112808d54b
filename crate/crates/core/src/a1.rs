//! Periods of the `A_1` singularity and stability on nilpotent
//! representations of the doubled Kronecker quiver.
//!
//! For `a_1 + a_2 W + a_3 W^2` with roots `β_0, β_1` and
//! `x = a_1 a_3 / a_2^2`:
//! `ϖ_0 = 1`, `ϖ_1 = (log β_0 − log β_1)/2πi` with principal logarithms.
//! The roots are ordered by modulus, then by argument.

use std::sync::{Arc, OnceLock};

use rug::Complex;

use crate::error::{Error, Result};
use crate::numeric::{self, Constants};
use crate::quiver::{
    build_kronecker_doubled, hn_bruteforce_oracle, is_stable, make_stability, wallcross_second_kind, LiftPolicy, Quiver,
    QuiverRep, RatMatrix, RegimeTag, SecondKindWitness, StabilityData,
};

#[derive(Clone, Debug, PartialEq)]
pub struct A1Parameters {
    pub a1: Complex,
    pub a2: Complex,
    pub a3: Complex,
}

impl A1Parameters {
    pub fn new(a1: Complex, a2: Complex, a3: Complex) -> Result<Self> {
        if a3.is_zero() {
            return Err(Error::Vanishing("a3"));
        }
        Ok(A1Parameters { a1, a2, a3 })
    }

    /// `(x, 1, 1)`, whose invariant is `x`.
    pub fn from_x(x: Complex) -> Self {
        let prec = x.prec().0;
        A1Parameters { a1: x, a2: numeric::one(prec), a3: numeric::one(prec) }
    }

    pub fn x(&self) -> Result<Complex> {
        if self.a2.is_zero() {
            return Err(Error::Vanishing("a2"));
        }
        let num = Complex::with_val(self.a1.prec(), &self.a1 * &self.a3);
        Ok(num / Complex::with_val(self.a2.prec(), self.a2.square_ref()))
    }

    pub fn discriminant(&self) -> Complex {
        let prec = self.a1.prec();
        let four_ac = Complex::with_val(prec, &self.a1 * &self.a3) * 4u32;
        Complex::with_val(prec, self.a2.square_ref()) - four_ac
    }
}

/// Which root is `β_0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RootOrder {
    /// Smaller modulus first, ties by smaller argument.
    #[default]
    Canonical,
    Swapped,
}

/// `(β_0, β_1)`.
pub fn a1_roots(params: &A1Parameters, prec: u32, order: RootOrder) -> Result<(Complex, Complex)> {
    let w = prec + numeric::GUARD_BITS;
    let disc = Complex::with_val(w, params.discriminant());
    if disc.is_zero() {
        return Err(Error::Vanishing("discriminant"));
    }
    let sq = disc.sqrt();
    let two_a3 = Complex::with_val(w, &params.a3 * 2u32);
    let neg_b = Complex::with_val(w, -&params.a2);
    let r0 = Complex::with_val(w, &neg_b + &sq) / &two_a3;
    let r1 = Complex::with_val(w, &neg_b - &sq) / &two_a3;
    let key = |z: &Complex| (numeric::abs(z), numeric::arg(z));
    let (b0, b1) = if key(&r0) <= key(&r1) { (r0, r1) } else { (r1, r0) };
    Ok(match order {
        RootOrder::Canonical => (b0, b1),
        RootOrder::Swapped => (b1, b0),
    })
}

/// `(ϖ_0, ϖ_1)`.
pub fn a1_periods(params: &A1Parameters, prec: u32) -> Result<(Complex, Complex)> {
    a1_periods_ordered(params, prec, RootOrder::Canonical)
}

pub fn a1_periods_ordered(params: &A1Parameters, prec: u32, order: RootOrder) -> Result<(Complex, Complex)> {
    numeric::check_precision(prec)?;
    let (b0, b1) = a1_roots(params, prec, order)?;
    if b0.is_zero() || b1.is_zero() {
        return Err(Error::Vanishing("root"));
    }
    let consts = Constants::get(b0.prec().0);
    let diff = numeric::principal_log(&b0) - numeric::principal_log(&b1);
    let w1 = Complex::with_val(prec, diff / &consts.two_pi_i);
    Ok((numeric::one(prec), w1))
}

/// Objects whose charges are read off the periods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum A1Object {
    /// `i_* O_y`.
    Skyscraper,
    /// `i_* O_{P^1}(−1)`.
    LineBundleMinusOne,
    /// Simple of the doubled Kronecker quiver: `0` is `i_* O(−1)`, `1` is
    /// `i_* O(−2)[1]`.
    Simple(usize),
}

pub fn a1_central(object: A1Object, params: &A1Parameters, prec: u32) -> Result<Complex> {
    let (w0, w1) = a1_periods(params, prec)?;
    match object {
        A1Object::Skyscraper => Ok(w0),
        A1Object::LineBundleMinusOne | A1Object::Simple(0) => Ok(w1),
        A1Object::Simple(1) => Ok(w0 - w1),
        A1Object::Simple(k) => Err(Error::Domain(format!("simple {k}"), "simples are 0 and 1")),
    }
}

/// `det [[Re Z_0, Im Z_0], [Re Z_1, Im Z_1]]` for the two simple charges;
/// nonzero iff they are an `R`-basis, iff `ϖ_1` is not real.
pub fn a1_basis_certificate(params: &A1Parameters, prec: u32) -> Result<f64> {
    let z0 = a1_central(A1Object::Simple(0), params, prec)?;
    let z1 = a1_central(A1Object::Simple(1), params, prec)?;
    let (r0, i0) = numeric::to_c64(&z0);
    let (r1, i1) = numeric::to_c64(&z1);
    Ok(r0 * i1 - i0 * r1)
}

/// `exp(2πi · ϖ_1 Z(i_* O_y))`, the skyscraper charge dilated by `ϖ_1`.
pub fn a1_mirror_map(params: &A1Parameters, prec: u32) -> Result<Complex> {
    let (w0, w1) = a1_periods(params, prec)?;
    let consts = Constants::get(prec);
    let dilated = w1 * &w0;
    Ok(Complex::with_val(prec, dilated * &consts.two_pi_i).exp())
}

/// The shared doubled Kronecker quiver.
pub fn kronecker_quiver() -> Arc<Quiver> {
    static Q: OnceLock<Arc<Quiver>> = OnceLock::new();
    Q.get_or_init(|| Arc::new(build_kronecker_doubled())).clone()
}

/// Arrows of the doubled Kronecker quiver carrying the embedded `A_1`
/// quiver (two vertices, one arrow) and its inverse direction.
pub const A1_EMBEDDING_ARROWS: [&str; 2] = ["a", "a'"];

/// The non-simple indecomposable `t` of the `A_1` quiver, embedded along
/// `a`; its class is that of `i_* O_y`.
pub fn embedded_t() -> QuiverRep {
    let q = kronecker_quiver();
    let a = q.arrow_by_label(A1_EMBEDDING_ARROWS[0]).expect("arrow a");
    let mut scalars = [0i64; 4];
    scalars[a] = 1;
    QuiverRep::thin(q, &[true, true], &scalars).expect("a single arrow satisfies the relations")
}

/// The automorphism `M` read as: swap the vertices and exchange
/// `a ↔ a'`, `b ↔ b'`. Returns the vertex and arrow permutations.
pub fn kronecker_automorphism() -> ([usize; 2], [usize; 4]) {
    ([1, 0], [2, 3, 0, 1])
}

/// Transport of a representation along [`kronecker_automorphism`].
pub fn apply_automorphism(rep: &QuiverRep) -> Result<QuiverRep> {
    let (vp, ap) = kronecker_automorphism();
    let mut dims = vec![0; 2];
    for (v, &d) in rep.dims().iter().enumerate() {
        dims[vp[v]] = d;
    }
    let mut maps = vec![RatMatrix::zeros(0, 0); 4];
    for (k, &img) in ap.iter().enumerate() {
        maps[img] = rep.map(k).clone();
    }
    QuiverRep::new(rep.quiver().clone(), dims, maps)
}

/// Bridgeland stability on `mod^{nil} K` from two simple charges.
pub fn kronecker_stability(charges: [Complex; 2]) -> Result<StabilityData> {
    make_stability(kronecker_quiver(), charges.to_vec(), LiftPolicy::PrincipalArg, RegimeTag::A1)
}

/// Stability data with charges `(ϖ_1, 1 − ϖ_1)`.
pub fn a1_stability(params: &A1Parameters, prec: u32) -> Result<StabilityData> {
    let z0 = a1_central(A1Object::Simple(0), params, prec)?;
    let z1 = a1_central(A1Object::Simple(1), params, prec)?;
    kronecker_stability([z0, z1])
}

/// Stability of one dimension-`(1,1)` class on both sides of a wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstKindChange {
    /// `"O_y"` for the family along `a, b`, `"M(O_y)"` for its image under
    /// the automorphism.
    pub label: &'static str,
    pub stable_before: bool,
    pub stable_after: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FirstKindReport {
    /// Stable before, not semistable after.
    pub disappeared: Vec<FirstKindChange>,
    /// Not semistable before, stable after.
    pub appeared: Vec<FirstKindChange>,
}

impl FirstKindReport {
    pub fn is_empty(&self) -> bool {
        self.disappeared.is_empty() && self.appeared.is_empty()
    }
}

/// `(stable, unstable)` for the HN filtration of `rep` from the oracle.
fn stability_of(rep: &QuiverRep, sd: &StabilityData) -> Result<(bool, bool)> {
    let layers = hn_bruteforce_oracle(rep, sd)?.layers.len();
    Ok((is_stable(rep, sd)?, layers > 1))
}

/// Compares the `(1,1)` classes `O_y` and `M(O_y)` before and after.
pub fn a1_wallcross_first_kind(before: [Complex; 2], after: [Complex; 2]) -> Result<FirstKindReport> {
    let sd_before = kronecker_stability(before)?;
    let sd_after = kronecker_stability(after)?;
    let oy = embedded_t();
    let reps = [("O_y", oy.clone()), ("M(O_y)", apply_automorphism(&oy)?)];
    let mut report = FirstKindReport::default();
    for (label, rep) in reps {
        let (sb, ub) = stability_of(&rep, &sd_before)?;
        let (sa, ua) = stability_of(&rep, &sd_after)?;
        let change = FirstKindChange { label, stable_before: sb, stable_after: sa };
        if sb && ua {
            report.disappeared.push(change);
        } else if ub && sa {
            report.appeared.push(change);
        }
    }
    Ok(report)
}

/// Second-kind witness between the `A_1` stability data at two parameter
/// points; the skyscraper charge stays `1`.
pub fn a1_second_kind(before: &A1Parameters, after: &A1Parameters, prec: u32) -> Result<Option<SecondKindWitness>> {
    wallcross_second_kind(&a1_stability(before, prec)?, &a1_stability(after, prec)?)
}

/// `log(x)/2πi`, the leading behaviour of `ϖ_1` as `x → 0`.
pub fn a1_leading_term(x: &Complex, prec: u32) -> Complex {
    let consts = Constants::get(prec);
    Complex::with_val(prec, numeric::principal_log(x) / &consts.two_pi_i)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn c(re: f64, im: f64) -> Complex {
        numeric::from_f64(P, re, im)
    }

    fn q(n: i64, d: i64) -> Complex {
        numeric::from_rational(P, &rug::Rational::from((n, d)))
    }

    #[test]
    fn closed_form_roots() {
        let p = A1Parameters::new(q(3, 16), q(1, 1), q(1, 1)).unwrap();
        let (b0, b1) = a1_roots(&p, P, RootOrder::Canonical).unwrap();
        assert!(numeric::abs_f64(&(b0 + q(1, 4))) < 1e-30);
        assert!(numeric::abs_f64(&(b1 + q(3, 4))) < 1e-30);
        let (w0, w1) = a1_periods(&p, P).unwrap();
        assert_eq!(w0, 1);
        let expect = 3f64.ln() / (2.0 * std::f64::consts::PI);
        let (re, im) = numeric::to_c64(&w1);
        assert!(re.abs() < 1e-30 && (im - expect).abs() < 1e-15);
        let mm = a1_mirror_map(&p, P).unwrap();
        assert!(numeric::abs_f64(&(mm - q(1, 3))) < 1e-30);
    }

    #[test]
    fn lcc_asymptotics() {
        let x = c(1e-8, 0.0);
        let p = A1Parameters::from_x(x.clone());
        let (_, w1) = a1_periods(&p, P).unwrap();
        assert!(numeric::abs_f64(&(w1 - a1_leading_term(&x, P))) < 1e-6);
        let mm = a1_mirror_map(&p, P).unwrap();
        assert!(numeric::abs_f64(&(mm - &x)) / 1e-8 < 1e-5);
    }

    #[test]
    fn swapping_roots_flips_sign() {
        let p = A1Parameters::new(c(0.3, 0.2), c(1.0, -0.5), c(0.7, 0.1)).unwrap();
        let (_, a) = a1_periods_ordered(&p, P, RootOrder::Canonical).unwrap();
        let (_, b) = a1_periods_ordered(&p, P, RootOrder::Swapped).unwrap();
        assert!(numeric::abs_f64(&(a + b)) < 1e-30);
    }

    #[test]
    fn zero_discriminant() {
        let p = A1Parameters::new(q(1, 4), q(1, 1), q(1, 1)).unwrap();
        assert!(matches!(a1_periods(&p, P), Err(Error::Vanishing("discriminant"))));
        assert!(a1_mirror_map(&p, P).is_err());
    }

    #[test]
    fn simple_charges() {
        let p = A1Parameters::from_x(c(1e-3, 0.0));
        let z0 = a1_central(A1Object::Simple(0), &p, P).unwrap();
        let z1 = a1_central(A1Object::Simple(1), &p, P).unwrap();
        assert_eq!(z0 + z1, 1);
        assert_eq!(a1_central(A1Object::LineBundleMinusOne, &p, P).unwrap(), a1_central(A1Object::Simple(0), &p, P).unwrap());
        assert!(a1_basis_certificate(&p, P).unwrap().abs() > 0.1);
        assert!(a1_central(A1Object::Simple(2), &p, P).is_err());
    }

    #[test]
    fn automorphism_preserves_relations() {
        let t = embedded_t();
        let m = apply_automorphism(&t).unwrap();
        assert_eq!(apply_automorphism(&m).unwrap(), t);
        assert!(m.map(2).get(0, 0) == &1);
    }

    #[test]
    fn first_kind() {
        let up = [c(-1.0, 1.0), c(1.0, 1.0)];
        let down = [c(1.0, 1.0), c(-1.0, 1.0)];
        let r = a1_wallcross_first_kind(up.clone(), down.clone()).unwrap();
        assert_eq!(r.disappeared.iter().map(|c| c.label).collect::<Vec<_>>(), vec!["O_y"]);
        assert_eq!(r.appeared.iter().map(|c| c.label).collect::<Vec<_>>(), vec!["M(O_y)"]);
        let back = a1_wallcross_first_kind(down, up.clone()).unwrap();
        assert_eq!(back.appeared, r.disappeared.iter().map(|c| FirstKindChange { stable_before: c.stable_after, stable_after: c.stable_before, ..c.clone() }).collect::<Vec<_>>());
        assert!(a1_wallcross_first_kind(up.clone(), up).unwrap().is_empty());
    }

    #[test]
    fn second_kind_along_x_to_zero() {
        let a = A1Parameters::from_x(c(1e-3, 0.0));
        let b = A1Parameters::from_x(c(1e-6, 0.0));
        assert!(a1_second_kind(&a, &b, P).unwrap().is_some());
        assert!(a1_second_kind(&a, &a, P).unwrap().is_none());
    }
}
