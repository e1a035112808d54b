//! Central charges of the Beilinson objects `τ^{-i}(O_X)` and of the simples
//! of `mod A_3^{⊗5}` from the period vectors.

use std::collections::BTreeMap;
use std::fmt;

use rug::{Complex, Rational};

use crate::error::{Error, Result};
use crate::monodromy::{builtin_matrices, RationalMatrix4};
use crate::numeric;
use crate::periods::{GepnerBasis, GepnerCoordinate, LccBasis, PeriodVector, CONIFOLD};

/// A vertex `s = (s_1,…,s_5)`, `s_i ∈ {0,1,2,3}`, of the quiver `A_3^{⊗5}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleIndex {
    s: [u8; 5],
}

impl fmt::Debug for SimpleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.s;
        write!(f, "({a},{b},{c},{d},{e})")
    }
}

impl SimpleIndex {
    pub fn new(s: [u8; 5]) -> Result<Self> {
        if s.iter().any(|&v| v > 3) {
            return Err(Error::Domain(format!("{s:?}"), "entries in 0..=3"));
        }
        Ok(SimpleIndex { s })
    }

    pub fn entries(&self) -> [u8; 5] {
        self.s
    }

    /// `Σ s_i ∈ 0..=15`.
    pub fn level(&self) -> u32 {
        self.s.iter().map(|&v| v as u32).sum()
    }

    /// Row-major position in `0..1024` (base 4, first entry most significant).
    pub fn ordinal(&self) -> usize {
        self.s.iter().fold(0, |acc, &v| acc * 4 + v as usize)
    }

    pub fn from_ordinal(mut n: usize) -> Self {
        assert!(n < 1024, "ordinal {n} out of range");
        let mut s = [0u8; 5];
        for slot in s.iter_mut().rev() {
            *slot = (n % 4) as u8;
            n /= 4;
        }
        SimpleIndex { s }
    }

    pub fn all() -> impl Iterator<Item = SimpleIndex> {
        (0..1024).map(Self::from_ordinal)
    }
}

/// Regime in which charges are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Lcc,
    LccModified,
    Gepner,
}

/// Reading of the letter `M` in the modified charge
/// `Z'_x(s) = M^{−Σs_i} Π_B(x)[4] + Π_B(x)[2]/5`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ModifiedVariant {
    /// `(M_∞^{Σs_i} Π_B)[4] + Π_B[2]/5`, consistent with the unmodified
    /// charges `(M_∞^i Π_B)[4]`.
    #[default]
    LccMonodromy,
    /// `(M^{−Σs_i} Π_B)[4] + Π_B[2]/5`, the letter taken literally.
    Literal,
}

/// Row 4 of `A^k` for `k = 0..5`.
fn last_rows(a: &RationalMatrix4) -> [[Rational; 4]; 5] {
    let mut p = RationalMatrix4::identity();
    std::array::from_fn(|_| {
        let row = p.row(3).clone();
        p = &p * a;
        row
    })
}

fn dot(row: &[Rational; 4], v: &[Complex; 4], prec: u32) -> Complex {
    let mut acc = Complex::new(prec);
    for (q, z) in row.iter().zip(v) {
        if *q != 0 {
            acc += Complex::with_val(prec, z * q);
        }
    }
    acc
}

fn check_lcc(x: &Complex) -> Result<()> {
    let a = numeric::abs_f64(x);
    if a.is_nan() || a >= CONIFOLD || x.is_zero() {
        return Err(Error::Domain(format!("|x| = {a:e}"), "0 < |x| < 5^-5"));
    }
    Ok(())
}

fn lcc_vector(x: &Complex, prec: u32) -> Result<PeriodVector> {
    check_lcc(x)?;
    LccBasis::for_radius(numeric::abs_f64(x), prec)?.period_vector(x)
}

fn gepner_vector(psi: &GepnerCoordinate, prec: u32) -> Result<PeriodVector> {
    GepnerBasis::for_radius(numeric::abs_f64(psi.value()), prec)?.period_vector(psi)
}

/// `(M_∞^level Π_B(x))[4]`.
pub fn z_lcc(level: i64, x: &Complex, prec: u32) -> Result<Complex> {
    let pv = lcc_vector(x, prec)?;
    Ok(z_lcc_from(level, &pv))
}

/// As [`z_lcc`] from a precomputed `Π_B`.
pub fn z_lcc_from(level: i64, pv: &PeriodVector) -> Complex {
    let rows = last_rows(&builtin_matrices().m_inf);
    dot(&rows[level.rem_euclid(5) as usize], &pv.entries, pv.entries[0].prec().0)
}

/// `(N M^level Π_B^∞(ψ))[4]`.
pub fn z_gepner(level: i64, psi: &GepnerCoordinate, prec: u32) -> Result<Complex> {
    let pv = gepner_vector(psi, prec)?;
    Ok(z_gepner_from(level, &pv))
}

pub fn z_gepner_from(level: i64, pv: &PeriodVector) -> Complex {
    let b = builtin_matrices();
    let mut p = b.n.clone();
    for _ in 0..level.rem_euclid(5) {
        p = &p * &b.m;
    }
    dot(p.row(3), &pv.entries, pv.entries[0].prec().0)
}

/// Modified charge `Z'_x(s)`.
pub fn z_modified(s: &SimpleIndex, x: &Complex, prec: u32, variant: ModifiedVariant) -> Result<Complex> {
    let pv = lcc_vector(x, prec)?;
    Ok(z_modified_from(s.level() as i64, &pv, variant))
}

pub fn z_modified_from(level: i64, pv: &PeriodVector, variant: ModifiedVariant) -> Complex {
    let prec = pv.entries[0].prec().0;
    let base = match variant {
        ModifiedVariant::LccMonodromy => z_lcc_from(level, pv),
        ModifiedVariant::Literal => {
            let rows = last_rows(&builtin_matrices().m.inverse().expect("M is invertible"));
            dot(&rows[level.rem_euclid(5) as usize], &pv.entries, prec)
        }
    };
    base + Complex::with_val(prec, &pv.entries[1] / 5u32)
}

/// Charges per level class `0..5` in one regime. For [`Regime::Gepner`]
/// the point `x` is the Gepner coordinate `ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeAssignment {
    pub regime: Regime,
    pub x: Complex,
    pub values: BTreeMap<u8, Complex>,
}

impl ChargeAssignment {
    pub fn new(regime: Regime, x: &Complex, prec: u32) -> Result<Self> {
        let values = match regime {
            Regime::Lcc | Regime::LccModified => {
                let pv = lcc_vector(x, prec)?;
                (0..5u8)
                    .map(|k| {
                        let z = if regime == Regime::Lcc {
                            z_lcc_from(k as i64, &pv)
                        } else {
                            z_modified_from(k as i64, &pv, ModifiedVariant::default())
                        };
                        (k, z)
                    })
                    .collect()
            }
            Regime::Gepner => {
                let psi = GepnerCoordinate::new(x.clone())?;
                let pv = gepner_vector(&psi, prec)?;
                (0..5u8).map(|k| (k, z_gepner_from(k as i64, &pv))).collect()
            }
        };
        let out = ChargeAssignment { regime, x: x.clone(), values };
        if let Some((k, _)) = out.values.iter().find(|(_, z)| z.is_zero() || !numeric::is_finite(z)) {
            return Err(Error::ZeroCharge(format!("level class {k}")));
        }
        Ok(out)
    }

    /// Charge of any level.
    pub fn at_level(&self, level: i64) -> &Complex {
        &self.values[&(level.rem_euclid(5) as u8)]
    }

    pub fn of(&self, s: &SimpleIndex) -> &Complex {
        self.at_level(s.level() as i64)
    }
}

/// `S(x) = Σ_{level<5} Z'_x`, with the checks that tie it to the mirror map.
#[derive(Clone, Debug)]
pub struct StableChargeSum {
    pub sum: Complex,
    /// `Π_B(x)[2]`.
    pub period2: Complex,
    /// `t(x) = Π_B[2]/Π_B[1]`.
    pub t: Complex,
    /// `S/w^{(0)}`.
    pub s_over_w0: Complex,
    /// `Σ_{level<5}` of the unmodified charges.
    pub unmodified_sum: Complex,
}

impl StableChargeSum {
    /// `|S/Π_B[2] − 1|`.
    pub fn ratio_error(&self) -> f64 {
        let r = Complex::with_val(self.sum.prec(), &self.sum / &self.period2) - 1u32;
        numeric::abs_f64(&r)
    }

    /// `|S/w^{(0)} − t|`.
    pub fn mirror_error(&self) -> f64 {
        numeric::abs_f64(&Complex::with_val(self.t.prec(), &self.s_over_w0 - &self.t))
    }
}

pub fn stable_charge_sum(x: &Complex, prec: u32) -> Result<StableChargeSum> {
    let pv = lcc_vector(x, prec)?;
    let mut sum = Complex::new(prec);
    let mut unmodified_sum = Complex::new(prec);
    for k in 0..5 {
        sum += z_modified_from(k, &pv, ModifiedVariant::default());
        unmodified_sum += z_lcc_from(k, &pv);
    }
    let w0 = &pv.entries[0];
    if w0.is_zero() {
        return Err(Error::Vanishing("w0"));
    }
    let t = Complex::with_val(prec, &pv.entries[1] / w0);
    let s_over_w0 = Complex::with_val(prec, &sum / w0);
    Ok(StableChargeSum { sum, period2: pv.entries[1].clone(), t, s_over_w0, unmodified_sum })
}

/// `t(x) = Π_B(x)[2] / Π_B(x)[1]`.
pub fn mirror_map(x: &Complex, prec: u32) -> Result<Complex> {
    let pv = lcc_vector(x, prec)?;
    if pv.entries[0].is_zero() {
        return Err(Error::Vanishing("w0"));
    }
    Ok(Complex::with_val(prec, &pv.entries[1] / &pv.entries[0]))
}

/// Determinant of the rows `(M_∞^{level})[4]` for four levels distinct mod 5.
pub fn basis_certificate(levels: [i64; 4]) -> Result<Rational> {
    let residues = levels.map(|l| l.rem_euclid(5));
    for i in 0..4 {
        for j in i + 1..4 {
            if residues[i] == residues[j] {
                return Err(Error::RepeatedResidues(levels));
            }
        }
    }
    let rows = last_rows(&builtin_matrices().m_inf);
    Ok(RationalMatrix4::from_rows(residues.map(|r| rows[r as usize].clone())).det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::from_f64;

    #[test]
    fn symbolic_leading_order_pattern() {
        // Π' = (0,0,m1,m0) with m1, m0 kept symbolic as independent unit vectors
        let rows = last_rows(&builtin_matrices().m_inf);
        let coeffs: Vec<(i64, i64)> = rows
            .iter()
            .map(|r| (r[2].to_f64() as i64, r[3].to_f64() as i64))
            .collect();
        assert_eq!(coeffs, vec![(0, 1), (1, -4), (-3, 6), (3, -4), (-1, 1)]);
    }

    #[test]
    fn levels_are_periodic() {
        let x = from_f64(128, 1e-6, 0.0);
        for l in 0..5 {
            assert_eq!(z_lcc(l, &x, 128).unwrap(), z_lcc(l + 5, &x, 128).unwrap());
        }
        let psi = GepnerCoordinate::new(from_f64(128, 0.1, 0.0)).unwrap();
        assert_eq!(z_gepner(0, &psi, 128).unwrap(), z_gepner(5, &psi, 128).unwrap());
    }

    #[test]
    fn modified_minus_plain_is_period_over_five() {
        let prec = 128;
        let x = from_f64(prec, 1e-10, 0.0);
        let pv = lcc_vector(&x, prec).unwrap();
        for l in 0..5 {
            let d = z_modified_from(l, &pv, ModifiedVariant::default()) - z_lcc_from(l, &pv);
            let e = d - Complex::with_val(prec, &pv.entries[1] / 5u32);
            assert!(numeric::abs_f64(&e) < 1e-30);
        }
    }

    #[test]
    fn certificate() {
        assert_ne!(basis_certificate([0, 1, 2, 3]).unwrap(), 0);
        assert_ne!(basis_certificate([1, 2, 3, 4]).unwrap(), 0);
        assert!(matches!(basis_certificate([0, 0, 1, 2]), Err(Error::RepeatedResidues(_))));
        assert!(basis_certificate([0, 5, 1, 2]).is_err());
    }

    #[test]
    fn simple_index_roundtrip() {
        for n in [0usize, 1, 511, 1023] {
            assert_eq!(SimpleIndex::from_ordinal(n).ordinal(), n);
        }
        assert_eq!(SimpleIndex::from_ordinal(1023).level(), 15);
        assert!(SimpleIndex::new([4, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn zero_x_is_rejected() {
        assert!(z_lcc(0, &numeric::zero(64), 64).is_err());
        assert!(z_lcc(0, &from_f64(64, 1e-3, 0.0), 64).is_err());
    }
}
