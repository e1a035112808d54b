//! Period basis at the Gepner point `x = ∞`.
//!
//! In the coordinate `ψ` with `x = ψ^{-5}`,
//!
//! `ω̃_k = −(1/5)(2πi)^{-4} Σ_N Γ(N+k/5)^5 / Γ(5N+k) · ψ^{5N+k}`,
//! `ω_j^∞ = Σ_{k=1}^{4} (1−ξ^k)^4 ξ^{kj} ω̃_k` (the `k = 5` term vanishes).
//!
//! Writing `ω_0^∞ = Σ_m b_m ψ^m`, every `ω_j^∞` is `Σ_m b_m ξ^{jm} ψ^m`.

use rug::ops::Pow;
use rug::{Complex, Float};

use super::{BasisTag, PeriodVector};
use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, CMatrix, Constants, GUARD_BITS};
use crate::series::horner;

/// The Gepner period vector uses `ω_0, ω_1, ω_2, ω_4`, in this order.
pub const GEPNER_INDICES: [i64; 4] = [0, 1, 2, 4];

/// Nonzero point in the Gepner coordinate `ψ`, `x = ψ^{-5}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GepnerCoordinate {
    value: Complex,
}

impl GepnerCoordinate {
    pub fn new(value: Complex) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Domain("ψ = 0".into(), "ψ ≠ 0"));
        }
        Ok(GepnerCoordinate { value })
    }

    /// `ψ = ξ^branch · exp(−log(x)/5)` with the principal `log x`.
    pub fn from_pf_x(x: &Complex, branch: i64) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::Domain("x = 0".into(), "x ≠ 0"));
        }
        let prec = x.prec().0;
        let consts = Constants::get(prec);
        let root = Complex::with_val(prec, numeric::principal_log(x) / -5i32).exp();
        Self::new(root * consts.xi(branch))
    }

    pub fn value(&self) -> &Complex {
        &self.value
    }

    /// `x = ψ^{-5}`.
    pub fn pf_x(&self) -> Complex {
        numeric::powi(&self.value, -5)
    }
}

/// Terms needed at `|ψ|` for `prec` bits, including the `(m/5)^3` growth of
/// the third `θ`-derivative.
pub fn gepner_required_terms(psi_abs: f64, prec: u32) -> Result<usize> {
    let r = psi_abs / 5.0;
    if r.is_nan() || r >= 1.0 {
        return Err(Error::Domain(format!("|ψ| = {psi_abs:e}"), "|ψ| < 5"));
    }
    if psi_abs == 0.0 {
        return Ok(5);
    }
    let target = -(prec as f64 + 8.0) * std::f64::consts::LN_2 + (1.0 - r).ln();
    let mut m = 5usize;
    while m as f64 * r.ln() + 3.0 * (1.0 + m as f64 / 5.0).ln() >= target {
        m += 1;
        if m > 1_000_000 {
            return Err(Error::Domain(format!("|ψ| = {psi_abs:e}"), "too close to |ψ| = 5"));
        }
    }
    Ok(m)
}

/// Coefficients `b_m` of `ω_0^∞`, `m < nterms`.
fn base_coefficients(nterms: usize, consts: &Constants) -> Vec<Complex> {
    let prec = consts.prec;
    let mut b = vec![Complex::new(prec); nterms];
    // −(1/5)(2πi)^{-4}
    let pref = Complex::with_val(prec, (&consts.two_pi_i).pow(4)).recip() / -5i32;
    for (k, bk) in b.iter_mut().enumerate().take(5).skip(1) {
        let one_minus = Complex::with_val(prec, 1 - consts.xi(k as i64));
        let weight = Complex::with_val(prec, (&one_minus).pow(4u32));
        // Γ(k/5)^5 / Γ(k)
        let g = Float::with_val(prec, (&consts.gamma_fifth[k]).pow(5u32))
            / Float::with_val(prec, Float::factorial((k - 1) as u32));
        *bk = Complex::with_val(prec, &pref * &weight) * g;
    }
    // b_{m+5} = b_m · m^4 / (3125 (m+1)(m+2)(m+3)(m+4))
    for m in 1..nterms.saturating_sub(5) {
        if m % 5 == 0 {
            continue;
        }
        let mm = m as u64;
        let num = Float::with_val(prec, mm.pow(4));
        let den = Float::with_val(prec, 3125u64 * (mm + 1) * (mm + 2) * (mm + 3) * (mm + 4));
        b[m + 5] = Complex::with_val(prec, &b[m] * num) / den;
    }
    b
}

/// The Gepner basis as power series in `ψ`.
#[derive(Clone, Debug)]
pub struct GepnerBasis {
    prec: u32,
    nterms: usize,
    base: Vec<Complex>,
}

impl GepnerBasis {
    pub fn new(nterms: usize, prec: u32) -> Result<Self> {
        check_precision(prec)?;
        let consts = Constants::get(prec + GUARD_BITS);
        Ok(GepnerBasis { prec, nterms, base: base_coefficients(nterms, &consts) })
    }

    pub fn for_radius(psi_max: f64, prec: u32) -> Result<Self> {
        Self::new(gepner_required_terms(psi_max, prec)?, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn nterms(&self) -> usize {
        self.nterms
    }

    /// Coefficients of `ω_j^∞` in `ψ`, for any `j`.
    pub fn series(&self, j: i64) -> Vec<Complex> {
        let consts = Constants::get(self.prec + GUARD_BITS);
        self.base.iter().enumerate().map(|(m, b)| Complex::with_val(b.prec(), b * consts.xi(j * m as i64))).collect()
    }

    /// `θ_x^k ω_j^∞`; since `θ_x = −(1/5)ψ d/dψ`, the `ψ^m` coefficient
    /// picks up `(−m/5)^k`.
    pub fn theta_series(&self, j: i64, k: u32) -> Vec<Complex> {
        let wp = self.prec + GUARD_BITS;
        self.series(j)
            .into_iter()
            .enumerate()
            .map(|(m, c)| {
                let f = Float::with_val(wp, rug::Rational::from((-(m as i64), 5))).pow(k);
                c * f
            })
            .collect()
    }

    fn check_point(&self, psi: &GepnerCoordinate) -> Result<f64> {
        let a = numeric::abs_f64(psi.value());
        let needed = gepner_required_terms(a, self.prec)?;
        if self.nterms < needed {
            return Err(Error::InsufficientTerms { nterms: self.nterms, required: needed });
        }
        let r = a / 5.0;
        let n = self.nterms as f64;
        Ok((n * r.ln() + 3.0 * (1.0 + n / 5.0).ln() - (1.0 - r).ln()).exp())
    }

    pub fn period_vector(&self, psi: &GepnerCoordinate) -> Result<PeriodVector> {
        let error_bound = self.check_point(psi)?;
        let wp = self.prec + GUARD_BITS;
        let z = Complex::with_val(wp, psi.value());
        let entries =
            std::array::from_fn(|i| Complex::with_val(self.prec, horner(&self.series(GEPNER_INDICES[i]), &z, wp)));
        Ok(PeriodVector { entries, basis: BasisTag::Gepner, x: psi.value().clone(), error_bound })
    }

    /// Rows are `ω_0, ω_1, ω_2, ω_4`; columns `θ_x^0..θ_x^3`.
    pub fn wronskian(&self, psi: &GepnerCoordinate) -> Result<CMatrix> {
        self.check_point(psi)?;
        let wp = self.prec + GUARD_BITS;
        let z = Complex::with_val(wp, psi.value());
        let rows = GEPNER_INDICES
            .iter()
            .map(|&j| {
                (0..4).map(|k| Complex::with_val(self.prec, horner(&self.theta_series(j, k), &z, wp))).collect()
            })
            .collect();
        Ok(CMatrix::from_rows(rows))
    }
}

/// `Π_B^∞(ψ)`.
pub fn gepner_period_vector(psi: &GepnerCoordinate, nterms: usize, prec: u32) -> Result<PeriodVector> {
    GepnerBasis::new(nterms, prec)?.period_vector(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::from_f64;

    #[test]
    fn rejects_zero() {
        assert!(GepnerCoordinate::new(numeric::zero(64)).is_err());
    }

    #[test]
    fn coefficients_match_gamma_quotient() {
        // oracle: Γ(N+k/5)^5/Γ(5N+k) evaluated directly
        let prec = 128;
        let consts = Constants::get(prec);
        let b = base_coefficients(20, &consts);
        for m in [6usize, 13, 19] {
            let (n, k) = (m / 5, m % 5);
            let g = Float::with_val(prec, Float::with_val(prec, rug::Rational::from((5 * n + k, 5))))
                .gamma()
                .pow(5u32)
                / Float::with_val(prec, Float::factorial(m as u32 - 1));
            let ratio = Complex::with_val(prec, &b[m] / &b[k]);
            let g0 = Float::with_val(prec, (&consts.gamma_fifth[k]).pow(5u32))
                / Float::with_val(prec, Float::factorial(k as u32 - 1));
            let expect = g / g0;
            let d = Float::with_val(prec, ratio.real() - &expect).abs().to_f64() / expect.to_f64();
            assert!(d < 1e-30, "m={m}: {d}");
            assert!(ratio.imag().to_f64().abs() < 1e-30);
        }
        assert!(b[0].is_zero() && b[5].is_zero() && b[10].is_zero());
    }

    #[test]
    fn rotation_identity() {
        let basis = GepnerBasis::new(80, 128).unwrap();
        let consts = Constants::get(128);
        let psi = from_f64(128, 0.7, -0.3);
        for j in [1i64, 2, 4] {
            let a = horner(&basis.series(j), &psi, 160);
            let rotated = Complex::with_val(128, &psi * consts.xi(j));
            let b = horner(&basis.series(0), &rotated, 160);
            let d = numeric::abs_f64(&Complex::with_val(128, &a - &b));
            assert!(d < 1e-30, "j={j}: {d}");
        }
    }

    #[test]
    fn small_psi_ratios_approach_xi_powers() {
        let prec = 128;
        let consts = Constants::get(prec);
        let psi = GepnerCoordinate::new(from_f64(prec, 1e-3, 0.0)).unwrap();
        let pv = GepnerBasis::for_radius(1e-3, prec).unwrap().period_vector(&psi).unwrap();
        for (i, &j) in GEPNER_INDICES.iter().enumerate() {
            let ratio = Complex::with_val(prec, &pv.entries[i] / &pv.entries[0]);
            let d = numeric::abs_f64(&Complex::with_val(prec, &ratio - consts.xi(j)));
            assert!(d < 1e-2, "j={j}: {d}");
        }
        let arg = numeric::arg_f64(&Complex::with_val(prec, &pv.entries[1] / &pv.entries[0]));
        assert!((arg - 2.0 * std::f64::consts::PI / 5.0).abs() < 1e-3);
    }

    #[test]
    fn pf_coordinate_roundtrip() {
        let x = from_f64(128, 1e10, 0.0);
        let psi = GepnerCoordinate::from_pf_x(&x, 0).unwrap();
        assert!((psi.value().real().to_f64() - 1e-2).abs() < 1e-15);
        let back = psi.pf_x();
        assert!((back.real().to_f64() / 1e10 - 1.0).abs() < 1e-15);
    }
}
