//! `G_2(τ) = (2πi)^2 (−1/24 + Σ_{m,r>0} m q^{mr})`, `J(τ) = G_2(τ/2) − G_2(τ)`
//! and `K(τ) = τ^{-2} J(−1/τ) − J(τ)`, numerically.
//!
//! With this normalization `τ^{-2} G_2(−1/τ) = G_2(τ) − πi/τ`.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numeric::{self, Constants};

/// Largest number of Lambert terms accepted.
pub const MAX_G2_TERMS: usize = 1 << 20;

fn check_tau(tau: &Complex) -> Result<f64> {
    let im = tau.imag().to_f64();
    if im.is_nan() || im <= 0.0 {
        return Err(Error::Domain(format!("Im τ = {im:e}"), "Im τ > 0"));
    }
    Ok(im)
}

/// Terms needed for `|q|^n` below `2^{-prec}`, with margin.
pub fn g2_terms(tau: &Complex, prec: u32) -> Result<usize> {
    let im = check_tau(tau)?;
    let per_term = 2.0 * std::f64::consts::PI * im / std::f64::consts::LN_2;
    let n = ((prec + 16) as f64 / per_term).ceil() as usize + 8;
    if n > MAX_G2_TERMS {
        return Err(Error::Domain(format!("Im τ = {im:e}"), "Im τ large enough for the q-series"));
    }
    Ok(n)
}

/// `G_2(τ)` from `nterms` Lambert terms `m q^m/(1−q^m)`.
pub fn g2_numeric(tau: &Complex, nterms: usize, prec: u32) -> Result<Complex> {
    check_tau(tau)?;
    numeric::check_precision(prec)?;
    let w = prec + numeric::GUARD_BITS;
    let consts = Constants::get(w);
    let q = Complex::with_val(w, tau * &consts.two_pi_i).exp();
    let mut qm = numeric::one(w);
    let mut sum = Complex::new(w);
    for m in 1..=nterms {
        qm *= &q;
        let den = Complex::with_val(w, 1 - &qm);
        sum += Complex::with_val(w, &qm * m as u32) / den;
    }
    let sq = Complex::with_val(w, consts.two_pi_i.square_ref());
    let total = sum - Float::with_val(w, 24).recip();
    Ok(Complex::with_val(prec, total * sq))
}

/// `G_2(τ)` with [`g2_terms`] terms.
pub fn g2(tau: &Complex, prec: u32) -> Result<Complex> {
    g2_numeric(tau, g2_terms(tau, prec)?, prec)
}

/// Bound on the dropped tail `|(2πi)^2| Σ_{n>N} σ_1(n)|q|^n ≤ 4π² Σ n²|q|^n`.
pub fn g2_tail_bound(tau: &Complex, nterms: usize) -> Result<f64> {
    let im = check_tau(tau)?;
    let r = (-2.0 * std::f64::consts::PI * im).exp();
    let mut tail = 0.0;
    let mut term = r.powi(nterms as i32 + 1);
    for n in nterms + 1..nterms + 10_000 {
        let t = (n * n) as f64 * term;
        tail += t;
        if t < tail * 1e-18 {
            break;
        }
        term *= r;
    }
    Ok(4.0 * std::f64::consts::PI.powi(2) * tail)
}

/// `J(τ) = G_2(τ/2) − G_2(τ)`.
pub fn j_function(tau: &Complex, prec: u32) -> Result<Complex> {
    let half = Complex::with_val(prec, tau / 2u32);
    Ok(g2(&half, prec)? - g2(tau, prec)?)
}

/// `K(τ) = τ^{-2} J(−1/τ) − J(τ)`, the failure of `J` to be modular.
pub fn k_failure(tau: &Complex, prec: u32) -> Result<Complex> {
    check_tau(tau)?;
    let w = prec + numeric::GUARD_BITS;
    let t = Complex::with_val(w, tau);
    let inv = -Complex::with_val(w, t.recip_ref());
    let jt = j_function(&t, w)?;
    let ji = j_function(&inv, w)?;
    let t2 = Complex::with_val(w, t.square_ref());
    Ok(Complex::with_val(prec, ji / t2 - jt))
}

/// `(iτ)^{-2} K(−1/τ) − K(τ)`.
pub fn k_inversion_defect(tau: &Complex, prec: u32) -> Result<Complex> {
    let w = prec + numeric::GUARD_BITS;
    let t = Complex::with_val(w, tau);
    let inv = -Complex::with_val(w, t.recip_ref());
    let it = Complex::with_val(w, &t * Complex::with_val(w, (0, 1)));
    let factor = Complex::with_val(w, it.square_ref()).recip();
    Ok(Complex::with_val(prec, factor * k_failure(&inv, w)? - k_failure(&t, w)?))
}

/// `K(τ+2) − K(τ)`.
pub fn k_shift_defect(tau: &Complex, prec: u32) -> Result<Complex> {
    let w = prec + numeric::GUARD_BITS;
    let shifted = Complex::with_val(w, tau + 2u32);
    Ok(Complex::with_val(prec, k_failure(&shifted, w)? - k_failure(tau, w)?))
}
