//! The quantum dilogarithm
//! `E(q^{1/2}, z) = Σ_m (−q^{1/2})^{m²} / ((q^m−1)⋯(q^m−q^{m−1})) z^m`
//! as an exact series in `u = q^{1/2}` and `z`, its formal logarithm, and
//! the divisor-sum identity behind `G_2(τ/2) − G_2(τ)`.
//!
//! All `u`-orders count powers of `u`, not of `q`.

use rug::{Integer, Rational};

use crate::error::Result;
use crate::series::{BivariateQZSeries, RationalHalfQSeries};

/// `Π_{k<m} (u^{2m} − u^{2k})` as a dense polynomial in `u`.
fn denominator(m: u32) -> Vec<Rational> {
    let mut p = vec![Rational::from(1)];
    for k in 0..m {
        let (hi, lo) = ((2 * m) as usize, (2 * k) as usize);
        let mut next = vec![Rational::new(); p.len() + hi];
        for (i, c) in p.iter().enumerate() {
            next[i + hi] += c;
            next[i + lo] -= c;
        }
        p = next;
    }
    p
}

/// Coefficient of `z^m`: `(−u)^{m²}` over the denominator, expanded in `u`
/// after cancelling the common power `u^{m(m−1)}`.
fn dilog_coefficient(m: u32, qorder: u32) -> Result<RationalHalfQSeries> {
    let den = denominator(m);
    let v = den.iter().position(|c| *c != 0).expect("nonzero polynomial");
    let shift = (m * m) as usize - v;
    if shift >= qorder as usize {
        return Ok(RationalHalfQSeries::zero(qorder));
    }
    let len = qorder - shift as u32;
    let p = RationalHalfQSeries::from_terms(den[v..].iter().enumerate().map(|(k, c)| (k as u32, c.clone())), len);
    let sign = if (m * m).is_multiple_of(2) { 1 } else { -1 };
    let inv = p.inverse()?;
    Ok(RationalHalfQSeries::from_terms(inv.terms().map(|(k, c)| (k + shift as u32, Rational::from(c * sign))), qorder))
}

/// `E` with parts `z^0..z^{zorder−1}`, each through `u^{qorder−1}`.
pub fn quantum_dilog(zorder: usize, qorder: u32) -> Result<BivariateQZSeries> {
    let parts = (0..zorder as u32).map(|m| dilog_coefficient(m, qorder)).collect::<Result<Vec<_>>>()?;
    Ok(BivariateQZSeries::from_parts(parts))
}

/// `Σ_{m>0} (1/m) u^m/(1−u^{2m}) z^m`.
pub fn log_dilog_closed_form(zorder: usize, qorder: u32) -> BivariateQZSeries {
    let parts = (0..zorder as u32)
        .map(|m| {
            if m == 0 {
                return RationalHalfQSeries::zero(qorder);
            }
            let terms = (0..).map(|r| m + 2 * m * r).take_while(|&k| k < qorder).map(|k| (k, Rational::from((1, m))));
            RationalHalfQSeries::from_terms(terms, qorder)
        })
        .collect();
    BivariateQZSeries::from_parts(parts)
}

/// Outcome of an exact coefficient comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientCheck {
    pub holds: bool,
    /// `(z-power, u-power)` of the first differing coefficient.
    pub first_discrepancy: Option<(usize, u32)>,
}

fn compare(a: &BivariateQZSeries, b: &BivariateQZSeries) -> CoefficientCheck {
    let zorder = a.zorder().min(b.zorder());
    let qorder = a.qorder().min(b.qorder());
    for m in 0..zorder {
        for k in 0..qorder {
            if a.part(m).coeff(k) != b.part(m).coeff(k) {
                return CoefficientCheck { holds: false, first_discrepancy: Some((m, k)) };
            }
        }
    }
    CoefficientCheck { holds: true, first_discrepancy: None }
}

/// `log_z E` against the closed form, coefficient by coefficient.
pub fn log_dilog_check(zorder: usize, qorder: u32) -> Result<CoefficientCheck> {
    let log = quantum_dilog(zorder, qorder)?.formal_log_z()?;
    Ok(compare(&log, &log_dilog_closed_form(zorder, qorder)))
}

/// `(2πi)^{-2} ∂²_{τ'}` applied to a series in `z = e^{2πiτ'}`: the
/// `z^m` part is multiplied by `m²`.
pub fn second_tau_derivative(s: &BivariateQZSeries) -> BivariateQZSeries {
    s.map_parts(|m, p| p.scale(&Rational::from(m * m)))
}

/// Integrates twice in `τ'` with zero boundary data and exponentiates in `z`.
pub fn recover_dilog(second: &BivariateQZSeries) -> Result<BivariateQZSeries> {
    let log = second.map_parts(|m, p| if m == 0 { RationalHalfQSeries::zero(p.order()) } else { p.scale(&Rational::from((1, (m * m) as i64))) });
    log.formal_exp_z()
}

/// `σ_1(n)`.
pub fn sigma1(n: u64) -> Integer {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(Integer::from).sum()
}

/// One row of the quasimodular identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasimodularRow {
    pub k: u32,
    /// Coefficient of `u^k` in `(2πi)^{-2} ∂²_{τ'} log_z E |_{z=1}`.
    pub from_dilog: Rational,
    /// `σ_1(k) − [2|k] σ_1(k/2)`.
    pub divisor_sum: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasimodularReport {
    pub holds: bool,
    /// `u^0` coefficient of the difference of the two `G_2`-series:
    /// `−1/24 − (−1/24)`.
    pub constant_term: Rational,
    pub rows: Vec<QuasimodularRow>,
}

/// Coefficients `u^0..=u^qorder` of `(2πi)^{-2} ∂²_{τ'} log_z E` at `z = 1`
/// against `(2πi)^{-2}(G_2(τ/2) − G_2(τ))`.
pub fn quasimodular_identity(qorder: u32) -> Result<QuasimodularReport> {
    let n = qorder + 1;
    // z^m contributes from u^m on, so z-powers through qorder suffice
    let log = quantum_dilog(n as usize, n)?.formal_log_z()?;
    let second = second_tau_derivative(&log);
    let mut at_one = RationalHalfQSeries::zero(n);
    for p in second.parts() {
        at_one = &at_one + p;
    }
    // constant terms of (2πi)^{-2} G_2(τ/2) and (2πi)^{-2} G_2(τ)
    let (c_half, c_full) = (Rational::from((-1, 24)), Rational::from((-1, 24)));
    let constant_term = c_half - c_full;
    let rows: Vec<QuasimodularRow> = (1..=qorder)
        .map(|k| {
            let mut d = sigma1(k as u64);
            if k % 2 == 0 {
                d -= sigma1(k as u64 / 2);
            }
            QuasimodularRow { k, from_dilog: at_one.coeff(k), divisor_sum: Rational::from(d) }
        })
        .collect();
    let holds = at_one.coeff(0) == constant_term && rows.iter().all(|r| r.from_dilog == r.divisor_sum);
    Ok(QuasimodularReport { holds, constant_term, rows })
}
