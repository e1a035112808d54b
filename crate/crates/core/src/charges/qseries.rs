//! Exact `q`-expansions: the inverse mirror map `x(q)`, the normalized
//! Yukawa coupling and `∂_t F_1`.
//!
//! With `f_0 = Σ c_n x^n` and `f_1 = Σ c_n 5(H_{5n}−H_n) x^n` one has
//! `t = L + f_1/(2πi f_0)`, so `q = e^{2πit} = x·exp(f_1/f_0)` has rational
//! coefficients.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::periods::{first_derivative_coeff, hypergeometric_coeff};
use crate::series::RatSeries;

/// Largest order accepted by the `q`-series pipeline.
pub const MAX_QSERIES_ORDER: usize = 24;

fn check_order(order: usize, max: usize) -> Result<()> {
    if order > max {
        return Err(Error::OrderTooLarge { requested: order, max });
    }
    Ok(())
}

fn f0(order: usize) -> RatSeries {
    RatSeries::from_coeffs((0..order as u32).map(|n| Rational::from(hypergeometric_coeff(n))).collect())
}

fn f1(order: usize) -> RatSeries {
    RatSeries::from_coeffs((0..order as u32).map(first_derivative_coeff).collect())
}

/// `q(x) = x·exp(f_1/f_0)` through `x^{order−1}`.
pub fn q_of_x(order: usize) -> Result<RatSeries> {
    let ratio = &f1(order) * &f0(order).inverse()?;
    Ok(ratio.exp()?.shift(1))
}

/// `x(q)` through `q^{order−1}`.
pub fn mirror_map_qseries(order: usize) -> Result<RatSeries> {
    check_order(order, MAX_QSERIES_ORDER + 2)?;
    q_of_x(order)?.reversion()
}

/// Pieces shared by the Yukawa and `F_1` expansions, all as series in `q`.
struct Pullbacks {
    /// `x(q)/q`
    x_over_q: RatSeries,
    /// `w^{(0)}(x(q))`
    w0: RatSeries,
    /// `1 − 5^5 x(q)`
    disc: RatSeries,
    /// `(q/x)(dx/dq) = 1 + θ_q log(x/q)`
    d: RatSeries,
}

fn pullbacks(order: usize) -> Result<Pullbacks> {
    let x = mirror_map_qseries(order + 1)?;
    let x_over_q = RatSeries::from_coeffs(x.coeffs()[1..].to_vec());
    let x = x.truncate(order);
    let w0 = f0(order).compose(&x)?;
    let disc = &RatSeries::one(order) - &x.scale(&Rational::from(3125));
    let d = &RatSeries::one(order) + &x_over_q.log()?.theta();
    Ok(Pullbacks { x_over_q, w0, disc, d })
}

/// `Y(q) = 5 / ((1−5^5x) w^{(0)}(x)^2) · ((q/x) dx/dq)^3` through `q^{order}`.
pub fn yukawa_qseries(order: usize) -> Result<RatSeries> {
    check_order(order, MAX_QSERIES_ORDER)?;
    let p = pullbacks(order + 1)?;
    let denom = &p.disc * &(&p.w0 * &p.w0);
    let num = p.d.pow(3).scale(&Rational::from(5));
    Ok(&num * &denom.inverse()?)
}

/// One instanton number with its integrality residual.
#[derive(Clone, Debug, PartialEq)]
pub struct InstantonNumber {
    pub degree: usize,
    pub value: Integer,
    /// `|r − round(r)|` of the extracted rational `r`.
    pub residual: f64,
}

/// `n_d`, `d = 1..=order`, from `Y = 5 + Σ_k (Σ_{d|k} n_d d^3) q^k`.
/// Fails when an extracted value is not integral to `1e-10` relative.
pub fn instanton_numbers(order: usize) -> Result<Vec<InstantonNumber>> {
    let y = yukawa_qseries(order)?;
    lambert_invert(&y, order)
}

fn lambert_invert(y: &RatSeries, order: usize) -> Result<Vec<InstantonNumber>> {
    let mut out: Vec<InstantonNumber> = Vec::with_capacity(order);
    for k in 1..=order {
        let mut rest = y.coeff(k).clone();
        for d in (1..k).filter(|d| k % d == 0) {
            rest -= Rational::from(&out[d - 1].value * Integer::from(d).pow(3));
        }
        let r = rest / Integer::from(k).pow(3);
        let rounded = Integer::from(r.round_ref());
        let diff = Rational::from(&r - &rounded).abs();
        let residual = diff.to_f64();
        let scale = r.to_f64().abs().max(1.0);
        if residual > 1e-10 * scale {
            return Err(Error::NonIntegral { degree: k, residual });
        }
        out.push(InstantonNumber { degree: k, value: rounded, residual });
    }
    Ok(out)
}

/// The three factors of `F_1 = log((ψ/w)^{62/3} (1−ψ^5)^{−1/6} dψ/dt)` in the
/// coordinate `x = (5ψ)^{-5}`, each differentiated as `θ_q = (2πi)^{-1} ∂_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct F1Series {
    /// `(2πi)^{-1} ∂_t (62/3) log(ψ/w)`
    pub psi_over_w: RatSeries,
    /// `(2πi)^{-1} ∂_t (−1/6) log(1−ψ^5)`
    pub discriminant: RatSeries,
    /// `(2πi)^{-1} ∂_t log(dψ/dt)`
    pub jacobian: RatSeries,
    /// Sum of the three; constant term `−25/6`.
    pub total: RatSeries,
}

/// `(2πi)^{-1} ∂_t F_1` through `q^{order}`.
///
/// `log ψ = −(1/5) log x + c`, `1−ψ^5 = −(1−5^5x)/(5^5x)` and
/// `dψ/dt = −(2πi/5) ψ (q/x)(dx/dq)`; on `log x = log q + log(x/q)` the
/// operator `θ_q` gives `1 + θ_q log(x/q)`.
pub fn f1_series(order: usize) -> Result<F1Series> {
    check_order(order, MAX_QSERIES_ORDER)?;
    let n = order + 1;
    let p = pullbacks(n)?;
    let theta_log_x = &RatSeries::one(n) + &p.x_over_q.log()?.theta();
    let theta_log_psi = theta_log_x.scale(&Rational::from((-1, 5)));
    let theta_log_w = p.w0.log()?.theta();
    let theta_log_disc = p.disc.log()?.theta();

    let psi_over_w = (&theta_log_psi - &theta_log_w).scale(&Rational::from((62, 3)));
    let discriminant = (&theta_log_disc - &theta_log_x).scale(&Rational::from((-1, 6)));
    let jacobian = &theta_log_psi + &p.d.log()?.theta();
    let total = &(&psi_over_w + &discriminant) + &jacobian;
    Ok(F1Series { psi_over_w, discriminant, jacobian, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_map_low_coefficients() {
        let x = mirror_map_qseries(4).unwrap();
        assert_eq!(*x.coeff(0), 0);
        assert_eq!(*x.coeff(1), 1);
        assert_eq!(*x.coeff(2), -770);
        // recomposition returns the identity
        let q = q_of_x(8).unwrap();
        let x8 = mirror_map_qseries(8).unwrap();
        assert_eq!(q.compose(&x8).unwrap(), RatSeries::variable(8));
    }

    #[test]
    fn yukawa_and_instantons() {
        let y = yukawa_qseries(3).unwrap();
        assert_eq!(*y.coeff(0), 5);
        let n = instanton_numbers(3).unwrap();
        assert_eq!(n[0].value, 2875);
        assert_eq!(n[1].value, 609250);
        assert!(n.iter().all(|v| v.residual == 0.0));
    }

    #[test]
    fn instantons_stable_under_doubling() {
        let a = instanton_numbers(3).unwrap();
        let b = instanton_numbers(6).unwrap();
        assert_eq!(a[..], b[..3]);
    }

    #[test]
    fn non_integral_lambert_is_rejected() {
        let y = RatSeries::from_coeffs(vec![Rational::from(5), Rational::from((1, 2)), Rational::new()]);
        assert!(matches!(lambert_invert(&y, 2), Err(Error::NonIntegral { degree: 1, .. })));
    }

    #[test]
    fn f1_structure() {
        let f = f1_series(3).unwrap();
        assert_eq!(*f.total.coeff(0), Rational::from((-25, 6)));
        let g = f1_series(6).unwrap();
        assert_eq!(f.total.coeffs(), &g.total.coeffs()[..f.total.order()]);
        let sum = &(&f.psi_over_w + &f.discriminant) + &f.jacobian;
        assert_eq!(sum, f.total);
    }

    #[test]
    fn f1_low_orders_are_genus_zero_lambert_terms() {
        // below degree 3 only the (1/6) Σ n_d d q^d/(1−q^d) part contributes
        let f = f1_series(2).unwrap();
        let n = instanton_numbers(2).unwrap();
        let n1 = Rational::from(&n[0].value);
        let n2 = Rational::from(&n[1].value);
        assert_eq!(*f.total.coeff(1), Rational::from(&n1 / 6u32));
        assert_eq!(*f.total.coeff(2), (n1 + n2 * 2u32) / 6u32);
    }

    #[test]
    fn order_limit() {
        assert!(matches!(yukawa_qseries(MAX_QSERIES_ORDER + 1), Err(Error::OrderTooLarge { .. })));
    }
}
