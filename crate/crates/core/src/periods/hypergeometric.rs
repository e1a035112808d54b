//! Coefficients of `ω(x,p) = Σ_n Γ(1+5(n+p)) / Γ(1+n+p)^5 · x^{n+p}` and their
//! `p`-derivatives at `p = 0`.
//!
//! Writing `c_n(p) = c_n(0)·exp(g_n(p))`, the log-derivatives at `p = 0` are
//!
//! - `g' = 5(H_{5n} − H_n)`
//! - `g'' = 20ζ(2) − 25H^{(2)}_{5n} + 5H^{(2)}_n`
//! - `g''' = −240ζ(3) + 250H^{(3)}_{5n} − 10H^{(3)}_n`
//!
//! and `c' = c g'`, `c'' = c(g'' + g'^2)`, `c''' = c(g''' + 3g'g'' + g'^3)`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::numeric::Constants;

/// `(5n)! / (n!)^5`.
pub fn hypergeometric_coeff(n: u32) -> Integer {
    let mut c = Integer::from(1);
    for k in 1..=n {
        for i in 0..5 {
            c *= 5 * k - i;
        }
        let k5 = Integer::from(k).pow(5);
        c /= k5;
    }
    c
}

/// Exact generalized harmonic number `H^{(r)}_m = Σ_{k=1}^{m} k^{-r}`.
pub fn harmonic(m: u32, r: u32) -> Rational {
    let mut h = Rational::new();
    for k in 1..=m {
        h += Rational::from((1, Integer::from(k).pow(r)));
    }
    h
}

/// Exact first `p`-derivative of `c_n(p)` at `p = 0`: `c_n · 5(H_{5n} − H_n)`.
pub fn first_derivative_coeff(n: u32) -> Rational {
    let g1 = (harmonic(5 * n, 1) - harmonic(n, 1)) * 5u32;
    g1 * hypergeometric_coeff(n)
}

/// Floating-point `∂_p^j c_n(p)|_{p=0}` for `j = 0..=3` and `n < nterms`.
pub fn derivative_table(nterms: usize, consts: &Constants) -> Vec<[Float; 4]> {
    let prec = consts.prec;
    let mut out = Vec::with_capacity(nterms);
    // running harmonic sums up to 5n and n
    let mut h5 = [Float::new(prec), Float::new(prec), Float::new(prec)];
    let mut h1 = [Float::new(prec), Float::new(prec), Float::new(prec)];
    let mut c = Integer::from(1);
    for n in 0..nterms as u32 {
        if n > 0 {
            for m in 5 * (n - 1) + 1..=5 * n {
                for (r, h) in h5.iter_mut().enumerate() {
                    *h += Float::with_val(prec, Integer::from(m).pow(r as u32 + 1)).recip();
                }
            }
            for (r, h) in h1.iter_mut().enumerate() {
                *h += Float::with_val(prec, Integer::from(n).pow(r as u32 + 1)).recip();
            }
            for i in 0..5 {
                c *= 5 * n - i;
            }
            c /= Integer::from(n).pow(5);
        }
        let g1 = Float::with_val(prec, &h5[0] - &h1[0]) * 5u32;
        let g2 = Float::with_val(prec, &consts.zeta2 * 20u32) - Float::with_val(prec, &h5[1] * 25u32)
            + Float::with_val(prec, &h1[1] * 5u32);
        let g3 = Float::with_val(prec, &consts.zeta3 * -240i32) + Float::with_val(prec, &h5[2] * 250u32)
            - Float::with_val(prec, &h1[2] * 10u32);
        let cf = Float::with_val(prec, &c);
        let g1sq = Float::with_val(prec, g1.square_ref());
        let d1 = Float::with_val(prec, &cf * &g1);
        let d2 = Float::with_val(prec, &g2 + &g1sq) * &cf;
        let d3 = (g3 + Float::with_val(prec, &g1 * &g2) * 3u32 + Float::with_val(prec, &g1sq * &g1)) * &cf;
        out.push([cf, d1, d2, d3]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> Integer {
        Integer::from(Integer::factorial(n))
    }

    #[test]
    fn coefficients_match_factorials() {
        // oracle: (5n)!/(n!)^5 straight from factorials
        for n in 0..8 {
            let direct = factorial(5 * n) / factorial(n).pow(5);
            assert_eq!(hypergeometric_coeff(n), direct);
        }
        assert_eq!(hypergeometric_coeff(1), 120);
        assert_eq!(hypergeometric_coeff(2), 113400);
    }

    #[test]
    fn first_log_derivative_at_n1() {
        assert_eq!(first_derivative_coeff(1), 770);
        assert_eq!(first_derivative_coeff(0), 0);
    }

    #[test]
    fn float_table_matches_exact_parts() {
        let consts = Constants::get(128);
        let t = derivative_table(6, &consts);
        for n in 0..6u32 {
            let exact = Float::with_val(128, &hypergeometric_coeff(n));
            assert_eq!(t[n as usize][0], exact);
            let d1 = Float::with_val(128, &first_derivative_coeff(n));
            let rel = Float::with_val(128, &t[n as usize][1] - &d1).abs().to_f64() / d1.to_f64().abs().max(1.0);
            assert!(rel < 1e-30, "n={n} rel={rel}");
        }
    }

    #[test]
    fn higher_derivatives_match_finite_differences() {
        // oracle: central differences of ln Γ quotients in f64 at n = 2
        let consts = Constants::get(128);
        let t = derivative_table(3, &consts);
        let lc = |p: f64| {
            let n = 2.0 + p;
            (libm_lgamma(1.0 + 5.0 * n) - 5.0 * libm_lgamma(1.0 + n)).exp()
        };
        let h = 1e-3;
        let d2 = (lc(h) - 2.0 * lc(0.0) + lc(-h)) / (h * h);
        let d3 = (lc(2.0 * h) - 2.0 * lc(h) + 2.0 * lc(-h) - lc(-2.0 * h)) / (2.0 * h * h * h);
        let rel2 = (t[2][2].to_f64() - d2).abs() / d2.abs();
        let rel3 = (t[2][3].to_f64() - d3).abs() / d3.abs();
        assert!(rel2 < 1e-4, "{rel2}");
        assert!(rel3 < 1e-3, "{rel3}");
    }

    fn libm_lgamma(x: f64) -> f64 {
        Float::with_val(64, x).ln_gamma().to_f64()
    }
}
