//! The Picard-Fuchs operator `θ^4 − 5x(5θ+1)(5θ+2)(5θ+3)(5θ+4)` applied to
//! truncated series.

use rug::{Complex, Float};

use crate::numeric::{self, Constants};
use crate::series::LogSeries;

/// `θ^4 s − 5x ∏(5θ+k) s`; the residual is exact through the order of `s`.
pub fn pf_apply(s: &LogSeries, consts: &Constants) -> LogSeries {
    let (lhs, rhs) = pf_parts(s, consts);
    &lhs - &rhs
}

fn pf_parts(s: &LogSeries, consts: &Constants) -> (LogSeries, LogSeries) {
    let prec = s.prec();
    let theta4 = s.theta(consts).theta(consts).theta(consts).theta(consts);
    let mut g = s.clone();
    for k in 1..=4u32 {
        let t = g.theta(consts).scale(&Complex::with_val(prec, 5));
        g = &t + &g.scale(&Complex::with_val(prec, k));
    }
    (theta4, g.mul_x().scale(&Complex::with_val(prec, 5)))
}

/// Largest `|r_n| / max(|a_n|, |b_n|)` over coefficients of the residual
/// `r = a − b`; measures cancellation relative to the size of both sides.
pub fn pf_relative_residual(s: &LogSeries, consts: &Constants) -> f64 {
    let (a, b) = pf_parts(s, consts);
    let mut worst = 0.0f64;
    for j in 0..4 {
        for (x, y) in a.part(j).iter().zip(b.part(j)) {
            let scale = numeric::abs_f64(x).max(numeric::abs_f64(y));
            if scale == 0.0 {
                continue;
            }
            let r = numeric::abs_f64(&Complex::with_val(x.prec(), x - y));
            worst = worst.max(r / scale);
        }
    }
    worst
}

/// Residual of a power series `Σ b_m ψ^m` in the Gepner coordinate
/// `x = ψ^{-5}`, multiplied by `ψ^5` to stay a power series. Its `ψ^m`
/// coefficient is `(−(m−5)/5)^4 b_{m−5} − 5 ∏_{k=1}^{4}(k−m) b_m`.
pub fn pf_apply_gepner(coeffs: &[Complex]) -> Vec<Complex> {
    pf_gepner_parts(coeffs).into_iter().map(|(a, b)| a - b).collect()
}

fn pf_gepner_parts(coeffs: &[Complex]) -> Vec<(Complex, Complex)> {
    let prec = coeffs.first().map(|c| c.prec().0).unwrap_or(numeric::MIN_PRECISION);
    (0..coeffs.len())
        .map(|m| {
            let a = if m >= 5 {
                let f = Float::with_val(prec, rug::Rational::from(((m as i64 - 5), 5))).square().square();
                Complex::with_val(prec, &coeffs[m - 5] * f)
            } else {
                Complex::new(prec)
            };
            let p: i64 = (1..=4).map(|k| k - m as i64).product();
            let b = Complex::with_val(prec, &coeffs[m] * (5 * p));
            (a, b)
        })
        .collect()
}

pub fn pf_relative_residual_gepner(coeffs: &[Complex]) -> f64 {
    pf_gepner_parts(coeffs)
        .iter()
        .filter_map(|(a, b)| {
            let scale = numeric::abs_f64(a).max(numeric::abs_f64(b));
            (scale > 0.0).then(|| numeric::abs_f64(&Complex::with_val(a.prec(), a - b)) / scale)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::{GepnerBasis, LccBasis};

    #[test]
    fn constant_one() {
        let consts = Constants::get(128);
        let one = LogSeries::constant(numeric::one(128), 0, 4, 128);
        let r = pf_apply(&one, &consts);
        assert_eq!(r.part(0)[0], 0);
        assert_eq!(r.part(0)[1], Complex::with_val(128, -120));
        assert!(r.part(0)[2].is_zero() && r.part(1)[1].is_zero());
    }

    #[test]
    fn basis_series_are_annihilated() {
        let consts = Constants::get(256 + crate::numeric::GUARD_BITS);
        let lcc = LccBasis::new(31, 256).unwrap();
        for i in 0..4 {
            let rel = pf_relative_residual(lcc.series(i), &consts);
            assert!(rel < 1e-60, "w{i}: {rel}");
        }
        let g = GepnerBasis::new(31, 256).unwrap();
        for j in [0, 1, 2, 4] {
            let rel = pf_relative_residual_gepner(&g.series(j));
            assert!(rel < 1e-60, "omega{j}: {rel}");
        }
    }

    #[test]
    fn perturbed_series_is_not_annihilated() {
        let consts = Constants::get(160);
        let lcc = LccBasis::new(10, 128).unwrap();
        let bumped = lcc.series(1) + &LogSeries::constant(numeric::from_f64(160, 1e-3, 0.0), 0, 10, 160).mul_x();
        assert!(pf_relative_residual(&bumped, &consts) > 1e-10);
    }
}
