//! Period basis at the large complex structure point `x = 0`.

use rug::ops::Pow;
use rug::{Complex, Float};

use super::hypergeometric::derivative_table;
use super::{BasisTag, PeriodVector};
use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, Constants, CMatrix, GUARD_BITS};
use crate::series::LogSeries;

/// The conifold point `x = 5^{-5}`.
pub const CONIFOLD: f64 = 1.0 / 3125.0;

/// Terms needed for the series to reach `prec` bits at `|x|`, using the ratio
/// test against the radius `5^{-5}` and a crude polylog bound on the
/// derivative coefficients.
pub fn required_terms(x_abs: f64, prec: u32) -> Result<usize> {
    let r = x_abs * 3125.0;
    if r >= 1.0 {
        return Err(Error::Domain(format!("|x| = {x_abs:e}"), "|x| < 5^-5"));
    }
    if x_abs == 0.0 {
        return Ok(1);
    }
    let target = -(prec as f64 + 8.0) * std::f64::consts::LN_2 + (1.0 - r).ln();
    let mut n = 1usize;
    loop {
        let growth = 3.0 * (5.0 * (5.0 * n as f64).ln() + 25.0).ln();
        if n as f64 * r.ln() + growth < target {
            return Ok(n);
        }
        n += 1;
        if n > 1_000_000 {
            return Err(Error::Domain(format!("|x| = {x_abs:e}"), "too close to the conifold"));
        }
    }
}

/// `∂_p^k ω(x,p)|_{p=0}` for `k = 0..=kmax`, principal branch of `log x`.
pub fn omega_derivatives(x: &Complex, kmax: usize, nterms: usize, prec: u32) -> Result<Vec<Complex>> {
    check_precision(prec)?;
    assert!(kmax <= 3, "derivatives above third order are not tabulated");
    let needed = required_terms(numeric::abs_f64(x), prec)?;
    if nterms < needed {
        return Err(Error::InsufficientTerms { nterms, required: needed });
    }
    let consts = Constants::get(prec + GUARD_BITS);
    let d = derivative_series(nterms, &consts);
    Ok((0..=kmax).map(|k| Complex::with_val(prec, d[k].eval(x, &consts))).collect())
}

/// `∂_p^k ω` as log-series for `k = 0..=3`:
/// `Σ_j C(k,j) (2πi L)^{k−j} f_j(x)` with `f_j = Σ_n c_n^{(j)} x^n`.
fn derivative_series(nterms: usize, consts: &Constants) -> [LogSeries; 4] {
    let prec = consts.prec;
    let table = derivative_table(nterms, consts);
    let f: Vec<Vec<Complex>> =
        (0..4).map(|j| table.iter().map(|row| Complex::with_val(prec, &row[j])).collect()).collect();
    const BINOM: [[u32; 4]; 4] = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 1, 0], [1, 3, 3, 1]];
    std::array::from_fn(|k| {
        let mut parts = vec![vec![Complex::new(prec); nterms]; 4];
        for i in 0..=k {
            // L^i comes with (2πi)^i and f_{k−i}
            let factor = Complex::with_val(prec, (&consts.two_pi_i).pow(i as u32)) * BINOM[k][i];
            for (n, c) in f[k - i].iter().enumerate() {
                parts[i][n] = Complex::with_val(prec, c * &factor);
            }
        }
        LogSeries::from_parts(parts, prec)
    })
}

/// The basis `Π_B = (w^{(0)}, w^{(1)}, w^{(2)}, w^{(3)})` as log-series,
/// together with its `θ`-derivatives.
#[derive(Clone, Debug)]
pub struct LccBasis {
    prec: u32,
    nterms: usize,
    /// `derivs[i][k] = θ^k w^{(i)}`
    derivs: Vec<[LogSeries; 4]>,
}

impl LccBasis {
    pub fn new(nterms: usize, prec: u32) -> Result<Self> {
        check_precision(prec)?;
        let consts = Constants::get(prec + GUARD_BITS);
        let wp = consts.prec;
        let [d0, d1, d2, d3] = derivative_series(nterms, &consts);
        let tpi = &consts.two_pi_i;
        let inv = |k: u32| Complex::with_val(wp, tpi.pow(k)).recip();
        let rat = |p: i32, q: u32| Complex::with_val(wp, rug::Rational::from((p, q)));

        let w0 = d0;
        let w1 = d1.scale(&inv(1));
        let w2 = &d2.scale(&(inv(2) * rat(5, 2))) + &d1.scale(&(inv(1) * rat(11, 2)));
        let w3 = &d3.scale(&(inv(3) * rat(-5, 6))) + &d1.scale(&(inv(1) * rat(-50, 12)));

        let derivs = [w0, w1, w2, w3]
            .into_iter()
            .map(|w| {
                let t1 = w.theta(&consts);
                let t2 = t1.theta(&consts);
                let t3 = t2.theta(&consts);
                [w, t1, t2, t3]
            })
            .collect();
        Ok(LccBasis { prec, nterms, derivs })
    }

    /// Basis sized for evaluation anywhere in `|x| ≤ x_max`.
    pub fn for_radius(x_max: f64, prec: u32) -> Result<Self> {
        Self::new(required_terms(x_max, prec)?, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn nterms(&self) -> usize {
        self.nterms
    }

    /// `w^{(i)}` for `i = 0..4` as a log-series.
    pub fn series(&self, i: usize) -> &LogSeries {
        &self.derivs[i][0]
    }

    fn check_point(&self, x: &Complex) -> Result<f64> {
        let needed = required_terms(numeric::abs_f64(x), self.prec)?;
        if self.nterms < needed {
            return Err(Error::InsufficientTerms { nterms: self.nterms, required: needed });
        }
        Ok(tail_bound(numeric::abs_f64(x), self.nterms))
    }

    /// `Π_B(x)` with the principal branch of `log x`.
    pub fn period_vector(&self, x: &Complex) -> Result<PeriodVector> {
        let log_x = numeric::principal_log(x);
        self.period_vector_with_log(x, &log_x)
    }

    /// `Π_B(x)` on the branch where `log x` takes the given value.
    pub fn period_vector_with_log(&self, x: &Complex, log_x: &Complex) -> Result<PeriodVector> {
        let error_bound = self.check_point(x)?;
        let consts = Constants::get(self.prec + GUARD_BITS);
        let entries = std::array::from_fn(|i| {
            Complex::with_val(self.prec, self.derivs[i][0].eval_with_log(x, log_x, &consts))
        });
        Ok(PeriodVector { entries, basis: BasisTag::Lcc, x: x.clone(), error_bound })
    }

    /// Rows are basis elements, columns `θ^0..θ^3`.
    pub fn wronskian(&self, x: &Complex) -> Result<CMatrix> {
        let log_x = numeric::principal_log(x);
        self.wronskian_with_log(x, &log_x)
    }

    pub fn wronskian_with_log(&self, x: &Complex, log_x: &Complex) -> Result<CMatrix> {
        self.check_point(x)?;
        let consts = Constants::get(self.prec + GUARD_BITS);
        let rows = self
            .derivs
            .iter()
            .map(|d| d.iter().map(|s| Complex::with_val(self.prec, s.eval_with_log(x, log_x, &consts))).collect())
            .collect();
        Ok(CMatrix::from_rows(rows))
    }
}

fn tail_bound(x_abs: f64, nterms: usize) -> f64 {
    let r = x_abs * 3125.0;
    if r == 0.0 {
        return 0.0;
    }
    let n = nterms as f64;
    let log_bound = n * r.ln() + 3.0 * (5.0 * (5.0 * n).ln() + 25.0).ln() - (1.0 - r).ln();
    log_bound.exp()
}

/// `Π_B(x)` with an automatically sized series.
pub fn lcc_period_vector(x: &Complex, nterms: usize, prec: u32) -> Result<PeriodVector> {
    LccBasis::new(nterms, prec)?.period_vector(x)
}

/// `|Π_B(x)[i] − leading_i|` against `(1, L, (5/2)L², −(5/6)L³)`,
/// `L = log(x)/(2πi)`.
pub fn asymptotic_residual(x: f64, prec: u32) -> Result<[f64; 4]> {
    if !(x > 0.0 && x < CONIFOLD) {
        return Err(Error::Domain(format!("x = {x:e}"), "0 < x < 5^-5"));
    }
    let xc = numeric::from_f64(prec, x, 0.0);
    let pv = LccBasis::for_radius(x, prec)?.period_vector(&xc)?;
    let lead = leading_log_polynomial(&xc, prec);
    Ok(std::array::from_fn(|i| numeric::abs_f64(&Complex::with_val(prec, &pv.entries[i] - &lead[i]))))
}

/// `(1, L, (5/2)L², −(5/6)L³)` at `x`.
pub fn leading_log_polynomial(x: &Complex, prec: u32) -> [Complex; 4] {
    let consts = Constants::get(prec);
    let l = Complex::with_val(prec, numeric::principal_log(x) / &consts.two_pi_i);
    let l2 = Complex::with_val(prec, l.square_ref());
    let l3 = Complex::with_val(prec, &l2 * &l);
    [
        numeric::one(prec),
        l,
        l2 * Float::with_val(prec, 2.5),
        l3 * Float::with_val(prec, -5.0) / 6u32,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::from_f64;

    #[test]
    fn omega_at_zero_is_one() {
        let d = omega_derivatives(&numeric::zero(128), 0, 1, 128).unwrap();
        assert_eq!(d[0], numeric::one(128));
    }

    #[test]
    fn rejects_points_outside_radius() {
        assert!(matches!(
            omega_derivatives(&from_f64(128, 1.0, 0.0), 0, 50, 128),
            Err(Error::Domain(..))
        ));
        assert!(matches!(
            omega_derivatives(&from_f64(128, 1e-4, 0.0), 0, 3, 128),
            Err(Error::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn first_entry_two_term_value() {
        // 1 + 1.2e-8, next term 113400x^2 ~ 1.1e-15
        let pv = lcc_period_vector(&from_f64(128, 1e-10, 0.0), 20, 128).unwrap();
        let e1 = pv.entry(1);
        let dev = Float::with_val(128, e1.real() - 1u32).to_f64() - 1.2e-8;
        assert!(dev.abs() < 2e-15 && dev > 0.0, "{dev}");
        assert!(e1.imag().to_f64().abs() < 1e-30);
    }

    #[test]
    fn residuals_shrink_towards_zero() {
        let r4 = asymptotic_residual(1e-4, 128).unwrap();
        let r6 = asymptotic_residual(1e-6, 128).unwrap();
        let r10 = asymptotic_residual(1e-10, 128).unwrap();
        assert!(r4.iter().all(|v| v.is_finite()));
        assert!(r6[0] < r4[0] && r10[0] < r6[0]);
        assert!(r10[0] < 1e-7);
        assert!(r10[1] < 1e-7);
    }

    #[test]
    fn doubling_terms_is_stable() {
        let x = from_f64(160, -2e-4, 1e-4);
        let a = lcc_period_vector(&x, required_terms(numeric::abs_f64(&x), 160).unwrap(), 160).unwrap();
        let b = lcc_period_vector(&x, 2 * a_terms(&x), 160).unwrap();
        for i in 1..=4 {
            let d = numeric::abs_f64(&Complex::with_val(160, a.entry(i) - b.entry(i)));
            assert!(d <= a.error_bound.max(1e-40) * 10.0, "entry {i}: {d} vs {}", a.error_bound);
        }
    }

    fn a_terms(x: &Complex) -> usize {
        required_terms(numeric::abs_f64(x), 160).unwrap()
    }
}
