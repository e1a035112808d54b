//! Truncated series in `x` with powers of `L = log(x)/(2πi)` up to `L^3`.

use std::ops::{Add, Sub};

use rug::{Complex, Float};

use crate::numeric::{self, Constants};

/// Highest power of `L` carried; the quintic Picard-Fuchs operator has order 4.
pub const MAX_LOG_POWER: usize = 3;

/// `Σ_{j=0}^{3} f_j(x) L^j` with `f_j` truncated at `x^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries {
    parts: [Vec<Complex>; MAX_LOG_POWER + 1],
    prec: u32,
}

impl LogSeries {
    pub fn zero(order: usize, prec: u32) -> Self {
        LogSeries { parts: std::array::from_fn(|_| vec![Complex::new(prec); order]), prec }
    }

    /// `c·L^j` with no `x` dependence.
    pub fn constant(c: Complex, j: usize, order: usize, prec: u32) -> Self {
        let mut s = Self::zero(order, prec);
        if order > 0 {
            s.parts[j][0] = Complex::with_val(prec, c);
        }
        s
    }

    /// Builds from per-log-power coefficient vectors; missing powers are zero
    /// and all parts are cut to the shortest supplied length.
    pub fn from_parts(parts: Vec<Vec<Complex>>, prec: u32) -> Self {
        assert!(parts.len() <= MAX_LOG_POWER + 1, "log power above L^3");
        let order = parts.iter().map(Vec::len).min().unwrap_or(0);
        let mut s = Self::zero(order, prec);
        for (j, p) in parts.into_iter().enumerate() {
            for (n, c) in p.into_iter().take(order).enumerate() {
                s.parts[j][n] = Complex::with_val(prec, c);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.parts[0].len()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Coefficients of `L^j`.
    pub fn part(&self, j: usize) -> &[Complex] {
        &self.parts[j]
    }

    pub fn scale(&self, c: &Complex) -> Self {
        let mut out = self.clone();
        for p in out.parts.iter_mut() {
            for v in p.iter_mut() {
                *v *= c;
            }
        }
        out
    }

    /// `θ = x d/dx`, using `θL = 1/(2πi)`.
    pub fn theta(&self, consts: &Constants) -> Self {
        let prec = self.prec;
        let mut out = Self::zero(self.order(), prec);
        let inv_tpi = Complex::with_val(prec, consts.two_pi_i.recip_ref());
        for j in 0..=MAX_LOG_POWER {
            for (n, c) in self.parts[j].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.parts[j][n] += Complex::with_val(prec, c * n as u32);
                if j > 0 {
                    let t = Complex::with_val(prec, c * &inv_tpi) * j as u32;
                    out.parts[j - 1][n] += t;
                }
            }
        }
        out
    }

    /// Multiplication by `x`; the top coefficient falls off the truncation.
    pub fn mul_x(&self) -> Self {
        let mut out = Self::zero(self.order(), self.prec);
        for j in 0..=MAX_LOG_POWER {
            for n in 1..self.order() {
                out.parts[j][n] = self.parts[j][n - 1].clone();
            }
        }
        out
    }

    /// Evaluates with the principal branch of `log x`.
    pub fn eval(&self, x: &Complex, consts: &Constants) -> Complex {
        self.eval_with_log(x, &numeric::principal_log(x), consts)
    }

    /// Evaluates with an explicitly chosen value of `log x`, so continued
    /// branches can be reached.
    pub fn eval_with_log(&self, x: &Complex, log_x: &Complex, consts: &Constants) -> Complex {
        let prec = self.prec;
        let l = Complex::with_val(prec, log_x / &consts.two_pi_i);
        let mut acc = Complex::new(prec);
        for j in (0..=MAX_LOG_POWER).rev() {
            // skip while still zero so that x = 0 works for log-free series
            if !acc.is_zero() {
                acc *= &l;
            }
            acc += horner(&self.parts[j], x, prec);
        }
        acc
    }

    /// Largest coefficient modulus in `x^0..x^{upto}` over all log powers.
    pub fn max_abs_through(&self, upto: usize) -> Float {
        let mut m = Float::new(self.prec);
        for p in &self.parts {
            for c in p.iter().take(upto + 1) {
                let a = numeric::abs(c);
                if a > m {
                    m = a;
                }
            }
        }
        m
    }
}

pub(crate) fn horner(coeffs: &[Complex], x: &Complex, prec: u32) -> Complex {
    let mut acc = Complex::new(prec);
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

impl Add for &LogSeries {
    type Output = LogSeries;
    fn add(self, rhs: &LogSeries) -> LogSeries {
        let order = self.order().min(rhs.order());
        let prec = self.prec.max(rhs.prec);
        let mut out = LogSeries::zero(order, prec);
        for j in 0..=MAX_LOG_POWER {
            for n in 0..order {
                out.parts[j][n] = Complex::with_val(prec, &self.parts[j][n] + &rhs.parts[j][n]);
            }
        }
        out
    }
}

impl Sub for &LogSeries {
    type Output = LogSeries;
    fn sub(self, rhs: &LogSeries) -> LogSeries {
        let order = self.order().min(rhs.order());
        let prec = self.prec.max(rhs.prec);
        let mut out = LogSeries::zero(order, prec);
        for j in 0..=MAX_LOG_POWER {
            for n in 0..order {
                out.parts[j][n] = Complex::with_val(prec, &self.parts[j][n] - &rhs.parts[j][n]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::from_f64;

    #[test]
    fn theta_of_log_is_constant() {
        let prec = 128;
        let c = Constants::get(prec);
        let l = LogSeries::constant(numeric::one(prec), 1, 4, prec);
        let t = l.theta(&c);
        let x = from_f64(prec, 0.3, 0.1);
        let v = t.eval(&x, &c);
        let expect = Complex::with_val(prec, c.two_pi_i.recip_ref());
        assert!(numeric::abs_f64(&Complex::with_val(prec, &v - &expect)) < 1e-35);
    }

    #[test]
    fn eval_matches_termwise_sum() {
        let prec = 128;
        let c = Constants::get(prec);
        let parts: Vec<Vec<Complex>> =
            (0..4).map(|j| (0..6).map(|n| from_f64(prec, (j * 7 + n) as f64 * 0.25, -(n as f64))).collect()).collect();
        let s = LogSeries::from_parts(parts.clone(), prec);
        let x = from_f64(prec, 0.01, 0.02);
        let l = Complex::with_val(prec, numeric::principal_log(&x) / &c.two_pi_i);
        let mut direct = Complex::new(prec);
        for (j, p) in parts.iter().enumerate() {
            for (n, a) in p.iter().enumerate() {
                let term = Complex::with_val(prec, a * numeric::powi(&x, n as i32)) * numeric::powi(&l, j as i32);
                direct += term;
            }
        }
        let diff = numeric::abs_f64(&Complex::with_val(prec, &direct - s.eval(&x, &c)));
        assert!(diff < 1e-33, "{diff}");
    }
}
