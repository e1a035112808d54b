//! Dense truncated power series with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use crate::error::{Error, Result};

/// `Σ_{n < order} c_n t^n + O(t^order)`.
///
/// The truncation order is the length of the coefficient vector; binary
/// operations truncate to the smaller order of their operands.
#[derive(Clone, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(n, c)| format!("({c})t^{n}"))
            .collect();
        write!(f, "{} + O(t^{})", if terms.is_empty() { "0".into() } else { terms.join(" + ") }, self.order())
    }
}

impl RatSeries {
    pub fn zero(order: usize) -> Self {
        RatSeries { coeffs: vec![Rational::new(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::from(1), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// The series `t` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Rational::from(1);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        RatSeries { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(it: I) -> Self {
        RatSeries { coeffs: it.into_iter().map(Rational::from).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        RatSeries { coeffs: self.coeffs.iter().take(order).cloned().collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatSeries { coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect() }
    }

    /// Multiplies by `t^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order());
        for n in 0..self.order().saturating_sub(k) {
            out.coeffs[n + k] = self.coeffs[n].clone();
        }
        out
    }

    /// `t d/dt`.
    pub fn theta(&self) -> Self {
        RatSeries { coeffs: self.coeffs.iter().enumerate().map(|(n, c)| Rational::from(c * n as u64)).collect() }
    }

    /// `d/dt`; the order drops by one.
    pub fn derivative(&self) -> Self {
        RatSeries {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(n, c)| Rational::from(c * n as u64)).collect(),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let order = self.order();
        if order == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] == 0 {
            return Err(Error::ConstantTerm { expected: "nonzero" });
        }
        let inv0 = Rational::from(self.coeffs[0].recip_ref());
        let mut out = vec![Rational::new(); order];
        out[0] = inv0.clone();
        for n in 1..order {
            let mut acc = Rational::new();
            for k in 1..=n {
                acc += Rational::from(&self.coeffs[k] * &out[n - k]);
            }
            out[n] = -(acc * &inv0);
        }
        Ok(RatSeries { coeffs: out })
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.order() == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != 1 {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        // θ log f = θf / f
        let d = &self.theta() * &self.inverse()?;
        let mut out = Self::zero(self.order());
        for n in 1..self.order() {
            out.coeffs[n] = Rational::from(&d.coeffs[n] / n as u64);
        }
        Ok(out)
    }

    /// Formal exponential; requires zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let order = self.order();
        if order == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != 0 {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        // g = exp f satisfies θg = g·θf.
        let df = self.theta();
        let mut g = vec![Rational::new(); order];
        g[0] = Rational::from(1);
        for n in 1..order {
            let mut acc = Rational::new();
            for k in 1..=n {
                acc += Rational::from(&df.coeffs[k] * &g[n - k]);
            }
            g[n] = acc / n as u64;
        }
        Ok(RatSeries { coeffs: g })
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &RatSeries) -> Result<Self> {
        let order = self.order().min(inner.order());
        if order == 0 {
            return Ok(Self::zero(0));
        }
        if inner.coeffs[0] != 0 {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let inner = inner.truncate(order);
        // Horner: (((c_{N-1}) g + c_{N-2}) g + ...) + c_0
        let mut acc = Self::zero(order);
        for c in self.coeffs[..order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse of `t = c_1 x + c_2 x^2 + …`, returning `x(t)`.
    pub fn reversion(&self) -> Result<Self> {
        let order = self.order();
        if order < 2 {
            return Err(Error::NotInvertible);
        }
        if self.coeffs[0] != 0 {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        if self.coeffs[1] == 0 {
            return Err(Error::NotInvertible);
        }
        let inv1 = Rational::from(self.coeffs[1].recip_ref());
        let mut g = Self::zero(order);
        g.coeffs[1] = inv1.clone();
        // Fix one coefficient at a time: the t^k coefficient of f(g(t)) is
        // c_1 g_k + (terms in g_1..g_{k-1}).
        for k in 2..order {
            let fg = self.truncate(k + 1).compose(&g.truncate(k + 1))?;
            let err = fg.coeffs[k].clone();
            g.coeffs[k] -= err * &inv1;
        }
        Ok(g)
    }
}

impl Add for &RatSeries {
    type Output = RatSeries;
    fn add(self, rhs: &RatSeries) -> RatSeries {
        let order = self.order().min(rhs.order());
        RatSeries { coeffs: (0..order).map(|n| Rational::from(&self.coeffs[n] + &rhs.coeffs[n])).collect() }
    }
}

impl Sub for &RatSeries {
    type Output = RatSeries;
    fn sub(self, rhs: &RatSeries) -> RatSeries {
        let order = self.order().min(rhs.order());
        RatSeries { coeffs: (0..order).map(|n| Rational::from(&self.coeffs[n] - &rhs.coeffs[n])).collect() }
    }
}

impl Neg for &RatSeries {
    type Output = RatSeries;
    fn neg(self) -> RatSeries {
        RatSeries { coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }
}

impl Mul for &RatSeries {
    type Output = RatSeries;
    fn mul(self, rhs: &RatSeries) -> RatSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::new(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RatSeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn reversion_of_identity() {
        let t = RatSeries::variable(6);
        assert_eq!(t.reversion().unwrap(), t);
    }

    #[test]
    fn reversion_of_x_plus_x2() {
        // x(t) = Σ (-1)^{n-1} C_{n-1} t^n (Catalan numbers)
        let t = RatSeries::from_integers([0, 1, 1, 0, 0, 0, 0]);
        let x = t.reversion().unwrap();
        assert_eq!(x, RatSeries::from_integers([0, 1, -1, 2, -5, 14, -42]));
    }

    #[test]
    fn reversion_rejects_zero_linear_term() {
        let t = RatSeries::from_integers([0, 0, 1, 0]);
        assert_eq!(t.reversion(), Err(Error::NotInvertible));
    }

    #[test]
    fn log_of_one_plus_t() {
        let s = RatSeries::from_integers([1, 1, 0, 0, 0, 0]);
        let l = s.log().unwrap();
        assert_eq!(l.coeffs(), &[q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4), q(1, 5)]);
        assert!(RatSeries::from_integers([2, 1]).log().is_err());
    }

    #[test]
    fn exp_log_roundtrip() {
        let s = RatSeries::from_coeffs(vec![q(1, 1), q(3, 2), q(-7, 5), q(2, 3), q(0, 1), q(11, 7)]);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn compose_with_variable_is_identity() {
        let s = RatSeries::from_coeffs(vec![q(1, 2), q(3, 2), q(-7, 5), q(2, 3)]);
        assert_eq!(s.compose(&RatSeries::variable(4)).unwrap(), s);
    }

    #[test]
    fn mul_truncates_to_min_order() {
        let a = RatSeries::from_integers([1, 1, 1, 1, 1]);
        let b = RatSeries::from_integers([1, -1, 0]);
        assert_eq!((&a * &b).order(), 3);
    }
}
