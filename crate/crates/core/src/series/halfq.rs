//! Series in `u = q^{1/2}` with exact rational coefficients, and bivariate
//! series in `(u, z)` for the quantum dilogarithm.
//!
//! Exponents of `q` are stored as integers in units of 1/2, i.e. as exponents
//! of `u`, so the substitution `u ↦ −u` is a genuine operation on the grading.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use crate::error::{Error, Result};

/// `Σ_{k < order} c_k u^k + O(u^order)` with `u = q^{1/2}`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalHalfQSeries {
    coeffs: BTreeMap<u32, Rational>,
    order: u32,
}

impl fmt::Debug for RationalHalfQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|(k, c)| format!("({c})u^{k}")).collect();
        write!(f, "{} + O(u^{})", if terms.is_empty() { "0".into() } else { terms.join(" + ") }, self.order)
    }
}

impl RationalHalfQSeries {
    pub fn zero(order: u32) -> Self {
        RationalHalfQSeries { coeffs: BTreeMap::new(), order }
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(Rational::from(1), 0, order)
    }

    /// `c·u^k`, dropped if `k ≥ order`.
    pub fn monomial(c: Rational, k: u32, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.set(k, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I, order: u32) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in terms {
            let cur = s.coeff(k);
            s.set(k, cur + c);
        }
        s
    }

    /// Truncation bound, in units of `u` (half-integer powers of `q`).
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn set(&mut self, k: u32, c: Rational) {
        if k >= self.order || c == 0 {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        RationalHalfQSeries {
            coeffs: self.coeffs.range(..order).map(|(k, c)| (*k, c.clone())).collect(),
            order,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for (k, v) in &self.coeffs {
            out.set(*k, Rational::from(v * c));
        }
        out
    }

    /// The substitution `q^{1/2} ↦ −q^{1/2}`.
    pub fn negate_u(&self) -> Self {
        let mut out = self.clone();
        for (k, v) in out.coeffs.iter_mut() {
            if k % 2 == 1 {
                *v = Rational::from(-&*v);
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0 == 0 {
            return Err(Error::ConstantTerm { expected: "nonzero" });
        }
        let inv0 = Rational::from(c0.recip_ref());
        let n = self.order as usize;
        let mut out = vec![Rational::new(); n];
        if n > 0 {
            out[0] = inv0.clone();
        }
        for m in 1..n {
            let mut acc = Rational::new();
            for (k, a) in self.coeffs.range(1..=m as u32) {
                acc += Rational::from(a * &out[m - *k as usize]);
            }
            out[m] = -(acc * &inv0);
        }
        Ok(Self::from_terms(out.into_iter().enumerate().map(|(k, c)| (k as u32, c)), self.order))
    }
}

impl Add for &RationalHalfQSeries {
    type Output = RationalHalfQSeries;
    fn add(self, rhs: &RationalHalfQSeries) -> RationalHalfQSeries {
        let mut out = self.truncate(self.order.min(rhs.order));
        for (k, c) in rhs.coeffs.range(..out.order) {
            let cur = out.coeff(*k);
            out.set(*k, cur + c);
        }
        out
    }
}

impl Neg for &RationalHalfQSeries {
    type Output = RationalHalfQSeries;
    fn neg(self) -> RationalHalfQSeries {
        self.scale(&Rational::from(-1))
    }
}

impl Sub for &RationalHalfQSeries {
    type Output = RationalHalfQSeries;
    fn sub(self, rhs: &RationalHalfQSeries) -> RationalHalfQSeries {
        self + &(-rhs)
    }
}

impl Mul for &RationalHalfQSeries {
    type Output = RationalHalfQSeries;
    fn mul(self, rhs: &RationalHalfQSeries) -> RationalHalfQSeries {
        let order = self.order.min(rhs.order);
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (i, a) in self.coeffs.range(..order) {
            for (j, b) in rhs.coeffs.range(..order - i) {
                *acc.entry(i + j).or_default() += Rational::from(a * b);
            }
        }
        RationalHalfQSeries::from_terms(acc, order)
    }
}

/// `Σ_{m < zorder} s_m(u) z^m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariateQZSeries {
    parts: Vec<RationalHalfQSeries>,
}

impl BivariateQZSeries {
    pub fn from_parts(parts: Vec<RationalHalfQSeries>) -> Self {
        BivariateQZSeries { parts }
    }

    pub fn zero(zorder: usize, qorder: u32) -> Self {
        BivariateQZSeries { parts: vec![RationalHalfQSeries::zero(qorder); zorder] }
    }

    pub fn one(zorder: usize, qorder: u32) -> Self {
        let mut s = Self::zero(zorder, qorder);
        if zorder > 0 {
            s.parts[0] = RationalHalfQSeries::one(qorder);
        }
        s
    }

    pub fn zorder(&self) -> usize {
        self.parts.len()
    }

    /// Smallest `u`-order among the coefficients.
    pub fn qorder(&self) -> u32 {
        self.parts.iter().map(|p| p.order()).min().unwrap_or(0)
    }

    /// Coefficient of `z^m`.
    pub fn part(&self, m: usize) -> &RationalHalfQSeries {
        &self.parts[m]
    }

    pub fn parts(&self) -> &[RationalHalfQSeries] {
        &self.parts
    }

    pub fn map_parts<F: Fn(usize, &RationalHalfQSeries) -> RationalHalfQSeries>(&self, f: F) -> Self {
        BivariateQZSeries { parts: self.parts.iter().enumerate().map(|(m, p)| f(m, p)).collect() }
    }

    pub fn negate_u(&self) -> Self {
        self.map_parts(|_, p| p.negate_u())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_parts(|_, p| p.scale(c))
    }

    fn has_unit_constant(&self) -> bool {
        self.parts.first().is_some_and(|p| *p == RationalHalfQSeries::one(p.order()))
    }

    fn has_zero_constant(&self) -> bool {
        self.parts.first().is_none_or(|p| p.is_zero())
    }

    /// Formal logarithm in `z`; the `z^0` part must be exactly 1.
    /// From `z∂_z E = E · z∂_z L`: `m l_m = m e_m − Σ_{0<k<m} k l_k e_{m−k}`.
    pub fn formal_log_z(&self) -> Result<Self> {
        if !self.has_unit_constant() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        let (zorder, qorder) = (self.zorder(), self.qorder());
        let mut l = Self::zero(zorder, qorder);
        for m in 1..zorder {
            let mut acc = self.parts[m].scale(&Rational::from(m));
            for k in 1..m {
                if l.parts[k].is_zero() || self.parts[m - k].is_zero() {
                    continue;
                }
                acc = &acc - &(&l.parts[k] * &self.parts[m - k]).scale(&Rational::from(k));
            }
            l.parts[m] = acc.scale(&Rational::from((1, m as i64)));
        }
        Ok(l)
    }

    /// Formal exponential in `z`; the `z^0` part must vanish.
    /// `m f_m = Σ_{0<k≤m} k l_k f_{m−k}`.
    pub fn formal_exp_z(&self) -> Result<Self> {
        if !self.has_zero_constant() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let (zorder, qorder) = (self.zorder(), self.qorder());
        let mut f = Self::one(zorder, qorder);
        for m in 1..zorder {
            let mut acc = RationalHalfQSeries::zero(qorder);
            for k in 1..=m {
                if self.parts[k].is_zero() || f.parts[m - k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.parts[k] * &f.parts[m - k]).scale(&Rational::from(k));
            }
            f.parts[m] = acc.scale(&Rational::from((1, m as i64)));
        }
        Ok(f)
    }
}

impl Add for &BivariateQZSeries {
    type Output = BivariateQZSeries;
    fn add(self, rhs: &BivariateQZSeries) -> BivariateQZSeries {
        let zorder = self.zorder().min(rhs.zorder());
        BivariateQZSeries { parts: (0..zorder).map(|m| &self.parts[m] + &rhs.parts[m]).collect() }
    }
}

impl Sub for &BivariateQZSeries {
    type Output = BivariateQZSeries;
    fn sub(self, rhs: &BivariateQZSeries) -> BivariateQZSeries {
        let zorder = self.zorder().min(rhs.zorder());
        BivariateQZSeries { parts: (0..zorder).map(|m| &self.parts[m] - &rhs.parts[m]).collect() }
    }
}

impl Mul for &BivariateQZSeries {
    type Output = BivariateQZSeries;
    fn mul(self, rhs: &BivariateQZSeries) -> BivariateQZSeries {
        let zorder = self.zorder().min(rhs.zorder());
        let qorder = self.qorder().min(rhs.qorder());
        let mut out = BivariateQZSeries::zero(zorder, qorder);
        for i in 0..zorder {
            if self.parts[i].is_zero() {
                continue;
            }
            for j in 0..zorder - i {
                if rhs.parts[j].is_zero() {
                    continue;
                }
                out.parts[i + j] = &out.parts[i + j] + &(&self.parts[i] * &rhs.parts[j]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(coeffs: &[i64], order: u32) -> RationalHalfQSeries {
        RationalHalfQSeries::from_terms(coeffs.iter().enumerate().map(|(k, c)| (k as u32, Rational::from(*c))), order)
    }

    #[test]
    fn difference_of_squares() {
        let a = series(&[1, 1], 3);
        let b = series(&[1, -1], 3);
        assert_eq!(&a * &b, series(&[1, 0, -1], 3));
    }

    #[test]
    fn one_is_identity() {
        let s = series(&[3, 0, -2, 5], 6);
        assert_eq!(&RationalHalfQSeries::one(6) * &s, s);
    }

    #[test]
    fn geometric_squared() {
        let g = series(&[1, 1, 1, 1], 4);
        assert_eq!(&g * &g, series(&[1, 2, 3, 4], 4));
    }

    #[test]
    fn order_is_min_propagating() {
        let a = series(&[1, 1, 1, 1, 1, 1], 6);
        let b = series(&[1, 1], 2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }

    #[test]
    fn inverse_of_one_minus_q() {
        // 1/(1 - u^2) = 1 + u^2 + u^4 + …
        let s = series(&[1, 0, -1], 7);
        assert_eq!(s.inverse().unwrap(), series(&[1, 0, 1, 0, 1, 0, 1], 7));
    }

    #[test]
    fn negate_u_twice_is_identity() {
        let s = series(&[1, 2, 3, 4, 5], 5);
        assert_ne!(s.negate_u(), s);
        assert_eq!(s.negate_u().negate_u(), s);
    }

    #[test]
    fn mercator() {
        // log(1 + z) with u-independent coefficients
        let one = RationalHalfQSeries::one(4);
        let s = BivariateQZSeries::from_parts(vec![one.clone(), one.clone(), RationalHalfQSeries::zero(4), RationalHalfQSeries::zero(4), RationalHalfQSeries::zero(4)]);
        let l = s.formal_log_z().unwrap();
        let expect = [0i64, 1, -1, 1, -1];
        for (m, e) in expect.iter().enumerate() {
            let c = if m == 0 { Rational::new() } else { Rational::from((*e, m as i64)) };
            assert_eq!(l.part(m).coeff(0), c, "z^{m}");
        }
        assert_eq!(l.formal_exp_z().unwrap(), s);
    }

    #[test]
    fn log_of_one_is_zero() {
        let l = BivariateQZSeries::one(4, 5).formal_log_z().unwrap();
        assert!(l.parts().iter().all(|p| p.is_zero()));
    }

    #[test]
    fn log_rejects_bad_constant() {
        let s = BivariateQZSeries::zero(3, 3);
        assert!(s.formal_log_z().is_err());
    }
}
