//! The quantum torus `y_1 y_2 = q y_2 y_1` over rational functions of
//! `u = q^{1/2}`, and the pentagon identity for the quantum dilogarithm.
//!
//! Monomials are normal ordered `y_1^m y_2^n` with the `y_2`-powers on the
//! right, so `(y_1^a y_2^b)(y_1^c y_2^d) = q^{−bc} y_1^{a+c} y_2^{b+d}`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use rug::Rational;

use crate::error::{Error, Result};

/// Laurent polynomial in `u`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    c: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut p = LaurentPoly::default();
        if c != 0 {
            p.c.insert(k, c);
        }
        p
    }

    pub fn one() -> Self {
        Self::monomial(Rational::from(1), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.c.get(&k).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, k: i64, v: Rational) {
        let e = self.c.entry(k).or_default();
        *e += v;
        if *e == 0 {
            self.c.remove(&k);
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { c: self.c.iter().map(|(e, v)| (e + k, v.clone())).collect() }
    }

    pub fn negate_u(&self) -> Self {
        LaurentPoly { c: self.c.iter().map(|(e, v)| (*e, if e % 2 == 0 { v.clone() } else { Rational::from(-v) })).collect() }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.c {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (i, a) in &self.c {
            for (j, b) in &rhs.c {
                out.add_term(i + j, Rational::from(a * b));
            }
        }
        out
    }
}

/// `num/den` with a nonzero denominator; not reduced.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Vanishing("denominator"));
        }
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::default(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale_u(&self, k: i64) -> Self {
        RatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn negate_u(&self) -> Self {
        RatFunc { num: self.num.negate_u(), den: self.den.negate_u() }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RatFunc { num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den), den: &self.den * &rhs.den }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

/// `Σ c_{m,n} y_1^m y_2^n`, truncated at total degree `m + n ≤ degree`.
#[derive(Clone, Debug)]
pub struct QuantumTorusElement {
    terms: BTreeMap<(u32, u32), RatFunc>,
    degree: u32,
}

impl PartialEq for QuantumTorusElement {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl QuantumTorusElement {
    pub fn zero(degree: u32) -> Self {
        QuantumTorusElement { terms: BTreeMap::new(), degree }
    }

    pub fn monomial(c: RatFunc, m: u32, n: u32, degree: u32) -> Self {
        let mut s = Self::zero(degree);
        if m + n <= degree && !c.is_zero() {
            s.terms.insert((m, n), c);
        }
        s
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, m: u32, n: u32) -> RatFunc {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// First `(m, n)`, by total degree then `m`, where the coefficients differ.
    pub fn first_difference(&self, other: &Self) -> Option<(u32, u32)> {
        let deg = self.degree.min(other.degree);
        for d in 0..=deg {
            for m in 0..=d {
                if self.coeff(m, d - m) != other.coeff(m, d - m) {
                    return Some((m, d - m));
                }
            }
        }
        None
    }
}

impl Add for &QuantumTorusElement {
    type Output = QuantumTorusElement;
    fn add(self, rhs: &QuantumTorusElement) -> QuantumTorusElement {
        let degree = self.degree.min(rhs.degree);
        let mut out = QuantumTorusElement::zero(degree);
        for (k, v) in self.terms.iter().chain(&rhs.terms) {
            if k.0 + k.1 <= degree {
                let cur = out.coeff(k.0, k.1);
                out.terms.insert(*k, &cur + v);
            }
        }
        out
    }
}

impl Mul for &QuantumTorusElement {
    type Output = QuantumTorusElement;
    fn mul(self, rhs: &QuantumTorusElement) -> QuantumTorusElement {
        let degree = self.degree.min(rhs.degree);
        let mut out = QuantumTorusElement::zero(degree);
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                if a + b + c + d > degree {
                    continue;
                }
                // q^{−bc} = u^{−2bc}
                let term = (x * y).scale_u(-2 * (b * c) as i64);
                let key = (a + c, b + d);
                let cur = out.coeff(key.0, key.1);
                out.terms.insert(key, &cur + &term);
            }
        }
        out
    }
}

/// Coefficient of `z^m` in `E` as an exact rational function:
/// `(−u)^{m²} / Π_{k<m}(u^{2m} − u^{2k})`.
pub fn dilog_coefficient_exact(m: u32) -> RatFunc {
    let sign = if (m * m).is_multiple_of(2) { 1 } else { -1 };
    let num = LaurentPoly::monomial(Rational::from(sign), (m * m) as i64);
    let mut den = LaurentPoly::one();
    for k in 0..m {
        let f = &LaurentPoly::monomial(Rational::from(1), 2 * m as i64) + &LaurentPoly::monomial(Rational::from(-1), 2 * k as i64);
        den = &den * &f;
    }
    RatFunc { num, den }
}

/// Normalization of `E` used in the pentagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DilogNormalization {
    /// The display as written.
    AsDisplayed,
    /// After `q^{1/2} ↦ −q^{1/2}`, the normalization the display was
    /// obtained from.
    Substituted,
}

/// `E(y)` for `y = c·y_1^a y_2^b`, through total degree `degree`.
pub fn dilog_of(c: &RatFunc, a: u32, b: u32, degree: u32, norm: DilogNormalization) -> QuantumTorusElement {
    let mut out = QuantumTorusElement::monomial(RatFunc::from_poly(LaurentPoly::one()), 0, 0, degree);
    let y = QuantumTorusElement::monomial(c.clone(), a, b, degree);
    let mut power = QuantumTorusElement::monomial(RatFunc::from_poly(LaurentPoly::one()), 0, 0, degree);
    let step = a + b;
    let mut m = 1;
    while step > 0 && m * step <= degree {
        power = &power * &y;
        let mut e = dilog_coefficient_exact(m);
        if norm == DilogNormalization::Substituted {
            e = e.negate_u();
        }
        let scaled = QuantumTorusElement { terms: power.terms.iter().map(|(k, v)| (*k, v * &e)).collect(), degree };
        out = &out + &scaled;
        m += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonReport {
    pub holds: bool,
    pub first_discrepancy: Option<(u32, u32)>,
}

/// Largest total degree accepted by [`pentagon_check`].
pub const MAX_PENTAGON_DEGREE: u32 = 6;

fn pentagon(order: u32, y12_twist: i64, norm: DilogNormalization) -> Result<PentagonReport> {
    if order > MAX_PENTAGON_DEGREE {
        return Err(Error::OrderTooLarge { requested: order as usize, max: MAX_PENTAGON_DEGREE as usize });
    }
    let one = RatFunc::from_poly(LaurentPoly::one());
    let e1 = dilog_of(&one, 1, 0, order, norm);
    let e2 = dilog_of(&one, 0, 1, order, norm);
    let e12 = dilog_of(&one.scale_u(y12_twist), 1, 1, order, norm);
    let lhs = &e1 * &e2;
    let rhs = &(&e2 * &e12) * &e1;
    let first_discrepancy = lhs.first_difference(&rhs);
    Ok(PentagonReport { holds: first_discrepancy.is_none(), first_discrepancy })
}

/// `E(y_1)E(y_2) = E(y_2)E(y_12)E(y_1)` with `y_12 = q^{−1/2} y_1 y_2`,
/// through total degree `order`, in the [`DilogNormalization::Substituted`]
/// normalization.
pub fn pentagon_check(order: u32) -> Result<PentagonReport> {
    pentagon(order, -1, DilogNormalization::Substituted)
}

/// [`pentagon_check`] with an explicit normalization.
pub fn pentagon_check_with(order: u32, norm: DilogNormalization) -> Result<PentagonReport> {
    pentagon(order, -1, norm)
}

/// Negative control: `y_12 = y_1 y_2` without the `q^{−1/2}`.
pub fn pentagon_control(order: u32) -> Result<PentagonReport> {
    pentagon(order, 0, DilogNormalization::Substituted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation() {
        let one = RatFunc::from_poly(LaurentPoly::one());
        let y1 = QuantumTorusElement::monomial(one.clone(), 1, 0, 4);
        let y2 = QuantumTorusElement::monomial(one.clone(), 0, 1, 4);
        let q = RatFunc::from_poly(LaurentPoly::monomial(Rational::from(1), 2));
        let lhs = &y1 * &y2;
        let rhs = &QuantumTorusElement::monomial(q, 0, 0, 4) * &(&y2 * &y1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_coefficients() {
        // u/(1−u²) written as −u/(u²−1)
        let e1 = dilog_coefficient_exact(1);
        let expect = RatFunc::new(LaurentPoly::monomial(Rational::from(1), 1), &LaurentPoly::one() + &LaurentPoly::monomial(Rational::from(-1), 2)).unwrap();
        assert_eq!(e1, expect);
    }

    #[test]
    fn pentagon_holds() {
        let r = pentagon_check(3).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(pentagon_control(3).unwrap().first_discrepancy, Some((1, 1)));
        assert!(pentagon_check(7).is_err());
    }
}
