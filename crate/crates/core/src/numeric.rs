//! Arbitrary-precision complex helpers and cached constants.
//!
//! Complex values are MPFR-backed [`rug::Complex`]; every value carries its
//! own precision and helpers never round through `f64` unless the name says
//! so.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

pub type BigComplex = Complex;

/// Working precision used when a caller does not specify one.
pub const DEFAULT_PRECISION: u32 = 256;

/// Smallest precision accepted by the public entry points.
pub const MIN_PRECISION: u32 = 64;

/// Extra bits carried internally on top of the requested precision.
pub const GUARD_BITS: u32 = 32;

pub fn check_precision(prec: u32) -> Result<()> {
    if prec < MIN_PRECISION {
        return Err(Error::Precision { min: MIN_PRECISION, got: prec });
    }
    Ok(())
}

/// Constants shared by the period computations, evaluated once per precision.
#[derive(Debug)]
pub struct Constants {
    pub prec: u32,
    pub pi: Float,
    /// `2πi`
    pub two_pi_i: Complex,
    pub zeta2: Float,
    pub zeta3: Float,
    /// `ξ^k = exp(2πik/5)` for `k = 0..5`.
    pub xi_pow: [Complex; 5],
    /// `Γ(k/5)` for `k = 1..=4`; index 0 is unused and holds `Γ(1)`.
    pub gamma_fifth: [Float; 5],
}

impl Constants {
    fn compute(prec: u32) -> Self {
        let pi = Float::with_val(prec, Constant::Pi);
        let two_pi_i = Complex::with_val(prec, (0, Float::with_val(prec, &pi * 2u32)));
        let zeta2 = Float::with_val(prec, Float::zeta_u(2));
        let zeta3 = Float::with_val(prec, Float::zeta_u(3));
        let xi_pow = std::array::from_fn(|k| {
            let angle = Float::with_val(prec, &pi * (2 * k as u32)) / 5u32;
            let (s, c) = angle.sin_cos(Float::new(prec));
            Complex::with_val(prec, (c, s))
        });
        let gamma_fifth = std::array::from_fn(|k| {
            let k = if k == 0 { 5 } else { k as u32 };
            Float::with_val(prec, Rational::from((k, 5u32))).gamma()
        });
        Constants { prec, pi, two_pi_i, zeta2, zeta3, xi_pow, gamma_fifth }
    }

    /// Cached constants for `prec` bits.
    pub fn get(prec: u32) -> Arc<Constants> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Constants>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry(prec).or_insert_with(|| Arc::new(Constants::compute(prec))).clone()
    }

    /// `ξ^k` for any integer `k`.
    pub fn xi(&self, k: i64) -> &Complex {
        &self.xi_pow[k.rem_euclid(5) as usize]
    }
}

pub fn zero(prec: u32) -> Complex {
    Complex::new(prec)
}

pub fn one(prec: u32) -> Complex {
    Complex::with_val(prec, 1)
}

pub fn from_f64(prec: u32, re: f64, im: f64) -> Complex {
    Complex::with_val(prec, (re, im))
}

pub fn from_rational(prec: u32, q: &Rational) -> Complex {
    Complex::with_val(prec, q)
}

/// Parses decimal strings such as `"1e-10"` into a complex value.
pub fn parse_complex(prec: u32, re: &str, im: &str) -> Result<Complex> {
    let re = Float::parse(re.trim()).map_err(|e| Error::Parse(format!("{re}: {e}")))?;
    let im = Float::parse(im.trim()).map_err(|e| Error::Parse(format!("{im}: {e}")))?;
    Ok(Complex::with_val(prec, (re, im)))
}

pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Principal argument in `(-π, π]`.
pub fn arg(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.arg_ref())
}

pub fn abs_f64(z: &Complex) -> f64 {
    abs(z).to_f64()
}

pub fn arg_f64(z: &Complex) -> f64 {
    arg(z).to_f64()
}

pub fn to_c64(z: &Complex) -> (f64, f64) {
    (z.real().to_f64(), z.imag().to_f64())
}

pub fn is_finite(z: &Complex) -> bool {
    z.real().is_finite() && z.imag().is_finite()
}

/// Principal logarithm on the slit plane `ℂ∖(−∞,0]`; the cut is approached
/// from above, so negative reals get argument `+π`.
pub fn principal_log(z: &Complex) -> Complex {
    Complex::with_val(z.prec(), z.ln_ref())
}

/// Integer power of a complex value.
pub fn powi(z: &Complex, n: i32) -> Complex {
    Complex::with_val(z.prec(), z.pow(n))
}

pub fn integer_to_complex(prec: u32, n: &Integer) -> Complex {
    Complex::with_val(prec, n)
}

/// Signed decimal rendering with `digits` significant digits.
pub fn float_to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

/// Dense square complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let (re, im) = to_c64(self.get(i, j));
                    format!("{re:.10}{im:+.10}i")
                })
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn zeros(n: usize, prec: u32) -> Self {
        CMatrix { n, data: vec![Complex::new(prec); n * n] }
    }

    pub fn identity(n: usize, prec: u32) -> Self {
        let mut m = Self::zeros(n, prec);
        for i in 0..n {
            m.set(i, i, one(prec));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        CMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn prec(&self) -> u32 {
        self.data.first().map(|c| c.prec().0).unwrap_or(MIN_PRECISION)
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.data[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Complex {
        &mut self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let prec = self.prec().max(other.prec());
        let mut out = CMatrix::zeros(self.n, prec);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Complex::new(prec);
                for k in 0..self.n {
                    acc += Complex::with_val(prec, self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        let prec = self.prec();
        (0..self.n)
            .map(|i| {
                let mut acc = Complex::new(prec);
                for (k, vk) in v.iter().enumerate() {
                    acc += Complex::with_val(prec, self.get(i, k) * vk);
                }
                acc
            })
            .collect()
    }

    /// Gauss-Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.n;
        let prec = self.prec();
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n, prec);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r1, &r2| {
                    abs(a.get(r1, col)).partial_cmp(&abs(a.get(r2, col))).unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty range");
            if a.get(pivot, col).is_zero() {
                return Err(Error::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                *a.get_mut(col, j) /= &p;
                *inv.get_mut(col, j) /= &p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = Complex::with_val(prec, &f * a.get(col, j));
                    *a.get_mut(r, j) -= t;
                    let t = Complex::with_val(prec, &f * inv.get(col, j));
                    *inv.get_mut(r, j) -= t;
                }
            }
        }
        Ok(inv)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| abs_f64(&Complex::with_val(a.prec(), a - b)))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(abs_f64).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_cached_and_correct() {
        let c = Constants::get(128);
        let again = Constants::get(128);
        assert!(Arc::ptr_eq(&c, &again));
        let z2 = Float::with_val(128, &c.pi * &c.pi) / 6u32;
        assert!((z2 - &c.zeta2).abs().to_f64() < 1e-35);
        assert!((c.zeta3.to_f64() - 1.202_056_903_159_594_2).abs() < 1e-15);
        // ξ^5 = 1
        let x5 = Complex::with_val(128, c.xi(1).pow(5u32));
        assert!((x5.real().to_f64() - 1.0).abs() < 1e-30);
        assert!(x5.imag().to_f64().abs() < 1e-30);
        assert_eq!(c.xi(-1), c.xi(4));
    }

    #[test]
    fn log_branch_on_negative_axis() {
        let z = from_f64(64, -2.0, 0.0);
        let l = principal_log(&z);
        assert!((l.imag().to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn inverse_roundtrip() {
        let p = 128;
        let rows = vec![
            vec![from_f64(p, 2.0, 1.0), from_f64(p, 0.0, 1.0)],
            vec![from_f64(p, 1.0, 0.0), from_f64(p, 3.0, -1.0)],
        ];
        let m = CMatrix::from_rows(rows);
        let prod = m.mul(&m.inverse().unwrap());
        assert!(prod.max_abs_diff(&CMatrix::identity(2, p)) < 1e-30);
        assert_eq!(CMatrix::zeros(2, p).inverse(), Err(Error::Singular));
    }

    #[test]
    fn rejects_low_precision() {
        assert!(check_precision(32).is_err());
        assert!(check_precision(64).is_ok());
    }
}
