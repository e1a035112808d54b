//! Exact 4×4 rational matrices and the printed monodromy/connection data.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Rational};

use crate::error::{Error, Result};
use crate::numeric::CMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix4 {
    a: [[Rational; 4]; 4],
}

impl fmt::Debug for RationalMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.a {
            let r: Vec<String> = row.iter().map(|q| q.to_string()).collect();
            writeln!(f, "  {}", r.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix4 {
    pub fn zero() -> Self {
        RationalMatrix4 { a: Default::default() }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.a[i][i] = Rational::from(1);
        }
        m
    }

    pub fn from_rows(a: [[Rational; 4]; 4]) -> Self {
        RationalMatrix4 { a }
    }

    /// Rows of `(numerator, denominator)` pairs.
    pub fn from_fractions(rows: [[(i64, i64); 4]; 4]) -> Self {
        RationalMatrix4 { a: rows.map(|r| r.map(|(p, q)| Rational::from((p, q)))) }
    }

    pub fn from_integers(rows: [[i64; 4]; 4]) -> Self {
        RationalMatrix4 { a: rows.map(|r| r.map(Rational::from)) }
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i][j]
    }

    /// 1-based entry, matching printed matrix indices.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.a[i - 1][j - 1]
    }

    /// 0-based row.
    pub fn row(&self, i: usize) -> &[Rational; 4] {
        &self.a[i]
    }

    pub fn rows(&self) -> &[[Rational; 4]; 4] {
        &self.a
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|q| *q == 0)
    }

    pub fn trace(&self) -> Rational {
        (0..4).map(|i| self.a[i][i].clone()).sum()
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix4 { a: std::array::from_fn(|i| std::array::from_fn(|j| self.a[j][i].clone())) }
    }

    /// Exact determinant by fraction-exact elimination.
    pub fn det(&self) -> Rational {
        let mut m = self.a.clone();
        let mut det = Rational::from(1);
        for col in 0..4 {
            let Some(p) = (col..4).find(|&r| m[r][col] != 0) else {
                return Rational::new();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..4 {
                if m[r][col] == 0 {
                    continue;
                }
                let f = Rational::from(&m[r][col] / &pivot);
                let (top, bottom) = m.split_at_mut(r);
                for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *dst -= Rational::from(&f * src);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut m = self.a.clone();
        let mut inv = Self::identity().a;
        for col in 0..4 {
            let p = (col..4).find(|&r| m[r][col] != 0).ok_or(Error::Singular)?;
            m.swap(p, col);
            inv.swap(p, col);
            let pivot = m[col][col].clone();
            for j in 0..4 {
                m[col][j] /= &pivot;
                inv[col][j] /= &pivot;
            }
            for r in 0..4 {
                if r == col || m[r][col] == 0 {
                    continue;
                }
                let f = m[r][col].clone();
                for j in 0..4 {
                    let t = Rational::from(&f * &m[col][j]);
                    m[r][j] -= t;
                    let t = Rational::from(&f * &inv[col][j]);
                    inv[r][j] -= t;
                }
            }
        }
        Ok(RationalMatrix4 { a: inv })
    }

    /// `self^e` for any integer `e`; negative powers need an invertible matrix.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational; 4]) -> [Rational; 4] {
        std::array::from_fn(|i| (0..4).map(|j| Rational::from(&self.a[i][j] * &v[j])).sum())
    }

    pub fn to_cmatrix(&self, prec: u32) -> CMatrix {
        CMatrix::from_rows(self.a.iter().map(|r| r.iter().map(|q| Complex::with_val(prec, q)).collect()).collect())
    }
}

impl Mul for &RationalMatrix4 {
    type Output = RationalMatrix4;
    fn mul(self, rhs: &RationalMatrix4) -> RationalMatrix4 {
        RationalMatrix4 {
            a: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..4).map(|k| Rational::from(&self.a[i][k] * &rhs.a[k][j])).sum())
            }),
        }
    }
}

impl Add for &RationalMatrix4 {
    type Output = RationalMatrix4;
    fn add(self, rhs: &RationalMatrix4) -> RationalMatrix4 {
        RationalMatrix4 {
            a: std::array::from_fn(|i| std::array::from_fn(|j| Rational::from(&self.a[i][j] + &rhs.a[i][j]))),
        }
    }
}

impl Sub for &RationalMatrix4 {
    type Output = RationalMatrix4;
    fn sub(self, rhs: &RationalMatrix4) -> RationalMatrix4 {
        RationalMatrix4 {
            a: std::array::from_fn(|i| std::array::from_fn(|j| Rational::from(&self.a[i][j] - &rhs.a[i][j]))),
        }
    }
}

impl Neg for &RationalMatrix4 {
    type Output = RationalMatrix4;
    fn neg(self) -> RationalMatrix4 {
        RationalMatrix4 { a: std::array::from_fn(|i| std::array::from_fn(|j| Rational::from(-&self.a[i][j]))) }
    }
}

/// `M_∞`, `M` and `N` as printed.
#[derive(Clone, Debug, PartialEq)]
pub struct BuiltinMatrices {
    /// Gepner-point monodromy on `Π_B`.
    pub m_inf: RationalMatrix4,
    /// Gepner-point monodromy on `Π_B^∞`.
    pub m: RationalMatrix4,
    /// Connection matrix, `Π_B = N Π_B^∞`.
    pub n: RationalMatrix4,
}

pub fn builtin_matrices() -> BuiltinMatrices {
    let m_inf = RationalMatrix4::from_integers([[1, 0, 0, -1], [-1, 1, 0, 1], [-3, -5, 1, 3], [5, -8, 1, -4]]);
    let m = RationalMatrix4::from_integers([[0, 1, 0, 0], [0, 0, 1, 0], [-1, -1, -1, -1], [1, 0, 0, 0]]);
    let n = RationalMatrix4::from_fractions([
        [(1, 1), (0, 1), (0, 1), (0, 1)],
        [(-2, 5), (2, 5), (1, 5), (-1, 5)],
        [(-21, 5), (1, 5), (3, 5), (-8, 5)],
        [(1, 1), (-1, 1), (0, 1), (0, 1)],
    ]);
    BuiltinMatrices { m_inf, m, n }
}

/// One identity from [`verify_matrix_identities`].
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixReport {
    pub checks: Vec<IdentityCheck>,
    /// The exponent `ε ∈ {+1, −1}` with `N M^ε N^{-1} = M_∞`, if any.
    pub epsilon: Option<i32>,
    pub det_n: Rational,
    pub trace_m_inf: Rational,
}

impl MatrixReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Exact checks of `M_∞^5 = I`, `M^5 = I`, `Σ_{i<5} M_∞^i = 0`,
/// `N M^ε N^{-1} = M_∞` and `det N ≠ 0`.
pub fn verify_matrix_identities() -> MatrixReport {
    verify_identities_of(&builtin_matrices())
}

pub fn verify_identities_of(b: &BuiltinMatrices) -> MatrixReport {
    let pow = |m: &RationalMatrix4, e: i64| m.pow(e).ok();
    let mut sum = RationalMatrix4::zero();
    let mut p = RationalMatrix4::identity();
    for _ in 0..5 {
        sum = &sum + &p;
        p = &p * &b.m_inf;
    }
    let det_n = b.n.det();
    let epsilon = b.n.inverse().ok().and_then(|n_inv| {
        [1i32, -1].into_iter().find(|&e| {
            pow(&b.m, e as i64).map(|me| &(&b.n * &me) * &n_inv == b.m_inf).unwrap_or(false)
        })
    });
    let checks = vec![
        IdentityCheck { name: "M_inf^5 = I", passed: pow(&b.m_inf, 5).is_some_and(|m| m.is_identity()) },
        IdentityCheck { name: "M^5 = I", passed: pow(&b.m, 5).is_some_and(|m| m.is_identity()) },
        IdentityCheck { name: "sum_{i=0}^{4} M_inf^i = 0", passed: sum.is_zero() },
        IdentityCheck { name: "det N != 0", passed: det_n != 0 },
        IdentityCheck { name: "N M^eps N^-1 = M_inf", passed: epsilon.is_some() },
    ];
    MatrixReport { checks, epsilon, det_n, trace_m_inf: b.m_inf.trace() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_entries() {
        let b = builtin_matrices();
        assert_eq!(*b.m_inf.entry(1, 1), 1);
        assert_eq!(b.m_inf.row(3), &[5, -8, 1, -4].map(Rational::from));
        assert_eq!(b.n.row(3), &[1, -1, 0, 0].map(Rational::from));
        assert_eq!(b.m.row(3), &[1, 0, 0, 0].map(Rational::from));
        assert_eq!(*b.n.entry(3, 1), Rational::from((-21, 5)));
    }

    #[test]
    fn identities_hold() {
        let r = verify_matrix_identities();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.epsilon, Some(1));
        assert_eq!(r.trace_m_inf, -1);
        assert_eq!(r.det_n, Rational::from((1, 5)));
    }

    #[test]
    fn corrupted_matrix_is_reported() {
        let mut b = builtin_matrices();
        let mut rows = b.m_inf.rows().clone();
        rows[3][3] = Rational::from(-3);
        b.m_inf = RationalMatrix4::from_rows(rows);
        let r = verify_identities_of(&b);
        assert!(!r.all_passed());
    }

    #[test]
    fn det_and_inverse_agree() {
        let a = RationalMatrix4::from_integers([[2, 1, 0, 0], [1, 3, 1, 0], [0, 1, 4, 1], [0, 0, 1, 5]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        // cofactor expansion by hand
        assert_eq!(a.det(), 2 * (3 * 19 - 5) - 19);
        assert_eq!(a.transpose().det(), a.det());
    }
}
