//! Finite-dimensional representations over `Q`.

use std::ops::Mul;
use std::sync::Arc;

use rug::Rational;

use super::graph::Quiver;
use crate::error::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::new(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::from(1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Representation(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_integers(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::from_rows(rows, cols, data.iter().map(|&v| Rational::from(v)).collect())
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|q| *q == 0)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (r, c) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..c {
            let Some(p) = (rank..r).find(|&i| m[i * c + col] != 0) else { continue };
            for j in 0..c {
                m.swap(p * c + j, rank * c + j);
            }
            let pivot = m[rank * c + col].clone();
            for i in rank + 1..r {
                if m[i * c + col] == 0 {
                    continue;
                }
                let f = Rational::from(&m[i * c + col] / &pivot);
                for j in col..c {
                    let t = Rational::from(&f * &m[rank * c + j]);
                    m[i * c + j] -= t;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if *a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += Rational::from(a * rhs.get(k, j));
                }
            }
        }
        out
    }
}

/// A representation: a vector space `Q^{d_v}` per vertex and a
/// `d_target × d_source` matrix per arrow, satisfying the relations.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep {
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

impl QuiverRep {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() || maps.len() != quiver.arrows().len() {
            return Err(Error::Representation("dimension or map count does not match the quiver".into()));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Representation(format!("map {} has shape {:?}", a.label, m.shape())));
            }
        }
        let rep = QuiverRep { quiver, dims, maps };
        if let Some(k) = rep.violated_relation() {
            return Err(Error::Representation(format!("relation {k} does not hold")));
        }
        Ok(rep)
    }

    /// Representation with every map zero.
    pub fn semisimple(quiver: Arc<Quiver>, dims: Vec<usize>) -> Result<Self> {
        let maps = quiver.arrows().iter().map(|a| RatMatrix::zeros(dims[a.target], dims[a.source])).collect();
        Self::new(quiver, dims, maps)
    }

    /// Thin representation from per-arrow scalars; arrows with an endpoint
    /// of dimension zero get the empty matrix.
    pub fn thin(quiver: Arc<Quiver>, support: &[bool], scalars: &[i64]) -> Result<Self> {
        let dims: Vec<usize> = support.iter().map(|&b| b as usize).collect();
        let maps = quiver
            .arrows()
            .iter()
            .zip(scalars)
            .map(|(a, &c)| {
                let (r, s) = (dims[a.target], dims[a.source]);
                if r * s == 1 {
                    RatMatrix::from_integers(1, 1, &[c])
                } else {
                    Ok(RatMatrix::zeros(r, s))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(quiver, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, arrow: usize) -> &RatMatrix {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_thin(&self) -> bool {
        self.dims.iter().all(|&d| d <= 1)
    }

    /// Matrix of a path in traversal order.
    pub fn path_map(&self, path: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::identity(self.dims[self.quiver.arrows()[path[0]].source]);
        for &a in path {
            m = &self.maps[a] * &m;
        }
        m
    }

    fn violated_relation(&self) -> Option<usize> {
        self.quiver.relations().iter().position(|r| self.path_map(&r.lhs) != self.path_map(&r.rhs))
    }

    /// `true` iff every sufficiently long path acts by zero. The images
    /// `U_{k+1}(t) = Σ_{a: s→t} a(U_k(s))` must reach zero within
    /// `total_dim` steps.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.quiver.vertex_count();
        let mut spans: Vec<RatMatrix> = self.dims.iter().map(|&d| RatMatrix::identity(d)).collect();
        for _ in 0..=self.total_dim() {
            if spans.iter().all(|m| m.rank() == 0) {
                return true;
            }
            let mut columns: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); n];
            for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
                let img = m * &spans[a.source];
                let (r, c) = img.shape();
                columns[a.target].extend((0..c).map(|j| (0..r).map(|i| img.get(i, j).clone()).collect()));
            }
            spans = columns
                .into_iter()
                .zip(&self.dims)
                .map(|(cs, &d)| {
                    let cs = independent(cs);
                    let data = (0..d).flat_map(|i| cs.iter().map(move |col| col[i].clone())).collect();
                    RatMatrix { rows: d, cols: cs.len(), data }
                })
                .collect();
        }
        spans.iter().all(|m| m.rank() == 0)
    }
}

/// A basis of the span of `vs`, in reduced form.
fn independent(vs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    for mut v in vs {
        for (p, b) in &basis {
            if v[*p] != 0 {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= Rational::from(&f * y);
                }
            }
        }
        if let Some(p) = v.iter().position(|x| *x != 0) {
            let inv = Rational::from(v[p].recip_ref());
            v.iter_mut().for_each(|x| *x *= &inv);
            for (_, b) in basis.iter_mut() {
                if b[p] != 0 {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x -= Rational::from(&f * y);
                    }
                }
            }
            basis.push((p, v));
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}
