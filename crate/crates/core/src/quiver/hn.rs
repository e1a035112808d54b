//! Harder-Narasimhan filtrations.
//!
//! Subobjects are taken in the coefficient quiver of a representation: one
//! node per basis vector, an edge `e → f` whenever `f` has a nonzero
//! coefficient in the image of `e` under some arrow. A subobject is a set of
//! nodes closed under edges. For thin representations these are all the
//! subrepresentations; for the small non-thin ones accepted here they are
//! the coordinate subrepresentations.

use rug::Complex;

use super::rep::QuiverRep;
use super::stability::StabilityData;
use crate::error::{Error, Result};

/// Largest node count handled by [`hn_filtration`].
pub const MAX_HN_NODES: usize = 20;
/// Largest total dimension of a non-thin input to [`hn_filtration`].
pub const MAX_NON_THIN_DIM: usize = 4;
/// Largest total dimension handled by [`hn_bruteforce_oracle`].
pub const MAX_ORACLE_DIM: usize = 6;

const TIE: f64 = 1e-12;

/// One semistable subquotient `Q_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HNLayer {
    /// Multiplicity of each simple.
    pub class: Vec<usize>,
    pub phase: f64,
    pub charge: Complex,
}

/// Layers from the bottom subobject `E_{n−1}` (largest phase) up to the
/// last quotient `Q_0` (smallest phase).
#[derive(Clone, Debug, PartialEq)]
pub struct HNResult {
    pub layers: Vec<HNLayer>,
}

impl HNResult {
    pub fn total_class(&self) -> Vec<usize> {
        let n = self.layers.first().map_or(0, |l| l.class.len());
        (0..n).map(|v| self.layers.iter().map(|l| l.class[v]).sum()).collect()
    }

    pub fn total_charge(&self) -> Option<Complex> {
        let mut it = self.layers.iter();
        let first = it.next()?.charge.clone();
        Some(it.fold(first, |acc, l| acc + &l.charge))
    }

    pub fn phases_strictly_decrease(&self) -> bool {
        self.layers.windows(2).all(|w| w[0].phase > w[1].phase)
    }
}

struct CoeffGraph {
    vertex: Vec<usize>,
    succ: Vec<u64>,
    nvert: usize,
}

impl CoeffGraph {
    fn new(rep: &QuiverRep) -> Self {
        let dims = rep.dims();
        let offset: Vec<usize> = dims.iter().scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        }).collect();
        let vertex: Vec<usize> = dims.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d)).collect();
        let mut succ = vec![0u64; vertex.len()];
        for (k, a) in rep.quiver().arrows().iter().enumerate() {
            let m = rep.map(k);
            for j in 0..dims[a.source] {
                for i in 0..dims[a.target] {
                    if *m.get(i, j) != 0 {
                        succ[offset[a.source] + j] |= 1 << (offset[a.target] + i);
                    }
                }
            }
        }
        CoeffGraph { vertex, succ, nvert: dims.len() }
    }

    fn full(&self) -> u64 {
        if self.vertex.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vertex.len()) - 1
        }
    }

    fn class(&self, mask: u64) -> Vec<usize> {
        let mut c = vec![0; self.nvert];
        for (i, &v) in self.vertex.iter().enumerate() {
            if mask >> i & 1 == 1 {
                c[v] += 1;
            }
        }
        c
    }

    /// `sub ⊆ within` is closed for the edges inside `within`.
    fn closed(&self, sub: u64, within: u64) -> bool {
        let outside = within & !sub;
        (0..self.vertex.len()).all(|i| sub >> i & 1 == 0 || self.succ[i] & outside == 0)
    }

    /// Nonempty closed subsets of `within`.
    fn closed_subsets(&self, within: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut sub = within;
        while sub != 0 {
            if self.closed(sub, within) {
                out.push(sub);
            }
            sub = (sub - 1) & within;
        }
        out
    }
}

fn layer(sd: &StabilityData, g: &CoeffGraph, mask: u64) -> Result<HNLayer> {
    let class = g.class(mask);
    Ok(HNLayer { phase: sd.class_phase(&class)?, charge: sd.class_charge(&class), class })
}

fn check_quiver(rep: &QuiverRep, sd: &StabilityData) -> Result<()> {
    if rep.quiver() != sd.quiver() {
        return Err(Error::QuiverMismatch);
    }
    if rep.total_dim() == 0 {
        return Err(Error::Representation("zero representation has no filtration".into()));
    }
    Ok(())
}

/// Greedy HN filtration: repeatedly split off the subobject of largest
/// phase (ties: larger dimension, then the lexicographically first node
/// set) of the remaining quotient.
pub fn hn_filtration(rep: &QuiverRep, sd: &StabilityData) -> Result<HNResult> {
    check_quiver(rep, sd)?;
    let n = rep.total_dim();
    if !rep.is_thin() && n > MAX_NON_THIN_DIM {
        return Err(Error::Unsupported(format!("non-thin representation of dimension {n}")));
    }
    if n > MAX_HN_NODES {
        return Err(Error::Unsupported(format!("thin representation with {n} > {MAX_HN_NODES} vertices")));
    }
    let g = CoeffGraph::new(rep);
    let mut remaining = g.full();
    let mut layers = Vec::new();
    while remaining != 0 {
        let mut best: Option<(u64, f64, u32)> = None;
        for sub in g.closed_subsets(remaining) {
            let phase = sd.class_phase(&g.class(sub))?;
            let dim = sub.count_ones();
            let better = match best {
                None => true,
                Some((b, bp, bd)) => {
                    phase > bp + TIE || ((phase - bp).abs() <= TIE && (dim > bd || (dim == bd && sub.reverse_bits() > b.reverse_bits())))
                }
            };
            if better {
                best = Some((sub, phase, dim));
            }
        }
        let (sub, _, _) = best.expect("a nonempty set has itself as a closed subset");
        layers.push(layer(sd, &g, sub)?);
        remaining &= !sub;
    }
    Ok(HNResult { layers })
}

/// Whether the subquotient on `f` is semistable.
fn semistable(sd: &StabilityData, g: &CoeffGraph, f: u64) -> Result<bool> {
    let phi = sd.class_phase(&g.class(f))?;
    for sub in g.closed_subsets(f) {
        if sd.class_phase(&g.class(sub))? > phi + TIE {
            return Ok(false);
        }
    }
    Ok(true)
}

fn search(sd: &StabilityData, g: &CoeffGraph, remaining: u64, bound: f64, chain: &mut Vec<u64>, found: &mut Vec<Vec<u64>>) -> Result<()> {
    if remaining == 0 {
        found.push(chain.clone());
        return Ok(());
    }
    for f in g.closed_subsets(remaining) {
        let phi = sd.class_phase(&g.class(f))?;
        if phi < bound - TIE && semistable(sd, g, f)? {
            chain.push(f);
            search(sd, g, remaining & !f, phi, chain, found)?;
            chain.pop();
        }
    }
    Ok(())
}

/// Reference HN filtration by exhaustive search: every chain of
/// subobjects whose subquotients are semistable with strictly decreasing
/// phases. Exactly one such chain must exist.
pub fn hn_bruteforce_oracle(rep: &QuiverRep, sd: &StabilityData) -> Result<HNResult> {
    check_quiver(rep, sd)?;
    if rep.total_dim() > MAX_ORACLE_DIM {
        return Err(Error::Unsupported(format!("oracle limited to total dimension {MAX_ORACLE_DIM}")));
    }
    let g = CoeffGraph::new(rep);
    let mut found = Vec::new();
    search(sd, &g, g.full(), f64::INFINITY, &mut Vec::new(), &mut found)?;
    if found.len() != 1 {
        return Err(Error::Unsupported(format!("{} filtrations satisfy the HN conditions", found.len())));
    }
    let layers = found[0].iter().map(|&m| layer(sd, &g, m)).collect::<Result<_>>()?;
    Ok(HNResult { layers })
}

/// `true` iff the HN filtration has one layer.
pub fn is_semistable(rep: &QuiverRep, sd: &StabilityData) -> Result<bool> {
    Ok(hn_filtration(rep, sd)?.layers.len() == 1)
}

/// Every proper nonzero subobject has strictly smaller phase.
pub fn is_stable(rep: &QuiverRep, sd: &StabilityData) -> Result<bool> {
    check_quiver(rep, sd)?;
    if rep.total_dim() > MAX_HN_NODES {
        return Err(Error::Unsupported(format!("total dimension {}", rep.total_dim())));
    }
    let g = CoeffGraph::new(rep);
    let full = g.full();
    let phi = sd.class_phase(&g.class(full))?;
    for sub in g.closed_subsets(full) {
        if sub != full && sd.class_phase(&g.class(sub))? >= phi - TIE {
            return Ok(false);
        }
    }
    Ok(true)
}
