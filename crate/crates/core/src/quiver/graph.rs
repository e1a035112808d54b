//! Quivers with commutativity relations.
//!
//! Paths are written in traversal order: `[a, b']` is "first `a`, then
//! `b'`", i.e. the composition usually printed as `b'a`.

use std::collections::HashMap;

use crate::charges::SimpleIndex;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A formal equality `lhs = rhs` of two parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Self> {
        let q = Quiver { vertices, arrows, relations };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        for a in &self.arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::Quiver(format!("arrow {} references a missing vertex", a.label)));
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            let lhs = self.path_ends(&r.lhs).ok_or_else(|| Error::Quiver(format!("relation {k}: lhs not a path")))?;
            let rhs = self.path_ends(&r.rhs).ok_or_else(|| Error::Quiver(format!("relation {k}: rhs not a path")))?;
            if lhs != rhs {
                return Err(Error::Quiver(format!("relation {k}: paths are not parallel")));
            }
        }
        Ok(())
    }

    /// `(source, target)` of a nonempty composable path.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut at = first.target;
        for &i in &path[1..] {
            let a = self.arrows.get(i)?;
            if a.source != at {
                return None;
            }
            at = a.target;
        }
        Some((first.source, at))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|l| l == label)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Number of arrows `i → j`, the dimension of `Ext^1(S_i, S_j)`.
    pub fn ext1(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == i && a.target == j).count()
    }

    /// Number of relations from `i` to `j`. For a minimal set of relations
    /// this is the dimension of `Ext^2(S_i, S_j)`.
    pub fn ext2(&self, i: usize, j: usize) -> usize {
        self.relations.iter().filter(|r| self.path_ends(&r.lhs) == Some((i, j))).count()
    }

    /// Longest-path distance from the sources, or `None` for a quiver with
    /// an oriented cycle.
    pub fn levels(&self) -> Option<Vec<u32>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut level = vec![0u32; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                level[a.target] = level[a.target].max(level[v] + 1);
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        (seen == n).then_some(level)
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.arrows.iter().all(|a| a.target != v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.arrows.iter().all(|a| a.source != v)).collect()
    }
}

fn label_of(s: &[u8; 5]) -> String {
    s.iter().map(|d| char::from(b'0' + d)).collect()
}

/// `A_3^{⊗5}`: vertices `s ∈ {0..3}^5`, one arrow `s → s + e_i` whenever
/// `s_i < 3`, and every commuting square `s → s+e_i → s+e_i+e_j`,
/// `s → s+e_j → s+e_i+e_j`. Vertex `v` is `SimpleIndex::from_ordinal(v)`.
pub fn build_a3_5() -> Quiver {
    let vertices: Vec<String> = SimpleIndex::all().map(|s| label_of(&s.entries())).collect();
    let mut arrows = Vec::with_capacity(3840);
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for s in SimpleIndex::all() {
        for i in 0..5 {
            let mut t = s.entries();
            if t[i] == 3 {
                continue;
            }
            t[i] += 1;
            let t = SimpleIndex::new(t).expect("entries stay in range");
            index.insert((s.ordinal(), i), arrows.len());
            arrows.push(Arrow { source: s.ordinal(), target: t.ordinal(), label: format!("{}+e{}", vertices[s.ordinal()], i + 1) });
        }
    }
    let mut relations = Vec::with_capacity(5760);
    for s in SimpleIndex::all() {
        let e = s.entries();
        for i in 0..5 {
            for j in i + 1..5 {
                if e[i] == 3 || e[j] == 3 {
                    continue;
                }
                let step = |v: [u8; 5], k: usize| {
                    let mut w = v;
                    w[k] += 1;
                    w
                };
                let ord = |v: [u8; 5]| SimpleIndex::new(v).expect("in range").ordinal();
                let si = step(e, i);
                let sj = step(e, j);
                relations.push(Relation {
                    lhs: vec![index[&(s.ordinal(), i)], index[&(ord(si), j)]],
                    rhs: vec![index[&(s.ordinal(), j)], index[&(ord(sj), i)]],
                });
            }
        }
    }
    Quiver { vertices, arrows, relations }
}

/// `true` iff `s'` is `s` plus one coordinate unit, i.e. there is an arrow
/// `s → s'`.
pub fn ext1_nonzero(s: &SimpleIndex, s_prime: &SimpleIndex) -> bool {
    let d: Vec<i16> = s.entries().iter().zip(s_prime.entries()).map(|(&a, b)| b as i16 - a as i16).collect();
    d.iter().filter(|&&x| x == 1).count() == 1 && d.iter().all(|&x| x == 0 || x == 1)
}

/// The doubled Kronecker quiver: `a, b: 1 → 2`, `a', b': 2 → 1`, with
/// `b'a = a'b` and `ba' = ab'`. Vertices `0, 1` carry labels `"1", "2"`.
pub fn build_kronecker_doubled() -> Quiver {
    let arrow = |source, target, label: &str| Arrow { source, target, label: label.to_string() };
    let arrows = vec![arrow(0, 1, "a"), arrow(0, 1, "b"), arrow(1, 0, "a'"), arrow(1, 0, "b'")];
    let (a, b, a2, b2) = (0, 1, 2, 3);
    let relations = vec![Relation { lhs: vec![a, b2], rhs: vec![b, a2] }, Relation { lhs: vec![a2, b], rhs: vec![b2, a] }];
    Quiver { vertices: vec!["1".into(), "2".into()], arrows, relations }
}

/// Linearly oriented `A_n`: `0 → 1 → … → n−1`.
pub fn build_linear_a(n: usize) -> Quiver {
    let arrows = (0..n.saturating_sub(1))
        .map(|i| Arrow { source: i, target: i + 1, label: format!("x{}", i + 1) })
        .collect();
    Quiver { vertices: (1..=n).map(|i| i.to_string()).collect(), arrows, relations: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_5_counts() {
        let q = build_a3_5();
        assert_eq!(q.vertex_count(), 1024);
        assert_eq!(q.arrows().len(), 3840);
        assert_eq!(q.relations().len(), 5760);
        assert_eq!(q.sources(), vec![0]);
        assert_eq!(q.sinks(), vec![1023]);
        assert_eq!(q.vertex_label(1023), "33333");
        assert!(q.validate().is_ok());
    }

    #[test]
    fn a3_5_levels_are_coordinate_sums() {
        let q = build_a3_5();
        let lv = q.levels().unwrap();
        assert!(SimpleIndex::all().all(|s| lv[s.ordinal()] == s.level()));
    }

    #[test]
    fn ext_groups() {
        let s = |e| SimpleIndex::new(e).unwrap();
        assert!(ext1_nonzero(&s([0, 0, 0, 0, 0]), &s([1, 0, 0, 0, 0])));
        assert!(!ext1_nonzero(&s([0, 0, 0, 0, 0]), &s([1, 1, 0, 0, 0])));
        assert!(!ext1_nonzero(&s([1, 0, 0, 0, 0]), &s([1, 0, 0, 0, 0])));
        assert!(!ext1_nonzero(&s([1, 0, 0, 0, 0]), &s([0, 0, 0, 0, 0])));
        let q = build_a3_5();
        let (a, b) = (s([0, 0, 0, 0, 0]).ordinal(), s([1, 1, 0, 0, 0]).ordinal());
        assert_eq!(q.ext1(a, s([1, 0, 0, 0, 0]).ordinal()), 1);
        assert_eq!(q.ext2(a, b), 1);
        assert_eq!(q.ext2(b, a), 0);
    }

    #[test]
    fn kronecker() {
        let q = build_kronecker_doubled();
        assert_eq!((q.vertex_count(), q.arrows().len(), q.relations().len()), (2, 4, 2));
        assert_eq!(q.path_ends(&q.relations()[0].lhs), Some((0, 0)));
        assert_eq!(q.path_ends(&q.relations()[1].lhs), Some((1, 1)));
        assert!(q.levels().is_none());
        assert_eq!(q.ext1(0, 1), 2);
    }

    #[test]
    fn invalid_quivers_rejected() {
        let bad = Quiver::new(vec!["1".into()], vec![Arrow { source: 0, target: 1, label: "x".into() }], vec![]);
        assert!(bad.is_err());
        let q = build_linear_a(3);
        let r = Quiver::new(
            (1..=3).map(|i| i.to_string()).collect(),
            q.arrows().to_vec(),
            vec![Relation { lhs: vec![0, 1], rhs: vec![0] }],
        );
        assert!(r.is_err());
    }
}
