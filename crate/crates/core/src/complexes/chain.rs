use crate::algebra::{AlgMatrix, Algebra};
use crate::exactlinalg::Matrix;

use super::{span_of, ProjComplex};

/// A degree-zero map of complexes `X -> Y`, stored over the smallest degree
/// range containing both complexes. Component `k` maps `X^k` to `Y^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap {
    lo: i32,
    comps: Vec<AlgMatrix>,
}

impl ChainMap {
    pub fn zero(a: &Algebra, x: &ProjComplex, y: &ProjComplex) -> Self {
        let (lo, hi) = span_of(&[x, y]);
        ChainMap {
            lo,
            comps: (lo..=hi).map(|k| AlgMatrix::zeros(a, y.term(k), x.term(k))).collect(),
        }
    }

    pub fn identity(a: &Algebra, x: &ProjComplex) -> Self {
        let mut m = Self::zero(a, x, x);
        for k in x.lo()..=x.hi() {
            m.comps[(k - m.lo) as usize] = AlgMatrix::identity(a, x.term(k));
        }
        m
    }

    /// The map with the given components and zero elsewhere.
    pub fn from_comps(a: &Algebra, x: &ProjComplex, y: &ProjComplex, given: Vec<(i32, AlgMatrix)>) -> Self {
        let mut m = Self::zero(a, x, y);
        for (k, c) in given {
            let slot = &mut m.comps[(k - m.lo) as usize];
            assert_eq!((slot.rows(), slot.cols()), (c.rows(), c.cols()), "component {k} has the wrong shape");
            *slot = c;
        }
        m
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn comps(&self) -> &[AlgMatrix] {
        &self.comps
    }

    pub fn comp(&self, k: i32) -> Option<&AlgMatrix> {
        if k < self.lo {
            return None;
        }
        self.comps.get((k - self.lo) as usize)
    }

    pub(crate) fn comp_or_zero(&self, a: &Algebra, k: i32, x: &ProjComplex, y: &ProjComplex) -> AlgMatrix {
        self.comp(k)
            .cloned()
            .unwrap_or_else(|| AlgMatrix::zeros(a, y.term(k), x.term(k)))
    }

    /// `self ∘ f` for `f : X -> Y` and `self : Y -> Z`.
    pub fn compose(&self, f: &ChainMap, a: &Algebra, x: &ProjComplex, z: &ProjComplex) -> ChainMap {
        let (lo, hi) = span_of(&[x, z]);
        let comps = (lo..=hi)
            .map(|k| {
                if x.term(k).is_empty() || z.term(k).is_empty() {
                    AlgMatrix::zeros(a, z.term(k), x.term(k))
                } else {
                    self.comp(k).unwrap().compose(f.comp(k).unwrap(), a)
                }
            })
            .collect();
        ChainMap { lo, comps }
    }

    fn zip_with(&self, other: &ChainMap, op: impl Fn(&AlgMatrix, &AlgMatrix) -> AlgMatrix) -> ChainMap {
        assert_eq!(self.lo, other.lo);
        ChainMap {
            lo: self.lo,
            comps: self.comps.iter().zip(&other.comps).map(|(p, q)| op(p, q)).collect(),
        }
    }

    pub fn add(&self, other: &ChainMap, a: &Algebra) -> ChainMap {
        self.zip_with(other, |p, q| p.add(q, a))
    }

    pub fn sub(&self, other: &ChainMap, a: &Algebra) -> ChainMap {
        self.zip_with(other, |p, q| p.sub(q, a))
    }

    pub fn scale(&self, c: u32, a: &Algebra) -> ChainMap {
        ChainMap {
            lo: self.lo,
            comps: self.comps.iter().map(|p| p.scale(c, a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(AlgMatrix::is_zero)
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.comps.iter().flat_map(AlgMatrix::flatten).collect()
    }

    pub fn flat_len(a: &Algebra, x: &ProjComplex, y: &ProjComplex) -> usize {
        let (lo, hi) = span_of(&[x, y]);
        (lo..=hi).map(|k| AlgMatrix::flat_len(a, y.term(k), x.term(k))).sum()
    }

    pub fn unflatten(a: &Algebra, x: &ProjComplex, y: &ProjComplex, v: &[u32]) -> ChainMap {
        let (lo, hi) = span_of(&[x, y]);
        let mut off = 0;
        let comps = (lo..=hi)
            .map(|k| {
                let len = AlgMatrix::flat_len(a, y.term(k), x.term(k));
                let m = AlgMatrix::unflatten(a, y.term(k), x.term(k), &v[off..off + len]);
                off += len;
                m
            })
            .collect();
        ChainMap { lo, comps }
    }

    /// `d_Y f = f d_X` in every degree.
    pub fn is_chain_map(&self, a: &Algebra, x: &ProjComplex, y: &ProjComplex) -> bool {
        let (lo, hi) = span_of(&[x, y]);
        (lo..=hi).all(|k| {
            let left = y.diff(a, k).compose(&self.comp_or_zero(a, k, x, y), a);
            let right = self.comp_or_zero(a, k + 1, x, y).compose(&x.diff(a, k), a);
            left == right
        })
    }

    /// Reduction modulo the radical: per degree, one scalar matrix per vertex.
    pub fn tops(&self, a: &Algebra) -> Vec<Vec<Matrix>> {
        self.comps.iter().map(|c| c.top(a)).collect()
    }

    /// Sum of the traces of all top components (endomorphisms only).
    pub fn top_trace(&self, a: &Algebra) -> u32 {
        let f = a.field();
        self.comps
            .iter()
            .flat_map(|c| c.top(a))
            .fold(0, |acc, m| f.add(acc, m.trace()))
    }

    /// Every entry of every component lies in the radical.
    pub fn is_radical(&self) -> bool {
        self.comps.iter().all(AlgMatrix::is_radical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::corpus_algebra;

    #[test]
    fn identity_is_a_chain_map_and_flattens() {
        let a = corpus_algebra("a3");
        let x = ProjComplex::regular(&a).direct_sum(&ProjComplex::stalk(&[1], -1), &a);
        let id = ChainMap::identity(&a, &x);
        assert!(id.is_chain_map(&a, &x, &x));
        assert_eq!(id.top_trace(&a), 4);
        let v = id.flatten();
        assert_eq!(v.len(), ChainMap::flat_len(&a, &x, &x));
        assert_eq!(ChainMap::unflatten(&a, &x, &x, &v), id);
        assert_eq!(id.compose(&id, &a, &x, &x), id);
    }
}
