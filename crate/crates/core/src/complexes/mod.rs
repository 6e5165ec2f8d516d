//! Bounded complexes of finitely generated projective modules and the
//! homotopy category they span.
//!
//! A complex stores, for each degree, the list of vertices of its
//! indecomposable projective summands and the differentials as
//! [`AlgMatrix`] maps. Differentials raise degree by one.

mod approx;
mod chain;
mod decompose;
mod hom;
mod json;
mod minimal;
mod registry;

pub use approx::{is_left_minimal, is_right_minimal, left_approx, left_factors, right_approx, right_factors, Approximation};
pub use chain::ChainMap;
pub use decompose::{decompose_complex, decompose_complex_with, find_complex_idempotent, is_indecomposable_complex, iso_indecomposable_complex, ComplexEnd};
pub use hom::{hom_k, hom_k_dim, HomK};
pub use json::ComplexJson;
pub use minimal::minimalize;
pub use registry::ComplexRegistry;

use crate::algebra::{AlgMatrix, Algebra};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjComplex {
    lo: i32,
    terms: Vec<Vec<usize>>,
    /// `diffs[i]` maps degree `lo + i` to degree `lo + i + 1`.
    diffs: Vec<AlgMatrix>,
}

impl ProjComplex {
    pub fn zero() -> Self {
        ProjComplex {
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Checked constructor: shapes must match and `d ∘ d = 0`.
    pub fn new(a: &Algebra, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<AlgMatrix>) -> Result<Self> {
        if terms.iter().flatten().any(|&v| v >= a.num_vertices()) {
            return Err(Error::Invalid("summand vertex out of range".into()));
        }
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::Invalid("expected one differential between consecutive degrees".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.cols() != terms[i].as_slice() || d.rows() != terms[i + 1].as_slice() {
                return Err(Error::Invalid(format!("differential {i} has the wrong shape")));
            }
        }
        let x = ProjComplex { lo, terms, diffs }.trimmed();
        if !x.is_complex(a) {
            return Err(Error::Invalid("differentials do not square to zero".into()));
        }
        Ok(x)
    }

    pub(crate) fn from_parts(lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<AlgMatrix>) -> Self {
        ProjComplex { lo, terms, diffs }.trimmed()
    }

    /// `⊕ P_v` placed in a single degree.
    pub fn stalk(verts: &[usize], degree: i32) -> Self {
        let mut v = verts.to_vec();
        v.sort_unstable();
        ProjComplex::from_parts(degree, vec![v], Vec::new())
    }

    /// The regular module `A` as a stalk complex in degree 0.
    pub fn regular(a: &Algebra) -> Self {
        Self::stalk(&(0..a.num_vertices()).collect::<Vec<_>>(), 0)
    }

    /// The two-term complex `P^{-1} --d--> P^0`.
    pub fn two_term(d: AlgMatrix) -> Self {
        ProjComplex::from_parts(-1, vec![d.cols().to_vec(), d.rows().to_vec()], vec![d]).sorted()
    }

    fn trimmed(mut self) -> Self {
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        if self.terms.is_empty() {
            return ProjComplex::zero();
        }
        self
    }

    /// Reorders the summands in every degree by vertex.
    pub(crate) fn sorted(self) -> Self {
        let perms: Vec<Vec<usize>> = self
            .terms
            .iter()
            .map(|t| {
                let mut p: Vec<usize> = (0..t.len()).collect();
                p.sort_by_key(|&i| t[i]);
                p
            })
            .collect();
        if perms.iter().all(|p| p.iter().enumerate().all(|(i, &j)| i == j)) {
            return self;
        }
        let terms = self
            .terms
            .iter()
            .zip(&perms)
            .map(|(t, p)| p.iter().map(|&i| t[i]).collect())
            .collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| d.select(&perms[i + 1], &perms[i]))
            .collect();
        ProjComplex {
            lo: self.lo,
            terms,
            diffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree with a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree with a nonzero term (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn term(&self, k: i32) -> &[usize] {
        if k < self.lo || k > self.hi() {
            return &[];
        }
        &self.terms[(k - self.lo) as usize]
    }

    /// The differential leaving degree `k` (a zero map outside the range).
    pub fn diff(&self, a: &Algebra, k: i32) -> AlgMatrix {
        if k >= self.lo && k < self.hi() {
            self.diffs[(k - self.lo) as usize].clone()
        } else {
            AlgMatrix::zeros(a, self.term(k + 1), self.term(k))
        }
    }

    pub fn diffs(&self) -> &[AlgMatrix] {
        &self.diffs
    }

    pub fn num_summands(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// Whether every nonzero term lies in degrees `lo..=hi`.
    pub fn within(&self, lo: i32, hi: i32) -> bool {
        self.is_zero() || (self.lo >= lo && self.hi() <= hi)
    }

    pub fn is_two_term(&self) -> bool {
        self.within(-1, 0)
    }

    pub fn is_complex(&self, a: &Algebra) -> bool {
        self.diffs.windows(2).all(|w| w[1].compose(&w[0], a).is_zero())
    }

    /// All differential entries lie in the radical.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(AlgMatrix::is_radical)
    }

    /// `X[s]`: degree `n` holds `X^{n+s}` and the differential is `(-1)^s d`.
    pub fn shift(&self, a: &Algebra, s: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let diffs = if s.rem_euclid(2) == 1 {
            self.diffs.iter().map(|d| d.neg(a)).collect()
        } else {
            self.diffs.clone()
        };
        ProjComplex {
            lo: self.lo - s,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Direct sum keeping the summands of `self` before those of `other`
    /// in every degree.
    pub(crate) fn direct_sum_raw(&self, other: &ProjComplex, a: &Algebra) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let terms = (lo..=hi)
            .map(|k| {
                let mut t = self.term(k).to_vec();
                t.extend_from_slice(other.term(k));
                t
            })
            .collect();
        let diffs = (lo..hi)
            .map(|k| self.diff(a, k).block_diag(&other.diff(a, k), a))
            .collect();
        ProjComplex::from_parts(lo, terms, diffs)
    }

    /// `⊕ parts` with summands in the given order, built in one pass.
    pub(crate) fn direct_sum_many(a: &Algebra, parts: &[&ProjComplex]) -> Self {
        let parts: Vec<&ProjComplex> = parts.iter().copied().filter(|p| !p.is_zero()).collect();
        let (Some(lo), Some(hi)) = (parts.iter().map(|p| p.lo).min(), parts.iter().map(|p| p.hi()).max()) else {
            return ProjComplex::zero();
        };
        let terms: Vec<Vec<usize>> = (lo..=hi)
            .map(|k| parts.iter().flat_map(|p| p.term(k).iter().copied()).collect())
            .collect();
        let diffs = (lo..hi)
            .map(|k| {
                let i = (k - lo) as usize;
                let mut d = AlgMatrix::zeros(a, &terms[i + 1], &terms[i]);
                let (mut r0, mut c0) = (0, 0);
                for p in &parts {
                    let (rows, cols) = (p.term(k + 1).len(), p.term(k).len());
                    if k >= p.lo && k < p.hi() {
                        let pd = &p.diffs[(k - p.lo) as usize];
                        for r in 0..rows {
                            for c in 0..cols {
                                d.entry_mut(r0 + r, c0 + c).copy_from_slice(pd.get(r, c));
                            }
                        }
                    }
                    r0 += rows;
                    c0 += cols;
                }
                d
            })
            .collect();
        ProjComplex::from_parts(lo, terms, diffs)
    }

    pub fn direct_sum(&self, other: &ProjComplex, a: &Algebra) -> Self {
        self.direct_sum_raw(other, a).sorted()
    }

    /// Mapping cone of `f : X -> Y`: degree `n` is `X^{n+1} ⊕ Y^n` with
    /// differential `[[-d_X, 0], [f, d_Y]]`. Summands keep their order.
    pub(crate) fn cone_raw(a: &Algebra, f: &ChainMap, x: &ProjComplex, y: &ProjComplex) -> Self {
        let xs = x.shift(a, 1);
        if xs.is_zero() && y.is_zero() {
            return ProjComplex::zero();
        }
        let (lo, hi) = span_of(&[&xs, y]);
        let terms = (lo..=hi)
            .map(|k| {
                let mut t = xs.term(k).to_vec();
                t.extend_from_slice(y.term(k));
                t
            })
            .collect();
        let diffs = (lo..hi)
            .map(|k| {
                let top = xs
                    .diff(a, k)
                    .hstack(&AlgMatrix::zeros(a, xs.term(k + 1), y.term(k)));
                let bottom = f.comp_or_zero(a, k + 1, x, y).hstack(&y.diff(a, k));
                top.vstack(&bottom)
            })
            .collect();
        ProjComplex::from_parts(lo, terms, diffs)
    }

    /// The minimal mapping cone of `f : X -> Y`.
    pub fn cone(a: &Algebra, f: &ChainMap, x: &ProjComplex, y: &ProjComplex) -> Self {
        minimalize(a, &ProjComplex::cone_raw(a, f, x, y))
    }

    /// `(lo, multiplicity vector per degree)`: determines the terms of a
    /// sorted complex.
    pub fn signature(&self, n: usize) -> (i32, Vec<Vec<usize>>) {
        let mults = self
            .terms
            .iter()
            .map(|t| {
                let mut m = vec![0; n];
                for &v in t {
                    m[v] += 1;
                }
                m
            })
            .collect();
        (self.lo, mults)
    }
}

/// Smallest degree range containing all the given complexes.
pub(crate) fn span_of(xs: &[&ProjComplex]) -> (i32, i32) {
    let nonzero: Vec<&&ProjComplex> = xs.iter().filter(|x| !x.is_zero()).collect();
    if nonzero.is_empty() {
        return (0, -1);
    }
    let lo = nonzero.iter().map(|x| x.lo()).min().unwrap();
    let hi = nonzero.iter().map(|x| x.hi()).max().unwrap();
    (lo, hi)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::testing::corpus_algebra;

    /// `P_2 -> P_1` over A_2, the presentation of `S_1`.
    pub(crate) fn s1_complex(a: &Algebra) -> ProjComplex {
        let mut d = AlgMatrix::zeros(a, &[0], &[1]);
        d.add_basis(a, 0, 0, a.basis_index("a").unwrap(), 1);
        ProjComplex::two_term(d)
    }

    #[test]
    fn shapes_and_trimming() {
        let a = corpus_algebra("a2");
        let x = s1_complex(&a);
        assert_eq!((x.lo(), x.hi()), (-1, 0));
        assert_eq!(x.term(-1), &[1]);
        assert_eq!(x.term(0), &[0]);
        assert!(x.is_minimal() && x.is_two_term() && x.is_complex(&a));
        let s = x.shift(&a, 1);
        assert_eq!((s.lo(), s.hi()), (-2, -1));
        assert!(ProjComplex::stalk(&[], 3).is_zero());
        let bad = ProjComplex::new(&a, 0, vec![vec![0], vec![]], vec![AlgMatrix::zeros(&a, &[], &[0])]).unwrap();
        assert_eq!((bad.lo(), bad.hi()), (0, 0));
    }

    #[test]
    fn direct_sum_sorts_terms() {
        let a = corpus_algebra("a2");
        let x = ProjComplex::stalk(&[1], 0).direct_sum(&ProjComplex::stalk(&[0], 0), &a);
        assert_eq!(x, ProjComplex::regular(&a));
        let y = s1_complex(&a).direct_sum(&ProjComplex::stalk(&[1], -1), &a);
        assert_eq!(y.term(-1), &[1, 1]);
        assert!(y.is_complex(&a));
    }

    #[test]
    fn cone_of_inclusion_presents_s1() {
        let a = corpus_algebra("a2");
        let mut f = AlgMatrix::zeros(&a, &[0], &[1]);
        f.add_basis(&a, 0, 0, a.basis_index("a").unwrap(), 1);
        let (x, y) = (ProjComplex::stalk(&[1], 0), ProjComplex::stalk(&[0], 0));
        let map = ChainMap::from_comps(&a, &x, &y, vec![(0, f)]);
        let c = ProjComplex::cone(&a, &map, &x, &y);
        assert_eq!(c, s1_complex(&a));
    }

    #[test]
    fn checked_constructor_rejects_nonzero_square() {
        let a = corpus_algebra("a3");
        let mut d1 = AlgMatrix::zeros(&a, &[1], &[2]);
        d1.add_basis(&a, 0, 0, a.basis_index("b").unwrap(), 1);
        let mut d0 = AlgMatrix::zeros(&a, &[0], &[1]);
        d0.add_basis(&a, 0, 0, a.basis_index("a").unwrap(), 1);
        assert!(ProjComplex::new(&a, -2, vec![vec![2], vec![1], vec![0]], vec![d1, d0]).is_err());
    }
}
