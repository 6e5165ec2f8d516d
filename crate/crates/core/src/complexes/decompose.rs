//! Krull-Schmidt decomposition of minimal complexes.
//!
//! For a minimal complex every null-homotopic endomorphism has radical
//! entries, so `End_K(X)` is local iff the algebra of chain maps is, and that
//! in turn is decided on the image of the chain maps modulo the radical of
//! `A` (the kernel of that reduction is nilpotent).

use std::collections::BTreeMap;

use crate::algebra::{AlgMatrix, Algebra};
use crate::exactlinalg::{Echelon, Insert, Matrix, PrimeField};
use crate::krull::{find_idempotent, is_local, EndAlgebra};
use crate::{Error, Result};

use super::approx::{raw_sum, stack_left, stack_right};
use super::chain::ChainMap;
use super::hom::{hom_k, HomK};
use super::minimal::minimalize;
use super::ProjComplex;

/// Algebra of block-diagonal scalar matrices (the tops of chain maps),
/// flattened block by block.
struct TopAlgebra {
    field: PrimeField,
    sizes: Vec<usize>,
    basis: Vec<Vec<u32>>,
}

impl TopAlgebra {
    fn blocks<'v>(&self, v: &'v [u32]) -> Vec<(usize, &'v [u32])> {
        let mut off = 0;
        self.sizes
            .iter()
            .map(|&d| {
                let s = &v[off..off + d * d];
                off += d * d;
                (d, s)
            })
            .collect()
    }
}

impl EndAlgebra for TopAlgebra {
    fn field(&self) -> PrimeField {
        self.field
    }

    fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn identity(&self) -> Vec<u32> {
        self.sizes
            .iter()
            .flat_map(|&d| Matrix::identity(self.field, d).data().to_vec())
            .collect()
    }

    fn compose(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        self.blocks(x)
            .into_iter()
            .zip(self.blocks(y))
            .flat_map(|((d, p), (_, q))| {
                let mp = Matrix::from_fn(f, d, d, |i, j| p[i * d + j]);
                let mq = Matrix::from_fn(f, d, d, |i, j| q[i * d + j]);
                mp.mul(&mq).data().to_vec()
            })
            .collect()
    }

    fn top_trace(&self, x: &[u32]) -> u32 {
        let f = self.field;
        self.blocks(x).into_iter().fold(0, |acc, (d, p)| {
            (0..d).fold(acc, |acc, i| f.add(acc, p[i * d + i]))
        })
    }

    fn top_size(&self) -> usize {
        self.sizes.iter().sum()
    }
}

fn flat_top(a: &Algebra, m: &ChainMap) -> Vec<u32> {
    m.tops(a).iter().flatten().flat_map(|t| t.data().to_vec()).collect()
}

/// Chain-map endomorphism algebra of a complex together with its image
/// modulo the radical.
pub struct ComplexEnd<'a> {
    alg: &'a Algebra,
    x: ProjComplex,
    maps: Vec<ChainMap>,
    top: TopAlgebra,
    /// `maps[lifts[j]]` has the `j`-th independent top.
    lifts: Vec<usize>,
    tops: Echelon,
}

impl<'a> ComplexEnd<'a> {
    pub fn new(a: &'a Algebra, x: &ProjComplex) -> Self {
        let maps = hom_k(a, x, x, 0).chain_maps(a).to_vec();
        let sizes: Vec<usize> = (x.lo()..=x.hi())
            .flat_map(|k| {
                let t = x.term(k);
                (0..a.num_vertices()).map(move |v| t.iter().filter(|&&w| w == v).count())
            })
            .collect();
        let dim: usize = sizes.iter().map(|d| d * d).sum();
        let mut tops = Echelon::new(a.field(), dim);
        let mut lifts = Vec::new();
        let mut basis = Vec::new();
        for (i, m) in maps.iter().enumerate() {
            let t = flat_top(a, m);
            if tops.insert(&t) == Insert::New {
                lifts.push(i);
                basis.push(t);
            }
        }
        ComplexEnd {
            alg: a,
            x: x.clone(),
            maps,
            top: TopAlgebra {
                field: a.field(),
                sizes,
                basis,
            },
            lifts,
            tops,
        }
    }

    pub fn chain_maps(&self) -> &[ChainMap] {
        &self.maps
    }

    pub fn is_local(&self) -> bool {
        !self.x.is_zero() && is_local(&self.top)
    }

    /// A nontrivial idempotent chain map, if one exists: an idempotent of
    /// the top algebra lifted along the nilpotent kernel.
    pub fn idempotent(&self, seed: u64) -> Option<ChainMap> {
        let a = self.alg;
        let f = a.field();
        let top_idem = find_idempotent(&self.top, seed)?;
        let coeffs = self.tops.coordinates(&top_idem)?;
        let mut e = ChainMap::zero(a, &self.x, &self.x);
        for (c, &i) in coeffs.iter().zip(&self.lifts) {
            if *c != 0 {
                e = e.add(&self.maps[i].scale(*c, a), a);
            }
        }
        let (three, two) = (f.from_i64(3), f.from_i64(2));
        for _ in 0..64 {
            let e2 = self.compose_maps(&e, &e);
            if e2 == e {
                return Some(e);
            }
            let e3 = self.compose_maps(&e2, &e);
            e = e2.scale(three, a).sub(&e3.scale(two, a), a);
        }
        None
    }

    fn compose_maps(&self, g: &ChainMap, h: &ChainMap) -> ChainMap {
        g.compose(h, self.alg, &self.x, &self.x)
    }
}

pub fn is_indecomposable_complex(a: &Algebra, x: &ProjComplex) -> bool {
    ComplexEnd::new(a, &minimalize(a, x)).is_local()
}

pub fn find_complex_idempotent(a: &Algebra, x: &ProjComplex, seed: u64) -> Option<ChainMap> {
    ComplexEnd::new(a, x).idempotent(seed)
}

/// Columns (positions in `verts`) at the pivots of `top` per vertex.
fn top_pivots(a: &Algebra, m: &AlgMatrix, verts: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (v, t) in m.top(a).iter().enumerate() {
        let positions: Vec<usize> = (0..verts.len()).filter(|&i| verts[i] == v).collect();
        out.extend(t.rref().pivots.iter().map(|&p| positions[p]));
    }
    out.sort_unstable();
    out
}

/// Splits `x` along an idempotent chain map into `(im e, im (1 - e))`.
pub(crate) fn split_complex(a: &Algebra, x: &ProjComplex, e: &ChainMap) -> (ProjComplex, ProjComplex) {
    let (lo, hi) = (x.lo(), x.hi());
    let mut changes = Vec::new();
    let mut firsts = Vec::new();
    for k in lo..=hi {
        let t = x.term(k);
        let ek = e.comp(k).unwrap().clone();
        let ck = AlgMatrix::identity(a, t).sub(&ek, a);
        let all: Vec<usize> = (0..t.len()).collect();
        let j1 = top_pivots(a, &ek, t);
        let j2 = top_pivots(a, &ck, t);
        debug_assert_eq!(j1.len() + j2.len(), t.len());
        firsts.push(j1.len());
        changes.push(ek.select(&all, &j1).hstack(&ck.select(&all, &j2)));
    }
    let inverses: Vec<AlgMatrix> = changes
        .iter()
        .map(|c| c.inverse(a).expect("splitting change of basis is invertible"))
        .collect();
    let mut pieces = [(Vec::new(), Vec::new()), (Vec::new(), Vec::new())];
    for (i, k) in (lo..=hi).enumerate() {
        let cols = changes[i].cols();
        pieces[0].0.push(cols[..firsts[i]].to_vec());
        pieces[1].0.push(cols[firsts[i]..].to_vec());
        if k < hi {
            let d = inverses[i + 1].compose(&x.diff(a, k).compose(&changes[i], a), a);
            let (r1, c1) = (firsts[i + 1], firsts[i]);
            let rows_a: Vec<usize> = (0..r1).collect();
            let rows_b: Vec<usize> = (r1..d.rows().len()).collect();
            let cols_a: Vec<usize> = (0..c1).collect();
            let cols_b: Vec<usize> = (c1..d.cols().len()).collect();
            debug_assert!(d.select(&rows_a, &cols_b).is_zero() && d.select(&rows_b, &cols_a).is_zero());
            pieces[0].1.push(d.select(&rows_a, &cols_a));
            pieces[1].1.push(d.select(&rows_b, &cols_b));
        }
    }
    let [(t1, d1), (t2, d2)] = pieces;
    (
        ProjComplex::from_parts(lo, t1, d1).sorted(),
        ProjComplex::from_parts(lo, t2, d2).sorted(),
    )
}

/// Every term of `u` fits into the matching term of `y`, vertex by vertex.
fn terms_fit(a: &Algebra, u: &ProjComplex, y: &ProjComplex) -> bool {
    (u.lo()..=u.hi()).all(|k| {
        (0..a.num_vertices()).all(|v| {
            let count = |t: &[usize]| t.iter().filter(|&&w| w == v).count();
            count(u.term(k)) <= count(y.term(k))
        })
    })
}

/// Hom spaces between `u` and `y` and the matrix `lam(g_b f_a)` of top
/// scalars over basis maps `f_a: u -> y` and `g_b: y -> u`. Its rank is the
/// multiplicity of `u` as a summand of `y`.
fn pairing(a: &Algebra, y: &ProjComplex, u: &ProjComplex) -> Option<(HomK, HomK, Matrix)> {
    if !terms_fit(a, u, y) {
        return None;
    }
    let into = hom_k(a, u, y, 0);
    if into.dim() == 0 {
        return None;
    }
    let back = hom_k(a, y, u, 0);
    if back.dim() == 0 {
        return None;
    }
    // the top of a composite is the product of the tops
    let f = a.field();
    let per_summand = f.inv(f.from_i64(u.num_summands() as i64));
    let tops_into: Vec<Vec<Vec<Matrix>>> = into.basis().iter().map(|m| m.tops(a)).collect();
    let tops_back: Vec<Vec<Vec<Matrix>>> = back.basis().iter().map(|m| m.tops(a)).collect();
    let m = Matrix::from_fn(f, back.dim(), into.dim(), |b, c| {
        let mut tr = 0;
        for (gk, fk) in tops_back[b].iter().zip(&tops_into[c]) {
            for (gv, fv) in gk.iter().zip(fk) {
                if gv.rows() > 0 && fv.rows() > 0 {
                    tr = f.add(tr, gv.mul(fv).trace());
                }
            }
        }
        f.mul(tr, per_summand)
    });
    Some((into, back, m))
}

fn multiplicity(a: &Algebra, y: &ProjComplex, u: &ProjComplex) -> usize {
    pairing(a, y, u).map_or(0, |(_, _, m)| m.rank())
}

/// An idempotent of `y` whose image is `u^r` with `r` the multiplicity of
/// `u` as a summand, together with `r`.
///
/// A maximal invertible minor of the pairing matrix gives `F: u^r -> y` and, after
/// recombining the `g_b` by its inverse, `G: y -> u^r` with `G F` unipotent.
/// Then `F (G F)^{-1} G` is the idempotent.
fn known_summands(a: &Algebra, y: &ProjComplex, u: &ProjComplex) -> Option<(usize, ChainMap)> {
    let (into, back, m) = pairing(a, y, u)?;
    let f = a.field();
    let cols = m.rref().pivots;
    if cols.is_empty() {
        return None;
    }
    let rows = m.transpose().rref().pivots;
    let minor = m.select(&rows, &cols).inverse().expect("maximal minor is invertible");
    let r = cols.len();
    let fs: Vec<ChainMap> = cols.iter().map(|&c| into.basis()[c].clone()).collect();
    let gs: Vec<ChainMap> = (0..r)
        .map(|i| {
            rows.iter().enumerate().fold(ChainMap::zero(a, y, u), |acc, (j, &b)| {
                acc.add(&back.basis()[b].scale(minor.get(i, j), a), a)
            })
        })
        .collect();
    let copies = vec![0; r];
    let us = std::slice::from_ref(u);
    let ur = raw_sum(a, us, &copies);
    let big_f = stack_right(a, y, us, &copies, &fs, &ur);
    let big_g = stack_left(a, y, us, &copies, &gs, &ur);
    // G F = 1 + N with N nilpotent, since its entries are radical maps of u
    let id = ChainMap::identity(a, &ur);
    let n = big_g.compose(&big_f, a, &ur, &ur).sub(&id, a);
    let minus_n = n.scale(f.neg(1), a);
    let mut inv = id.clone();
    let mut power = id;
    let mut converged = false;
    for _ in 0..=4 * ur.num_summands() + 8 {
        power = power.compose(&minus_n, a, &ur, &ur);
        if power.is_zero() {
            converged = true;
            break;
        }
        inv = inv.add(&power, a);
    }
    if !converged {
        return None;
    }
    let e = big_f.compose(&inv.compose(&big_g, a, y, &ur), a, y, y);
    debug_assert_eq!(e.compose(&e, a, y, y), e);
    Some((r, e))
}

/// The summands of the minimal complex `y` when it is a sum of copies of the
/// `known` complexes. By Krull-Schmidt this is the case exactly when the
/// multiplicities of the pairwise non-isomorphic known complexes account for
/// every term of `y`, so no splitting is needed.
fn sum_of_known(a: &Algebra, y: &ProjComplex, known: &[ProjComplex]) -> Option<Vec<ProjComplex>> {
    if known.is_empty() || y.is_zero() {
        return None;
    }
    let mut distinct: Vec<&ProjComplex> = Vec::new();
    for u in known {
        if !distinct.iter().any(|d| iso_indecomposable_complex(a, d, u)) {
            distinct.push(u);
        }
    }
    let mut terms: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    let mut pieces = Vec::new();
    for u in distinct {
        let r = multiplicity(a, y, u);
        for k in u.lo()..=u.hi() {
            for &v in u.term(k) {
                *terms.entry((k, v)).or_default() += r;
            }
        }
        pieces.extend(std::iter::repeat_n(u.clone(), r));
    }
    let mut wanted: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    for k in y.lo()..=y.hi() {
        for &v in y.term(k) {
            *wanted.entry((k, v)).or_default() += 1;
        }
    }
    terms.retain(|_, c| *c > 0);
    (terms == wanted).then_some(pieces)
}

/// Indecomposable minimal summands of `x`, each with a local endomorphism
/// ring.
pub fn decompose_complex(a: &Algebra, x: &ProjComplex, seed: u64) -> Result<Vec<ProjComplex>> {
    decompose_complex_with(a, x, seed, &[])
}

/// As [`decompose_complex`], first splitting off copies of the `known`
/// minimal indecomposable complexes and of every summand found on the way.
/// This replaces one large endomorphism computation by a few small Hom
/// computations whenever most summands are already known.
pub fn decompose_complex_with(a: &Algebra, x: &ProjComplex, seed: u64, known: &[ProjComplex]) -> Result<Vec<ProjComplex>> {
    let y = minimalize(a, x);
    if let Some(pieces) = sum_of_known(a, &y, known) {
        return Ok(pieces);
    }
    let mut known = known.to_vec();
    let mut out = Vec::new();
    let mut stack = vec![y];
    'pieces: while let Some(y) = stack.pop() {
        if y.is_zero() {
            continue;
        }
        // single summands are always indecomposable
        if y.num_summands() == 1 {
            out.push(y);
            continue;
        }
        for u in &known {
            if let Some((r, e)) = known_summands(a, &y, u) {
                let (_, rest) = split_complex(a, &y, &e);
                out.extend(std::iter::repeat_n(u.clone(), r));
                stack.push(rest);
                continue 'pieces;
            }
        }
        let end = ComplexEnd::new(a, &y);
        if end.is_local() {
            known.push(y.clone());
            out.push(y);
            continue;
        }
        let e = end.idempotent(seed).ok_or(Error::DecompositionFailed)?;
        let (y1, y2) = split_complex(a, &y, &e);
        stack.push(y2);
        stack.push(y1);
    }
    Ok(out)
}

/// Isomorphism test for minimal complexes with local endomorphism rings:
/// some composite `X -> Y -> X` of basis chain maps has nonzero top trace.
pub fn iso_indecomposable_complex(a: &Algebra, x: &ProjComplex, y: &ProjComplex) -> bool {
    let n = a.num_vertices();
    if x.signature(n) != y.signature(n) {
        return false;
    }
    let there = hom_k(a, x, y, 0);
    if there.chain_maps(a).is_empty() {
        return false;
    }
    let back = hom_k(a, y, x, 0);
    let f = a.field();
    let tops_there: Vec<Vec<Vec<Matrix>>> = there.chain_maps(a).iter().map(|m| m.tops(a)).collect();
    for g in back.chain_maps(a) {
        let tg = g.tops(a);
        for tf in &tops_there {
            let mut tr = 0;
            for (gk, fk) in tg.iter().zip(tf) {
                for (gv, fv) in gk.iter().zip(fk) {
                    if gv.rows() > 0 {
                        tr = f.add(tr, gv.mul(fv).trace());
                    }
                }
            }
            if tr != 0 {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::tests::s1_complex;
    use crate::testing::corpus_algebra;

    #[test]
    fn regular_stalk_splits_into_projectives() {
        let a = corpus_algebra("a2");
        let pieces = decompose_complex(&a, &ProjComplex::regular(&a), 1).unwrap();
        let mut got: Vec<Vec<usize>> = pieces.iter().map(|p| p.term(0).to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0], vec![1]]);
    }

    #[test]
    fn doubled_complex_splits_in_two() {
        let a = corpus_algebra("a3");
        let mut d = AlgMatrix::zeros(&a, &[0], &[2]);
        d.add_basis(&a, 0, 0, a.basis_index("a*b").unwrap(), 1);
        let x = ProjComplex::two_term(d);
        assert!(is_indecomposable_complex(&a, &x));
        let pieces = decompose_complex(&a, &x.direct_sum(&x, &a), 4).unwrap();
        assert_eq!(pieces.len(), 2);
        for p in &pieces {
            assert!(iso_indecomposable_complex(&a, p, &x));
        }
    }

    #[test]
    fn scaled_differential_is_isomorphic() {
        let a = corpus_algebra("a2");
        let x = s1_complex(&a);
        let mut d = AlgMatrix::zeros(&a, &[0], &[1]);
        d.add_basis(&a, 0, 0, a.basis_index("a").unwrap(), 5);
        let y = ProjComplex::two_term(d);
        assert_ne!(x, y);
        assert!(iso_indecomposable_complex(&a, &x, &y));
        assert!(!iso_indecomposable_complex(&a, &x, &x.shift(&a, 1)));
    }

    #[test]
    fn kronecker_sum_of_two_presentations() {
        let a = corpus_algebra("kronecker");
        let mk = |ca: u32, cb: u32| {
            let mut d = AlgMatrix::zeros(&a, &[0], &[1]);
            d.add_basis(&a, 0, 0, a.basis_index("a").unwrap(), ca);
            d.add_basis(&a, 0, 0, a.basis_index("b").unwrap(), cb);
            ProjComplex::two_term(d)
        };
        let (x, y) = (mk(1, 0), mk(1, 1));
        assert!(!iso_indecomposable_complex(&a, &x, &y));
        let pieces = decompose_complex(&a, &x.direct_sum(&y, &a), 2).unwrap();
        assert_eq!(pieces.len(), 2);
        let hits = |z: &ProjComplex| pieces.iter().filter(|p| iso_indecomposable_complex(&a, p, z)).count();
        assert_eq!((hits(&x), hits(&y)), (1, 1));
    }

    #[test]
    fn known_summands_are_split_off_first() {
        let a = corpus_algebra("kronecker");
        let mut d = AlgMatrix::zeros(&a, &[0, 0], &[1]);
        d.add_basis(&a, 0, 0, a.basis_index("a").unwrap(), 1);
        d.add_basis(&a, 1, 0, a.basis_index("b").unwrap(), 1);
        let x = ProjComplex::two_term(d);
        let p = ProjComplex::regular(&a);
        let big = x.direct_sum(&x, &a).direct_sum(&p, &a).direct_sum(&x, &a);
        let plain = decompose_complex(&a, &big, 3).unwrap();
        let hinted = decompose_complex_with(&a, &big, 3, std::slice::from_ref(&x)).unwrap();
        assert_eq!((plain.len(), hinted.len()), (5, 5));
        for pieces in [&plain, &hinted] {
            assert_eq!(pieces.iter().filter(|q| iso_indecomposable_complex(&a, q, &x)).count(), 3);
        }
        // a hint that is not a summand changes nothing
        let other = decompose_complex_with(&a, &big, 3, &[x.shift(&a, 1)]).unwrap();
        assert_eq!(other.len(), 5);
    }
}
