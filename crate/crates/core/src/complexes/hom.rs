//! Morphisms in the homotopy category: chain maps modulo null-homotopic ones.

use std::sync::OnceLock;

use crate::algebra::{AlgMatrix, Algebra};
use crate::exactlinalg::sparse::{normalize, sparse_kernel};
use crate::exactlinalg::{Echelon, Insert, QuotientSpace};

use super::chain::ChainMap;
use super::{span_of, ProjComplex};

/// Flat layout of a graded family of maps `X^k -> Y^{k+deg}`.
struct Layout {
    lo: i32,
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(a: &Algebra, x: &ProjComplex, y: &ProjComplex, deg: i32, lo: i32, hi: i32) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for k in lo..=hi {
            offsets.push(total);
            total += AlgMatrix::flat_len(a, y.term(k + deg), x.term(k));
        }
        Layout { lo, offsets, total }
    }

    fn offset(&self, k: i32) -> Option<usize> {
        if k < self.lo {
            return None;
        }
        self.offsets.get((k - self.lo) as usize).copied()
    }
}

/// Position of every entry of a `rows x cols` map inside its flattening.
fn entry_offsets(a: &Algebra, rows: &[usize], cols: &[usize]) -> Vec<usize> {
    let mut offs = Vec::with_capacity(rows.len() * cols.len());
    let mut off = 0;
    for &r in rows {
        for &c in cols {
            offs.push(off);
            off += a.block(c, r).len();
        }
    }
    offs
}

/// The single basis element `x` placed at entry `(r, c)` of a map whose
/// codomain summands are `rows` and domain summands are `cols`.
#[derive(Clone, Copy)]
struct Unit {
    r: usize,
    c: usize,
    pos: usize,
}

/// Enumerates the units of a map `cols -> rows` in flattened order.
fn units(a: &Algebra, rows: &[usize], cols: &[usize]) -> Vec<Unit> {
    let mut out = Vec::new();
    for (r, &tr) in rows.iter().enumerate() {
        for (c, &sc) in cols.iter().enumerate() {
            out.extend((0..a.block(sc, tr).len()).map(|pos| Unit { r, c, pos }));
        }
    }
    out
}

/// A differential multiplied against unit maps, with the positions of its
/// nonzero entries and the flat layout of the products.
struct Factor {
    map: AlgMatrix,
    /// Entry offsets of the product maps.
    offs: Vec<usize>,
    /// Per column (for post-composition) or per row (for pre-composition),
    /// the positions of the nonzero entries.
    nonzero: Vec<Vec<usize>>,
}

impl Factor {
    /// For products `d ∘ u` with `u: src -> d.cols()`.
    fn post(a: &Algebra, d: AlgMatrix, src: &[usize]) -> Self {
        let nonzero = (0..d.cols().len())
            .map(|c| (0..d.rows().len()).filter(|&r| d.get(r, c).iter().any(|&x| x != 0)).collect())
            .collect();
        Factor {
            offs: entry_offsets(a, d.rows(), src),
            map: d,
            nonzero,
        }
    }

    /// For products `u ∘ d` with `u: d.rows() -> tgt`.
    fn pre(a: &Algebra, d: AlgMatrix, tgt: &[usize]) -> Self {
        let nonzero = (0..d.rows().len())
            .map(|r| (0..d.cols().len()).filter(|&c| d.get(r, c).iter().any(|&x| x != 0)).collect())
            .collect();
        Factor {
            offs: entry_offsets(a, tgt, d.cols()),
            map: d,
            nonzero,
        }
    }
}

/// Collects the flattened products of one unit map with the differentials
/// as raw sparse contributions.
struct Sink<'a> {
    a: &'a Algebra,
    layout: &'a Layout,
    out: &'a mut Vec<(usize, u32)>,
}

impl Sink<'_> {
    fn add(&mut self, k: i32, entry_off: usize, v: &[u32], sign: bool) {
        let Some(off) = self.layout.offset(k) else {
            debug_assert!(v.iter().all(|&x| x == 0));
            return;
        };
        let f = self.a.field();
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                self.out.push((off + i + entry_off, if sign { x } else { f.neg(x) }));
            }
        }
    }

    /// Adds `d ∘ u` (placed in degree `k`), where `u: src -> tgt` is a unit
    /// and `d` has domain `tgt`. Only column `u.c` of the product is nonzero.
    fn post(&mut self, k: i32, d: &Factor, tgt: &[usize], src: &[usize], u: Unit, sign: bool) {
        let a = self.a;
        let mut unit = vec![0u32; a.block(src[u.c], tgt[u.r]).len()];
        unit[u.pos] = 1;
        for &s in &d.nonzero[u.r] {
            let z = d.map.rows()[s];
            let mut acc = vec![0u32; a.block(src[u.c], z).len()];
            a.mul_local_acc(src[u.c], tgt[u.r], z, &unit, d.map.get(s, u.r), &mut acc);
            self.add(k, d.offs[s * src.len() + u.c], &acc, sign);
        }
    }

    /// Adds `u ∘ d` (placed in degree `k`), where `u: src -> tgt` is a unit
    /// and `d` has codomain `src`. Only row `u.r` of the product is nonzero.
    fn pre(&mut self, k: i32, d: &Factor, tgt: &[usize], src: &[usize], u: Unit, sign: bool) {
        let a = self.a;
        let mut unit = vec![0u32; a.block(src[u.c], tgt[u.r]).len()];
        unit[u.pos] = 1;
        let width = d.map.cols().len();
        for &c in &d.nonzero[u.c] {
            let t = d.map.cols()[c];
            let mut acc = vec![0u32; a.block(t, tgt[u.r]).len()];
            a.mul_local_acc(t, src[u.c], tgt[u.r], d.map.get(u.c, c), &unit, &mut acc);
            self.add(k, d.offs[u.r * width + c], &acc, sign);
        }
    }
}

/// `Hom_K(X, Y[shift])`, with a basis of chain maps and coordinates modulo
/// null-homotopic maps.
#[derive(Clone, Debug)]
pub struct HomK {
    source: ProjComplex,
    target: ProjComplex,
    basis: Vec<ChainMap>,
    /// Flattened basis of all chain maps, unflattened on first use.
    cycles_flat: Vec<Vec<u32>>,
    cycles: OnceLock<Vec<ChainMap>>,
    homotopic: QuotientSpace,
    classes: Echelon,
}

impl HomK {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Representatives of a basis of the homotopy classes.
    pub fn basis(&self) -> &[ChainMap] {
        &self.basis
    }

    /// A basis of all chain maps (not reduced modulo homotopy).
    pub fn chain_maps(&self, a: &Algebra) -> &[ChainMap] {
        self.cycles.get_or_init(|| {
            self.cycles_flat
                .iter()
                .map(|z| ChainMap::unflatten(a, &self.source, &self.target, z))
                .collect()
        })
    }

    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    /// `Y[shift]`.
    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    /// Coordinates of the class of a chain map in [`HomK::basis`].
    pub fn coords(&self, f: &ChainMap) -> Option<Vec<u32>> {
        self.classes.coordinates(&self.homotopic.coords(&f.flatten()))
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.homotopic.coords(&f.flatten()).iter().all(|&c| c == 0)
    }

    /// The chain map `sum_i c_i basis_i`.
    pub fn combination(&self, a: &Algebra, coeffs: &[u32]) -> ChainMap {
        let mut out = ChainMap::zero(a, &self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                out = out.add(&b.scale(*c, a), a);
            }
        }
        out
    }
}

/// Computes `Hom_K(X, Y[shift])`.
pub fn hom_k(a: &Algebra, x: &ProjComplex, y: &ProjComplex, shift: i32) -> HomK {
    let f = a.field();
    let y = y.shift(a, shift);
    let (lo, hi) = span_of(&[x, &y]);
    let maps = Layout::new(a, x, &y, 0, lo, hi);
    let constraints = Layout::new(a, x, &y, 1, lo - 1, hi);

    // columns of the constraint map φ ↦ (d_Y φ^k - φ^{k+1} d_X)_k
    let mut cols = Vec::with_capacity(maps.total);
    for k in lo..=hi {
        let (src, tgt) = (x.term(k), y.term(k));
        let dy = Factor::post(a, y.diff(a, k), src);
        let dx = Factor::pre(a, x.diff(a, k - 1), tgt);
        for u in units(a, tgt, src) {
            let mut raw = Vec::new();
            let mut sink = Sink { a, layout: &constraints, out: &mut raw };
            sink.post(k, &dy, tgt, src, u, true);
            sink.pre(k - 1, &dx, tgt, src, u, false);
            cols.push(normalize(f, raw));
        }
    }
    let cycles_flat: Vec<Vec<u32>> = if maps.total == 0 {
        Vec::new()
    } else if constraints.total == 0 {
        (0..maps.total)
            .map(|i| {
                let mut v = vec![0; maps.total];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        sparse_kernel(f, &cols)
    };

    // images of the unit homotopies h ↦ d_Y h^k + h^{k+1} d_X
    let mut null = Vec::new();
    for k in lo..=hi + 1 {
        let (src, tgt) = (x.term(k), y.term(k - 1));
        let dy = Factor::post(a, y.diff(a, k - 1), src);
        let dx = Factor::pre(a, x.diff(a, k - 1), tgt);
        for u in units(a, tgt, src) {
            let mut raw = Vec::new();
            let mut sink = Sink { a, layout: &maps, out: &mut raw };
            sink.post(k, &dy, tgt, src, u, true);
            sink.pre(k - 1, &dx, tgt, src, u, true);
            let sparse = normalize(f, raw);
            if !sparse.is_empty() {
                let mut v = vec![0u32; maps.total];
                for (i, x) in sparse {
                    v[i] = x;
                }
                null.push(v);
            }
        }
    }
    let homotopic = QuotientSpace::new(f, maps.total, &null);
    let mut classes = Echelon::new(f, homotopic.dim());
    let mut basis = Vec::new();
    for z in &cycles_flat {
        if classes.insert(&homotopic.coords(z)) == Insert::New {
            basis.push(ChainMap::unflatten(a, x, &y, z));
        }
    }
    HomK {
        source: x.clone(),
        target: y,
        basis,
        cycles_flat,
        cycles: OnceLock::new(),
        homotopic,
        classes,
    }
}

pub fn hom_k_dim(a: &Algebra, x: &ProjComplex, y: &ProjComplex, shift: i32) -> usize {
    hom_k(a, x, y, shift).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::tests::s1_complex;
    use crate::testing::corpus_algebra;

    #[test]
    fn endomorphisms_of_the_regular_stalk() {
        for name in ["a2", "a3", "square_commutative", "kronecker"] {
            let a = corpus_algebra(name);
            let r = ProjComplex::regular(&a);
            assert_eq!(hom_k_dim(&a, &r, &r, 0), a.dim(), "{name}");
            assert_eq!(hom_k_dim(&a, &r, &r, 1), 0);
            assert_eq!(hom_k_dim(&a, &r, &r, -1), 0);
        }
    }

    #[test]
    fn contractible_source_has_no_maps() {
        let a = corpus_algebra("a2");
        let p = ProjComplex::stalk(&[0], 0);
        let id = ChainMap::identity(&a, &p);
        let c = ProjComplex::cone_raw(&a, &id, &p, &p);
        assert!(!c.is_zero());
        for y in [s1_complex(&a), ProjComplex::regular(&a), c.clone()] {
            for k in -2..=2 {
                assert_eq!(hom_k_dim(&a, &c, &y, k), 0);
            }
        }
    }

    #[test]
    fn s1_complex_over_a2() {
        let a = corpus_algebra("a2");
        let x = s1_complex(&a);
        assert_eq!(hom_k_dim(&a, &x, &x, 0), 1);
        assert_eq!(hom_k_dim(&a, &x, &x, 1), 0);
        assert_eq!(hom_k_dim(&a, &x, &x, -1), 0);
        let p1 = ProjComplex::stalk(&[0], 0);
        let p2 = ProjComplex::stalk(&[1], 0);
        // maps P_1 -> (P_2 -> P_1) are those into H^0 = S_1
        assert_eq!(hom_k_dim(&a, &p1, &x, 0), 1);
        assert_eq!(hom_k_dim(&a, &p2, &x, 0), 0);
        // E(x, P_2) = Hom(x, P_2[1]) = 1: the projection onto degree -1
        assert_eq!(hom_k_dim(&a, &x, &p2, 1), 1);
    }

    #[test]
    fn coordinates_recover_basis() {
        let a = corpus_algebra("a3");
        let r = ProjComplex::regular(&a);
        let h = hom_k(&a, &r, &r, 0);
        for (i, b) in h.basis().iter().enumerate() {
            let c = h.coords(b).unwrap();
            assert_eq!(c.iter().filter(|&&v| v != 0).count(), 1);
            assert_eq!(c[i], 1);
            assert!(b.is_chain_map(&a, &r, &r));
        }
    }
}
