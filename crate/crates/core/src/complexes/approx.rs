//! Minimal `add U`-approximations in the homotopy category.
//!
//! A minimal left approximation of `X` is assembled from maps `X -> U_i`
//! forming a basis of `Hom(X, U_i)` modulo the radical maps, i.e. those that
//! factor as `X -> U_j -> U_i` through a non-invertible map between summands.

use crate::algebra::{AlgMatrix, Algebra};
use crate::exactlinalg::{Echelon, Insert};

use super::chain::ChainMap;
use super::hom::{hom_k, HomK};
use super::{span_of, ProjComplex};

#[derive(Clone, Debug)]
pub struct Approximation {
    /// Which `U_i` each summand copy of `object` is, in order.
    pub copies: Vec<usize>,
    /// `⊕ U_{copies[j]}` with summands in the order of `copies`.
    pub object: ProjComplex,
    /// `X -> object` for a left approximation, `object -> X` for a right one.
    pub map: ChainMap,
}

/// Radical of the local ring `End_K(U)`: the basis made trace-free.
fn radical_endomorphisms(a: &Algebra, u: &ProjComplex, end: &HomK) -> Vec<ChainMap> {
    let f = a.field();
    let size = f.from_i64(u.num_summands() as i64);
    let inv = f.inv(size);
    let id = ChainMap::identity(a, u);
    end.basis()
        .iter()
        .map(|b| {
            let lambda = f.mul(b.top_trace(a), inv);
            b.sub(&id.scale(lambda, a), a)
        })
        .filter(|m| !m.is_zero())
        .collect()
}

/// `rad(U_j, U_i)` for all pairs.
fn radical_maps(a: &Algebra, us: &[ProjComplex]) -> Vec<Vec<Vec<ChainMap>>> {
    (0..us.len())
        .map(|j| {
            (0..us.len())
                .map(|i| {
                    let h = hom_k(a, &us[j], &us[i], 0);
                    if i == j {
                        radical_endomorphisms(a, &us[i], &h)
                    } else {
                        h.basis().to_vec()
                    }
                })
                .collect()
        })
        .collect()
}

/// Degreewise stacking of maps `X -> U_{copies[j]}` into one map.
pub(super) fn stack_left(a: &Algebra, x: &ProjComplex, us: &[ProjComplex], copies: &[usize], maps: &[ChainMap], object: &ProjComplex) -> ChainMap {
    let (lo, hi) = span_of(&[x, object]);
    let comps = (lo..=hi)
        .map(|k| {
            let mut m = AlgMatrix::zeros(a, &[], x.term(k));
            for (&i, g) in copies.iter().zip(maps) {
                m = m.vstack(&g.comp_or_zero(a, k, x, &us[i]));
            }
            (k, m)
        })
        .collect();
    ChainMap::from_comps(a, x, object, comps)
}

pub(super) fn stack_right(a: &Algebra, x: &ProjComplex, us: &[ProjComplex], copies: &[usize], maps: &[ChainMap], object: &ProjComplex) -> ChainMap {
    let (lo, hi) = span_of(&[x, object]);
    let comps = (lo..=hi)
        .map(|k| {
            let mut m = AlgMatrix::zeros(a, x.term(k), &[]);
            for (&i, g) in copies.iter().zip(maps) {
                m = m.hstack(&g.comp_or_zero(a, k, &us[i], x));
            }
            (k, m)
        })
        .collect();
    ChainMap::from_comps(a, object, x, comps)
}

pub(super) fn raw_sum(a: &Algebra, us: &[ProjComplex], copies: &[usize]) -> ProjComplex {
    let parts: Vec<&ProjComplex> = copies.iter().map(|&i| &us[i]).collect();
    ProjComplex::direct_sum_many(a, &parts)
}

/// Minimal left `add U`-approximation `X -> U'` where `U = ⊕ us` (the `us`
/// pairwise non-isomorphic, minimal and indecomposable).
pub fn left_approx(a: &Algebra, x: &ProjComplex, us: &[ProjComplex]) -> Approximation {
    let f = a.field();
    let homs: Vec<HomK> = us.iter().map(|u| hom_k(a, x, u, 0)).collect();
    let rad = radical_maps(a, us);
    let mut copies = Vec::new();
    let mut maps = Vec::new();
    for i in 0..us.len() {
        let h = &homs[i];
        let mut span = Echelon::new(f, h.dim());
        for j in 0..us.len() {
            for r in &rad[j][i] {
                for g in homs[j].basis() {
                    let c = h.coords(&r.compose(g, a, x, &us[i])).expect("composite is a chain map");
                    span.insert(&c);
                }
            }
        }
        for t in 0..h.dim() {
            let mut e = vec![0; h.dim()];
            e[t] = 1;
            if span.insert(&e) == Insert::New {
                copies.push(i);
                maps.push(h.basis()[t].clone());
            }
        }
    }
    let object = raw_sum(a, us, &copies);
    let map = stack_left(a, x, us, &copies, &maps, &object);
    Approximation { copies, object, map }
}

/// Minimal right `add U`-approximation `U' -> X`.
pub fn right_approx(a: &Algebra, x: &ProjComplex, us: &[ProjComplex]) -> Approximation {
    let f = a.field();
    let homs: Vec<HomK> = us.iter().map(|u| hom_k(a, u, x, 0)).collect();
    let rad = radical_maps(a, us);
    let mut copies = Vec::new();
    let mut maps = Vec::new();
    for i in 0..us.len() {
        let h = &homs[i];
        let mut span = Echelon::new(f, h.dim());
        for j in 0..us.len() {
            for r in &rad[i][j] {
                for g in homs[j].basis() {
                    let c = h.coords(&g.compose(r, a, &us[i], x)).expect("composite is a chain map");
                    span.insert(&c);
                }
            }
        }
        for t in 0..h.dim() {
            let mut e = vec![0; h.dim()];
            e[t] = 1;
            if span.insert(&e) == Insert::New {
                copies.push(i);
                maps.push(h.basis()[t].clone());
            }
        }
    }
    let object = raw_sum(a, us, &copies);
    let map = stack_right(a, x, us, &copies, &maps, &object);
    Approximation { copies, object, map }
}

/// Every map `X -> U_i` factors through the left approximation.
pub fn left_factors(a: &Algebra, x: &ProjComplex, us: &[ProjComplex], ap: &Approximation) -> bool {
    us.iter().all(|u| {
        let target = hom_k(a, x, u, 0);
        let mut span = Echelon::new(a.field(), target.dim());
        for h in hom_k(a, &ap.object, u, 0).basis() {
            span.insert(&target.coords(&h.compose(&ap.map, a, x, u)).unwrap());
        }
        span.rank() == target.dim()
    })
}

/// Every map `U_i -> X` factors through the right approximation.
pub fn right_factors(a: &Algebra, x: &ProjComplex, us: &[ProjComplex], ap: &Approximation) -> bool {
    us.iter().all(|u| {
        let target = hom_k(a, u, x, 0);
        let mut span = Echelon::new(a.field(), target.dim());
        for h in hom_k(a, u, &ap.object, 0).basis() {
            span.insert(&target.coords(&ap.map.compose(h, a, u, x)).unwrap());
        }
        span.rank() == target.dim()
    })
}

/// Offsets of each copy's summands inside `object`, per degree.
fn copy_positions(us: &[ProjComplex], copies: &[usize], k: i32, which: usize) -> Vec<usize> {
    let before: usize = copies[..which].iter().map(|&i| us[i].term(k).len()).sum();
    (before..before + us[copies[which]].term(k).len()).collect()
}

/// Whether an endomorphism of `⊕ U_{copies}` lies in the radical: every
/// component between two copies of the same `U_i` must have zero scalar part.
fn in_radical(a: &Algebra, us: &[ProjComplex], copies: &[usize], object: &ProjComplex, h: &ChainMap) -> bool {
    let f = a.field();
    for p in 0..copies.len() {
        for q in 0..copies.len() {
            if copies[p] != copies[q] {
                continue;
            }
            let u = &us[copies[p]];
            let mut tr = 0;
            for k in u.lo()..=u.hi() {
                let comp = h.comp_or_zero(a, k, object, object);
                let block = comp.select(&copy_positions(us, copies, k, q), &copy_positions(us, copies, k, p));
                tr = block.top(a).iter().fold(tr, |acc, m| f.add(acc, m.trace()));
            }
            if tr != 0 {
                return false;
            }
        }
    }
    true
}

/// Left minimality: every `h` in `End(U')` with `h f ≃ 0` is radical.
pub fn is_left_minimal(a: &Algebra, x: &ProjComplex, us: &[ProjComplex], ap: &Approximation) -> bool {
    let obj = &ap.object;
    let end = hom_k(a, obj, obj, 0);
    let target = hom_k(a, x, obj, 0);
    let images: Vec<Vec<u32>> = end
        .basis()
        .iter()
        .map(|h| target.coords(&h.compose(&ap.map, a, x, obj)).unwrap())
        .collect();
    killed_are_radical(a, us, ap, &end, &images, target.dim())
}

/// Right minimality: every `h` in `End(U')` with `f h ≃ 0` is radical.
pub fn is_right_minimal(a: &Algebra, x: &ProjComplex, us: &[ProjComplex], ap: &Approximation) -> bool {
    let obj = &ap.object;
    let end = hom_k(a, obj, obj, 0);
    let target = hom_k(a, obj, x, 0);
    let images: Vec<Vec<u32>> = end
        .basis()
        .iter()
        .map(|h| target.coords(&ap.map.compose(h, a, obj, x)).unwrap())
        .collect();
    killed_are_radical(a, us, ap, &end, &images, target.dim())
}

fn killed_are_radical(a: &Algebra, us: &[ProjComplex], ap: &Approximation, end: &HomK, images: &[Vec<u32>], dim: usize) -> bool {
    if end.dim() == 0 {
        return true;
    }
    // kernel of the linear map End(U') -> Hom, whose columns are `images`
    let m = crate::exactlinalg::Matrix::from_cols(a.field(), dim, images);
    let kernel = if dim == 0 {
        (0..end.dim())
            .map(|i| {
                let mut v = vec![0; end.dim()];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        m.kernel_basis()
    };
    kernel
        .iter()
        .all(|c| in_radical(a, us, &ap.copies, &ap.object, &end.combination(a, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::tests::s1_complex;
    use crate::testing::corpus_algebra;

    #[test]
    fn approximations_over_a2() {
        let a = corpus_algebra("a2");
        let s1 = s1_complex(&a);
        let us = vec![s1.clone()];
        // the regular stalk: only P_1 maps to the S_1-complex
        let r = ProjComplex::regular(&a);
        let l = left_approx(&a, &r, &us);
        assert_eq!(l.copies, vec![0]);
        assert!(l.map.is_chain_map(&a, &r, &l.object));
        assert!(left_factors(&a, &r, &us, &l));
        assert!(is_left_minimal(&a, &r, &us, &l));
        // an object of add U approximates itself
        let own = left_approx(&a, &s1, &us);
        assert_eq!(own.copies, vec![0]);
        let p2 = ProjComplex::stalk(&[1], 0);
        assert!(left_approx(&a, &p2, &us).object.is_zero());
        // right approximation of A[1]
        let r1 = r.shift(&a, 1);
        let rr = right_approx(&a, &r1, &us);
        assert_eq!(rr.copies, vec![0]);
        assert!(right_factors(&a, &r1, &us, &rr));
        assert!(is_right_minimal(&a, &r1, &us, &rr));
    }

    #[test]
    fn doubled_target_is_not_minimal() {
        let a = corpus_algebra("a2");
        let s1 = s1_complex(&a);
        let us = vec![s1.clone()];
        let r = ProjComplex::regular(&a);
        let l = left_approx(&a, &r, &us);
        let doubled = Approximation {
            copies: vec![0, 0],
            object: raw_sum(&a, &us, &[0, 0]),
            map: stack_left(&a, &r, &us, &[0, 0], &[hom_k(&a, &r, &s1, 0).basis()[0].clone(), ChainMap::zero(&a, &r, &s1)], &raw_sum(&a, &us, &[0, 0])),
        };
        assert!(left_factors(&a, &r, &us, &doubled));
        assert!(!is_left_minimal(&a, &r, &us, &doubled));
        assert!(is_left_minimal(&a, &r, &us, &l));
    }
}
