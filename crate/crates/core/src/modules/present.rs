//! Projective covers, minimal projective presentations, the
//! Auslander-Reiten translate and `Ext^1`.

use crate::algebra::{indec_injective, injective_sum, projective_sum, AlgMatrix, Algebra};
use crate::exactlinalg::{Echelon, Matrix};

use super::hom::{hom_dim, hom_space};
use super::rep::{ModuleMap, Representation};

/// Per-vertex basis of `rad M`, the sum of the images of all generators.
pub fn radical_basis(a: &Algebra, m: &Representation) -> Vec<Matrix> {
    let f = a.field();
    (0..a.num_vertices())
        .map(|v| {
            let mut cols = Vec::new();
            for (k, &g) in a.generators().iter().enumerate() {
                if a.basis()[g].target == v {
                    let act = m.action(k);
                    cols.extend((0..act.cols()).map(|j| act.column(j)));
                }
            }
            let mut span = Echelon::new(f, m.dims()[v]);
            let kept: Vec<Vec<u32>> = cols.into_iter().filter(|c| span.insert(c) == crate::exactlinalg::Insert::New).collect();
            Matrix::from_cols(f, m.dims()[v], &kept)
        })
        .collect()
}

/// A projective cover `⊕ P_{vertices[r]} -> M`, summands sorted by vertex.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub vertices: Vec<usize>,
    /// The image of `e_v` for each summand, as a vector of `M` at its vertex.
    pub generators: Vec<Vec<u32>>,
    pub map: ModuleMap,
}

/// Projective cover built from a complement of `rad M` at each vertex.
pub fn projective_cover(a: &Algebra, m: &Representation) -> ProjectiveCover {
    let f = a.field();
    let rad = radical_basis(a, m);
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for v in 0..a.num_vertices() {
        let d = m.dims()[v];
        let mut span = Echelon::new(f, d);
        for j in 0..rad[v].cols() {
            span.insert(&rad[v].column(j));
        }
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            if span.insert(&e) == crate::exactlinalg::Insert::New {
                vertices.push(v);
                generators.push(e);
            }
        }
    }
    let map = cover_map(a, m, &vertices, &generators);
    ProjectiveCover {
        vertices,
        generators,
        map,
    }
}

/// The map `⊕ P_{verts[r]} -> M` sending `e_{verts[r]}` to `gens[r]`.
pub fn cover_map(a: &Algebra, m: &Representation, verts: &[usize], gens: &[Vec<u32>]) -> ModuleMap {
    let f = a.field();
    let comps = (0..a.num_vertices())
        .map(|w| {
            let mut cols: Vec<Vec<u32>> = Vec::new();
            for (&v, x) in verts.iter().zip(gens) {
                for &y in a.block(w, v) {
                    cols.push(m.element_action(a, y).mul_vec(x));
                }
            }
            Matrix::from_cols(f, m.dims()[w], &cols)
        })
        .collect();
    ModuleMap { comps }
}

/// Kernel of a module map as a submodule: per-vertex basis matrices.
pub fn kernel_basis(map: &ModuleMap, src: &Representation) -> Vec<Matrix> {
    map.comps
        .iter()
        .zip(src.dims())
        .map(|(c, &d)| {
            let kb = c.kernel_basis();
            Matrix::from_cols(c.field(), d, &kb)
        })
        .collect()
}

/// Image of a module map: per-vertex basis matrices in the target.
pub fn image_basis(map: &ModuleMap) -> Vec<Matrix> {
    map.comps.iter().map(super::decompose::column_space).collect()
}

/// A minimal projective presentation `P1 --d--> P0 --> M --> 0`.
#[derive(Clone, Debug)]
pub struct MinPresentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub d: AlgMatrix,
    pub cover: ModuleMap,
    /// The syzygy `ker(P0 -> M)` and its inclusion into `P0`.
    pub syzygy: Representation,
    pub syzygy_incl: Vec<Matrix>,
}

pub fn min_proj_presentation(a: &Algebra, m: &Representation) -> MinPresentation {
    let cover = projective_cover(a, m);
    let p0 = cover.vertices.clone();
    let p0_rep = projective_sum(a, &p0);
    let incl = kernel_basis(&cover.map, &p0_rep);
    let syzygy = p0_rep.restrict(a, &incl);
    let kc = projective_cover(a, &syzygy);
    let mut d = AlgMatrix::zeros(a, &p0, &[]);
    for (&u, g) in kc.vertices.iter().zip(&kc.generators) {
        let elem = incl[u].mul_vec(g);
        d = d.hstack(&AlgMatrix::column_from_element(a, &p0, u, &elem));
    }
    MinPresentation {
        p0,
        p1: kc.vertices,
        d,
        cover: cover.map,
        syzygy,
        syzygy_incl: incl,
    }
}

pub fn is_projective(a: &Algebra, m: &Representation) -> bool {
    let cover = projective_cover(a, m);
    projective_sum(a, &cover.vertices).total_dim() == m.total_dim()
}

/// `tau M = ker(nu P1 -> nu P0)` for a minimal presentation of `M`.
pub fn tau(a: &Algebra, m: &Representation) -> Representation {
    let pres = min_proj_presentation(a, m);
    let nu = pres.d.to_nakayama_map(a);
    let src = injective_sum(a, &pres.p1);
    let ker = kernel_basis(&nu, &src);
    src.restrict(a, &ker)
}

/// `dim Ext^1(M, N)` from a presentation: `Hom(Omega M, N)` modulo maps
/// extending to the projective cover.
pub fn ext1_dim(a: &Algebra, m: &Representation, n: &Representation) -> usize {
    let pres = min_proj_presentation(a, m);
    let p0 = projective_sum(a, &pres.p0);
    let incl = ModuleMap {
        comps: pres.syzygy_incl.clone(),
    };
    let total: usize = pres.syzygy.dims().iter().zip(n.dims()).map(|(x, y)| x * y).sum();
    let mut span = Echelon::new(a.field(), total);
    for phi in hom_space(a, &p0, n) {
        span.insert(&phi.compose(&incl).flatten());
    }
    hom_dim(a, &pres.syzygy, n) - span.rank()
}

/// Dimension of the space of maps `N -> M` factoring through an injective.
pub fn injective_factoring_dim(a: &Algebra, n: &Representation, m: &Representation) -> usize {
    let total: usize = n.dims().iter().zip(m.dims()).map(|(x, y)| x * y).sum();
    let mut span = Echelon::new(a.field(), total);
    for j in 0..a.num_vertices() {
        let inj = indec_injective(a, j);
        let into = hom_space(a, n, &inj);
        if into.is_empty() {
            continue;
        }
        for psi in hom_space(a, &inj, m) {
            for phi in &into {
                span.insert(&psi.compose(phi).flatten());
            }
        }
    }
    span.rank()
}

/// `dim Hom(N, tau M)` modulo maps factoring through injectives; equals
/// `dim Ext^1(M, N)` by Auslander-Reiten duality.
pub fn ar_dual_dim(a: &Algebra, m: &Representation, n: &Representation) -> usize {
    let tm = tau(a, m);
    hom_dim(a, n, &tm) - injective_factoring_dim(a, n, &tm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{indec_projective, simple};
    use crate::testing::corpus_algebra;

    #[test]
    fn presentations_of_projectives_are_trivial() {
        let a = corpus_algebra("a3");
        for i in 0..3 {
            let p = min_proj_presentation(&a, &indec_projective(&a, i));
            assert_eq!(p.p0, vec![i]);
            assert!(p.p1.is_empty());
            assert!(tau(&a, &indec_projective(&a, i)).is_zero());
        }
    }

    #[test]
    fn simple_top_of_a2() {
        let a = corpus_algebra("a2");
        let p = min_proj_presentation(&a, &simple(&a, 0));
        assert_eq!((p.p1.clone(), p.p0.clone()), (vec![1], vec![0]));
        assert!(p.d.is_radical() && !p.d.is_zero());
        let t = tau(&a, &simple(&a, 0));
        assert_eq!(t.dims(), &[0, 1]);
        let p = min_proj_presentation(&a, &simple(&a, 1));
        assert!(p.p1.is_empty());
        assert_eq!(p.p0, vec![1]);
    }

    #[test]
    fn cokernel_of_presentation_is_the_module() {
        let a = corpus_algebra("square_commutative");
        let m = indec_injective(&a, 3);
        let p = min_proj_presentation(&a, &m);
        let d = p.d.to_module_map(&a);
        let src = projective_sum(&a, &p.p1);
        let tgt = projective_sum(&a, &p.p0);
        assert!(d.is_homomorphism(&a, &src, &tgt));
        let (coker, _) = tgt.quotient(&a, &image_basis(&d));
        assert_eq!(coker.dims(), m.dims());
        assert!(p.d.is_radical());
    }

    #[test]
    fn ar_duality_on_simples() {
        for name in ["a2", "a3", "a3_rad2", "square_zero"] {
            let a = corpus_algebra(name);
            for i in 0..a.num_vertices() {
                for j in 0..a.num_vertices() {
                    let (m, n) = (simple(&a, i), simple(&a, j));
                    assert_eq!(ext1_dim(&a, &m, &n), ar_dual_dim(&a, &m, &n), "{name} S{i} S{j}");
                }
            }
        }
    }

    #[test]
    fn ext_between_simples_counts_arrows() {
        let a = corpus_algebra("kronecker");
        assert_eq!(ext1_dim(&a, &simple(&a, 0), &simple(&a, 1)), 2);
        assert_eq!(ext1_dim(&a, &simple(&a, 1), &simple(&a, 0)), 0);
    }
}
