use crate::algebra::Algebra;
use crate::exactlinalg::{Echelon, Matrix};

use super::rep::{ModuleMap, Representation};

/// Offsets of the per-vertex blocks of a flattened map `M -> N`.
fn offsets(m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for (&dm, &dn) in m.dims().iter().zip(n.dims()) {
        off.push(total);
        total += dm * dn;
    }
    (off, total)
}

/// Linear constraints cutting out `Hom(M, N)` inside the space of
/// vertexwise linear maps (flattened row-major per vertex).
pub fn intertwiner_system(a: &Algebra, m: &Representation, n: &Representation) -> Matrix {
    let f = a.field();
    let (off, total) = offsets(m, n);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (k, &g) in a.generators().iter().enumerate() {
        let (s, t) = (a.basis()[g].source, a.basis()[g].target);
        let (ms, mt, ns, nt) = (m.dims()[s], m.dims()[t], n.dims()[s], n.dims()[t]);
        let ng = n.action(k);
        let mg = m.action(k);
        // (N(g) f_s - f_t M(g))[i][j] = 0 for i < nt, j < ms
        for i in 0..nt {
            for j in 0..ms {
                let mut row = vec![0u32; total];
                for kk in 0..ns {
                    let c = ng.get(i, kk);
                    if c != 0 {
                        let idx = off[s] + kk * ms + j;
                        row[idx] = f.add(row[idx], c);
                    }
                }
                for kk in 0..mt {
                    let c = mg.get(kk, j);
                    if c != 0 {
                        let idx = off[t] + i * mt + kk;
                        row[idx] = f.sub(row[idx], c);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_rows(f, total, &rows)
}

/// Basis of `Hom(M, N)`.
pub fn hom_space(a: &Algebra, m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let f = a.field();
    let (_, total) = offsets(m, n);
    if total == 0 {
        return Vec::new();
    }
    intertwiner_system(a, m, n)
        .kernel_basis()
        .into_iter()
        .map(|v| ModuleMap::unflatten(f, m, n, &v))
        .collect()
}

pub fn hom_dim(a: &Algebra, m: &Representation, n: &Representation) -> usize {
    let (_, total) = offsets(m, n);
    if total == 0 {
        return 0;
    }
    total - intertwiner_system(a, m, n).rank()
}

/// A basis of `Hom(M, N)` with a coordinate map.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub maps: Vec<ModuleMap>,
    span: Echelon,
}

impl HomBasis {
    pub fn new(a: &Algebra, m: &Representation, n: &Representation) -> Self {
        let maps = hom_space(a, m, n);
        let (_, total) = offsets(m, n);
        let span = Echelon::from_vectors(a.field(), total, maps.iter().map(|x| x.flatten()).collect::<Vec<_>>().iter());
        HomBasis { maps, span }
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// Coordinates of a homomorphism in this basis.
    pub fn coords(&self, map: &ModuleMap) -> Option<Vec<u32>> {
        self.span.coordinates(&map.flatten())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{indec_projective, simple};
    use crate::testing::corpus_algebra;

    #[test]
    fn hom_between_simples_and_projectives() {
        let a = corpus_algebra("a2");
        let s1 = simple(&a, 0);
        let s2 = simple(&a, 1);
        let p1 = indec_projective(&a, 0);
        assert_eq!(hom_dim(&a, &s1, &s1), 1);
        assert_eq!(hom_dim(&a, &s1, &s2), 0);
        assert_eq!(hom_dim(&a, &s1, &p1), 0);
        assert_eq!(hom_dim(&a, &p1, &s1), 1);
    }

    #[test]
    fn hom_from_projective_counts_vertex_dimension() {
        for name in ["a2", "a3", "a3_rad2", "square_zero", "square_commutative"] {
            let a = corpus_algebra(name);
            for i in 0..a.num_vertices() {
                let p = indec_projective(&a, i);
                for j in 0..a.num_vertices() {
                    let q = indec_projective(&a, j);
                    assert_eq!(hom_dim(&a, &p, &q), q.dims()[i], "{name} P{i} -> P{j}");
                }
            }
        }
    }

    #[test]
    fn basis_maps_are_homomorphisms() {
        let a = corpus_algebra("square_zero");
        let p = indec_projective(&a, 0);
        let i = crate::algebra::indec_injective(&a, 3);
        let hb = HomBasis::new(&a, &p, &i);
        for m in &hb.maps {
            assert!(m.is_homomorphism(&a, &p, &i));
            assert!(hb.coords(m).is_some());
        }
    }
}
