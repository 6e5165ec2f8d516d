//! The torsion pair `(Fac U, U^⊥)` attached to a τ-rigid module `U`.

use crate::algebra::Algebra;
use crate::exactlinalg::Matrix;

use super::decompose::column_space;
use super::hom::hom_space;
use super::rep::{ModuleMap, Representation};

/// Per-vertex basis of the trace of `T` in `X`: the sum of the images of
/// all homomorphisms `T -> X`.
pub fn trace(a: &Algebra, t: &Representation, x: &Representation) -> Vec<Matrix> {
    let f = a.field();
    let maps = hom_space(a, t, x);
    (0..a.num_vertices())
        .map(|v| {
            let d = x.dims()[v];
            let all = maps
                .iter()
                .fold(Matrix::zeros(f, d, 0), |acc, phi| acc.hstack(&phi.comps[v]));
            column_space(&all)
        })
        .collect()
}

/// Whether `X` is a quotient of a direct sum of copies of `T`.
pub fn fac_member(a: &Algebra, x: &Representation, t: &Representation) -> bool {
    trace(a, t, x)
        .iter()
        .zip(x.dims())
        .all(|(b, &d)| b.cols() == d)
}

/// Canonical sequence `0 -> tM -> M -> fM -> 0` for the torsion pair
/// generated by `U`.
#[derive(Clone, Debug)]
pub struct CanonicalSequence {
    pub torsion: Representation,
    pub inclusion: ModuleMap,
    pub free: Representation,
    pub projection: ModuleMap,
}

pub fn torsion_canonical_seq(a: &Algebra, m: &Representation, u: &Representation) -> CanonicalSequence {
    let tr = trace(a, u, m);
    let torsion = m.restrict(a, &tr);
    let (free, projection) = m.quotient(a, &tr);
    CanonicalSequence {
        torsion,
        inclusion: ModuleMap { comps: tr },
        free,
        projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{indec_projective, simple};
    use crate::modules::{hom_dim, iso_indecomposable};
    use crate::testing::corpus_algebra;

    #[test]
    fn fac_over_a2() {
        let a = corpus_algebra("a2");
        let p1 = indec_projective(&a, 0);
        // P_1 has top S_1 and socle S_2, so only S_1 is a quotient
        assert!(!fac_member(&a, &simple(&a, 1), &p1));
        assert!(!fac_member(&a, &simple(&a, 1), &simple(&a, 0)));
        assert!(fac_member(&a, &simple(&a, 0), &p1));
        assert!(fac_member(&a, &p1, &p1));
        assert!(fac_member(&a, &Representation::zero(&a), &simple(&a, 0)));
    }

    #[test]
    fn canonical_sequence_of_p1_plus_s1() {
        let a = corpus_algebra("a2");
        let (p1, s1) = (indec_projective(&a, 0), simple(&a, 0));
        let seq = torsion_canonical_seq(&a, &p1.direct_sum(&s1, &a), &s1);
        assert!(iso_indecomposable(&a, &seq.torsion, &s1));
        assert!(iso_indecomposable(&a, &seq.free, &p1));
        assert_eq!(hom_dim(&a, &s1, &seq.free), 0);
        assert!(seq.inclusion.is_homomorphism(&a, &seq.torsion, &p1.direct_sum(&s1, &a)));
    }

    #[test]
    fn trivial_cases() {
        let a = corpus_algebra("a3");
        let p1 = indec_projective(&a, 0);
        let seq = torsion_canonical_seq(&a, &simple(&a, 0), &p1);
        assert!(seq.free.is_zero());
        let seq = torsion_canonical_seq(&a, &p1, &simple(&a, 0));
        assert!(seq.torsion.is_zero());
        assert_eq!(seq.free.dims(), p1.dims());
    }
}
