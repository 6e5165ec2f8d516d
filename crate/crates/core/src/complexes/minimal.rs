use crate::algebra::Algebra;

use super::ProjComplex;

/// Removes contractible summands `P --1--> P` by Gaussian elimination until
/// every differential entry lies in the radical. The result is homotopy
/// equivalent to `x`, with summands sorted by vertex in every degree.
pub fn minimalize(a: &Algebra, x: &ProjComplex) -> ProjComplex {
    let lo = x.lo();
    let mut terms = x.terms().to_vec();
    let mut diffs = x.diffs().to_vec();
    'outer: loop {
        for i in 0..diffs.len() {
            let d = &diffs[i];
            let hit = (0..d.rows().len())
                .flat_map(|r| (0..d.cols().len()).map(move |c| (r, c)))
                .find(|&(r, c)| d.top_coeff(r, c) != 0);
            let Some((r, c)) = hit else { continue };
            let keep_rows: Vec<usize> = (0..d.rows().len()).filter(|&j| j != r).collect();
            let keep_cols: Vec<usize> = (0..d.cols().len()).filter(|&j| j != c).collect();
            let alpha_inv = d
                .select(&[r], &[c])
                .inverse(a)
                .expect("entry with unit top is invertible");
            let beta = d.select(&[r], &keep_cols);
            let gamma = d.select(&keep_rows, &[c]);
            let eps = d.select(&keep_rows, &keep_cols);
            diffs[i] = eps.sub(&gamma.compose(&alpha_inv.compose(&beta, a), a), a);
            if i > 0 {
                let prev = &diffs[i - 1];
                let rows: Vec<usize> = (0..prev.rows().len()).filter(|&j| j != c).collect();
                let cols: Vec<usize> = (0..prev.cols().len()).collect();
                diffs[i - 1] = prev.select(&rows, &cols);
            }
            if i + 1 < diffs.len() {
                let next = &diffs[i + 1];
                let rows: Vec<usize> = (0..next.rows().len()).collect();
                let cols: Vec<usize> = (0..next.cols().len()).filter(|&j| j != r).collect();
                diffs[i + 1] = next.select(&rows, &cols);
            }
            terms[i].remove(c);
            terms[i + 1].remove(r);
            continue 'outer;
        }
        break;
    }
    ProjComplex::from_parts(lo, terms, diffs).sorted()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::tests::s1_complex;
    use crate::complexes::{hom_k_dim, ChainMap};
    use crate::testing::corpus_algebra;

    #[test]
    fn cone_of_identity_vanishes() {
        let a = corpus_algebra("a3");
        let x = s1_like(&a);
        let id = ChainMap::identity(&a, &x);
        let c = ProjComplex::cone_raw(&a, &id, &x, &x);
        assert_eq!(c.num_summands(), 4);
        assert!(minimalize(&a, &c).is_zero());
    }

    fn s1_like(a: &Algebra) -> ProjComplex {
        let mut d = crate::algebra::AlgMatrix::zeros(a, &[0], &[1]);
        d.add_basis(a, 0, 0, a.basis_index("a").unwrap(), 1);
        ProjComplex::two_term(d)
    }

    #[test]
    fn strips_contractible_summand_only() {
        let a = corpus_algebra("a2");
        let x = s1_complex(&a);
        let p = ProjComplex::stalk(&[1], 0);
        let cp = ProjComplex::cone_raw(&a, &ChainMap::identity(&a, &p), &p, &p);
        let sum = x.direct_sum(&cp, &a);
        assert!(!sum.is_minimal());
        let m = minimalize(&a, &sum);
        assert_eq!(m, x);
        assert_eq!(minimalize(&a, &m), m);
        assert_eq!(hom_k_dim(&a, &sum, &sum, 0), 1);
    }

    #[test]
    fn cone_of_zero_map_is_shift_plus_target() {
        let a = corpus_algebra("a2");
        let x = s1_complex(&a);
        let y = ProjComplex::stalk(&[1], 0);
        let c = ProjComplex::cone(&a, &ChainMap::zero(&a, &x, &y), &x, &y);
        assert_eq!(c, x.shift(&a, 1).direct_sum(&y, &a));
    }
}
