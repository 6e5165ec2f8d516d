use crate::algebra::Algebra;
use crate::exactlinalg::{Matrix, PrimeField};
use crate::krull::{find_idempotent, is_local, EndAlgebra};
use crate::{Error, Result};

use super::hom::hom_space;
use super::rep::{ModuleMap, Representation};

/// `End(M)` as a flat matrix algebra (per-vertex blocks concatenated).
pub struct ModuleEnd {
    field: PrimeField,
    dims: Vec<usize>,
    basis: Vec<Vec<u32>>,
}

impl ModuleEnd {
    pub fn new(a: &Algebra, m: &Representation) -> Self {
        let basis = hom_space(a, m, m).iter().map(ModuleMap::flatten).collect();
        ModuleEnd {
            field: a.field(),
            dims: m.dims().to_vec(),
            basis,
        }
    }

    fn blocks<'a>(&'a self, v: &'a [u32]) -> impl Iterator<Item = (usize, &'a [u32])> + 'a {
        let mut off = 0;
        self.dims.iter().map(move |&d| {
            let s = &v[off..off + d * d];
            off += d * d;
            (d, s)
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Per-vertex matrices of a flat element.
    pub fn unflatten(&self, v: &[u32]) -> Vec<Matrix> {
        self.blocks(v)
            .map(|(d, s)| Matrix::from_fn(self.field, d, d, |i, j| s[i * d + j]))
            .collect()
    }
}

impl EndAlgebra for ModuleEnd {
    fn field(&self) -> PrimeField {
        self.field
    }

    fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn identity(&self) -> Vec<u32> {
        self.dims
            .iter()
            .flat_map(|&d| Matrix::identity(self.field, d).data().to_vec())
            .collect()
    }

    fn compose(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        self.blocks(a)
            .zip(self.blocks(b))
            .flat_map(|((d, x), (_, y))| {
                let mx = Matrix::from_fn(f, d, d, |i, j| x[i * d + j]);
                let my = Matrix::from_fn(f, d, d, |i, j| y[i * d + j]);
                mx.mul(&my).data().to_vec()
            })
            .collect()
    }

    fn top_trace(&self, a: &[u32]) -> u32 {
        let f = self.field;
        self.blocks(a).fold(0, |acc, (d, x)| {
            (0..d).fold(acc, |acc, i| f.add(acc, x[i * d + i]))
        })
    }

    fn top_size(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Exact indecomposability certificate: `End(M)` is local with residue field F_p.
pub fn is_indecomposable(a: &Algebra, m: &Representation) -> bool {
    !m.is_zero() && is_local(&ModuleEnd::new(a, m))
}

/// Columns of `m` at its pivot positions: a basis of the column space.
pub(crate) fn column_space(m: &Matrix) -> Matrix {
    let piv = m.rref().pivots;
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.select(&rows, &piv)
}

/// Splits `M` along an idempotent endomorphism into `(im e, im (1 - e))`.
pub fn split_by_idempotent(a: &Algebra, m: &Representation, e: &[Matrix]) -> (Representation, Representation) {
    let f = a.field();
    let mut change = Vec::with_capacity(e.len());
    let mut first_dims = Vec::with_capacity(e.len());
    for (v, ev) in e.iter().enumerate() {
        let d = m.dims()[v];
        let comp = Matrix::identity(f, d).sub(ev);
        let im1 = column_space(ev);
        let im2 = column_space(&comp);
        first_dims.push(im1.cols());
        change.push(im1.hstack(&im2));
    }
    let conj = m.change_basis(a, &change);
    let pick = |first: bool| {
        let dims: Vec<usize> = (0..e.len())
            .map(|v| if first { first_dims[v] } else { m.dims()[v] - first_dims[v] })
            .collect();
        let action = a
            .generators()
            .iter()
            .enumerate()
            .map(|(k, &g)| {
                let (s, t) = (a.basis()[g].source, a.basis()[g].target);
                let (r0, c0) = if first { (0, 0) } else { (first_dims[t], first_dims[s]) };
                let rows: Vec<usize> = (r0..r0 + dims[t]).collect();
                let cols: Vec<usize> = (c0..c0 + dims[s]).collect();
                let full = conj.action(k);
                debug_assert!(
                    first || (0..first_dims[t]).all(|i| cols.iter().all(|&j| full.get(i, j) == 0)),
                    "idempotent splitting left an off-diagonal block"
                );
                full.select(&rows, &cols)
            })
            .collect();
        Representation::new(dims, action)
    };
    (pick(true), pick(false))
}

/// Splits `M` into indecomposable summands, each certified by a local
/// endomorphism ring. The order of the result is deterministic for a
/// given seed.
pub fn decompose_module(a: &Algebra, m: &Representation, seed: u64) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        let end = ModuleEnd::new(a, &x);
        if is_local(&end) {
            out.push(x);
            continue;
        }
        let idem = find_idempotent(&end, seed).ok_or(Error::DecompositionFailed)?;
        let (m1, m2) = split_by_idempotent(a, &x, &end.unflatten(&idem));
        // push in reverse so the first piece is handled first
        stack.push(m2);
        stack.push(m1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{indec_projective, simple};
    use crate::testing::corpus_algebra;

    #[test]
    fn projectives_are_indecomposable() {
        for name in ["one_vertex", "a2", "a3", "a3_rad2", "square_zero", "kronecker"] {
            let a = corpus_algebra(name);
            for i in 0..a.num_vertices() {
                assert!(is_indecomposable(&a, &indec_projective(&a, i)), "{name} P{i}");
            }
        }
    }

    #[test]
    fn regular_module_splits_into_projectives() {
        let a = corpus_algebra("a2");
        let reg = indec_projective(&a, 0).direct_sum(&indec_projective(&a, 1), &a);
        let pieces = decompose_module(&a, &reg, 3).unwrap();
        let mut dims: Vec<Vec<usize>> = pieces.iter().map(|p| p.dims().to_vec()).collect();
        dims.sort();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn doubled_module_splits_in_two() {
        let a = corpus_algebra("a3");
        let p = indec_projective(&a, 0);
        let pieces = decompose_module(&a, &p.direct_sum(&p, &a), 11).unwrap();
        assert_eq!(pieces.len(), 2);
        for q in pieces {
            assert_eq!(q.dims(), p.dims());
        }
    }

    #[test]
    fn semisimple_sum_splits_into_simples() {
        let a = corpus_algebra("a3");
        let m = simple(&a, 0).direct_sum(&simple(&a, 1), &a).direct_sum(&simple(&a, 0), &a);
        assert_eq!(decompose_module(&a, &m, 5).unwrap().len(), 3);
    }
}
