//! Sparse vectors and a sparse kernel computation, for the large and very
//! sparse systems that describe chain maps between big complexes.

use super::field::PrimeField;

/// Sorted `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, u32)>;

/// Sorts raw `(index, value)` contributions, adding up repeated indices and
/// dropping zeros.
pub fn normalize(field: PrimeField, mut raw: Vec<(usize, u32)>) -> SparseVec {
    raw.sort_unstable_by_key(|&(i, _)| i);
    let mut out: SparseVec = Vec::with_capacity(raw.len());
    for (i, v) in raw {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = field.add(*w, v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// `x + c y`.
fn axpy(field: PrimeField, x: &[(usize, u32)], c: u32, y: &[(usize, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, field.mul(c, y[j].1)));
            j += 1;
        } else {
            let v = field.mul_add(x[i].1, c, y[j].1);
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Kernel of the matrix with the given sparse columns, as dense vectors of
/// length `cols.len()`.
///
/// Columns are processed left to right and each is reduced by its leading
/// entries against the earlier independent columns while recording the
/// combination used. A column that reduces to zero yields the kernel vector
/// `e_j - (its expression in the earlier independent columns)`, so the
/// result is the same basis the reduced row echelon form gives.
pub fn sparse_kernel(field: PrimeField, cols: &[SparseVec]) -> Vec<Vec<u32>> {
    // leading index -> (column reduced to have leading entry 1, combination)
    let rows = cols.iter().filter_map(|c| c.last()).map(|&(i, _)| i + 1).max().unwrap_or(0);
    let mut pivots: Vec<Option<(SparseVec, SparseVec)>> = vec![None; rows];
    let mut kernel = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo: SparseVec = vec![(j, 1)];
        loop {
            let Some(&(lead, c)) = v.first() else {
                let mut dense = vec![0u32; cols.len()];
                for (i, x) in combo {
                    dense[i] = x;
                }
                kernel.push(dense);
                break;
            };
            match &pivots[lead] {
                Some((p, pc)) => {
                    let neg = field.neg(c);
                    v = axpy(field, &v, neg, p);
                    combo = axpy(field, &combo, neg, pc);
                }
                None => {
                    let inv = field.inv(c);
                    let scale = |w: SparseVec| w.into_iter().map(|(i, x)| (i, field.mul(x, inv))).collect();
                    pivots[lead] = Some((scale(v), scale(combo)));
                    break;
                }
            }
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::Matrix;
    use proptest::prelude::*;

    fn to_sparse(m: &Matrix) -> Vec<SparseVec> {
        (0..m.cols())
            .map(|j| {
                m.column(j)
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, x)| x != 0)
                    .collect()
            })
            .collect()
    }

    #[test]
    fn normalize_merges_and_drops_zeros() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(normalize(f, vec![(3, 2), (1, 4), (3, 5), (0, 1)]), vec![(0, 1), (1, 4)]);
    }

    proptest! {
        #[test]
        fn agrees_with_dense_kernel(
            rows in 1usize..7,
            cols in 1usize..9,
            seed in proptest::collection::vec(0u32..5, 63),
        ) {
            // small entries over F_5 make dependencies common
            let f = PrimeField::new(5).unwrap();
            let m = Matrix::from_fn(f, rows, cols, |i, j| seed[i * 9 + j]);
            prop_assert_eq!(sparse_kernel(f, &to_sparse(&m)), m.kernel_basis());
        }
    }
}
