use crate::exactlinalg::Matrix;
use crate::modules::{ModuleMap, Representation};

use super::Algebra;

/// A map `⊕_c P_{cols[c]} -> ⊕_r P_{rows[r]}` between sums of indecomposable
/// projectives. A map `P_i -> P_j` is right multiplication by an element of
/// `e_i A e_j`, so entry `(r, c)` lives in `block(cols[c], rows[r])` and is
/// stored in that block's local coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgMatrix {
    rows: Vec<usize>,
    cols: Vec<usize>,
    /// Entry `i` (row-major) occupies `data[offs[i]..offs[i + 1]]`.
    offs: Vec<usize>,
    data: Vec<u32>,
}

fn layout(a: &Algebra, rows: &[usize], cols: &[usize]) -> Vec<usize> {
    offsets(rows.iter().flat_map(|&r| cols.iter().map(move |&c| a.block(c, r).len())))
}

impl AlgMatrix {
    pub fn zeros(a: &Algebra, rows: &[usize], cols: &[usize]) -> Self {
        let offs = layout(a, rows, cols);
        AlgMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            data: vec![0; *offs.last().unwrap()],
            offs,
        }
    }

    pub fn identity(a: &Algebra, verts: &[usize]) -> Self {
        let mut m = Self::zeros(a, verts, verts);
        for i in 0..verts.len() {
            m.entry_mut(i, i)[0] = 1;
        }
        m
    }

    /// Builds from per-entry local coordinate vectors, row-major.
    pub fn from_entries(a: &Algebra, rows: &[usize], cols: &[usize], entries: Vec<Vec<u32>>) -> Self {
        assert_eq!(entries.len(), rows.len() * cols.len());
        let m = AlgMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            offs: offsets(entries.iter().map(Vec::len)),
            data: entries.concat(),
        };
        debug_assert!((0..rows.len())
            .all(|r| (0..cols.len()).all(|c| m.get(r, c).len() == a.block(cols[c], rows[r]).len())));
        m
    }

    fn from_parts(rows: Vec<usize>, cols: Vec<usize>, entries: &[&[u32]]) -> Self {
        AlgMatrix {
            rows,
            cols,
            offs: offsets(entries.iter().map(|e| e.len())),
            data: entries.concat(),
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &[u32] {
        let i = r * self.cols.len() + c;
        &self.data[self.offs[i]..self.offs[i + 1]]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut [u32] {
        let i = r * self.cols.len() + c;
        &mut self.data[self.offs[i]..self.offs[i + 1]]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// All coordinates, row-major by entry.
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn flat_len(a: &Algebra, rows: &[usize], cols: &[usize]) -> usize {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| a.block(c, r).len()).sum::<usize>())
            .sum()
    }

    pub fn unflatten(a: &Algebra, rows: &[usize], cols: &[usize], v: &[u32]) -> Self {
        let offs = layout(a, rows, cols);
        AlgMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            data: v[..*offs.last().unwrap()].to_vec(),
            offs,
        }
    }

    pub fn add(&self, other: &AlgMatrix, a: &Algebra) -> AlgMatrix {
        self.zip(other, |x, y| a.field().add(x, y))
    }

    pub fn sub(&self, other: &AlgMatrix, a: &Algebra) -> AlgMatrix {
        self.zip(other, |x, y| a.field().sub(x, y))
    }

    fn zip(&self, other: &AlgMatrix, op: impl Fn(u32, u32) -> u32) -> AlgMatrix {
        assert_eq!((&self.rows, &self.cols), (&other.rows, &other.cols), "shape mismatch");
        AlgMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            offs: self.offs.clone(),
            data: self.data.iter().zip(&other.data).map(|(&p, &q)| op(p, q)).collect(),
        }
    }

    pub fn scale(&self, c: u32, a: &Algebra) -> AlgMatrix {
        let f = a.field();
        AlgMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            offs: self.offs.clone(),
            data: self.data.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn neg(&self, a: &Algebra) -> AlgMatrix {
        self.scale(a.field().neg(1), a)
    }

    /// `self ∘ f`, where `f` is applied first.
    pub fn compose(&self, f: &AlgMatrix, a: &Algebra) -> AlgMatrix {
        assert_eq!(self.cols, f.rows, "composition of incompatible maps");
        let mut out = AlgMatrix::zeros(a, &self.rows, &f.cols);
        let w = f.cols.len();
        for s in 0..self.rows.len() {
            for c in 0..w {
                let (t, z) = (f.cols[c], self.rows[s]);
                let i = s * w + c;
                let acc = &mut out.data[out.offs[i]..out.offs[i + 1]];
                for r in 0..f.rows.len() {
                    let x = f.get(r, c);
                    let y = self.get(s, r);
                    if !x.is_empty() && !y.is_empty() {
                        a.mul_local_acc(t, f.rows[r], z, x, y, acc);
                    }
                }
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> AlgMatrix {
        let entries: Vec<&[u32]> = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c)))
            .collect();
        AlgMatrix::from_parts(
            rows.iter().map(|&r| self.rows[r]).collect(),
            cols.iter().map(|&c| self.cols[c]).collect(),
            &entries,
        )
    }

    /// `[self | other]`: same rows, concatenated columns.
    pub fn hstack(&self, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.rows, other.rows);
        let (w1, w2) = (self.cols.len(), other.cols.len());
        let entries: Vec<&[u32]> = (0..self.rows.len())
            .flat_map(|r| (0..w1).map(move |c| self.get(r, c)).chain((0..w2).map(move |c| other.get(r, c))))
            .collect();
        let mut cols = self.cols.clone();
        cols.extend_from_slice(&other.cols);
        AlgMatrix::from_parts(self.rows.clone(), cols, &entries)
    }

    /// Stacks `self` above `other`: same columns, concatenated rows.
    pub fn vstack(&self, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        let shift = self.data.len();
        let mut offs = self.offs.clone();
        offs.extend(other.offs[1..].iter().map(|&o| o + shift));
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        AlgMatrix {
            rows,
            cols: self.cols.clone(),
            offs,
            data,
        }
    }

    pub fn block_diag(&self, other: &AlgMatrix, a: &Algebra) -> AlgMatrix {
        let top = self.hstack(&AlgMatrix::zeros(a, &self.rows, &other.cols));
        let bottom = AlgMatrix::zeros(a, &other.rows, &self.cols).hstack(other);
        top.vstack(&bottom)
    }

    /// Coefficient of the idempotent in entry `(r, c)`, zero when the two
    /// summands sit at different vertices.
    pub fn top_coeff(&self, r: usize, c: usize) -> u32 {
        if self.rows[r] == self.cols[c] {
            self.get(r, c)[0]
        } else {
            0
        }
    }

    /// Reduction modulo the radical: one scalar matrix per vertex, indexed by
    /// the positions of that vertex among rows and columns.
    pub fn top(&self, a: &Algebra) -> Vec<Matrix> {
        (0..a.num_vertices())
            .map(|v| {
                let rs: Vec<usize> = (0..self.rows.len()).filter(|&r| self.rows[r] == v).collect();
                let cs: Vec<usize> = (0..self.cols.len()).filter(|&c| self.cols[c] == v).collect();
                Matrix::from_fn(a.field(), rs.len(), cs.len(), |i, j| self.get(rs[i], cs[j])[0])
            })
            .collect()
    }

    /// True when every entry lies in the radical.
    pub fn is_radical(&self) -> bool {
        (0..self.rows.len()).all(|r| (0..self.cols.len()).all(|c| self.top_coeff(r, c) == 0))
    }

    /// Lifts per-vertex scalar matrices to a map with idempotent entries.
    pub fn from_top(a: &Algebra, rows: &[usize], cols: &[usize], top: &[Matrix]) -> AlgMatrix {
        let mut m = AlgMatrix::zeros(a, rows, cols);
        for (v, t) in top.iter().enumerate() {
            let rs: Vec<usize> = (0..rows.len()).filter(|&r| rows[r] == v).collect();
            let cs: Vec<usize> = (0..cols.len()).filter(|&c| cols[c] == v).collect();
            for (i, &r) in rs.iter().enumerate() {
                for (j, &c) in cs.iter().enumerate() {
                    m.entry_mut(r, c)[0] = t.get(i, j);
                }
            }
        }
        m
    }

    /// Inverse of a square map whose top is invertible.
    pub fn inverse(&self, a: &Algebra) -> Option<AlgMatrix> {
        if self.rows.len() != self.cols.len() {
            return None;
        }
        let tops: Option<Vec<Matrix>> = self.top(a).iter().map(|t| t.inverse()).collect();
        let s = AlgMatrix::from_top(a, &self.cols, &self.rows, &tops?);
        // N = 1 - S T is radical, so the Neumann series terminates
        let id = AlgMatrix::identity(a, &self.cols);
        let n = id.sub(&s.compose(self, a), a);
        let mut sum = id.clone();
        let mut power = id;
        for _ in 0..=a.loewy_length() * self.cols.len().max(1) {
            power = power.compose(&n, a);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power, a);
        }
        Some(sum.compose(&s, a))
    }

    /// The module homomorphism between sums of projective representations.
    pub fn to_module_map(&self, a: &Algebra) -> ModuleMap {
        let f = a.field();
        let comps = (0..a.num_vertices())
            .map(|w| {
                let row_off = offsets(self.rows.iter().map(|&r| a.block(w, r).len()));
                let col_off = offsets(self.cols.iter().map(|&c| a.block(w, c).len()));
                let mut m = Matrix::zeros(f, *row_off.last().unwrap(), *col_off.last().unwrap());
                for c in 0..self.cols.len() {
                    for (j, &y) in a.block(w, self.cols[c]).iter().enumerate() {
                        for r in 0..self.rows.len() {
                            let e = self.get(r, c);
                            for (k, &x) in a.block(self.cols[c], self.rows[r]).iter().enumerate() {
                                if e[k] == 0 {
                                    continue;
                                }
                                for &(z, cz) in a.mul_basis(y, x) {
                                    let i = row_off[r] + a.block_pos(z);
                                    let cur = m.get(i, col_off[c] + j);
                                    m.set(i, col_off[c] + j, f.mul_add(cur, e[k], cz));
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap { comps }
    }

    /// The image under the Nakayama functor, a map between sums of
    /// injective representations.
    pub fn to_nakayama_map(&self, a: &Algebra) -> ModuleMap {
        let f = a.field();
        let comps = (0..a.num_vertices())
            .map(|w| {
                let row_off = offsets(self.rows.iter().map(|&r| a.block(r, w).len()));
                let col_off = offsets(self.cols.iter().map(|&c| a.block(c, w).len()));
                let mut m = Matrix::zeros(f, *row_off.last().unwrap(), *col_off.last().unwrap());
                for r in 0..self.rows.len() {
                    for (beta, &z) in a.block(self.rows[r], w).iter().enumerate() {
                        for c in 0..self.cols.len() {
                            let e = self.get(r, c);
                            for (k, &x) in a.block(self.cols[c], self.rows[r]).iter().enumerate() {
                                if e[k] == 0 {
                                    continue;
                                }
                                for &(alpha, cz) in a.mul_basis(x, z) {
                                    let j = col_off[c] + a.block_pos(alpha);
                                    let i = row_off[r] + beta;
                                    let cur = m.get(i, j);
                                    m.set(i, j, f.mul_add(cur, e[k], cz));
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMap { comps }
    }

    /// Adds `coeff` times basis element `x` to entry `(r, c)`; `x` must lie
    /// in `block(cols[c], rows[r])`.
    pub fn add_basis(&mut self, a: &Algebra, r: usize, c: usize, x: usize, coeff: u32) {
        let (t, s) = (self.cols[c], self.rows[r]);
        assert!(
            a.basis()[x].target == t && a.basis()[x].source == s,
            "basis element outside the entry's block"
        );
        let pos = a.block_pos(x);
        let e = self.entry_mut(r, c);
        e[pos] = a.field().add(e[pos], coeff);
    }

    /// Reads a map `P_u -> ⊕_r P_{rows[r]}` off the image of `e_u`, given as a
    /// vector in `⊕_r block(u, rows[r])`.
    pub fn column_from_element(a: &Algebra, rows: &[usize], u: usize, v: &[u32]) -> AlgMatrix {
        let mut entries = Vec::with_capacity(rows.len());
        let mut off = 0;
        for &r in rows {
            let len = a.block(u, r).len();
            entries.push(v[off..off + len].to_vec());
            off += len;
        }
        AlgMatrix::from_entries(a, rows, &[u], entries)
    }
}

fn offsets(lens: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for l in lens {
        out.push(out.last().unwrap() + l);
    }
    out
}

/// `⊕_r P_{verts[r]}` as a representation, summands in the given order.
pub fn projective_sum(a: &Algebra, verts: &[usize]) -> Representation {
    verts.iter().fold(Representation::zero(a), |acc, &v| {
        acc.direct_sum(&super::indec_projective(a, v), a)
    })
}

/// `⊕_r I_{verts[r]}` as a representation, summands in the given order.
pub fn injective_sum(a: &Algebra, verts: &[usize]) -> Representation {
    verts.iter().fold(Representation::zero(a), |acc, &v| {
        acc.direct_sum(&super::indec_injective(a, v), a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::corpus_algebra;

    fn arrow_map(a: &Algebra, label: &str) -> AlgMatrix {
        // P_target -> P_source given by the arrow
        let x = a.basis_index(label).unwrap();
        let b = &a.basis()[x];
        let mut m = AlgMatrix::zeros(a, &[b.source], &[b.target]);
        m.entry_mut(0, 0)[a.block_pos(x)] = 1;
        m
    }

    #[test]
    fn module_maps_are_homomorphisms() {
        for name in ["a2", "a3", "square_commutative", "kronecker"] {
            let a = corpus_algebra(name);
            for &g in a.generators() {
                let m = arrow_map(&a, &a.basis()[g].label.clone());
                let src = projective_sum(&a, m.cols());
                let tgt = projective_sum(&a, m.rows());
                assert!(m.to_module_map(&a).is_homomorphism(&a, &src, &tgt), "{name}");
                let isrc = injective_sum(&a, m.cols());
                let itgt = injective_sum(&a, m.rows());
                assert!(m.to_nakayama_map(&a).is_homomorphism(&a, &isrc, &itgt), "{name}");
            }
        }
    }

    #[test]
    fn composition_matches_module_maps() {
        let a = corpus_algebra("a3");
        let f = arrow_map(&a, "b"); // P3 -> P2
        let g = arrow_map(&a, "a"); // P2 -> P1
        let gf = g.compose(&f, &a);
        assert!(!gf.is_zero());
        assert_eq!(gf.to_module_map(&a), g.to_module_map(&a).compose(&f.to_module_map(&a)));
        let r = corpus_algebra("a3_rad2");
        let gf = arrow_map(&r, "a").compose(&arrow_map(&r, "b"), &r);
        assert!(gf.is_zero());
    }

    #[test]
    fn inverse_of_unitriangular_map() {
        let a = corpus_algebra("a2");
        // P1 ⊕ P2 -> P1 ⊕ P2 with an arrow component P2 -> P1
        let mut t = AlgMatrix::identity(&a, &[0, 1]);
        let x = a.basis_index("a").unwrap();
        t.entry_mut(0, 1)[a.block_pos(x)] = 5;
        let inv = t.inverse(&a).unwrap();
        assert_eq!(inv.compose(&t, &a), AlgMatrix::identity(&a, &[0, 1]));
        assert_eq!(t.compose(&inv, &a), AlgMatrix::identity(&a, &[0, 1]));
    }
}
