//! Basic finite-dimensional algebras over F_p, presented either by a bound
//! quiver or by structure constants.
//!
//! Conventions used everywhere downstream:
//! * a path written `a*b` means "first `a`, then `b`";
//! * the ring product `x·y` is nonzero only if `source(x) = target(y)`, so the
//!   path `a*b` is the ring element `b·a`;
//! * modules are left modules, i.e. covariant representations.

mod algmatrix;
mod file;
mod quiver;
mod structure;

use std::collections::HashMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::exactlinalg::{Echelon, Matrix, PrimeField};
use crate::modules::Representation;

pub use algmatrix::{injective_sum, projective_sum, AlgMatrix};
pub use file::{parse_algebra_file, AlgebraSpec};
pub use quiver::{parse_relation, Quiver, Relation};

/// Sparse linear combination of basis elements, sorted by index.
pub type Sparse = Vec<(usize, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// How an algebra was presented.
#[derive(Clone, Debug)]
pub enum Presentation {
    Quiver {
        quiver: Quiver,
        relations: Vec<Relation>,
        /// Path length at which the dimension stabilised.
        stable_len: usize,
    },
    StructureConstants,
}

/// A basic algebra with a basis adapted to the primitive idempotents:
/// the first `n` basis elements are `e_1, ..., e_n`, the rest span the radical.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: PrimeField,
    name: String,
    vertex_labels: Vec<String>,
    basis: Vec<BasisElement>,
    table: Vec<Vec<Sparse>>,
    generators: Vec<usize>,
    words: Vec<Vec<usize>>,
    blocks: Vec<Vec<Vec<usize>>>,
    block_pos: Vec<usize>,
    label_index: HashMap<String, usize>,
    loewy_length: usize,
    presentation: Presentation,
}

impl Algebra {
    /// Assembles and validates an algebra from a prepared basis. `words[x]`
    /// lists generator positions whose ring product is basis element `x`
    /// (empty for idempotents).
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        field: PrimeField,
        name: String,
        vertex_labels: Vec<String>,
        basis: Vec<BasisElement>,
        table: Vec<Vec<Sparse>>,
        generators: Vec<usize>,
        words: Vec<Vec<usize>>,
        presentation: Presentation,
    ) -> crate::Result<Self> {
        let n = vertex_labels.len();
        let mut blocks = vec![vec![Vec::new(); n]; n];
        let mut block_pos = vec![0; basis.len()];
        for (x, b) in basis.iter().enumerate() {
            let blk: &mut Vec<usize> = &mut blocks[b.target][b.source];
            block_pos[x] = blk.len();
            blk.push(x);
        }
        let label_index = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.label.clone(), i))
            .collect();
        let mut alg = Algebra {
            field,
            name,
            vertex_labels,
            basis,
            table,
            generators,
            words,
            blocks,
            block_pos,
            label_index,
            loewy_length: 0,
            presentation,
        };
        alg.check_associative()?;
        alg.loewy_length = alg.compute_loewy_length();
        Ok(alg)
    }

    fn check_associative(&self) -> crate::Result<()> {
        check_associative(self.field, &self.table)
    }

    fn mul_sparse_dense(&self, s: &Sparse) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for &(i, c) in s {
            v[i] = c;
        }
        v
    }

    fn compute_loewy_length(&self) -> usize {
        // smallest m with rad^m = 0
        let n = self.num_vertices();
        let d = self.dim();
        let rad: Vec<Vec<u32>> = (n..d).map(|x| self.unit_vec(x)).collect();
        let mut power = rad.clone();
        let mut m = 1;
        while !power.is_empty() {
            let mut next = Echelon::new(self.field, d);
            for a in &power {
                for r in &rad {
                    let prod = self.mul(a, r);
                    if prod.iter().any(|&c| c != 0) {
                        next.insert(&prod);
                    }
                }
            }
            power = next.rows().to_vec();
            m += 1;
            assert!(m <= d + 1, "radical is not nilpotent");
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Basis indices of the generators (arrows, or all radical basis
    /// elements for structure-constant algebras).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Generator positions whose ring product is basis element `x`.
    pub fn word(&self, x: usize) -> &[usize] {
        &self.words[x]
    }

    /// Basis elements `x` with `target(x) = t` and `source(x) = s`,
    /// i.e. a basis of `e_t A e_s`.
    pub fn block(&self, t: usize, s: usize) -> &[usize] {
        &self.blocks[t][s]
    }

    /// Position of basis element `x` inside its block.
    pub fn block_pos(&self, x: usize) -> usize {
        self.block_pos[x]
    }

    pub fn idempotent(&self, v: usize) -> usize {
        v
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        x < self.num_vertices()
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// Nilpotency index of the radical: the least `m` with `rad^m = 0`.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, x: usize, y: usize) -> &Sparse {
        &self.table[x][y]
    }

    pub fn unit_vec(&self, x: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[x] = 1;
        v
    }

    /// Product of dense elements.
    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim()];
        for (x, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (y, &cb) in b.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let c = f.mul(ca, cb);
                for &(z, cz) in &self.table[x][y] {
                    out[z] = f.mul_add(out[z], c, cz);
                }
            }
        }
        out
    }

    /// `out += x·y` for `x` in `block(t, m)` and `y` in `block(m, s)`, all in
    /// local block coordinates.
    pub fn mul_local_acc(&self, t: usize, m: usize, s: usize, x: &[u32], y: &[u32], out: &mut [u32]) {
        let f = self.field;
        let (bx, by) = (&self.blocks[t][m], &self.blocks[m][s]);
        debug_assert_eq!(out.len(), self.blocks[t][s].len());
        for (i, &cx) in x.iter().enumerate() {
            if cx == 0 {
                continue;
            }
            for (j, &cy) in y.iter().enumerate() {
                if cy == 0 {
                    continue;
                }
                let c = f.mul(cx, cy);
                for &(z, cz) in &self.table[bx[i]][by[j]] {
                    let k = self.block_pos[z];
                    out[k] = f.mul_add(out[k], c, cz);
                }
            }
        }
    }

    /// Number of arrows `s -> t` of the quiver recovered from `rad/rad^2`.
    pub fn recovered_arrow_count(&self, s: usize, t: usize) -> usize {
        let n = self.num_vertices();
        let d = self.dim();
        let mut rad2 = Echelon::new(self.field, d);
        for x in n..d {
            for y in n..d {
                let prod = &self.table[x][y];
                if !prod.is_empty() {
                    rad2.insert(&self.mul_sparse_dense(prod));
                }
            }
        }
        let mut span = rad2;
        let before = span.rank();
        for &x in self.block(t, s) {
            if x >= n {
                span.insert(&self.unit_vec(x));
            }
        }
        span.rank() - before
    }

    /// Matrix of left multiplication by basis element `x`, restricted to
    /// `e_* A e_col`: columns index `block(s, col)`, rows `block(t, col)`
    /// where `x : s -> t`.
    pub fn left_mult_block(&self, x: usize, col: usize) -> Matrix {
        let (s, t) = (self.basis[x].source, self.basis[x].target);
        let src = self.block(s, col);
        let tgt = self.block(t, col);
        let mut m = Matrix::zeros(self.field, tgt.len(), src.len());
        for (j, &y) in src.iter().enumerate() {
            for &(z, c) in &self.table[x][y] {
                m.set(self.block_pos[z], j, c);
            }
        }
        m
    }

    /// Stable fingerprint of the multiplication table, for reports.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field.modulus().to_le_bytes());
        for b in &self.basis {
            h.update(b.label.as_bytes());
            h.update([0u8]);
            h.update((b.source as u32).to_le_bytes());
            h.update((b.target as u32).to_le_bytes());
        }
        for row in &self.table {
            for entry in row {
                h.update((entry.len() as u32).to_le_bytes());
                for &(i, c) in entry {
                    h.update((i as u32).to_le_bytes());
                    h.update(c.to_le_bytes());
                }
            }
        }
        h.finalize()
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// The quiver-presented algebra built from `spec`.
    pub fn from_spec(spec: &AlgebraSpec) -> crate::Result<Self> {
        quiver::build_from_quiver(
            spec.field,
            spec.name.clone(),
            &spec.quiver,
            &spec.relations,
            spec.max_path_len,
        )
    }

    pub fn build_from_quiver(
        field: PrimeField,
        quiver: &Quiver,
        relations: &[Relation],
        max_len: usize,
    ) -> crate::Result<Self> {
        quiver::build_from_quiver(field, String::new(), quiver, relations, max_len)
    }

    /// Structure-constant constructor. `table[x][y]` is the product of input
    /// basis elements `x·y`; `idempotents` are dense vectors in the input
    /// basis. The result is rebased so that its basis is adapted to the
    /// idempotents and the radical.
    pub fn build_from_structure_constants(
        field: PrimeField,
        name: String,
        vertex_labels: Vec<String>,
        table: Vec<Vec<Sparse>>,
        idempotents: Vec<Vec<u32>>,
    ) -> crate::Result<Self> {
        structure::build(field, name, vertex_labels, table, idempotents).map(|(alg, _)| alg)
    }

    /// As [`Algebra::build_from_structure_constants`], also returning each
    /// basis element of the result as a dense vector in the input basis.
    pub fn build_from_structure_constants_with_basis(
        field: PrimeField,
        name: String,
        vertex_labels: Vec<String>,
        table: Vec<Vec<Sparse>>,
        idempotents: Vec<Vec<u32>>,
    ) -> crate::Result<(Self, Vec<Vec<u32>>)> {
        structure::build(field, name, vertex_labels, table, idempotents)
    }
}

/// Exhaustive check of `(xy)z = x(yz)` on all basis triples.
pub(crate) fn check_associative(field: PrimeField, table: &[Vec<Sparse>]) -> crate::Result<()> {
    let d = table.len();
    let mut left = vec![0u32; d];
    let mut right = vec![0u32; d];
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                left.iter_mut().for_each(|c| *c = 0);
                right.iter_mut().for_each(|c| *c = 0);
                for &(w, c) in &table[x][y] {
                    for &(u, cu) in &table[w][z] {
                        left[u] = field.mul_add(left[u], c, cu);
                    }
                }
                for &(w, c) in &table[y][z] {
                    for &(u, cu) in &table[x][w] {
                        right[u] = field.mul_add(right[u], c, cu);
                    }
                }
                if left != right {
                    return Err(crate::Error::NotAssociative(x, y, z));
                }
            }
        }
    }
    Ok(())
}

/// Projective `P_i = A e_i`: at vertex `v` the space `e_v A e_i`.
pub fn indec_projective(a: &Algebra, i: usize) -> Representation {
    let n = a.num_vertices();
    let dims = (0..n).map(|v| a.block(v, i).len()).collect();
    let action = a
        .generators()
        .iter()
        .map(|&g| a.left_mult_block(g, i))
        .collect();
    Representation::new(dims, action)
}

/// Injective `I_i = D(e_i A)`: at vertex `v` the dual of `e_i A e_v`.
pub fn indec_injective(a: &Algebra, i: usize) -> Representation {
    let n = a.num_vertices();
    let f = a.field();
    let dims: Vec<usize> = (0..n).map(|v| a.block(i, v).len()).collect();
    let action = a
        .generators()
        .iter()
        .map(|&g| {
            let (s, t) = (a.basis()[g].source, a.basis()[g].target);
            // entry [beta][alpha] = coefficient of alpha in y_beta * g
            let rows = a.block(i, t);
            let cols = a.block(i, s);
            let mut m = Matrix::zeros(f, rows.len(), cols.len());
            for (beta, &y) in rows.iter().enumerate() {
                for &(z, c) in a.mul_basis(y, g) {
                    m.set(beta, a.block_pos(z), c);
                }
            }
            m
        })
        .collect();
    Representation::new(dims, action)
}

pub fn simple(a: &Algebra, i: usize) -> Representation {
    let n = a.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| usize::from(v == i)).collect();
    let action = a
        .generators()
        .iter()
        .map(|&g| {
            let b = &a.basis()[g];
            Matrix::zeros(a.field(), dims[b.target], dims[b.source])
        })
        .collect();
    Representation::new(dims, action)
}

/// Summary used by `check`-style reports.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub prime: u32,
    pub dim: usize,
    pub vertices: usize,
    pub loewy_length: usize,
    pub basis: Vec<String>,
    pub projective_dims: Vec<Vec<usize>>,
    pub injective_dims: Vec<Vec<usize>>,
    pub fingerprint: String,
}

impl Algebra {
    pub fn summary(&self) -> AlgebraSummary {
        let n = self.num_vertices();
        AlgebraSummary {
            name: self.name.clone(),
            prime: self.field.modulus(),
            dim: self.dim(),
            vertices: n,
            loewy_length: self.loewy_length,
            basis: self.basis.iter().map(|b| b.label.clone()).collect(),
            projective_dims: (0..n).map(|i| indec_projective(self, i).dims().to_vec()).collect(),
            injective_dims: (0..n).map(|i| indec_injective(self, i).dims().to_vec()).collect(),
            fingerprint: self.fingerprint(),
        }
    }
}
