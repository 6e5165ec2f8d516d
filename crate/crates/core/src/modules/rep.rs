use crate::algebra::Algebra;
use crate::exactlinalg::{Matrix, PrimeField};

/// A finite-dimensional left module, given as a representation: a vector
/// space per vertex and one matrix per generator of the algebra (`g : s -> t`
/// acts as a `dims[t] x dims[s]` matrix).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

/// A module homomorphism: one `N_v x M_v` matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub comps: Vec<Matrix>,
}

impl Representation {
    pub fn new(dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        Representation { dims, action }
    }

    pub fn zero(a: &Algebra) -> Self {
        let n = a.num_vertices();
        let action = a
            .generators()
            .iter()
            .map(|_| Matrix::zeros(a.field(), 0, 0))
            .collect();
        Representation {
            dims: vec![0; n],
            action,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of the `k`-th generator.
    pub fn action(&self, k: usize) -> &Matrix {
        &self.action[k]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of an arbitrary basis element `x : s -> t`, built from its word.
    pub fn element_action(&self, a: &Algebra, x: usize) -> Matrix {
        let b = &a.basis()[x];
        let word = a.word(x);
        if word.is_empty() {
            return Matrix::identity(a.field(), self.dims[b.source]);
        }
        let mut m = self.action[word[word.len() - 1]].clone();
        for &g in word.iter().rev().skip(1) {
            m = self.action[g].mul(&m);
        }
        m
    }

    /// Checks shapes and that `rho(g) rho(y) = rho(g y)` for every generator
    /// `g` and basis element `y`; this is equivalent to all defining
    /// relations holding.
    pub fn is_valid(&self, a: &Algebra) -> bool {
        if self.dims.len() != a.num_vertices() || self.action.len() != a.generators().len() {
            return false;
        }
        for (k, &g) in a.generators().iter().enumerate() {
            let b = &a.basis()[g];
            let m = &self.action[k];
            if m.rows() != self.dims[b.target] || m.cols() != self.dims[b.source] {
                return false;
            }
        }
        let elems: Vec<Matrix> = (0..a.dim()).map(|x| self.element_action(a, x)).collect();
        for (k, &g) in a.generators().iter().enumerate() {
            for y in 0..a.dim() {
                if a.basis()[y].target != a.basis()[g].source {
                    continue;
                }
                let lhs = self.action[k].mul(&elems[y]);
                let bt = a.basis()[g].target;
                let bs = a.basis()[y].source;
                let mut rhs = Matrix::zeros(a.field(), self.dims[bt], self.dims[bs]);
                for &(z, c) in a.mul_basis(g, y) {
                    rhs = rhs.add(&elems[z].scale(c));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn direct_sum(&self, other: &Representation, a: &Algebra) -> Representation {
        let f = a.field();
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(x, y)| x + y).collect();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(m1, m2)| block_diag(f, m1, m2))
            .collect();
        Representation { dims, action }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    /// Submodule spanned at each vertex by the columns of `basis[v]`, which
    /// must be invariant. Returns the restricted representation.
    pub fn restrict(&self, a: &Algebra, basis: &[Matrix]) -> Representation {
        let f = a.field();
        let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
        let action = a
            .generators()
            .iter()
            .enumerate()
            .map(|(k, &g)| {
                let (s, t) = (a.basis()[g].source, a.basis()[g].target);
                let img = self.action[k].mul(&basis[s]);
                let mut m = Matrix::zeros(f, dims[t], dims[s]);
                for j in 0..dims[s] {
                    let x = basis[t]
                        .solve(&img.column(j))
                        .expect("subspace is not invariant");
                    for (i, &c) in x.iter().enumerate() {
                        m.set(i, j, c);
                    }
                }
                m
            })
            .collect();
        Representation { dims, action }
    }

    /// Quotient by the invariant subspace spanned by the columns of `sub[v]`.
    /// Returns the quotient and, per vertex, the projection matrix.
    pub fn quotient(&self, a: &Algebra, sub: &[Matrix]) -> (Representation, ModuleMap) {
        let f = a.field();
        let mut proj = Vec::with_capacity(self.dims.len());
        for (v, s) in sub.iter().enumerate() {
            let cols: Vec<Vec<u32>> = (0..s.cols()).map(|j| s.column(j)).collect();
            let q = crate::exactlinalg::QuotientSpace::new(f, self.dims[v], &cols);
            let m = Matrix::from_fn(f, q.dim(), self.dims[v], |i, j| {
                let mut e = vec![0u32; self.dims[v]];
                e[j] = 1;
                q.coords(&e)[i]
            });
            proj.push(m);
        }
        let dims: Vec<usize> = proj.iter().map(|m| m.rows()).collect();
        let action = a
            .generators()
            .iter()
            .enumerate()
            .map(|(k, &g)| {
                let (s, t) = (a.basis()[g].source, a.basis()[g].target);
                // section of the projection at s: lift quotient basis to standard vectors
                let section = section_of(f, &proj[s]);
                proj[t].mul(&self.action[k]).mul(&section)
            })
            .collect();
        (Representation { dims, action }, ModuleMap { comps: proj })
    }

    /// Conjugates by per-vertex invertible matrices: the new basis at `v` is
    /// given by the columns of `change[v]`.
    pub fn change_basis(&self, a: &Algebra, change: &[Matrix]) -> Representation {
        let inverses: Vec<Matrix> = change
            .iter()
            .map(|m| m.inverse().expect("basis change must be invertible"))
            .collect();
        let action = a
            .generators()
            .iter()
            .enumerate()
            .map(|(k, &g)| {
                let (s, t) = (a.basis()[g].source, a.basis()[g].target);
                inverses[t].mul(&self.action[k]).mul(&change[s])
            })
            .collect();
        Representation {
            dims: self.dims.clone(),
            action,
        }
    }
}

/// A right inverse of a surjective projection whose rows are canonical
/// quotient coordinates (each row has a 1 in a distinct free column).
fn section_of(f: PrimeField, proj: &Matrix) -> Matrix {
    let mut s = Matrix::zeros(f, proj.cols(), proj.rows());
    for i in 0..proj.rows() {
        // the free column of row i is a column equal to the i-th unit vector
        let col = (0..proj.cols())
            .find(|&j| (0..proj.rows()).all(|r| proj.get(r, j) == u32::from(r == i)))
            .expect("projection has a unit column per row");
        s.set(col, i, 1);
    }
    s
}

pub fn block_diag(f: PrimeField, m1: &Matrix, m2: &Matrix) -> Matrix {
    Matrix::from_fn(f, m1.rows() + m2.rows(), m1.cols() + m2.cols(), |i, j| {
        match (i < m1.rows(), j < m1.cols()) {
            (true, true) => m1.get(i, j),
            (false, false) => m2.get(i - m1.rows(), j - m1.cols()),
            _ => 0,
        }
    })
}

impl ModuleMap {
    pub fn zero(f: PrimeField, m: &Representation, n: &Representation) -> Self {
        ModuleMap {
            comps: m
                .dims()
                .iter()
                .zip(n.dims())
                .map(|(&dm, &dn)| Matrix::zeros(f, dn, dm))
                .collect(),
        }
    }

    pub fn identity(f: PrimeField, m: &Representation) -> Self {
        ModuleMap {
            comps: m.dims().iter().map(|&d| Matrix::identity(f, d)).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            comps: self.comps.iter().zip(&other.comps).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap {
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.comps
            .iter()
            .all(|m| m.rows() == m.cols() && m.rank() == m.rows())
    }

    /// Concatenated entries, the coordinates used by linear solves.
    pub fn flatten(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn unflatten(f: PrimeField, m: &Representation, n: &Representation, v: &[u32]) -> Self {
        let mut off = 0;
        let comps = m
            .dims()
            .iter()
            .zip(n.dims())
            .map(|(&dm, &dn)| {
                let mat = Matrix::from_fn(f, dn, dm, |i, j| v[off + i * dm + j]);
                off += dm * dn;
                mat
            })
            .collect();
        ModuleMap { comps }
    }

    /// Checks that the map intertwines the actions of every generator.
    pub fn is_homomorphism(&self, a: &Algebra, m: &Representation, n: &Representation) -> bool {
        a.generators().iter().enumerate().all(|(k, &g)| {
            let (s, t) = (a.basis()[g].source, a.basis()[g].target);
            n.action(k).mul(&self.comps[s]) == self.comps[t].mul(m.action(k))
        })
    }

    /// Rank at every vertex.
    pub fn ranks(&self) -> Vec<usize> {
        self.comps.iter().map(|m| m.rank()).collect()
    }
}
