use super::field::PrimeField;
use super::matrix::Matrix;

/// Incrementally built semi-echelon basis of a subspace of F_p^n.
///
/// Every stored row has a 1 at its pivot and zeros at the pivots of all
/// earlier rows, so a vector is reduced by sweeping the rows in insertion
/// order. Each row also remembers which combination of the inserted vectors
/// produced it, which is what the Krylov and factorisation code needs.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<u32>>,
    inserted: usize,
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent and extended the basis.
    New,
    /// The vector was dependent; `combo[j]` is the coefficient of the j-th
    /// inserted vector in an expression of the new vector, i.e.
    /// `v = sum_j combo[j] * inserted_j`.
    Dependent(Vec<u32>),
}

impl Echelon {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    pub fn from_vectors<'a>(
        field: PrimeField,
        dim: usize,
        vs: impl IntoIterator<Item = &'a Vec<u32>>,
    ) -> Self {
        let mut e = Echelon::new(field, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` against the basis, returning the residual and the
    /// combination of basis rows that was subtracted.
    fn reduce_tracked(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        let mut v = v.to_vec();
        let mut coeffs = vec![0u32; self.rows.len()];
        for (k, row) in self.rows.iter().enumerate() {
            let c = v[self.pivots[k]];
            if c == 0 {
                continue;
            }
            coeffs[k] = c;
            let neg = f.neg(c);
            for (j, &x) in row.iter().enumerate().skip(self.pivots[k]) {
                if x != 0 {
                    v[j] = f.mul_add(v[j], neg, x);
                }
            }
        }
        (v, coeffs)
    }

    /// Residual of `v` modulo the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn insert(&mut self, v: &[u32]) -> Insert {
        assert_eq!(v.len(), self.dim, "vector has wrong length");
        let f = self.field;
        let (mut r, coeffs) = self.reduce_tracked(v);
        // combination of inserted vectors equal to (v - r)
        let mut combo = vec![0u32; self.inserted + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &x) in self.combos[k].iter().enumerate() {
                if x != 0 {
                    combo[j] = f.mul_add(combo[j], c, x);
                }
            }
        }
        match r.iter().position(|&x| x != 0) {
            None => {
                combo.pop();
                Insert::Dependent(combo)
            }
            Some(pc) => {
                // row = (v - combo_prev) / r[pc]
                let inv = f.inv(r[pc]);
                for x in r.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                let mut row_combo: Vec<u32> = combo.iter().map(|&x| f.mul(f.neg(x), inv)).collect();
                row_combo[self.inserted] = inv;
                for c in self.combos.iter_mut() {
                    c.push(0);
                }
                self.rows.push(r);
                self.pivots.push(pc);
                self.combos.push(row_combo);
                self.inserted += 1;
                Insert::New
            }
        }
    }

    /// Coordinates of `v` with respect to the inserted independent vectors,
    /// or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.field;
        let (r, coeffs) = self.reduce_tracked(v);
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = vec![0u32; self.inserted];
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &x) in self.combos[k].iter().enumerate() {
                if x != 0 {
                    out[j] = f.mul_add(out[j], c, x);
                }
            }
        }
        Some(out)
    }
}

/// The quotient F_p^n / S, presented by the non-pivot coordinates of the
/// reduced echelon form of S. Reducing a vector and reading its free
/// coordinates gives canonical quotient coordinates.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    field: PrimeField,
    dim: usize,
    rref_rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(field: PrimeField, dim: usize, sub: &[Vec<u32>]) -> Self {
        let (rref_rows, pivots) = if sub.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let r = Matrix::from_rows(field, dim, sub).rref();
            let rows = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
            (rows, r.pivots)
        };
        let mut is_pivot = vec![false; dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free = (0..dim).filter(|&j| !is_pivot[j]).collect();
        QuotientSpace {
            field,
            dim,
            rref_rows,
            pivots,
            free,
        }
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Ambient coordinates that serve as quotient coordinates.
    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn sub_dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` modulo the subspace (zero at every pivot column).
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rref_rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    v[j] = f.mul_add(v[j], neg, x);
                }
            }
        }
        v
    }

    /// Canonical coordinates of the class of `v`.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.residual(v);
        self.free.iter().map(|&j| r[j]).collect()
    }

    /// A representative of the class with the given coordinates.
    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.dim];
        for (&j, &c) in self.free.iter().zip(coords) {
            v[j] = c;
        }
        v
    }
}
