use std::fmt;

use super::field::PrimeField;

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().map(|&x| x % field.modulus()));
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(field: PrimeField, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.modulus();
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let p = f.modulus() as u64;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    let b = other.data[k * other.cols + j] as u64;
                    if b != 0 {
                        *slot = (*slot + a * b) % p;
                    }
                }
            }
            for j in 0..other.cols {
                out.data[i * other.cols + j] = acc[j] as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { data, ..*self }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Sub-matrix picking the given rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j])
        })
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = eliminate(&mut m, true);
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        eliminate(&mut m, false).len()
    }

    /// Basis of `{x : self * x = 0}`; one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let Rref { matrix: r, pivots } = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = self.hstack(&Matrix::from_cols(self.field, self.rows, &[b.to_vec()]));
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let Rref { matrix: r, pivots } = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.iter().filter(|&&c| c < n).count() < n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.select(&rows, &cols))
    }

    pub fn trace(&self) -> u32 {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }
}

/// In-place Gauss-Jordan elimination. With `full` the result is the reduced
/// row echelon form; otherwise only the rank-revealing forward pass runs.
fn eliminate(m: &mut Matrix, full: bool) -> Vec<usize> {
    let f = m.field;
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut nz = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.data[r * cols + c]);
        nz.clear();
        for j in c..cols {
            let v = m.data[r * cols + j];
            if v != 0 {
                let v = f.mul(v, inv);
                m.data[r * cols + j] = v;
                nz.push(j);
            }
        }
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let factor = m.data[i * cols + c];
            if factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for &j in &nz {
                let pv = m.data[r * cols + j];
                let slot = &mut m.data[i * cols + j];
                *slot = f.mul_add(*slot, neg, pv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Debug for Matrix {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(fm, "Matrix {}x{} over F_{} [", self.rows, self.cols, self.field.modulus())?;
        for i in 0..self.rows {
            let row: Vec<i64> = self.row(i).iter().map(|&x| self.field.to_signed(x)).collect();
            writeln!(fm, "  {row:?}")?;
        }
        write!(fm, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(Matrix::identity(f7(), 3).rank(), 3);
        assert_eq!(Matrix::zeros(f7(), 4, 2).rank(), 0);
    }

    #[test]
    fn kernel_of_zero_is_standard_basis() {
        let k = Matrix::zeros(f7(), 2, 3).kernel_basis();
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(Matrix::identity(f7(), 4).kernel_basis().is_empty());
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = f7();
        assert_eq!(Matrix::identity(f, 3).solve(&[1, 2, 3]), Some(vec![1, 2, 3]));
        assert_eq!(Matrix::zeros(f, 2, 2).solve(&[0, 1]), None);
    }

    #[test]
    fn inverse_of_small_matrix() {
        let f = f7();
        let m = Matrix::from_rows(f, 2, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        let singular = Matrix::from_rows(f, 2, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
    }
}
