//! Locality certificates and splitting idempotents for finite-dimensional
//! endomorphism algebras, shared by modules and complexes.
//!
//! Elements are flat coordinate vectors in some ambient space; the caller
//! supplies composition, the identity and a "top trace" functional whose
//! kernel is the radical whenever the algebra is local with residue field F_p.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlinalg::poly::{coprime_split, crt_idempotent, Poly};
use crate::exactlinalg::{Echelon, Insert, PrimeField};

pub trait EndAlgebra {
    fn field(&self) -> PrimeField;
    /// Spanning set (normally a basis) of the algebra, as flat vectors.
    fn basis(&self) -> &[Vec<u32>];
    fn identity(&self) -> Vec<u32>;
    /// `a ∘ b`.
    fn compose(&self, a: &[u32], b: &[u32]) -> Vec<u32>;
    /// Linear functional equal to `size * lambda` on `lambda * id + radical`.
    fn top_trace(&self, a: &[u32]) -> u32;
    /// `top_trace(identity)`, assumed nonzero in F_p.
    fn top_size(&self) -> usize;
}

fn axpy(f: PrimeField, y: &mut [u32], a: u32, x: &[u32]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = f.mul_add(*yi, a, xi);
        }
    }
}

/// Exact test that the algebra is local with residue field F_p: the
/// trace-zero part must be a nilpotent two-sided ideal.
pub fn is_local<E: EndAlgebra + ?Sized>(e: &E) -> bool {
    let f = e.field();
    let size = e.top_size() as u64 % f.modulus() as u64;
    if size == 0 {
        return false;
    }
    let inv = f.inv(size as u32);
    let id = e.identity();
    let dim = id.len();
    // K = span { b - (tr b / size) id }
    let mut kspan = Echelon::new(f, dim);
    for b in e.basis() {
        let lambda = f.mul(e.top_trace(b), inv);
        let mut k = b.clone();
        axpy(f, &mut k, f.neg(lambda), &id);
        if k.iter().any(|&x| x != 0) {
            kspan.insert(&k);
        }
    }
    let k_basis: Vec<Vec<u32>> = kspan.rows().to_vec();
    for b in e.basis() {
        for k in &k_basis {
            if e.top_trace(&e.compose(b, k)) != 0 || e.top_trace(&e.compose(k, b)) != 0 {
                return false;
            }
        }
    }
    let mut power = k_basis.clone();
    for _ in 0..=dim {
        if power.is_empty() {
            return true;
        }
        let mut next = Echelon::new(f, dim);
        for x in &power {
            for k in &k_basis {
                let prod = e.compose(x, k);
                if prod.iter().any(|&c| c != 0) {
                    next.insert(&prod);
                }
            }
        }
        power = next.rows().to_vec();
    }
    false
}

/// Minimal polynomial of `phi` by Krylov iteration.
pub fn min_poly<E: EndAlgebra + ?Sized>(e: &E, phi: &[u32]) -> Poly {
    let f = e.field();
    let id = e.identity();
    let mut span = Echelon::new(f, id.len());
    let mut power = id;
    let mut k = 0;
    loop {
        match span.insert(&power) {
            Insert::New => {
                power = e.compose(phi, &power);
                k += 1;
            }
            Insert::Dependent(combo) => {
                // phi^k = sum combo_j phi^j  =>  x^k - sum combo_j x^j
                let mut coeffs: Vec<u32> = combo.iter().map(|&c| f.neg(c)).collect();
                coeffs.resize(k, 0);
                coeffs.push(1);
                return Poly::new(coeffs);
            }
        }
    }
}

/// Evaluates a polynomial at `phi` by Horner's rule.
pub fn eval_poly<E: EndAlgebra + ?Sized>(e: &E, p: &Poly, phi: &[u32]) -> Vec<u32> {
    let f = e.field();
    let id = e.identity();
    let mut acc = vec![0u32; id.len()];
    for &c in p.coeffs.iter().rev() {
        acc = e.compose(phi, &acc);
        axpy(f, &mut acc, c, &id);
    }
    acc
}

/// A nontrivial idempotent built from `phi`, if its minimal polynomial
/// has two coprime factors.
fn idempotent_from<E: EndAlgebra + ?Sized, R: Rng>(e: &E, phi: &[u32], rng: &mut R) -> Option<Vec<u32>> {
    let f = e.field();
    let mu = min_poly(e, phi);
    let (g, h) = coprime_split(&mu, f, rng)?;
    let q = crt_idempotent(&g, &h, f);
    let idem = eval_poly(e, &q, phi);
    let id = e.identity();
    if idem.iter().all(|&c| c == 0) || idem == id {
        return None;
    }
    debug_assert_eq!(e.compose(&idem, &idem), idem);
    Some(idem)
}

/// Searches for a nontrivial idempotent: seeded random elements first, then
/// a deterministic scan over basis elements and their pairwise sums.
pub fn find_idempotent<E: EndAlgebra + ?Sized>(e: &E, seed: u64) -> Option<Vec<u32>> {
    let f = e.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = e.basis();
    if basis.is_empty() {
        return None;
    }
    let dim = basis[0].len();
    for _ in 0..8 {
        let mut phi = vec![0u32; dim];
        for b in basis {
            let c = rng.gen_range(0..f.modulus());
            axpy(f, &mut phi, c, b);
        }
        if let Some(idem) = idempotent_from(e, &phi, &mut rng) {
            return Some(idem);
        }
    }
    for (i, b) in basis.iter().enumerate() {
        if let Some(idem) = idempotent_from(e, b, &mut rng) {
            return Some(idem);
        }
        for c in &basis[i + 1..] {
            let mut phi = b.clone();
            axpy(f, &mut phi, 1, c);
            if let Some(idem) = idempotent_from(e, &phi, &mut rng) {
                return Some(idem);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::Matrix;

    /// Subalgebra of n x n matrices spanned by given matrices.
    struct MatAlg {
        f: PrimeField,
        n: usize,
        basis: Vec<Vec<u32>>,
    }

    impl EndAlgebra for MatAlg {
        fn field(&self) -> PrimeField {
            self.f
        }
        fn basis(&self) -> &[Vec<u32>] {
            &self.basis
        }
        fn identity(&self) -> Vec<u32> {
            Matrix::identity(self.f, self.n).data().to_vec()
        }
        fn compose(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
            let ma = Matrix::from_fn(self.f, self.n, self.n, |i, j| a[i * self.n + j]);
            let mb = Matrix::from_fn(self.f, self.n, self.n, |i, j| b[i * self.n + j]);
            ma.mul(&mb).data().to_vec()
        }
        fn top_trace(&self, a: &[u32]) -> u32 {
            (0..self.n).fold(0, |acc, i| self.f.add(acc, a[i * self.n + i]))
        }
        fn top_size(&self) -> usize {
            self.n
        }
    }

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn upper_triangular_unipotent_is_local() {
        // span{I, E_12}
        let alg = MatAlg {
            f: f(),
            n: 2,
            basis: vec![vec![1, 0, 0, 1], vec![0, 1, 0, 0]],
        };
        assert!(is_local(&alg));
        assert!(find_idempotent(&alg, 0).is_none());
    }

    #[test]
    fn diagonal_algebra_splits() {
        let alg = MatAlg {
            f: f(),
            n: 2,
            basis: vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]],
        };
        assert!(!is_local(&alg));
        let e = find_idempotent(&alg, 7).unwrap();
        assert_eq!(alg.compose(&e, &e), e);
        assert!(e == vec![1, 0, 0, 0] || e == vec![0, 0, 0, 1]);
    }

    #[test]
    fn min_poly_of_nilpotent() {
        let alg = MatAlg {
            f: f(),
            n: 2,
            basis: vec![],
        };
        assert_eq!(min_poly(&alg, &[0, 1, 0, 0]), Poly::new(vec![0, 0, 1]));
    }
}
