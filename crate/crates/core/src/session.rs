//! Shared state for one run: the algebra, the seed, the module and complex
//! registries, and a cache of extension dimensions between registered
//! complexes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::Algebra;
use crate::complexes::{hom_k_dim, ComplexRegistry, ProjComplex};
use crate::modules::ModuleRegistry;
use crate::Result;

#[derive(Debug)]
pub struct Session {
    alg: Arc<Algebra>,
    seed: u64,
    modules: ModuleRegistry,
    complexes: ComplexRegistry,
    ext: Mutex<HashMap<(usize, usize, i32), usize>>,
}

impl Session {
    /// A fresh session. Complex IDs `0..n` are the stalks `P_i` in degree 0
    /// and `n..2n` the shifted stalks `P_i[1]`.
    pub fn new(alg: Arc<Algebra>, seed: u64) -> Self {
        let s = Session {
            alg,
            seed,
            modules: ModuleRegistry::new(),
            complexes: ComplexRegistry::new(),
            ext: Mutex::new(HashMap::new()),
        };
        let n = s.alg.num_vertices();
        for degree in [0, -1] {
            for v in 0..n {
                s.complexes.get_or_insert(&s.alg, &ProjComplex::stalk(&[v], degree));
            }
        }
        s
    }

    pub fn from_algebra(a: Algebra, seed: u64) -> Self {
        Self::new(Arc::new(a), seed)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<Algebra> {
        self.alg.clone()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rank(&self) -> usize {
        self.alg.num_vertices()
    }

    pub fn modules(&self) -> &ModuleRegistry {
        &self.modules
    }

    pub fn complexes(&self) -> &ComplexRegistry {
        &self.complexes
    }

    pub fn complex(&self, id: usize) -> ProjComplex {
        self.complexes.get(id)
    }

    /// ID of the stalk `P_v` in degree 0.
    pub fn projective_id(&self, v: usize) -> usize {
        v
    }

    /// ID of `P_v[1]`.
    pub fn shifted_projective_id(&self, v: usize) -> usize {
        self.rank() + v
    }

    /// Registry IDs (with multiplicity) of the indecomposable summands.
    pub fn decompose(&self, x: &ProjComplex) -> Result<Vec<(usize, usize)>> {
        self.complexes.decompose(&self.alg, x, self.seed)
    }

    /// As [`Session::decompose`], with minimal indecomposable complexes that
    /// are likely summands.
    pub fn decompose_with(&self, x: &ProjComplex, hints: &[ProjComplex]) -> Result<Vec<(usize, usize)>> {
        self.complexes.decompose_with(&self.alg, x, self.seed, hints)
    }

    /// `dim Hom_K(X_i, X_j[shift])`, cached.
    pub fn ext(&self, i: usize, j: usize, shift: i32) -> usize {
        if let Some(&d) = self.ext.lock().unwrap().get(&(i, j, shift)) {
            return d;
        }
        let (x, y) = (self.complex(i), self.complex(j));
        let d = if x.is_zero() || y.is_zero() || x.hi() < y.lo() - shift || x.lo() > y.hi() - shift {
            0
        } else {
            hom_k_dim(&self.alg, &x, &y, shift)
        };
        self.ext.lock().unwrap().insert((i, j, shift), d);
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::corpus_algebra;

    #[test]
    fn preregistered_stalks() {
        let s = Session::from_algebra(corpus_algebra("a2"), 0);
        assert_eq!(s.complexes().len(), 4);
        assert_eq!(s.complex(s.shifted_projective_id(1)), ProjComplex::stalk(&[1], -1));
        // Hom(P_1, P_1[1][1]) vanishes, Hom(P_1[1], P_1[1]) does not
        assert_eq!(s.ext(0, 2, 1), 0);
        assert_eq!(s.ext(2, 0, 1), 1);
        assert_eq!(s.ext(2, 0, 1), 1);
    }
}
