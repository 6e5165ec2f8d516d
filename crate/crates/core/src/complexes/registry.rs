use std::sync::Mutex;

use crate::algebra::Algebra;
use crate::Result;

use super::decompose::{decompose_complex_with, iso_indecomposable_complex};
use super::ProjComplex;

/// Append-only table of pairwise non-isomorphic minimal indecomposable
/// complexes. IDs are assigned in discovery order.
#[derive(Debug, Default)]
pub struct ComplexRegistry {
    entries: Mutex<Vec<ProjComplex>>,
}

impl ComplexRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, id: usize) -> ProjComplex {
        self.entries.lock().unwrap()[id].clone()
    }

    pub fn find(&self, a: &Algebra, x: &ProjComplex) -> Option<usize> {
        let entries = self.entries.lock().unwrap();
        find_in(a, &entries, x)
    }

    /// ID of a minimal indecomposable complex, registering it if new.
    /// Returns `(id, inserted)`.
    pub fn get_or_insert(&self, a: &Algebra, x: &ProjComplex) -> (usize, bool) {
        let mut entries = self.entries.lock().unwrap();
        if let Some(id) = find_in(a, &entries, x) {
            return (id, false);
        }
        entries.push(x.clone());
        (entries.len() - 1, true)
    }

    /// Registry IDs with multiplicities of the indecomposable summands of
    /// `x`, sorted by ID.
    pub fn decompose(&self, a: &Algebra, x: &ProjComplex, seed: u64) -> Result<Vec<(usize, usize)>> {
        self.decompose_with(a, x, seed, &[])
    }

    /// As [`ComplexRegistry::decompose`], trying the minimal indecomposable
    /// complexes `hints` as summands before anything else.
    pub fn decompose_with(&self, a: &Algebra, x: &ProjComplex, seed: u64, hints: &[ProjComplex]) -> Result<Vec<(usize, usize)>> {
        let mut ids: Vec<usize> = decompose_complex_with(a, x, seed, hints)?
            .iter()
            .map(|p| self.get_or_insert(a, p).0)
            .collect();
        ids.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for id in ids {
            match out.last_mut() {
                Some((last, k)) if *last == id => *k += 1,
                _ => out.push((id, 1)),
            }
        }
        Ok(out)
    }

    /// `⊕` of the registered complexes with the given IDs (sorted terms).
    pub fn sum(&self, a: &Algebra, ids: &[usize]) -> ProjComplex {
        let entries = self.entries.lock().unwrap();
        ids.iter()
            .fold(ProjComplex::zero(), |acc, &id| acc.direct_sum_raw(&entries[id], a))
            .sorted()
    }
}

fn find_in(a: &Algebra, entries: &[ProjComplex], x: &ProjComplex) -> Option<usize> {
    let n = a.num_vertices();
    let sig = x.signature(n);
    entries
        .iter()
        .position(|e| e == x || (e.signature(n) == sig && iso_indecomposable_complex(a, e, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::tests::s1_complex;
    use crate::testing::corpus_algebra;

    #[test]
    fn regular_stalk_over_a2() {
        let a = corpus_algebra("a2");
        let reg = ComplexRegistry::new();
        let (p1, _) = reg.get_or_insert(&a, &ProjComplex::stalk(&[0], 0));
        let (p2, _) = reg.get_or_insert(&a, &ProjComplex::stalk(&[1], 0));
        assert_eq!(reg.decompose(&a, &ProjComplex::regular(&a), 0).unwrap(), vec![(p1, 1), (p2, 1)]);
        let x = s1_complex(&a);
        let twice = reg.decompose(&a, &x.direct_sum(&x, &a), 0).unwrap();
        assert_eq!(twice, vec![(2, 2)]);
        assert_eq!(reg.sum(&a, &[p2, p1]), ProjComplex::regular(&a));
    }
}
