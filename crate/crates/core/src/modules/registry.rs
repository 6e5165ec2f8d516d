use std::sync::Mutex;

use crate::algebra::Algebra;
use crate::krull::{is_local, EndAlgebra};
use crate::Result;

use super::decompose::{decompose_module, ModuleEnd};
use super::hom::hom_space;
use super::rep::Representation;

/// Isomorphism test for two modules whose endomorphism rings are local with
/// residue field F_p: they are isomorphic iff some composite `Y -> X -> Y`
/// of basis maps has nonzero trace.
pub fn iso_indecomposable(a: &Algebra, x: &Representation, y: &Representation) -> bool {
    if x.dims() != y.dims() {
        return false;
    }
    let f = a.field();
    let there = hom_space(a, x, y);
    if there.is_empty() {
        return false;
    }
    let back = hom_space(a, y, x);
    for g in &back {
        for h in &there {
            let tr = g
                .compose(h)
                .comps
                .iter()
                .fold(0, |acc, m| f.add(acc, m.trace()));
            if tr != 0 {
                return true;
            }
        }
    }
    false
}

/// Append-only table of pairwise non-isomorphic indecomposable modules.
/// IDs are assigned in discovery order.
#[derive(Debug, Default)]
pub struct ModuleRegistry {
    entries: Mutex<Vec<Representation>>,
}

impl ModuleRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, id: usize) -> Representation {
        self.entries.lock().unwrap()[id].clone()
    }

    pub fn find(&self, a: &Algebra, m: &Representation) -> Option<usize> {
        let entries = self.entries.lock().unwrap();
        entries.iter().position(|e| iso_indecomposable(a, e, m))
    }

    /// ID of an indecomposable module (which must have a local endomorphism
    /// ring), registering it if it is new. Returns `(id, inserted)`.
    pub fn get_or_insert(&self, a: &Algebra, m: &Representation) -> (usize, bool) {
        let mut entries = self.entries.lock().unwrap();
        if let Some(id) = entries.iter().position(|e| iso_indecomposable(a, e, m)) {
            return (id, false);
        }
        debug_assert!(is_local(&ModuleEnd::new(a, m)));
        entries.push(m.clone());
        (entries.len() - 1, true)
    }

    /// Decomposes `M` into registered indecomposables with multiplicities,
    /// sorted by ID.
    pub fn decompose(&self, a: &Algebra, m: &Representation, seed: u64) -> Result<Vec<(usize, usize)>> {
        let mut ids: Vec<usize> = decompose_module(a, m, seed)?
            .iter()
            .map(|x| self.get_or_insert(a, x).0)
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
}

/// Dimension of `rad End(M)` for a module with local endomorphism ring.
pub fn radical_end_dim(a: &Algebra, m: &Representation) -> usize {
    ModuleEnd::new(a, m).basis().len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{indec_projective, simple};
    use crate::testing::corpus_algebra;

    #[test]
    fn doubling_gives_multiplicity_two() {
        let a = corpus_algebra("a2");
        let reg = ModuleRegistry::new();
        let p1 = indec_projective(&a, 0);
        let d = reg.decompose(&a, &p1.direct_sum(&p1, &a), 1).unwrap();
        assert_eq!(d, vec![(0, 2)]);
        assert_eq!(radical_end_dim(&a, &p1), 0);
    }

    #[test]
    fn regular_module_of_a2() {
        let a = corpus_algebra("a2");
        let reg = ModuleRegistry::new();
        let (p1, _) = reg.get_or_insert(&a, &indec_projective(&a, 0));
        let (p2, _) = reg.get_or_insert(&a, &indec_projective(&a, 1));
        let sum = indec_projective(&a, 0).direct_sum(&indec_projective(&a, 1), &a);
        assert_eq!(reg.decompose(&a, &sum, 9).unwrap(), vec![(p1, 1), (p2, 1)]);
        // S_2 = P_2
        assert_eq!(reg.find(&a, &simple(&a, 1)), Some(p2));
        assert_eq!(reg.find(&a, &simple(&a, 0)), None);
    }

    #[test]
    fn decomposition_is_additive() {
        let a = corpus_algebra("a3");
        let reg = ModuleRegistry::new();
        let x = simple(&a, 1).direct_sum(&indec_projective(&a, 0), &a);
        let y = crate::algebra::indec_injective(&a, 2);
        let dx = reg.decompose(&a, &x, 2).unwrap();
        let dy = reg.decompose(&a, &y, 2).unwrap();
        let both = reg.decompose(&a, &x.direct_sum(&y, &a), 2).unwrap();
        let expand = |d: &[(usize, usize)]| {
            let mut v: Vec<usize> = d.iter().flat_map(|&(id, k)| std::iter::repeat_n(id, k)).collect();
            v.sort_unstable();
            v
        };
        let mut expect = expand(&dx);
        expect.extend(expand(&dy));
        expect.sort_unstable();
        assert_eq!(expand(&both), expect);
    }
}
