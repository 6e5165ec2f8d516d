//! Two-term silting objects: predicates, the translation to support
//! τ-tilting pairs, the partial order, completions and mutation.

mod completion;
mod mutation;
mod nterm;

pub use completion::{bongartz, co_bongartz};
pub(crate) use completion::{bongartz_hinted, co_bongartz_hinted};
pub use mutation::{mutate, Direction, ExchangeCertificate, Mutation};
pub use nterm::{explore_nterm, is_nterm_silting, mutate_direct, NTermExploration};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complexes::{minimalize, ProjComplex};
use crate::modules::{image_basis, min_proj_presentation, Representation, StauPair};
use crate::session::Session;
use crate::{Error, Result};

/// A basic object given by the registry IDs of its indecomposable summands,
/// sorted and without repetition. Silting objects and presilting objects
/// share this representation; the predicates below tell them apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SiltingObject {
    summands: Vec<usize>,
}

pub type PresiltingObject = SiltingObject;

impl SiltingObject {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = ids.into_iter().collect();
        SiltingObject {
            summands: set.into_iter().collect(),
        }
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.summands.binary_search(&id).is_ok()
    }

    /// Whether every summand of `u` is a summand of `self`.
    pub fn contains_all(&self, u: &SiltingObject) -> bool {
        u.summands.iter().all(|&id| self.contains(id))
    }

    /// The object with the summand at position `i` removed.
    pub fn without(&self, i: usize) -> Result<SiltingObject> {
        if i >= self.len() {
            return Err(Error::SummandMissing(i));
        }
        let mut summands = self.summands.clone();
        summands.remove(i);
        Ok(SiltingObject { summands })
    }

    pub fn union(&self, other: &SiltingObject) -> SiltingObject {
        SiltingObject::new(self.summands.iter().chain(&other.summands).copied())
    }

    pub fn intersection(&self, other: &SiltingObject) -> SiltingObject {
        SiltingObject::new(self.summands.iter().copied().filter(|&id| other.contains(id)))
    }

    /// The direct sum of the summands, as one complex.
    pub fn complex(&self, s: &Session) -> ProjComplex {
        s.complexes().sum(s.algebra(), &self.summands)
    }

    pub fn complexes(&self, s: &Session) -> Vec<ProjComplex> {
        self.summands.iter().map(|&id| s.complex(id)).collect()
    }
}

/// The regular module `A` as a stalk complex.
pub fn regular_object(s: &Session) -> SiltingObject {
    SiltingObject::new((0..s.rank()).map(|v| s.projective_id(v)))
}

/// `A[1]`.
pub fn shifted_regular_object(s: &Session) -> SiltingObject {
    SiltingObject::new((0..s.rank()).map(|v| s.shifted_projective_id(v)))
}

/// The basic object with the same indecomposable summands as `x`.
pub fn object_of(s: &Session, x: &ProjComplex) -> Result<SiltingObject> {
    Ok(SiltingObject::new(s.decompose(x)?.into_iter().map(|(id, _)| id)))
}

/// As [`object_of`] for a complex expected to have summands among the
/// minimal indecomposable complexes `hints`.
pub(crate) fn object_of_with(s: &Session, x: &ProjComplex, hints: &[ProjComplex]) -> Result<SiltingObject> {
    Ok(SiltingObject::new(s.decompose_with(x, hints)?.into_iter().map(|(id, _)| id)))
}

fn require_two_term(s: &Session, x: &SiltingObject) -> Result<()> {
    if x.summands.iter().all(|&id| s.complex(id).is_two_term()) {
        Ok(())
    } else {
        Err(Error::NotTwoTerm)
    }
}

/// `Hom_K(X, X[1]) = 0`.
pub fn is_presilting(s: &Session, x: &SiltingObject) -> Result<bool> {
    require_two_term(s, x)?;
    Ok(self_orthogonal(s, x, 1))
}

/// Presilting with `|A|` distinct indecomposable summands.
pub fn is_silting(s: &Session, x: &SiltingObject) -> Result<bool> {
    Ok(is_presilting(s, x)? && x.len() == s.rank())
}

/// `Hom_K(X, X[k]) = 0` for `1 <= k <= up_to`.
pub(crate) fn self_orthogonal(s: &Session, x: &SiltingObject, up_to: i32) -> bool {
    (1..=up_to).all(|k| {
        x.summands
            .iter()
            .all(|&i| x.summands.iter().all(|&j| s.ext(i, j, k) == 0))
    })
}

/// `t ≤ u`, i.e. `Hom_K(u, t[1]) = 0`.
pub fn leq(s: &Session, t: &SiltingObject, u: &SiltingObject) -> bool {
    u.summands
        .iter()
        .all(|&j| t.summands.iter().all(|&i| s.ext(j, i, 1) == 0))
}

/// Degree-zero cohomology of a two-term complex.
pub fn h0(s: &Session, x: &ProjComplex) -> Representation {
    let a = s.algebra();
    if x.term(0).is_empty() {
        return Representation::zero(a);
    }
    let d = x.diff(a, -1);
    let p0 = crate::algebra::projective_sum(a, x.term(0));
    let image = image_basis(&d.to_module_map(a));
    p0.quotient(a, &image).0
}

/// The support τ-tilting (or τ-rigid) pair `(H^0(T), ⊕ P_q)` where the
/// `P_q[1]` are the summands of `T` concentrated in degree `-1`.
pub fn to_stau_pair(s: &Session, t: &SiltingObject) -> Result<StauPair> {
    require_two_term(s, t)?;
    let a = s.algebra();
    let mut modules = Vec::new();
    let mut projectives = Vec::new();
    for &id in &t.summands {
        let x = s.complex(id);
        if x.term(0).is_empty() {
            projectives.extend_from_slice(x.term(-1));
            continue;
        }
        let parts = s.modules().decompose(a, &h0(s, &x), s.seed())?;
        match parts.as_slice() {
            [(m, 1)] => modules.push(*m),
            _ => {
                return Err(Error::TheoremViolation(format!(
                    "degree-zero cohomology of summand {id} is not indecomposable"
                )))
            }
        }
    }
    Ok(StauPair::new(modules, projectives))
}

/// The minimal projective presentation of `M` plus `Q[1]`.
pub fn from_stau_pair(s: &Session, p: &StauPair) -> SiltingObject {
    let a = s.algebra();
    let mut ids: Vec<usize> = p.projectives.iter().map(|&q| s.shifted_projective_id(q)).collect();
    for &m in &p.modules {
        let pres = min_proj_presentation(a, &s.modules().get(m));
        let x = minimalize(a, &ProjComplex::two_term(pres.d));
        ids.push(s.complexes().get_or_insert(a, &x).0);
    }
    SiltingObject::new(ids)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::complexes::tests::s1_complex;
    use crate::modules::iso_indecomposable;
    use crate::testing::corpus_algebra;

    pub(crate) fn session(name: &str) -> Session {
        Session::from_algebra(corpus_algebra(name), 0)
    }

    /// Registry ID of the complex `P_2 -> P_1` over `A_2`.
    pub(crate) fn s1_id(s: &Session) -> usize {
        s.complexes().get_or_insert(s.algebra(), &s1_complex(s.algebra())).0
    }

    #[test]
    fn predicates_on_a2() {
        let s = session("a2");
        let a = regular_object(&s);
        let a1 = shifted_regular_object(&s);
        assert!(is_silting(&s, &a).unwrap());
        assert!(is_silting(&s, &a1).unwrap());
        let u = SiltingObject::new([s1_id(&s)]);
        assert!(is_presilting(&s, &u).unwrap());
        assert!(!is_silting(&s, &u).unwrap());
        // P_1 and P_1[1] are not compatible
        let bad = SiltingObject::new([0, 2]);
        assert!(!is_presilting(&s, &bad).unwrap());
    }

    #[test]
    fn three_term_objects_are_rejected() {
        let s = session("a2");
        let (id, _) = s.complexes().get_or_insert(s.algebra(), &ProjComplex::stalk(&[0], -2));
        assert_eq!(is_presilting(&s, &SiltingObject::new([id])), Err(Error::NotTwoTerm));
    }

    #[test]
    fn pairs_of_the_a2_examples() {
        let s = session("a2");
        let a = s.algebra();
        assert_eq!(to_stau_pair(&s, &shifted_regular_object(&s)).unwrap(), StauPair::new(vec![], vec![0, 1]));
        let top = to_stau_pair(&s, &regular_object(&s)).unwrap();
        assert_eq!(top.projectives, Vec::<usize>::new());
        let dims: BTreeSet<Vec<usize>> = top.modules.iter().map(|&m| s.modules().get(m).dims().to_vec()).collect();
        assert_eq!(dims, BTreeSet::from([vec![1, 1], vec![0, 1]]));

        let t = SiltingObject::new([s1_id(&s), s.shifted_projective_id(1)]);
        let p = to_stau_pair(&s, &t).unwrap();
        assert_eq!(p.projectives, vec![1]);
        assert!(iso_indecomposable(a, &s.modules().get(p.modules[0]), &crate::algebra::simple(a, 0)));
        assert_eq!(from_stau_pair(&s, &p), t);
        assert_eq!(from_stau_pair(&s, &top), regular_object(&s));
    }

    #[test]
    fn order_examples() {
        let s = session("a2");
        let a = regular_object(&s);
        let a1 = shifted_regular_object(&s);
        let mid = SiltingObject::new([s1_id(&s), s.shifted_projective_id(1)]);
        assert!(leq(&s, &a1, &a));
        assert!(!leq(&s, &a, &a1));
        assert!(leq(&s, &mid, &a) && leq(&s, &a1, &mid));
        assert!(leq(&s, &mid, &mid));
    }
}
