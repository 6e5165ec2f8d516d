use serde::Serialize;

use crate::modules::{
    ext1_dim, fac_member, hom_dim, sweep_indecomposables, torsion_canonical_seq, Representation, SweepConfig,
};
use crate::session::Session;
use crate::silting::{h0, SiltingObject};
use crate::{Error, Result};

/// The torsion pair `(Fac H^0(T), H^0(T)^⊥)` of a silting object together
/// with the class of modules having no extensions into the torsion class.
/// Classes are given by membership tests and by their members among the
/// swept indecomposables (registry IDs).
#[derive(Clone, Debug, Serialize)]
pub struct TorsionTriple {
    #[serde(skip)]
    module: Representation,
    #[serde(skip)]
    torsion_reps: Vec<Representation>,
    pub cotorsion: Vec<usize>,
    pub torsion: Vec<usize>,
    pub torsion_free: Vec<usize>,
}

impl TorsionTriple {
    pub fn in_torsion(&self, s: &Session, x: &Representation) -> bool {
        fac_member(s.algebra(), x, &self.module)
    }

    pub fn in_torsion_free(&self, s: &Session, x: &Representation) -> bool {
        hom_dim(s.algebra(), &self.module, x) == 0
    }

    /// `Ext^1(X, Y) = 0` for every indecomposable `Y` of the torsion class.
    pub fn in_cotorsion(&self, s: &Session, x: &Representation) -> bool {
        self.torsion_reps.iter().all(|t| ext1_dim(s.algebra(), x, t) == 0)
    }

    /// Spot checks of the torsion pair axioms over the swept indecomposables:
    /// no maps from torsion to torsion-free modules, and every module has a
    /// canonical sequence with ends in the two classes.
    pub fn verify(&self, s: &Session) -> bool {
        let a = s.algebra();
        let orth = self.torsion.iter().all(|&t| {
            self.torsion_free
                .iter()
                .all(|&f| hom_dim(a, &s.modules().get(t), &s.modules().get(f)) == 0)
        });
        let ids = self.torsion.iter().chain(&self.torsion_free).chain(&self.cotorsion);
        orth && ids.copied().all(|id| {
            let m = s.modules().get(id);
            let seq = torsion_canonical_seq(a, &m, &self.module);
            self.in_torsion(s, &seq.torsion) && self.in_torsion_free(s, &seq.free)
        })
    }
}

/// Builds the triple of `t`, classifying every indecomposable found by a
/// complete sweep.
pub fn emit_torsion_triple(s: &Session, t: &SiltingObject, cfg: SweepConfig) -> Result<TorsionTriple> {
    let a = s.algebra();
    let module = t
        .complexes(s)
        .iter()
        .fold(Representation::zero(a), |acc, x| acc.direct_sum(&h0(s, x), a));
    let sweep = sweep_indecomposables(a, s.modules(), cfg);
    if !sweep.stabilised {
        return Err(Error::Truncated("indecomposable sweep did not stabilise".into()));
    }
    let mut triple = TorsionTriple {
        module,
        torsion_reps: Vec::new(),
        cotorsion: Vec::new(),
        torsion: Vec::new(),
        torsion_free: Vec::new(),
    };
    for &id in &sweep.ids {
        let m = s.modules().get(id);
        if triple.in_torsion(s, &m) {
            triple.torsion.push(id);
            triple.torsion_reps.push(m.clone());
        }
        if triple.in_torsion_free(s, &m) {
            triple.torsion_free.push(id);
        }
    }
    for &id in &sweep.ids {
        if triple.in_cotorsion(s, &s.modules().get(id)) {
            triple.cotorsion.push(id);
        }
    }
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::simple;
    use crate::modules::iso_indecomposable;
    use crate::silting::tests::{s1_id, session};
    use crate::silting::{regular_object, shifted_regular_object};

    #[test]
    fn extreme_objects() {
        let s = session("a2");
        let all = emit_torsion_triple(&s, &regular_object(&s), SweepConfig::default()).unwrap();
        assert_eq!(all.torsion.len(), 3);
        assert!(all.torsion_free.is_empty());
        // Ext-projectives of mod A are the projectives
        assert_eq!(all.cotorsion.len(), 2);
        assert!(all.verify(&s));
        let none = emit_torsion_triple(&s, &shifted_regular_object(&s), SweepConfig::default()).unwrap();
        assert!(none.torsion.is_empty());
        assert_eq!(none.torsion_free.len(), 3);
        assert_eq!(none.cotorsion.len(), 3);
        assert!(none.verify(&s));
    }

    #[test]
    fn the_s1_pair() {
        let s = session("a2");
        let a = s.algebra();
        let t = SiltingObject::new([s1_id(&s), s.shifted_projective_id(1)]);
        let tr = emit_torsion_triple(&s, &t, SweepConfig::default()).unwrap();
        assert_eq!(tr.torsion.len(), 1);
        assert!(iso_indecomposable(a, &s.modules().get(tr.torsion[0]), &simple(a, 0)));
        // S_1 is not a submodule of P_1, whose socle is S_2
        assert_eq!(tr.torsion_free.len(), 2);
        assert!(tr.torsion_free.iter().any(|&f| iso_indecomposable(a, &s.modules().get(f), &simple(a, 1))));
        assert!(tr.verify(&s));
    }
}
