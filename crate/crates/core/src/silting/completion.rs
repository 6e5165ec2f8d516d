use crate::complexes::{left_approx, right_approx, ProjComplex};
use crate::session::Session;
use crate::{Error, Result};

use super::{is_presilting, is_silting, object_of_with, SiltingObject};

fn check_input(s: &Session, u: &SiltingObject) -> Result<()> {
    if !is_presilting(s, u)? {
        return Err(Error::NotPresilting);
    }
    if is_silting(s, u)? {
        return Err(Error::AlreadySilting);
    }
    Ok(())
}

/// `u` together with the summands of the given cones. The minimal
/// approximation of `A = ⊕ P_v` is the sum of those of the `P_v`, so the cone
/// is handled one vertex at a time, which keeps each decomposition small.
fn finish(s: &Session, u: &SiltingObject, cones: &[ProjComplex], hints: &[ProjComplex], what: &str) -> Result<SiltingObject> {
    let mut known = u.complexes(s);
    known.extend_from_slice(hints);
    let mut t = u.clone();
    for x in cones {
        t = t.union(&object_of_with(s, x, &known)?);
    }
    if !is_silting(s, &t).unwrap_or(false) {
        return Err(Error::TheoremViolation(format!("{what} completion is not two-term silting")));
    }
    Ok(t)
}

/// The maximum silting object containing `u`: the cocone of a minimal right
/// `add u`-approximation of `A[1]`, together with `u`.
pub fn bongartz(s: &Session, u: &SiltingObject) -> Result<SiltingObject> {
    bongartz_hinted(s, u, &[])
}

/// As [`bongartz`], trying the minimal indecomposable complexes `hints` as
/// summands of the cocone first. Hints only affect speed.
pub(crate) fn bongartz_hinted(s: &Session, u: &SiltingObject, hints: &[ProjComplex]) -> Result<SiltingObject> {
    check_input(s, u)?;
    let a = s.algebra();
    let us = u.complexes(s);
    let cocones: Vec<ProjComplex> = (0..s.rank())
        .map(|v| {
            let target = s.complex(s.shifted_projective_id(v));
            let ap = right_approx(a, &target, &us);
            ProjComplex::cone(a, &ap.map, &ap.object, &target).shift(a, -1)
        })
        .collect();
    finish(s, u, &cocones, hints, "Bongartz")
}

/// The minimum silting object containing `u`: the cone of a minimal left
/// `add u`-approximation of `A`, together with `u`.
pub fn co_bongartz(s: &Session, u: &SiltingObject) -> Result<SiltingObject> {
    co_bongartz_hinted(s, u, &[])
}

pub(crate) fn co_bongartz_hinted(s: &Session, u: &SiltingObject, hints: &[ProjComplex]) -> Result<SiltingObject> {
    check_input(s, u)?;
    let a = s.algebra();
    let us = u.complexes(s);
    let cones: Vec<ProjComplex> = (0..s.rank())
        .map(|v| {
            let source = s.complex(s.projective_id(v));
            let ap = left_approx(a, &source, &us);
            ProjComplex::cone(a, &ap.map, &source, &ap.object)
        })
        .collect();
    finish(s, u, &cones, hints, "co-Bongartz")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::full;
    use crate::silting::tests::{s1_id, session};
    use crate::silting::{leq, object_of, regular_object, shifted_regular_object, to_stau_pair};

    #[test]
    fn completions_of_the_s1_complex() {
        let s = session("a2");
        let x = s1_id(&s);
        let u = SiltingObject::new([x]);
        let n = bongartz(&s, &u).unwrap();
        let m = co_bongartz(&s, &u).unwrap();
        assert_eq!(n, SiltingObject::new([s.projective_id(0), x]));
        assert_eq!(m, SiltingObject::new([x, s.shifted_projective_id(1)]));
        assert_eq!(n.intersection(&m), u);
        assert!(leq(&s, &m, &n));
        let pm = to_stau_pair(&s, &m).unwrap();
        assert_eq!(pm.projectives, vec![1]);
    }

    #[test]
    fn empty_object_completes_to_the_extremes() {
        let s = session("a3");
        let zero = SiltingObject::new([]);
        assert_eq!(bongartz(&s, &zero).unwrap(), regular_object(&s));
        assert_eq!(co_bongartz(&s, &zero).unwrap(), shifted_regular_object(&s));
    }

    #[test]
    fn rejects_silting_and_non_presilting_input() {
        let s = session("a2");
        assert_eq!(bongartz(&s, &regular_object(&s)), Err(Error::AlreadySilting));
        assert_eq!(co_bongartz(&s, &SiltingObject::new([0, 2])), Err(Error::NotPresilting));
    }

    /// The cones of the approximations of the whole of `A` and `A[1]` give the
    /// same completions as the vertexwise ones.
    #[test]
    fn whole_cones_agree_with_vertexwise_cones() {
        let s = session("square_commutative");
        let a = s.algebra();
        let mut checked = 0;
        for t in &full(&s).vertices {
            for i in 0..t.len() {
                let u = t.without(i).unwrap();
                let us = u.complexes(&s);
                let source = regular_object(&s).complex(&s);
                let left = left_approx(a, &source, &us);
                let cone = ProjComplex::cone(a, &left.map, &source, &left.object);
                assert_eq!(object_of(&s, &cone).unwrap().union(&u), co_bongartz(&s, &u).unwrap());
                let target = shifted_regular_object(&s).complex(&s);
                let right = right_approx(a, &target, &us);
                let cocone = ProjComplex::cone(a, &right.map, &right.object, &target).shift(a, -1);
                assert_eq!(object_of(&s, &cocone).unwrap().union(&u), bongartz(&s, &u).unwrap());
                checked += 1;
            }
        }
        assert_eq!(checked, 46 * 4);
    }
}
