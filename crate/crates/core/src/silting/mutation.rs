use serde::{Deserialize, Serialize};

use crate::complexes::{
    decompose_complex, is_left_minimal, is_right_minimal, left_approx, left_factors, right_approx, right_factors, ProjComplex,
};
use crate::session::Session;
use crate::{Error, Result};

use super::{bongartz_hinted, co_bongartz_hinted, SiltingObject};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// The result is smaller than the input.
    Left,
    Right,
}

/// The exchange triangle `X -> U' -> Y -> X[1]` between the two completions
/// of an almost complete object, with `X` the summand of the larger one.
/// Both maps are recomputed independently and checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeCertificate {
    pub upper: usize,
    pub lower: usize,
    /// Registry IDs of the summands of `U'`, with repetition.
    pub middle: Vec<usize>,
    pub left_factors: bool,
    pub left_minimal: bool,
    pub right_factors: bool,
    pub right_minimal: bool,
    /// The cone of `X -> U'` is `Y`.
    pub cone_matches: bool,
    /// The right approximation of `Y` has the same middle term and its
    /// cocone is `X`.
    pub cocone_matches: bool,
}

impl ExchangeCertificate {
    pub fn holds(&self) -> bool {
        self.left_factors
            && self.left_minimal
            && self.right_factors
            && self.right_minimal
            && self.cone_matches
            && self.cocone_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub object: SiltingObject,
    pub direction: Direction,
    pub removed: usize,
    pub added: usize,
    pub certificate: ExchangeCertificate,
}

/// Mutation of the silting object `t` at its `i`-th summand, computed as the
/// completion of `t` minus that summand which differs from `t`.
pub fn mutate(s: &Session, t: &SiltingObject, i: usize) -> Result<Mutation> {
    let u = t.without(i)?;
    let hints = exchange_candidates(s, &u, &s.complex(t.summands()[i]))?;
    let n = bongartz_hinted(s, &u, &hints)?;
    let m = co_bongartz_hinted(s, &u, &hints)?;
    let (object, direction) = if n == m {
        return Err(Error::TheoremViolation(format!(
            "the completions of {:?} coincide",
            u.summands()
        )));
    } else if *t == n {
        (m.clone(), Direction::Left)
    } else if *t == m {
        (n.clone(), Direction::Right)
    } else {
        return Err(Error::TheoremViolation(format!(
            "{:?} is neither completion of {:?}",
            t.summands(),
            u.summands()
        )));
    };
    let upper = single_extra(&n, &u)?;
    let lower = single_extra(&m, &u)?;
    let certificate = exchange_certificate(s, &u, upper, lower);
    if !certificate.holds() {
        return Err(Error::TheoremViolation(format!("exchange triangle check failed: {certificate:?}")));
    }
    let (removed, added) = match direction {
        Direction::Left => (upper, lower),
        Direction::Right => (lower, upper),
    };
    Ok(Mutation {
        object,
        direction,
        removed,
        added,
        certificate,
    })
}

/// Indecomposable summands of the cone of the left and of the cocone of the
/// right `add u`-approximation of `x`. One of them is the new summand, and
/// knowing it in advance makes decomposing the large completion cones cheap.
fn exchange_candidates(s: &Session, u: &SiltingObject, x: &ProjComplex) -> Result<Vec<ProjComplex>> {
    let a = s.algebra();
    let us = u.complexes(s);
    let left = left_approx(a, x, &us);
    let right = right_approx(a, x, &us);
    let cone = ProjComplex::cone(a, &left.map, x, &left.object);
    let cocone = ProjComplex::cone(a, &right.map, &right.object, x).shift(a, -1);
    let mut out = decompose_complex(a, &cone, s.seed())?;
    out.extend(decompose_complex(a, &cocone, s.seed())?);
    out.push(x.clone());
    Ok(out)
}

fn single_extra(t: &SiltingObject, u: &SiltingObject) -> Result<usize> {
    match t.summands().iter().filter(|&&id| !u.contains(id)).collect::<Vec<_>>().as_slice() {
        [&id] => Ok(id),
        _ => Err(Error::TheoremViolation("a completion adds more than one summand".into())),
    }
}

fn exchange_certificate(s: &Session, u: &SiltingObject, upper: usize, lower: usize) -> ExchangeCertificate {
    let a = s.algebra();
    let us = u.complexes(s);
    let (x, y) = (s.complex(upper), s.complex(lower));
    let left = left_approx(a, &x, &us);
    let right = right_approx(a, &y, &us);
    let ids = |copies: &[usize]| -> Vec<usize> { copies.iter().map(|&c| u.summands()[c]).collect() };
    let mut middle = ids(&left.copies);
    middle.sort_unstable();
    let mut right_middle = ids(&right.copies);
    right_middle.sort_unstable();

    let single = |z: &ProjComplex, id: usize| s.decompose(z).map(|d| d == vec![(id, 1)]).unwrap_or(false);
    let cone = ProjComplex::cone(a, &left.map, &x, &left.object);
    let cocone = ProjComplex::cone(a, &right.map, &right.object, &y).shift(a, -1);
    ExchangeCertificate {
        upper,
        lower,
        left_factors: left_factors(a, &x, &us, &left),
        left_minimal: is_left_minimal(a, &x, &us, &left),
        right_factors: right_factors(a, &y, &us, &right),
        right_minimal: is_right_minimal(a, &y, &us, &right),
        cone_matches: single(&cone, lower),
        cocone_matches: middle == right_middle && single(&cocone, upper),
        middle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::silting::tests::{s1_id, session};
    use crate::silting::{regular_object, shifted_regular_object};

    #[test]
    fn one_vertex_exchange() {
        let s = session("one_vertex");
        let m = mutate(&s, &regular_object(&s), 0).unwrap();
        assert_eq!(m.object, shifted_regular_object(&s));
        assert_eq!(m.direction, Direction::Left);
        assert!(m.certificate.middle.is_empty());
        let back = mutate(&s, &m.object, 0).unwrap();
        assert_eq!(back.object, regular_object(&s));
        assert_eq!(back.direction, Direction::Right);
    }

    #[test]
    fn a2_mutation_at_p2() {
        let s = session("a2");
        let t = regular_object(&s);
        let m = mutate(&s, &t, 1).unwrap();
        assert_eq!(m.direction, Direction::Left);
        assert_eq!(m.object, SiltingObject::new([s.projective_id(0), s1_id(&s)]));
        assert_eq!(m.certificate.middle, vec![s.projective_id(0)]);
        let pos = m.object.summands().iter().position(|&id| id == m.added).unwrap();
        assert_eq!(mutate(&s, &m.object, pos).unwrap().object, t);
    }

    #[test]
    fn index_out_of_range() {
        let s = session("a2");
        assert_eq!(mutate(&s, &regular_object(&s), 2), Err(Error::SummandMissing(2)));
    }
}
