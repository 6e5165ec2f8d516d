//! Experimental exploration of silting objects concentrated in degrees
//! `[1 - n, 0]`, by iterated irreducible mutation starting from `A`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::complexes::{left_approx, right_approx, ProjComplex};
use crate::session::Session;
use crate::{Error, Result};

use super::{regular_object, SiltingObject};

/// Irreducible mutation of `t` at its `i`-th summand, computed directly from
/// one minimal approximation. Returns `None` when the result leaves degrees
/// `[1 - terms, 0]`.
pub fn mutate_direct(s: &Session, t: &SiltingObject, i: usize, left: bool, terms: usize) -> Result<Option<SiltingObject>> {
    let a = s.algebra();
    let u = t.without(i)?;
    let us = u.complexes(s);
    let x = s.complex(t.summands()[i]);
    let y = if left {
        let ap = left_approx(a, &x, &us);
        ProjComplex::cone(a, &ap.map, &x, &ap.object)
    } else {
        let ap = right_approx(a, &x, &us);
        ProjComplex::cone(a, &ap.map, &ap.object, &x).shift(a, -1)
    };
    if !y.within(1 - terms as i32, 0) {
        return Ok(None);
    }
    let parts = s.decompose(&y)?;
    match parts.as_slice() {
        [(id, 1)] => Ok(Some(u.union(&SiltingObject::new([*id])))),
        _ => Err(Error::TheoremViolation("mutation produced a decomposable summand".into())),
    }
}

/// Necessary silting test for `terms`-term objects: every summand lies in
/// the degree window, `Hom(T, T[k]) = 0` for `0 < k < terms`, and there are
/// `|A|` summands.
pub fn is_nterm_silting(s: &Session, t: &SiltingObject, terms: usize) -> bool {
    t.len() == s.rank()
        && t.summands().iter().all(|&id| s.complex(id).within(1 - terms as i32, 0))
        && super::self_orthogonal(s, t, terms as i32 - 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct NTermExploration {
    pub terms: usize,
    pub objects: Vec<SiltingObject>,
    /// The frontier emptied before the node bound was reached.
    pub closed: bool,
    /// Every object passed [`is_nterm_silting`].
    pub all_pass_filter: bool,
    pub experimental: bool,
}

/// Breadth-first closure of `A` under left and right mutation inside the
/// window `[1 - terms, 0]`.
pub fn explore_nterm(s: &Session, terms: usize, max_nodes: usize) -> Result<NTermExploration> {
    let start = regular_object(s);
    let mut seen: BTreeSet<SiltingObject> = BTreeSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    let mut closed = true;
    'bfs: while let Some(t) = queue.pop_front() {
        for i in 0..t.len() {
            for left in [true, false] {
                let Some(next) = mutate_direct(s, &t, i, left, terms)? else { continue };
                if seen.insert(next.clone()) {
                    if seen.len() > max_nodes {
                        closed = false;
                        break 'bfs;
                    }
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let all_pass_filter = order.iter().all(|t| is_nterm_silting(s, t, terms));
    Ok(NTermExploration {
        terms,
        objects: order,
        closed,
        all_pass_filter,
        experimental: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::silting::tests::session;

    #[test]
    fn two_term_window_recovers_the_pentagon() {
        let s = session("a2");
        let e = explore_nterm(&s, 2, 100).unwrap();
        assert!(e.closed && e.all_pass_filter);
        assert_eq!(e.objects.len(), 5);
    }

    #[test]
    fn one_vertex_three_terms() {
        // P, P[1], P[2]
        let s = session("one_vertex");
        let e = explore_nterm(&s, 3, 100).unwrap();
        assert!(e.closed && e.all_pass_filter);
        assert_eq!(e.objects.len(), 3);
    }

    /// Silting objects of type `A_n` in `m + 1` terms are counted by the
    /// Fuss-Catalan numbers `binom((m+1)(n+1), n) / (n + 1)`.
    #[test]
    fn three_term_counts_are_fuss_catalan() {
        fn binom(n: u64, k: u64) -> u64 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for (name, n) in [("a2", 2), ("a3", 3)] {
            let s = session(name);
            let e = explore_nterm(&s, 3, 1000).unwrap();
            assert!(e.closed && e.all_pass_filter);
            assert_eq!(e.objects.len() as u64, binom(3 * (n + 1), n) / (n + 1), "{name}");
        }
    }

    #[test]
    fn node_bound_truncates() {
        let s = session("a2");
        let e = explore_nterm(&s, 3, 3).unwrap();
        assert!(!e.closed);
    }
}
