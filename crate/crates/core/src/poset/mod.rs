//! The Hasse quiver of two-term silting objects: exploration by mutation,
//! intervals, regularity, maximal green sequences and torsion triples.

mod export;
mod green;
mod torsion;

pub use export::{hasse_dot, hasse_json, object_json, HasseJson, ObjectJson, StauJson};
pub use green::{mgs_search, GreenSearch};
pub use torsion::{emit_torsion_triple, TorsionTriple};

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::session::Session;
use crate::silting::{leq, mutate, Direction, SiltingObject};
use crate::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct ExploreBounds {
    pub max_nodes: usize,
    /// Keep only objects `T` with `lower ≤ T ≤ upper`.
    pub interval: Option<(SiltingObject, SiltingObject)>,
}

/// An arrow `source -> target` of the Hasse quiver (`source > target`),
/// obtained by exchanging `removed` for `added`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HasseEdge {
    pub source: usize,
    pub target: usize,
    pub removed: usize,
    pub added: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HassePoset {
    pub vertices: Vec<SiltingObject>,
    pub edges: Vec<HasseEdge>,
    pub truncated: bool,
}

impl HassePoset {
    pub fn index_of(&self, t: &SiltingObject) -> Option<usize> {
        self.vertices.iter().position(|v| v == t)
    }

    /// Vertex set and edge set, independent of discovery order.
    pub fn canonical(&self) -> (BTreeSet<SiltingObject>, BTreeSet<(SiltingObject, SiltingObject)>) {
        let vs = self.vertices.iter().cloned().collect();
        let es = self
            .edges
            .iter()
            .map(|e| (self.vertices[e.source].clone(), self.vertices[e.target].clone()))
            .collect();
        (vs, es)
    }

    /// Vertices with no arrow coming in from a larger vertex.
    pub fn maxima(&self) -> Vec<usize> {
        let has_in: BTreeSet<usize> = self.edges.iter().map(|e| e.target).collect();
        (0..self.vertices.len()).filter(|v| !has_in.contains(v)).collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        let has_out: BTreeSet<usize> = self.edges.iter().map(|e| e.source).collect();
        (0..self.vertices.len()).filter(|v| !has_out.contains(v)).collect()
    }

    /// Outgoing arrows of `v`, by ascending removed summand.
    pub fn out_edges(&self, v: usize) -> Vec<HasseEdge> {
        let mut out: Vec<HasseEdge> = self.edges.iter().filter(|e| e.source == v).copied().collect();
        out.sort_by_key(|e| (e.removed, e.target));
        out
    }

    fn require_complete(&self) -> Result<()> {
        if self.truncated {
            Err(Error::Truncated("the poset was not explored completely".into()))
        } else {
            Ok(())
        }
    }
}

/// Breadth-first closure of `start` under mutation at every summand.
pub fn explore(s: &Session, start: &SiltingObject, bounds: &ExploreBounds) -> Result<HassePoset> {
    let inside = |t: &SiltingObject| match &bounds.interval {
        Some((lo, hi)) => leq(s, lo, t) && leq(s, t, hi),
        None => true,
    };
    if !inside(start) {
        return Err(Error::Invalid("start object lies outside the interval".into()));
    }
    let mut vertices = vec![start.clone()];
    let mut index: HashMap<SiltingObject, usize> = HashMap::from([(start.clone(), 0)]);
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    while let Some(v) = queue.pop_front() {
        let t = vertices[v].clone();
        for i in 0..t.len() {
            let m = mutate(s, &t, i)?;
            if !inside(&m.object) {
                continue;
            }
            let w = match index.get(&m.object) {
                Some(&w) => w,
                None if vertices.len() < bounds.max_nodes => {
                    vertices.push(m.object.clone());
                    index.insert(m.object.clone(), vertices.len() - 1);
                    queue.push_back(vertices.len() - 1);
                    vertices.len() - 1
                }
                None => {
                    truncated = true;
                    continue;
                }
            };
            edges.insert(match m.direction {
                Direction::Left => HasseEdge {
                    source: v,
                    target: w,
                    removed: m.removed,
                    added: m.added,
                },
                Direction::Right => HasseEdge {
                    source: w,
                    target: v,
                    removed: m.added,
                    added: m.removed,
                },
            });
        }
    }
    Ok(HassePoset {
        vertices,
        edges: edges.into_iter().collect(),
        truncated,
    })
}

/// The induced subposet on `{T : lower ≤ T ≤ upper}`. Intervals are convex,
/// so the restricted arrows are exactly its covers.
pub fn interval(s: &Session, h: &HassePoset, lower: &SiltingObject, upper: &SiltingObject) -> Result<HassePoset> {
    h.require_complete()?;
    let keep: Vec<usize> = (0..h.vertices.len())
        .filter(|&v| leq(s, lower, &h.vertices[v]) && leq(s, &h.vertices[v], upper))
        .collect();
    let renumber: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = h
        .edges
        .iter()
        .filter_map(|e| {
            Some(HasseEdge {
                source: *renumber.get(&e.source)?,
                target: *renumber.get(&e.target)?,
                ..*e
            })
        })
        .collect();
    Ok(HassePoset {
        vertices: keep.iter().map(|&v| h.vertices[v].clone()).collect(),
        edges,
        truncated: false,
    })
}

/// Number of arrows at each vertex, in either direction.
pub fn regularity(h: &HassePoset) -> Result<Vec<usize>> {
    h.require_complete()?;
    let mut deg = vec![0; h.vertices.len()];
    for e in &h.edges {
        deg[e.source] += 1;
        deg[e.target] += 1;
    }
    Ok(deg)
}

/// Arrows `S -> T` for which some vertex `V` has `T < V < S`, or which do
/// not decrease. Empty on a correct complete poset.
pub fn non_cover_edges(s: &Session, h: &HassePoset) -> Vec<HasseEdge> {
    h.edges
        .iter()
        .filter(|e| {
            let (hi, lo) = (&h.vertices[e.source], &h.vertices[e.target]);
            !leq(s, lo, hi)
                || leq(s, hi, lo)
                || h.vertices
                    .iter()
                    .any(|v| v != hi && v != lo && leq(s, lo, v) && leq(s, v, hi))
        })
        .copied()
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::silting::tests::session;
    use crate::silting::{regular_object, shifted_regular_object};

    pub(crate) fn full(s: &Session) -> HassePoset {
        let bounds = ExploreBounds {
            max_nodes: 1000,
            interval: None,
        };
        explore(s, &regular_object(s), &bounds).unwrap()
    }

    #[test]
    fn one_vertex_and_pentagon() {
        let s = session("one_vertex");
        let h = full(&s);
        assert_eq!((h.vertices.len(), h.edges.len()), (2, 1));
        let s = session("a2");
        let h = full(&s);
        assert!(!h.truncated);
        assert_eq!((h.vertices.len(), h.edges.len()), (5, 5));
        assert_eq!(regularity(&h).unwrap(), vec![2; 5]);
        assert!(non_cover_edges(&s, &h).is_empty());
        assert_eq!(h.maxima(), vec![h.index_of(&regular_object(&s)).unwrap()]);
        assert_eq!(h.minima(), vec![h.index_of(&shifted_regular_object(&s)).unwrap()]);
    }

    #[test]
    fn both_ends_give_the_same_poset() {
        let s = session("a3");
        let top = full(&s);
        let bounds = ExploreBounds {
            max_nodes: 1000,
            interval: None,
        };
        let bottom = explore(&s, &shifted_regular_object(&s), &bounds).unwrap();
        assert_eq!(top.vertices.len(), 14);
        assert_eq!(top.canonical(), bottom.canonical());
    }

    #[test]
    fn intervals() {
        let s = session("a2");
        let h = full(&s);
        let whole = interval(&s, &h, &shifted_regular_object(&s), &regular_object(&s)).unwrap();
        assert_eq!(whole.canonical(), h.canonical());
        let point = interval(&s, &h, &regular_object(&s), &regular_object(&s)).unwrap();
        assert_eq!(point.vertices.len(), 1);
        assert_eq!(regularity(&point).unwrap(), vec![0]);
    }

    #[test]
    fn node_bound_truncates() {
        let s = session("a2");
        let bounds = ExploreBounds {
            max_nodes: 3,
            interval: None,
        };
        let h = explore(&s, &regular_object(&s), &bounds).unwrap();
        assert!(h.truncated);
        assert_eq!(regularity(&h), Err(Error::Truncated("the poset was not explored completely".into())));
    }
}
