use serde::Serialize;

use crate::session::Session;
use crate::silting::{leq, SiltingObject};

use super::HassePoset;

#[derive(Clone, Debug, Serialize)]
pub struct GreenSearch {
    /// Each sequence lists silting objects from top to bottom.
    pub sequences: Vec<Vec<SiltingObject>>,
    /// The poset was truncated, so the list may be incomplete.
    pub truncated: bool,
}

impl GreenSearch {
    pub fn lengths(&self) -> Vec<usize> {
        self.sequences.iter().map(|q| q.len() - 1).collect()
    }
}

/// All paths of arrows from `top` to `bottom` with at most `max_len` steps,
/// found depth first with arrows taken by ascending removed summand. Every
/// sequence is re-checked to be strictly decreasing.
pub fn mgs_search(s: &Session, h: &HassePoset, top: usize, bottom: usize, max_len: usize) -> GreenSearch {
    let mut sequences = Vec::new();
    let mut path = vec![top];
    dfs(h, bottom, max_len, &mut path, &mut sequences);
    let sequences: Vec<Vec<SiltingObject>> = sequences
        .into_iter()
        .map(|p: Vec<usize>| p.into_iter().map(|v| h.vertices[v].clone()).collect())
        .collect();
    for q in &sequences {
        for w in q.windows(2) {
            assert!(
                leq(s, &w[1], &w[0]) && w[0] != w[1],
                "green sequence step is not decreasing"
            );
        }
    }
    GreenSearch {
        sequences,
        truncated: h.truncated,
    }
}

fn dfs(h: &HassePoset, bottom: usize, max_len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let v = *path.last().unwrap();
    if v == bottom {
        out.push(path.clone());
        return;
    }
    if path.len() > max_len {
        return;
    }
    for e in h.out_edges(v) {
        path.push(e.target);
        dfs(h, bottom, max_len, path, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::full;
    use crate::silting::tests::session;

    #[test]
    fn pentagon_has_two_green_sequences() {
        let s = session("a2");
        let h = full(&s);
        let g = mgs_search(&s, &h, h.maxima()[0], h.minima()[0], 10);
        let mut lengths = g.lengths();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![2, 3]);
        assert!(!g.truncated);
        // a bound below the longer side keeps only the short one
        assert_eq!(mgs_search(&s, &h, h.maxima()[0], h.minima()[0], 2).lengths(), vec![2]);
    }

    #[test]
    fn one_vertex() {
        let s = session("one_vertex");
        let h = full(&s);
        assert_eq!(mgs_search(&s, &h, 0, 1, 5).lengths(), vec![1]);
    }
}
