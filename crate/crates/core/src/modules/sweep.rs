//! Brute-force search for indecomposable modules: every representation whose
//! generator matrices have entries in {0, 1}, level by level in total
//! dimension.

use serde::Serialize;

use crate::algebra::Algebra;
use crate::exactlinalg::Matrix;

use super::decompose::is_indecomposable;
use super::registry::ModuleRegistry;
use super::rep::Representation;

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    /// Largest total dimension examined.
    pub dim_bound: usize,
    /// Dimension vectors needing more than `2^max_bits` assignments are
    /// skipped (and the sweep is then reported as truncated).
    pub max_bits: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            dim_bound: 6,
            max_bits: 16,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SweepReport {
    /// Registry IDs of the indecomposables found, in discovery order.
    pub ids: Vec<usize>,
    /// New indecomposables per total dimension, starting at dimension 1.
    pub new_per_level: Vec<usize>,
    /// Dimension vectors skipped because of `max_bits`.
    pub skipped_dimvecs: usize,
    /// True when two consecutive levels produced nothing new and nothing
    /// was skipped below them.
    pub stabilised: bool,
}

fn dim_vectors(n: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, &mut Vec::new(), &mut out);
    out
}

/// Whether the support of `dims` is connected through nonzero generators.
fn support_connected(a: &Algebra, dims: &[usize], mats: &[Matrix]) -> bool {
    let support: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 0).collect();
    let Some(&start) = support.first() else {
        return false;
    };
    let mut seen = vec![false; dims.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for (k, &g) in a.generators().iter().enumerate() {
            if mats[k].is_zero() {
                continue;
            }
            let (s, t) = (a.basis()[g].source, a.basis()[g].target);
            for (x, y) in [(s, t), (t, s)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    support.iter().all(|&v| seen[v])
}

pub fn sweep_indecomposables(a: &Algebra, reg: &ModuleRegistry, cfg: SweepConfig) -> SweepReport {
    let f = a.field();
    let n = a.num_vertices();
    let gens: Vec<(usize, usize)> = a
        .generators()
        .iter()
        .map(|&g| (a.basis()[g].source, a.basis()[g].target))
        .collect();
    let mut report = SweepReport {
        ids: Vec::new(),
        new_per_level: Vec::new(),
        skipped_dimvecs: 0,
        stabilised: false,
    };
    let mut seen = std::collections::HashSet::new();
    let mut quiet = 0;
    for total in 1..=cfg.dim_bound {
        let mut new = 0;
        let mut skipped_here = 0;
        for dims in dim_vectors(n, total) {
            let bits: usize = gens.iter().map(|&(s, t)| dims[s] * dims[t]).sum();
            if bits > cfg.max_bits {
                skipped_here += 1;
                continue;
            }
            for mask in 0u64..(1u64 << bits) {
                let mut bit = 0;
                let mats: Vec<Matrix> = gens
                    .iter()
                    .map(|&(s, t)| {
                        let m = Matrix::from_fn(f, dims[t], dims[s], |i, j| {
                            ((mask >> (bit + i * dims[s] + j)) & 1) as u32
                        });
                        bit += dims[s] * dims[t];
                        m
                    })
                    .collect();
                if !support_connected(a, &dims, &mats) {
                    continue;
                }
                let rep = Representation::new(dims.clone(), mats);
                if !rep.is_valid(a) || !is_indecomposable(a, &rep) {
                    continue;
                }
                let (id, _) = reg.get_or_insert(a, &rep);
                if seen.insert(id) {
                    report.ids.push(id);
                    new += 1;
                }
            }
        }
        report.skipped_dimvecs += skipped_here;
        report.new_per_level.push(new);
        if skipped_here > 0 {
            quiet = 0;
            continue;
        }
        quiet = if new == 0 { quiet + 1 } else { 0 };
        if quiet >= 2 && report.skipped_dimvecs == 0 {
            report.stabilised = true;
            break;
        }
    }
    report
}
