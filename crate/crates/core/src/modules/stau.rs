//! τ-rigid and support τ-tilting pairs, their brute-force enumeration and
//! their partial order.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::Result;

use super::hom::hom_dim;
use super::present::tau;
use super::registry::ModuleRegistry;
use super::rep::Representation;
use super::sweep::{sweep_indecomposables, SweepConfig, SweepReport};

/// A basic support τ-tilting (or τ-rigid) pair: registry IDs of the
/// indecomposable summands of `M` and the vertices of the projective part.
/// Both lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StauPair {
    pub modules: Vec<usize>,
    pub projectives: Vec<usize>,
}

/// One indecomposable summand of a pair: a module or a shifted projective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairSummand {
    Module(usize),
    Projective(usize),
}

impl StauPair {
    pub fn new(mut modules: Vec<usize>, mut projectives: Vec<usize>) -> Self {
        modules.sort_unstable();
        projectives.sort_unstable();
        StauPair { modules, projectives }
    }

    pub fn len(&self) -> usize {
        self.modules.len() + self.projectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn summands(&self) -> BTreeSet<PairSummand> {
        self.modules
            .iter()
            .map(|&m| PairSummand::Module(m))
            .chain(self.projectives.iter().map(|&q| PairSummand::Projective(q)))
            .collect()
    }

    /// The module part as a single representation.
    pub fn module(&self, a: &Algebra, reg: &ModuleRegistry) -> Representation {
        self.modules
            .iter()
            .fold(Representation::zero(a), |acc, &id| acc.direct_sum(&reg.get(id), a))
    }
}

pub fn is_tau_rigid(a: &Algebra, m: &Representation) -> bool {
    hom_dim(a, m, &tau(a, m)) == 0
}

/// `M` τ-rigid and `Hom(P_q, M) = M_q = 0` for every `q`.
pub fn is_tau_rigid_pair(a: &Algebra, m: &Representation, q: &[usize]) -> bool {
    q.iter().all(|&v| m.dims()[v] == 0) && is_tau_rigid(a, m)
}

/// Whether `(M, ⊕ P_q)` is a support τ-tilting pair: τ-rigid with as many
/// distinct indecomposable summands as the algebra has vertices.
pub fn is_stau_pair(a: &Algebra, m: &Representation, q: &[usize], seed: u64) -> Result<bool> {
    if !is_tau_rigid_pair(a, m, q) {
        return Ok(false);
    }
    let local = ModuleRegistry::new();
    let distinct_m = local.decompose(a, m, seed)?.len();
    let distinct_q: BTreeSet<usize> = q.iter().copied().collect();
    Ok(distinct_m + distinct_q.len() == a.num_vertices())
}

/// τ-translates of registered indecomposables, computed on demand.
#[derive(Default)]
pub struct TauCache {
    taus: HashMap<usize, Representation>,
}

impl TauCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, a: &Algebra, reg: &ModuleRegistry, id: usize) -> &Representation {
        self.taus.entry(id).or_insert_with(|| tau(a, &reg.get(id)))
    }

    /// `τ` of the module part of a pair.
    pub fn of_pair(&mut self, a: &Algebra, reg: &ModuleRegistry, p: &StauPair) -> Representation {
        p.modules
            .iter()
            .fold(Representation::zero(a), |acc, &id| acc.direct_sum(self.get(a, reg, id), a))
    }
}

/// `x ≤ y` in the order `Fac M_x ⊆ Fac M_y`, tested as
/// `Hom(M_x, τ M_y) = 0` and `Hom(P_y, M_x) = 0`.
pub fn stau_leq(a: &Algebra, reg: &ModuleRegistry, cache: &mut TauCache, x: &StauPair, y: &StauPair) -> bool {
    let mx = x.module(a, reg);
    if y.projectives.iter().any(|&q| mx.dims()[q] != 0) {
        return false;
    }
    let tau_y = cache.of_pair(a, reg, y);
    hom_dim(a, &mx, &tau_y) == 0
}

#[derive(Clone, Debug, Serialize)]
pub struct StauEnumeration {
    pub pairs: Vec<StauPair>,
    pub sweep: SweepReport,
    /// Registry IDs of the τ-rigid indecomposables found by the sweep.
    pub rigid: Vec<usize>,
    /// Every pair has exactly `n` neighbours sharing `n - 1` summands.
    pub exchange_regular: bool,
    pub exchange_connected: bool,
}

impl StauEnumeration {
    /// A connected `n`-regular exchange graph is closed under mutation, so
    /// it is the whole set of support τ-tilting pairs.
    pub fn is_complete(&self) -> bool {
        self.exchange_regular && self.exchange_connected
    }

    pub fn require_complete(&self) -> Result<&Self> {
        if self.is_complete() {
            Ok(self)
        } else {
            Err(crate::Error::Truncated(format!(
                "{} support τ-tilting pairs found but the exchange graph is not closed",
                self.pairs.len()
            )))
        }
    }
}

/// Neighbour lists of the exchange graph on `pairs` (pairs sharing all but
/// one summand).
pub fn exchange_graph(pairs: &[StauPair]) -> Vec<Vec<usize>> {
    let keys: Vec<BTreeSet<PairSummand>> = pairs.iter().map(StauPair::summands).collect();
    (0..pairs.len())
        .map(|i| {
            (0..pairs.len())
                .filter(|&j| {
                    j != i && keys[i].len() == keys[j].len() && keys[i].intersection(&keys[j]).count() + 1 == keys[i].len()
                })
                .collect()
        })
        .collect()
}

fn is_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Support τ-tilting pairs built from the indecomposables found by a
/// brute-force sweep.
pub fn enumerate_stau(a: &Algebra, reg: &ModuleRegistry, cfg: SweepConfig) -> StauEnumeration {
    let n = a.num_vertices();
    let sweep = sweep_indecomposables(a, reg, cfg);
    let mut ids: Vec<usize> = sweep.ids.clone();
    // indecomposables registered before the sweep are rediscovered as
    // existing entries, so collect everything in the registry
    ids.extend((0..reg.len()).filter(|i| !sweep.ids.contains(i)));
    ids.sort_unstable();
    let mods: Vec<Representation> = ids.iter().map(|&i| reg.get(i)).collect();
    let taus: Vec<Representation> = mods.iter().map(|m| tau(a, m)).collect();
    let rigid_idx: Vec<usize> = (0..ids.len())
        .filter(|&i| hom_dim(a, &mods[i], &taus[i]) == 0)
        .collect();
    let k = rigid_idx.len();
    let mut compatible = vec![vec![false; k]; k];
    for x in 0..k {
        for y in x + 1..k {
            let (i, j) = (rigid_idx[x], rigid_idx[y]);
            let ok = hom_dim(a, &mods[i], &taus[j]) == 0 && hom_dim(a, &mods[j], &taus[i]) == 0;
            compatible[x][y] = ok;
            compatible[y][x] = ok;
        }
    }

    let mut pairs = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    search(0, &mut chosen, &compatible, &mut |chosen| {
        let support: Vec<bool> = (0..n)
            .map(|v| chosen.iter().any(|&x| mods[rigid_idx[x]].dims()[v] != 0))
            .collect();
        let free: Vec<usize> = (0..n).filter(|&v| !support[v]).collect();
        if chosen.len() > n || chosen.len() + free.len() < n {
            return;
        }
        for qs in subsets(&free, n - chosen.len()) {
            pairs.push(StauPair::new(chosen.iter().map(|&x| ids[rigid_idx[x]]).collect(), qs));
        }
    });
    pairs.sort();
    let adj = exchange_graph(&pairs);
    StauEnumeration {
        exchange_regular: adj.iter().all(|nb| nb.len() == n),
        exchange_connected: is_connected(&adj),
        rigid: rigid_idx.iter().map(|&x| ids[x]).collect(),
        pairs,
        sweep,
    }
}

/// Calls `visit` on every clique of `compat` (as increasing index lists).
fn search(start: usize, chosen: &mut Vec<usize>, compat: &[Vec<bool>], visit: &mut impl FnMut(&[usize])) {
    visit(chosen);
    for x in start..compat.len() {
        if chosen.iter().all(|&y| compat[x][y]) {
            chosen.push(x);
            search(x + 1, chosen, compat, visit);
            chosen.pop();
        }
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    out.extend(subsets(&items[1..], k));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{indec_projective, simple};
    use crate::algebra::parse_algebra_file;
    use crate::testing::corpus_algebra;

    fn count(a: &Algebra) -> (usize, bool) {
        let e = enumerate_stau(a, &ModuleRegistry::new(), SweepConfig::default());
        (e.pairs.len(), e.is_complete())
    }

    #[test]
    fn a2_has_five_pairs() {
        let a = corpus_algebra("a2");
        let reg = ModuleRegistry::new();
        let e = enumerate_stau(&a, &reg, SweepConfig::default());
        assert_eq!(e.pairs.len(), 5);
        assert!(e.is_complete());
        let p1 = reg.find(&a, &indec_projective(&a, 0)).unwrap();
        let s1 = reg.find(&a, &simple(&a, 0)).unwrap();
        let p2 = reg.find(&a, &indec_projective(&a, 1)).unwrap();
        let expect: BTreeSet<StauPair> = [
            StauPair::new(vec![p1, p2], vec![]),
            StauPair::new(vec![p1, s1], vec![]),
            StauPair::new(vec![s1], vec![1]),
            StauPair::new(vec![p2], vec![0]),
            StauPair::new(vec![], vec![0, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(e.pairs.iter().cloned().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn a3_has_fourteen_pairs() {
        assert_eq!(count(&corpus_algebra("a3")), (14, true));
        assert_eq!(count(&corpus_algebra("one_vertex")), (2, true));
    }

    #[test]
    fn semisimple_pairs() {
        for n in 1..=3 {
            let verts: Vec<String> = (1..=n).map(|i| format!("\"{i}\"")).collect();
            let text = format!("vertices = [{}]\n", verts.join(", "));
            let a = Algebra::from_spec(&parse_algebra_file(&text, "ss", None).unwrap()).unwrap();
            assert_eq!(count(&a), (1 << n, true));
        }
    }

    #[test]
    fn pair_predicates() {
        let a = corpus_algebra("a2");
        let (s1, p2) = (simple(&a, 0), indec_projective(&a, 1));
        assert!(is_stau_pair(&a, &s1, &[1], 0).unwrap());
        assert!(!is_stau_pair(&a, &s1, &[], 0).unwrap());
        assert!(!is_stau_pair(&a, &s1, &[0], 0).unwrap());
        assert!(!is_tau_rigid(&a, &s1.direct_sum(&p2, &a)));
        assert!(is_stau_pair(&a, &Representation::zero(&a), &[0, 1], 0).unwrap());
    }

    #[test]
    fn order_on_a2_is_a_pentagon() {
        let a = corpus_algebra("a2");
        let reg = ModuleRegistry::new();
        let e = enumerate_stau(&a, &reg, SweepConfig::default());
        let mut cache = TauCache::new();
        let top = e.pairs.iter().find(|p| p.module(&a, &reg).dims() == [1, 2]).unwrap();
        let bottom = e.pairs.iter().find(|p| p.modules.is_empty()).unwrap();
        let mut related = 0;
        for x in &e.pairs {
            assert!(stau_leq(&a, &reg, &mut cache, x, top));
            assert!(stau_leq(&a, &reg, &mut cache, bottom, x));
            for y in &e.pairs {
                if x != y && stau_leq(&a, &reg, &mut cache, x, y) {
                    related += 1;
                    assert!(!stau_leq(&a, &reg, &mut cache, y, x));
                }
            }
        }
        // pentagon: 5 covers and 3 composite relations
        assert_eq!(related, 8);
    }
}
