//! Verification suites. Each suite checks one correspondence of two-term
//! silting theory on the algebra of a session and reports pass, fail or
//! undecided together with witnesses. Every registry ID that a report
//! mentions is described in its `complexes` table, so a report can be
//! re-checked by loading those complexes back.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::complexes::{left_approx, ComplexJson, ProjComplex};
use crate::modules::{
    ar_dual_dim, enumerate_stau, ext1_dim, stau_leq, sweep_indecomposables, StauEnumeration, StauPair, SweepConfig,
    TauCache,
};
use crate::poset::{explore, interval, mgs_search, non_cover_edges, regularity, ExploreBounds, HassePoset};
use crate::reduction::{build_context, verify_square, ContextSummary, SquareReport};
use crate::session::Session;
use crate::silting::{
    bongartz, co_bongartz, explore_nterm, from_stau_pair, is_silting, leq, mutate, object_of_with, regular_object,
    shifted_regular_object, to_stau_pair, SiltingObject,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bijection,
    Interval,
    Mutation,
    Reduction,
    Square,
    Regularity,
    Mgs,
    Nterm,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Bijection,
        Suite::Interval,
        Suite::Mutation,
        Suite::Reduction,
        Suite::Square,
        Suite::Regularity,
        Suite::Mgs,
        Suite::Nterm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bijection => "bijection",
            Suite::Interval => "interval",
            Suite::Mutation => "mutation",
            Suite::Reduction => "reduction",
            Suite::Square => "square",
            Suite::Regularity => "regularity",
            Suite::Mgs => "mgs",
            Suite::Nterm => "nterm",
        }
    }

    /// A suite name, or `all`.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![name.parse()?])
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Undecided,
    Fail,
}

impl Outcome {
    /// The worse of two outcomes: failure beats undecided beats pass.
    pub fn and(self, other: Outcome) -> Outcome {
        self.max(other)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Undecided => 2,
            Outcome::Fail => 1,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Undecided => "undecided",
            Outcome::Fail => "fail",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Node bound for the two-term exploration, and for each quotient algebra.
    pub max_nodes: usize,
    /// Longest green sequence listed.
    pub max_depth: usize,
    pub sweep: SweepConfig,
    /// Node bound for the three-term exploration.
    pub nterm_max_nodes: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_nodes: 100,
            max_depth: 10,
            sweep: SweepConfig::default(),
            nterm_max_nodes: 10_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub outcome: Outcome,
    /// The statement is only checked as a necessary condition.
    pub experimental: bool,
    /// Number of individual instances checked.
    pub checked: usize,
    /// Instances that could not be decided within the bounds.
    pub undecided: usize,
    pub note: Option<String>,
    pub details: Value,
    pub violations: Vec<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub fingerprint: String,
    pub prime: u32,
    pub seed: u64,
    pub outcome: Outcome,
    pub suites: Vec<SuiteReport>,
    /// Defining data of every registered complex.
    pub complexes: BTreeMap<usize, ComplexJson>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn suite(&self, s: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|r| r.suite == s)
    }
}

/// Counts instances and collects witnesses of failures.
#[derive(Default)]
struct Tally {
    checked: usize,
    undecided: usize,
    violations: Vec<Value>,
    note: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.violations.push(witness());
        }
    }

    fn undecided(&mut self, why: &str) {
        self.undecided += 1;
        self.note.get_or_insert_with(|| why.to_string());
    }

    fn report(self, suite: Suite, details: Value) -> SuiteReport {
        let outcome = if !self.violations.is_empty() {
            Outcome::Fail
        } else if self.undecided > 0 {
            Outcome::Undecided
        } else {
            Outcome::Pass
        };
        SuiteReport {
            suite,
            outcome,
            experimental: suite == Suite::Nterm,
            checked: self.checked,
            undecided: self.undecided,
            note: self.note,
            details,
            violations: self.violations,
        }
    }
}

fn ids(t: &SiltingObject) -> Vec<usize> {
    t.summands().to_vec()
}

/// Auslander-Reiten duality over the swept indecomposables:
/// `dim Ext^1(M, N)` against `dim Hom(N, τM)` modulo injective-factoring maps.
#[derive(Clone, Debug, Serialize)]
pub struct ArDualityReport {
    pub modules: usize,
    pub pairs: usize,
    pub sweep_stabilised: bool,
    /// `(M, N, dim Ext^1(M, N), dual dimension)` for each disagreement.
    pub violations: Vec<(usize, usize, usize, usize)>,
}

pub fn ar_duality(s: &Session, cfg: SweepConfig) -> ArDualityReport {
    let a = s.algebra();
    let sweep = sweep_indecomposables(a, s.modules(), cfg);
    let mods: Vec<_> = sweep.ids.iter().map(|&id| (id, s.modules().get(id))).collect();
    let mut violations = Vec::new();
    for (i, m) in &mods {
        for (j, n) in &mods {
            let (e, d) = (ext1_dim(a, m, n), ar_dual_dim(a, m, n));
            if e != d {
                violations.push((*i, *j, e, d));
            }
        }
    }
    ArDualityReport {
        modules: mods.len(),
        pairs: mods.len() * mods.len(),
        sweep_stabilised: sweep.stabilised,
        violations,
    }
}

/// Whether the arrows of `h` lead from `from` to `to`.
fn reaches(h: &HassePoset, from: usize, to: usize) -> bool {
    let mut seen = vec![false; h.vertices.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            return true;
        }
        for e in h.edges.iter().filter(|e| e.source == v) {
            if !seen[e.target] {
                seen[e.target] = true;
                queue.push_back(e.target);
            }
        }
    }
    false
}

/// Whether the algebra of `s` has a maximal green sequence, decided on its
/// own two-term silting poset. `None` when that poset is truncated.
fn has_green_sequence(s: &Session, max_nodes: usize) -> Result<Option<bool>> {
    let bounds = ExploreBounds {
        max_nodes,
        interval: None,
    };
    let h = explore(s, &regular_object(s), &bounds)?;
    match h.index_of(&shifted_regular_object(s)) {
        Some(bottom) => Ok(Some(reaches(&h, 0, bottom))),
        None if h.truncated => Ok(None),
        None => Ok(Some(false)),
    }
}

/// `μ^L_X(N)` for the summands `X` of `n` selected by `mask`: `N_X` together
/// with the cones of minimal left `add N_X`-approximations of the summands
/// of `X`. `None` when a cone leaves degrees `-1` and `0`.
fn left_mutation(s: &Session, n: &SiltingObject, mask: usize) -> Result<Option<SiltingObject>> {
    let a = s.algebra();
    let keep: Vec<usize> = (0..n.len()).filter(|i| mask >> i & 1 == 0).map(|i| n.summands()[i]).collect();
    let u = SiltingObject::new(keep);
    let us = u.complexes(s);
    let mut out = u.clone();
    for i in (0..n.len()).filter(|i| mask >> i & 1 == 1) {
        let x = s.complex(n.summands()[i]);
        let ap = left_approx(a, &x, &us);
        let y = ProjComplex::cone(a, &ap.map, &x, &ap.object);
        if !y.within(-1, 0) {
            return Ok(None);
        }
        out = out.union(&object_of_with(s, &y, &us)?);
    }
    Ok(Some(out))
}

/// One silting reduction context and the results computed from it.
struct ContextCheck {
    summary: ContextSummary,
    square: SquareReport,
    /// Arrows of the two-term poset lead from the Bongartz to the
    /// co-Bongartz completion.
    path: bool,
    /// The quotient algebra has a maximal green sequence; `None` when its
    /// poset is truncated.
    b_green: Option<bool>,
}

/// Runs suites on one session, sharing the exploration and the reduction
/// contexts between them.
pub struct Verifier<'s> {
    s: &'s Session,
    cfg: VerifyConfig,
    poset: OnceCell<Result<HassePoset>>,
    stau: OnceCell<StauEnumeration>,
    contexts: OnceCell<Result<Vec<(SiltingObject, Result<ContextCheck>)>>>,
}

impl<'s> Verifier<'s> {
    pub fn new(s: &'s Session, cfg: VerifyConfig) -> Self {
        Verifier {
            s,
            cfg,
            poset: OnceCell::new(),
            stau: OnceCell::new(),
            contexts: OnceCell::new(),
        }
    }

    /// The two-term silting poset explored from `A`.
    pub fn poset(&self) -> Result<&HassePoset> {
        let bounds = ExploreBounds {
            max_nodes: self.cfg.max_nodes,
            interval: None,
        };
        self.poset
            .get_or_init(|| explore(self.s, &regular_object(self.s), &bounds))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn complete_poset(&self) -> Result<&HassePoset> {
        let h = self.poset()?;
        if h.truncated {
            Err(Error::Truncated(format!(
                "two-term exploration stopped at {} objects",
                self.cfg.max_nodes
            )))
        } else {
            Ok(h)
        }
    }

    /// Support τ-tilting pairs by brute-force module enumeration.
    pub fn stau(&self) -> &StauEnumeration {
        self.stau
            .get_or_init(|| enumerate_stau(self.s.algebra(), self.s.modules(), self.cfg.sweep))
    }

    /// Every presilting non-silting object, including zero, as a proper
    /// subset of the summands of a silting object of the complete poset.
    fn presilting(&self) -> Result<BTreeSet<SiltingObject>> {
        let h = self.complete_poset()?;
        let mut out = BTreeSet::new();
        for t in &h.vertices {
            let n = t.len();
            for mask in 0..(1usize << n) - 1 {
                out.insert(SiltingObject::new(
                    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| t.summands()[i]),
                ));
            }
        }
        Ok(out)
    }

    fn silt_u(h: &HassePoset, u: &SiltingObject) -> Vec<SiltingObject> {
        h.vertices.iter().filter(|t| t.contains_all(u)).cloned().collect()
    }

    fn contexts(&self) -> Result<&[(SiltingObject, Result<ContextCheck>)]> {
        let computed = self.contexts.get_or_init(|| {
            let h = self.complete_poset()?;
            let mut out = Vec::new();
            for u in self.presilting()?.into_iter().filter(|u| !u.is_empty()) {
                let check = self.context_check(h, &u);
                out.push((u, check));
            }
            Ok(out)
        });
        computed.as_deref().map_err(Clone::clone)
    }

    fn context_check(&self, h: &HassePoset, u: &SiltingObject) -> Result<ContextCheck> {
        let s = self.s;
        let ctx = build_context(s, u)?;
        let square = verify_square(s, &ctx, &Self::silt_u(h, u), self.cfg.sweep)?;
        let path = match (h.index_of(&ctx.n), h.index_of(&ctx.m)) {
            (Some(top), Some(bottom)) => reaches(h, top, bottom),
            _ => false,
        };
        let quotient = Session::from_algebra(ctx.b.clone(), s.seed());
        let b_green = has_green_sequence(&quotient, self.cfg.max_nodes)?;
        Ok(ContextCheck {
            summary: ctx.summary(),
            square,
            path,
            b_green,
        })
    }

    pub fn run(&self, suites: &[Suite]) -> VerifyReport {
        let s = self.s;
        let a = s.algebra();
        let reports: Vec<SuiteReport> = suites.iter().map(|&x| self.run_suite(x)).collect();
        let outcome = reports.iter().fold(Outcome::Pass, |acc, r| acc.and(r.outcome));
        let complexes = (0..s.complexes().len())
            .map(|id| (id, ComplexJson::from_complex(a, &s.complex(id))))
            .collect();
        VerifyReport {
            algebra: a.name().to_string(),
            fingerprint: a.fingerprint(),
            prime: a.field().modulus(),
            seed: s.seed(),
            outcome,
            suites: reports,
            complexes,
        }
    }

    pub fn run_suite(&self, suite: Suite) -> SuiteReport {
        let result = match suite {
            Suite::Bijection => self.bijection(),
            Suite::Interval => self.interval(),
            Suite::Mutation => self.mutation(),
            Suite::Reduction => self.reduction(),
            Suite::Square => self.square(),
            Suite::Regularity => self.regularity(),
            Suite::Mgs => self.mgs(),
            Suite::Nterm => self.nterm(),
        };
        result.unwrap_or_else(|e| {
            let mut t = Tally::default();
            match e {
                Error::Truncated(_) => t.undecided(&e.to_string()),
                _ => t.check(false, || json!({ "error": e.to_string() })),
            }
            t.report(suite, Value::Null)
        })
    }

    /// Two-term silting objects against support τ-tilting pairs: equal sets
    /// under `H^0`, inverse maps, matching orders. Also checks that arrows
    /// are covers, that exploring from `A[1]` gives the same poset, and the
    /// Auslander-Reiten formula the τ-rigidity tests rely on.
    fn bijection(&self) -> Result<SuiteReport> {
        let s = self.s;
        let mut t = Tally::default();
        let ar = ar_duality(s, self.cfg.sweep);
        t.checked += ar.pairs;
        t.violations
            .extend(ar.violations.iter().map(|v| json!({ "ar_duality": v })));
        let h = self.poset()?;
        let e = self.stau();
        let mut details = json!({
            "two_term": h.vertices.len(),
            "two_term_complete": !h.truncated,
            "stau": e.pairs.len(),
            "stau_complete": e.is_complete(),
            "ar_duality_modules": ar.modules,
        });
        if h.truncated || !e.is_complete() {
            t.undecided("one of the two enumerations is incomplete");
            return Ok(t.report(Suite::Bijection, details));
        }

        let pairs: Vec<StauPair> = h.vertices.iter().map(|v| to_stau_pair(s, v)).collect::<Result<_>>()?;
        let images: BTreeSet<&StauPair> = pairs.iter().collect();
        let expected: BTreeSet<&StauPair> = e.pairs.iter().collect();
        t.check(images.len() == pairs.len(), || json!({ "injective": false }));
        t.check(images == expected, || {
            json!({
                "missing": expected.difference(&images).collect::<Vec<_>>(),
                "extra": images.difference(&expected).collect::<Vec<_>>(),
            })
        });
        for (v, p) in h.vertices.iter().zip(&pairs) {
            let back = from_stau_pair(s, p);
            t.check(back == *v, || json!({ "object": ids(v), "pair": p, "round_trip": ids(&back) }));
        }
        let mut cache = TauCache::new();
        let (a, reg) = (s.algebra(), s.modules());
        for (x, px) in h.vertices.iter().zip(&pairs) {
            for (y, py) in h.vertices.iter().zip(&pairs) {
                let (lhs, rhs) = (leq(s, x, y), stau_leq(a, reg, &mut cache, px, py));
                t.check(lhs == rhs, || json!({ "lower": ids(x), "upper": ids(y), "silting": lhs, "stau": rhs }));
            }
        }
        for edge in non_cover_edges(s, h) {
            t.check(false, || json!({ "not_a_cover": edge }));
        }
        let bounds = ExploreBounds {
            max_nodes: self.cfg.max_nodes,
            interval: None,
        };
        let from_bottom = explore(s, &shifted_regular_object(s), &bounds)?;
        t.check(from_bottom.canonical() == h.canonical(), || json!({ "explored_from_bottom": "differs" }));
        details["pairs"] = json!(h
            .vertices
            .iter()
            .zip(&pairs)
            .map(|(v, p)| json!({ "object": ids(v), "pair": p }))
            .collect::<Vec<_>>());
        Ok(t.report(Suite::Bijection, details))
    }

    /// For every presilting non-silting `U`, the interval between its two
    /// completions is the set of silting objects containing `U`, and the
    /// completions meet in `U`.
    fn interval(&self) -> Result<SuiteReport> {
        let s = self.s;
        let h = self.complete_poset()?;
        let mut t = Tally::default();
        let mut rows = Vec::new();
        for u in self.presilting()? {
            let (n, m) = (bongartz(s, &u)?, co_bongartz(s, &u)?);
            let filter: BTreeSet<SiltingObject> = Self::silt_u(h, &u).into_iter().collect();
            let between: BTreeSet<SiltingObject> = interval(s, h, &m, &n)?.vertices.into_iter().collect();
            t.check(filter == between && n.intersection(&m) == u, || {
                json!({
                    "U": ids(&u),
                    "bongartz": ids(&n),
                    "co_bongartz": ids(&m),
                    "interval": between.iter().map(ids).collect::<Vec<_>>(),
                    "containing_U": filter.iter().map(ids).collect::<Vec<_>>(),
                })
            });
            rows.push(json!({ "U": ids(&u), "bongartz": ids(&n), "co_bongartz": ids(&m), "size": filter.len() }));
        }
        Ok(t.report(Suite::Interval, json!({ "objects": rows })))
    }

    /// Every almost complete presilting object has exactly two completions,
    /// related by an exchange triangle whose maps are minimal approximations.
    fn mutation(&self) -> Result<SuiteReport> {
        let s = self.s;
        let h = self.complete_poset()?;
        let mut t = Tally::default();
        let mut rows = Vec::new();
        for u in self.presilting()?.into_iter().filter(|u| u.len() + 1 == s.rank()) {
            let completions = Self::silt_u(h, &u);
            if completions.len() != 2 {
                t.check(false, || {
                    json!({ "U": ids(&u), "completions": completions.iter().map(ids).collect::<Vec<_>>() })
                });
                continue;
            }
            let first = &completions[0];
            let i = (0..first.len())
                .find(|&i| !u.contains(first.summands()[i]))
                .expect("a completion has one more summand");
            match mutate(s, first, i) {
                Ok(m) => {
                    t.check(m.object == completions[1] && m.certificate.holds(), || {
                        json!({ "U": ids(&u), "mutation": ids(&m.object), "certificate": m.certificate })
                    });
                    rows.push(json!({ "U": ids(&u), "certificate": m.certificate }));
                }
                Err(e) => t.check(false, || json!({ "U": ids(&u), "error": e.to_string() })),
            }
        }
        Ok(t.report(Suite::Mutation, json!({ "exchanges": rows })))
    }

    fn context_suite(&self, suite: Suite, holds: impl Fn(&ContextCheck) -> Option<bool>) -> Result<SuiteReport> {
        let mut t = Tally::default();
        let mut rows = Vec::new();
        for (u, check) in self.contexts()? {
            match check {
                Err(e) => t.check(false, || json!({ "U": ids(u), "error": e.to_string() })),
                Ok(c) => match holds(c) {
                    None => t.undecided("a quotient algebra has incompletely enumerated support τ-tilting pairs"),
                    Some(ok) => {
                        t.check(ok, || json!({ "context": c.summary, "square": c.square }));
                        rows.push(json!({
                            "context": c.summary,
                            "sizes": c.square.sizes,
                            "holds": ok,
                        }));
                    }
                },
            }
        }
        let distinct = rows.len();
        Ok(t.report(suite, json!({ "contexts": distinct, "results": rows })))
    }

    /// The reduction map is an order isomorphism onto the support τ-tilting
    /// pairs of the quotient algebra, sending the Bongartz completion to `B`
    /// and the co-Bongartz completion to zero.
    fn reduction(&self) -> Result<SuiteReport> {
        self.context_suite(Suite::Reduction, |c| {
            c.square
                .b_complete
                .then_some(c.square.bijection && c.square.order_iso && c.square.endpoints)
        })
    }

    /// The two reduction maps agree up to isomorphism.
    fn square(&self) -> Result<SuiteReport> {
        self.context_suite(Suite::Square, |c| Some(c.square.square_commutes))
    }

    /// Every vertex has `|A|` arrows; for each left mutation `M = μ^L_X(N)`
    /// that stays two-term, the interval `[M, N]` is `|X|`-regular, every
    /// `μ^L_Y(N)` with `Y` a summand of `X` exists, and `[μ^L_Y(N), N]` is
    /// the part of `[M, N]` containing `N_Y`.
    fn regularity(&self) -> Result<SuiteReport> {
        let s = self.s;
        let h = self.complete_poset()?;
        let mut t = Tally::default();
        for (v, d) in regularity(h)?.into_iter().enumerate() {
            t.check(d == s.rank(), || json!({ "object": ids(&h.vertices[v]), "degree": d }));
        }
        let mut existing = 0;
        for n in &h.vertices {
            let k = n.len();
            let mut lower: BTreeMap<usize, SiltingObject> = BTreeMap::new();
            for mask in 1..1usize << k {
                if let Some(m) = left_mutation(s, n, mask)? {
                    lower.insert(mask, m);
                }
            }
            existing += lower.len();
            for (&mask, m) in &lower {
                let width = mask.count_ones() as usize;
                t.check(is_silting(s, m)? && leq(s, m, n), || {
                    json!({ "N": ids(n), "X": mask, "mutation": ids(m), "silting_below": false })
                });
                let iv = interval(s, h, m, n)?;
                let degrees = regularity(&iv)?;
                t.check(degrees.iter().all(|&d| d == width), || {
                    json!({ "N": ids(n), "X": mask, "mutation": ids(m), "degrees": degrees })
                });
                for sub in (1..mask).filter(|sub| sub & mask == *sub) {
                    let Some(ms) = lower.get(&sub) else {
                        t.check(false, || json!({ "N": ids(n), "X": mask, "Y": sub, "missing": true }));
                        continue;
                    };
                    let n_y = SiltingObject::new((0..k).filter(|i| sub >> i & 1 == 0).map(|i| n.summands()[i]));
                    let expected: BTreeSet<&SiltingObject> = iv.vertices.iter().filter(|x| x.contains_all(&n_y)).collect();
                    let small = interval(s, h, ms, n)?;
                    let got: BTreeSet<&SiltingObject> = small.vertices.iter().collect();
                    t.check(got == expected, || json!({ "N": ids(n), "X": mask, "Y": sub, "subinterval": "differs" }));
                }
            }
        }
        let details = json!({ "vertices": h.vertices.len(), "degree": s.rank(), "left_mutations": existing });
        Ok(t.report(Suite::Regularity, details))
    }

    /// Green sequences of the algebra, and for each reduction context the
    /// equivalence between a path of arrows from the Bongartz to the
    /// co-Bongartz completion and a green sequence of the quotient algebra.
    fn mgs(&self) -> Result<SuiteReport> {
        let s = self.s;
        let h = self.poset()?;
        let mut t = Tally::default();
        let top = h.index_of(&regular_object(s)).expect("exploration starts at A");
        let bottom = h.index_of(&shifted_regular_object(s));
        let found = bottom.map(|b| mgs_search(s, h, top, b, self.cfg.max_depth));
        let mut lengths = found.as_ref().map(|g| g.lengths()).unwrap_or_default();
        lengths.sort_unstable();
        let sequences: Vec<Vec<Vec<usize>>> = found
            .iter()
            .flat_map(|g| &g.sequences)
            .map(|q| q.iter().map(ids).collect())
            .collect();
        let mut details = json!({ "lengths": lengths, "sequences": sequences, "poset_complete": !h.truncated });
        if h.truncated {
            t.undecided("the poset is truncated, so green sequences may be missing");
            return Ok(t.report(Suite::Mgs, details));
        }
        let bottom = bottom.expect("a complete poset contains A[1]");
        t.check(reaches(h, top, bottom), || json!({ "path_from_A_to_A[1]": false }));
        let mut rows = Vec::new();
        for (u, check) in self.contexts()? {
            match check {
                Err(e) => t.check(false, || json!({ "U": ids(u), "error": e.to_string() })),
                Ok(c) => match c.b_green {
                    None => t.undecided("the poset of a quotient algebra is truncated"),
                    Some(g) => {
                        t.check(g == c.path, || json!({ "context": c.summary, "path": c.path, "quotient_green": g }));
                        rows.push(json!({ "U": ids(u), "path": c.path, "quotient_green": g }));
                    }
                },
            }
        }
        details["contexts"] = json!(rows);
        Ok(t.report(Suite::Mgs, details))
    }

    /// Three-term silting objects reachable by mutation inside degrees
    /// `[-2, 0]`: all pass the presilting and cardinality filter and there
    /// are at least `2 #sτ-tilt - 1` of them.
    fn nterm(&self) -> Result<SuiteReport> {
        let s = self.s;
        let mut t = Tally::default();
        let h = self.complete_poset()?;
        let e = self.stau();
        if !e.is_complete() {
            t.undecided("support τ-tilting pairs are incompletely enumerated");
            return Ok(t.report(Suite::Nterm, Value::Null));
        }
        let bound = 2 * h.vertices.len() - 1;
        let ex = explore_nterm(s, 3, self.cfg.nterm_max_nodes)?;
        let details = json!({
            "terms": 3,
            "found": ex.objects.len(),
            "bound": bound,
            "closed": ex.closed,
            "objects": ex.objects.iter().map(ids).collect::<Vec<_>>(),
        });
        if !ex.closed {
            t.undecided("three-term exploration did not close");
            return Ok(t.report(Suite::Nterm, details));
        }
        t.check(ex.all_pass_filter, || json!({ "filter": "failed" }));
        t.check(ex.objects.len() >= bound, || json!({ "found": ex.objects.len(), "bound": bound }));
        Ok(t.report(Suite::Nterm, details))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::silting::tests::session;

    fn run(name: &str, suites: &[Suite]) -> VerifyReport {
        let s = session(name);
        Verifier::new(&s, VerifyConfig::default()).run(suites)
    }

    #[test]
    fn suite_names_round_trip() {
        for x in Suite::ALL {
            assert_eq!(x.name().parse::<Suite>().unwrap(), x);
        }
        assert_eq!(Suite::parse_selection("all").unwrap().len(), 8);
        assert!(Suite::parse_selection("bogus").is_err());
    }

    #[test]
    fn outcomes_combine_pessimistically() {
        use Outcome::*;
        assert_eq!(Pass.and(Undecided), Undecided);
        assert_eq!(Undecided.and(Fail), Fail);
        assert_eq!(Pass.and(Pass).exit_code(), 0);
        assert_eq!(Undecided.exit_code(), 2);
    }

    #[test]
    fn a2_passes_everything() {
        let r = run("a2", &Suite::ALL);
        for x in &r.suites {
            assert_eq!(x.outcome, Outcome::Pass, "{}", serde_json::to_string_pretty(x).unwrap());
        }
        let mgs = r.suite(Suite::Mgs).unwrap();
        assert_eq!(mgs.details["lengths"], json!([2, 3]));
        let nterm = r.suite(Suite::Nterm).unwrap();
        assert!(nterm.experimental);
        assert!(nterm.details["found"].as_u64().unwrap() >= 9);
        assert_eq!(r.suite(Suite::Bijection).unwrap().details["two_term"], json!(5));
    }

    #[test]
    fn truncation_is_undecided() {
        let s = session("a2");
        let cfg = VerifyConfig {
            max_nodes: 3,
            ..VerifyConfig::default()
        };
        let r = Verifier::new(&s, cfg).run(&[Suite::Interval, Suite::Mgs]);
        assert!(r.suites.iter().all(|x| x.outcome == Outcome::Undecided));
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn left_mutation_of_the_whole_object() {
        let s = session("a2");
        let a = regular_object(&s);
        assert_eq!(left_mutation(&s, &a, 0b11).unwrap(), Some(shifted_regular_object(&s)));
        // nothing lies below A[1]
        assert_eq!(left_mutation(&s, &shifted_regular_object(&s), 0b01).unwrap(), None);
    }
}
