//! Acceptance run over the bundled algebras. Prints one line per criterion
//! and exits with status 1 if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use siltkit::corpus;
use siltkit::session::Session;
use siltkit::verify::{ar_duality, Outcome, Suite, SuiteReport, VerifyConfig, VerifyReport, Verifier};

struct Run {
    name: &'static str,
    report: VerifyReport,
    elapsed: Duration,
}

impl Run {
    fn suite(&self, s: Suite) -> &SuiteReport {
        self.report.suite(s).unwrap()
    }
}

struct Line {
    ok: bool,
    text: String,
}

fn line(ok: bool, text: String) -> Line {
    Line { ok, text }
}

fn u64_at(v: &Value, key: &str) -> u64 {
    v[key].as_u64().unwrap_or(0)
}

fn suite_everywhere(runs: &[Run], s: Suite) -> (bool, Vec<String>) {
    let bad: Vec<String> = runs
        .iter()
        .filter(|r| r.suite(s).outcome != Outcome::Pass)
        .map(|r| format!("{} {}", r.name, r.suite(s).outcome))
        .collect();
    (bad.is_empty(), bad)
}

fn main() {
    let finite: Vec<&'static str> = corpus::names().filter(|n| corpus::is_rep_finite(n)).collect();
    let runs: Vec<Run> = finite
        .iter()
        .map(|&name| {
            let start = Instant::now();
            let s = Session::from_algebra(corpus::load(name, None).unwrap(), 7);
            let report = Verifier::new(&s, VerifyConfig::default()).run(&Suite::ALL);
            Run {
                name,
                report,
                elapsed: start.elapsed(),
            }
        })
        .collect();
    let kronecker = {
        let s = Session::from_algebra(corpus::load("kronecker", None).unwrap(), 7);
        let cfg = VerifyConfig {
            max_nodes: 20,
            ..VerifyConfig::default()
        };
        Verifier::new(&s, cfg).run(&[Suite::Mgs])
    };

    let mut lines = Vec::new();

    // 1
    let sizes: Vec<String> = runs
        .iter()
        .map(|r| format!("{}={}", r.name, u64_at(&r.suite(Suite::Bijection).details, "two_term")))
        .collect();
    let expected = [("one_vertex", 2), ("a2", 5), ("a3", 14)];
    let sizes_ok = expected.iter().all(|&(n, k)| {
        runs.iter()
            .any(|r| r.name == n && u64_at(&r.suite(Suite::Bijection).details, "two_term") == k)
    });
    let slowest = runs.iter().map(|r| r.elapsed).max().unwrap();
    let (ok, bad) = suite_everywhere(&runs, Suite::Bijection);
    lines.push(line(
        ok && sizes_ok && slowest < Duration::from_secs(60),
        format!("bijection with support tau-tilting pairs: sizes {} {bad:?}; slowest algebra {slowest:.1?}", sizes.join(" ")),
    ));

    // 2
    let (ok, bad) = suite_everywhere(&runs, Suite::Interval);
    let checked: usize = runs.iter().map(|r| r.suite(Suite::Interval).checked).sum();
    let total: Duration = runs.iter().map(|r| r.elapsed).sum();
    lines.push(line(
        ok && total < Duration::from_secs(120),
        format!("interval equals summand filter: {checked} presilting objects {bad:?}; all suites took {total:.1?}"),
    ));

    // 3
    let (ok, bad) = suite_everywhere(&runs, Suite::Mutation);
    let checked: usize = runs.iter().map(|r| r.suite(Suite::Mutation).checked).sum();
    lines.push(line(
        ok,
        format!("two completions with certified exchange triangles: {checked} almost complete objects {bad:?}"),
    ));

    // 4
    let (red_ok, red_bad) = suite_everywhere(&runs, Suite::Reduction);
    let (sq_ok, sq_bad) = suite_everywhere(&runs, Suite::Square);
    let contexts: usize = runs.iter().map(|r| r.suite(Suite::Reduction).checked).sum();
    lines.push(line(
        red_ok && sq_ok && contexts >= 10,
        format!("reduction is an order isomorphism and the square commutes: {contexts} contexts {red_bad:?} {sq_bad:?}"),
    ));

    // 5
    let (ok, bad) = suite_everywhere(&runs, Suite::Regularity);
    let mutations: u64 = runs
        .iter()
        .map(|r| u64_at(&r.suite(Suite::Regularity).details, "left_mutations"))
        .sum();
    lines.push(line(
        ok,
        format!("regularity of the Hasse quiver and of {mutations} left mutation intervals {bad:?}"),
    ));

    // 6
    let (ok, bad) = suite_everywhere(&runs, Suite::Mgs);
    let a2 = runs.iter().find(|r| r.name == "a2").unwrap();
    let a2_lengths = a2.suite(Suite::Mgs).details["lengths"].clone();
    let k = kronecker.suite(Suite::Mgs).unwrap();
    let k_found: BTreeSet<u64> = k.details["lengths"]
        .as_array()
        .map(|v| v.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default();
    lines.push(line(
        ok && a2_lengths == serde_json::json!([2, 3]) && k.outcome == Outcome::Undecided && k_found.contains(&2),
        format!(
            "green sequences: A2 lengths {a2_lengths}, path/green equivalence {bad:?}, Kronecker {} with lengths {k_found:?}",
            k.outcome
        ),
    ));

    // 7
    let mut pairs = 0;
    let mut violations = 0;
    for name in corpus::names() {
        let s = Session::from_algebra(corpus::load(name, None).unwrap(), 7);
        let r = ar_duality(&s, siltkit::modules::SweepConfig::default());
        pairs += r.pairs;
        violations += r.violations.len();
    }
    lines.push(line(
        violations == 0 && pairs > 0,
        format!("Auslander-Reiten duality: {pairs} pairs of indecomposables, {violations} violations"),
    ));

    // 8
    let nterm: Vec<String> = ["a2", "a3"]
        .iter()
        .map(|n| {
            let r = runs.iter().find(|r| r.name == *n).unwrap().suite(Suite::Nterm);
            format!("{n} {} ({} >= {})", r.outcome, u64_at(&r.details, "found"), u64_at(&r.details, "bound"))
        })
        .collect();
    let nterm_ok = ["a2", "a3"].iter().all(|n| {
        let r = runs.iter().find(|r| r.name == *n).unwrap().suite(Suite::Nterm);
        r.outcome != Outcome::Fail
    });
    lines.push(line(nterm_ok, format!("three-term count bound (experimental): {}", nterm.join(", "))));

    // 9
    let bin = env!("CARGO_BIN_EXE_siltkit");
    let args = ["verify", "--algebra", "a3", "--suite", "all", "--seed", "7", "--format", "json"];
    let first = Command::new(bin).args(args).output().unwrap();
    let second = Command::new(bin).args(args).output().unwrap();
    lines.push(line(
        first.status.code() == Some(0) && !first.stdout.is_empty() && first.stdout == second.stdout,
        format!("determinism: two runs gave {} and {} identical bytes", first.stdout.len(), second.stdout.len()),
    ));

    let mut all = true;
    for (i, l) in lines.iter().enumerate() {
        all &= l.ok;
        println!("criterion {}: {} {}", i + 1, if l.ok { "PASS" } else { "FAIL" }, l.text);
    }
    if !all {
        std::process::exit(1);
    }
}
