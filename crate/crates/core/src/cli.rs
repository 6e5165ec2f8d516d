//! Command-line interface. JSON and DOT output are stable and deterministic
//! for a fixed configuration; text output is meant for people.
//!
//! Exit codes: 0 on success, 2 when a result is truncated or undecided, 1 on
//! errors and failed checks.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{parse_algebra_file, Algebra};
use crate::complexes::ComplexJson;
use crate::modules::SweepConfig;
use crate::poset::{explore, hasse_dot, hasse_json, mgs_search, object_json, ExploreBounds};
use crate::reduction::{build_context, verify_square};
use crate::session::Session;
use crate::silting::{
    bongartz, co_bongartz, mutate, regular_object, shifted_regular_object, SiltingObject,
};
use crate::verify::{Suite, VerifyConfig, Verifier};
use crate::{corpus, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Settings shared by all commands.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Algebra file (TOML), or the name of a bundled algebra.
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// Work over this prime instead of the one in the file.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of silting objects explored.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_nodes: u64,
    /// Longest green sequence searched for.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_depth: u64,
    /// Largest total dimension of the modules swept by brute force.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim_bound: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Verification suite, or `all`.
    #[arg(long, global = true, default_value = "all")]
    pub suite: String,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn sweep(&self) -> SweepConfig {
        SweepConfig {
            dim_bound: self.dim_bound as usize,
            ..SweepConfig::default()
        }
    }

    fn bounds(&self) -> ExploreBounds {
        ExploreBounds {
            max_nodes: self.max_nodes as usize,
            interval: None,
        }
    }

    fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            max_nodes: self.max_nodes as usize,
            max_depth: self.max_depth as usize,
            sweep: self.sweep(),
            ..VerifyConfig::default()
        }
    }
}

/// Selects an object by its position in the enumeration from `A`
/// (`--vertex`) or by its summands (`--object`).
#[derive(Clone, Debug, Args)]
pub struct ObjectArgs {
    /// Position in the output of `enumerate`.
    #[arg(long, conflicts_with = "object")]
    pub vertex: Option<usize>,
    /// Comma-separated summands `P:<vertex>` or `P:<vertex>[1]`, or a JSON
    /// file holding a list of complexes in the report format.
    #[arg(long)]
    pub object: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse the algebra and print its basic invariants.
    Check,
    /// All two-term silting objects, with their support τ-tilting pairs.
    Enumerate,
    /// Irreducible mutations of a silting object.
    Mutate {
        #[command(flatten)]
        target: ObjectArgs,
        /// Summand position to exchange; all positions when omitted.
        #[arg(long)]
        summand: Option<usize>,
    },
    /// Bongartz or co-Bongartz completion of a presilting object.
    Complete {
        #[command(flatten)]
        target: ObjectArgs,
        #[arg(long, conflicts_with = "co_bongartz")]
        bongartz: bool,
        #[arg(long)]
        co_bongartz: bool,
    },
    /// Silting reduction at a presilting object and the compatibility check
    /// with τ-tilting reduction.
    Reduce {
        #[command(flatten)]
        target: ObjectArgs,
    },
    /// The Hasse quiver of two-term silting objects.
    Hasse {
        /// Same as `--format dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Maximal green sequences, as paths from `A` to `A[1]`.
    Mgs,
    /// Run verification suites.
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "siltkit", version, about = "Two-term silting theory over finite-dimensional algebras")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    /// Parses a full argument list, program name first.
    pub fn from_args<I, T>(args: I) -> std::result::Result<Cli, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args)
    }
}

/// Text written by a command and its exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn truncated(text: String, truncated: bool) -> Self {
        Output {
            text,
            code: if truncated { 2 } else { 0 },
        }
    }
}

/// Loads an algebra file, or a bundled algebra when no file of that name
/// exists.
pub fn load_algebra(name: &str, prime: Option<u32>) -> Result<Algebra> {
    let path = std::path::Path::new(name);
    if !path.exists() && corpus::source(name).is_some() {
        return corpus::load(name, prime);
    }
    let text = std::fs::read_to_string(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("algebra");
    Algebra::from_spec(&parse_algebra_file(&text, stem, prime)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn vertex_index(a: &Algebra, label: &str) -> Result<usize> {
    a.vertex_labels()
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Invalid(format!("no vertex named {label:?}")))
}

fn parse_object(s: &Session, spec: &str) -> Result<SiltingObject> {
    let a = s.algebra();
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        let list: Vec<ComplexJson> =
            serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        let mut ids = Vec::new();
        for c in &list {
            for (id, _) in s.decompose(&c.to_complex(a)?)? {
                ids.push(id);
            }
        }
        return Ok(SiltingObject::new(ids));
    }
    let mut ids = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let rest = token
            .strip_prefix("P:")
            .ok_or_else(|| Error::Invalid(format!("summand {token:?} is not of the form P:<vertex> or P:<vertex>[1]")))?;
        ids.push(match rest.strip_suffix("[1]") {
            Some(label) => s.shifted_projective_id(vertex_index(a, label)?),
            None => s.projective_id(vertex_index(a, rest)?),
        });
    }
    Ok(SiltingObject::new(ids))
}

fn select_object(s: &Session, cfg: &RunConfig, args: &ObjectArgs) -> Result<SiltingObject> {
    match (&args.object, args.vertex) {
        (Some(spec), _) => parse_object(s, spec),
        (None, Some(v)) => {
            let h = explore(s, &regular_object(s), &cfg.bounds())?;
            h.vertices
                .get(v)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("vertex {v} not among the {} explored objects", h.vertices.len())))
        }
        (None, None) => Err(Error::Invalid("give the object with --object or --vertex".into())),
    }
}

fn complexes_of<'a>(s: &Session, objects: impl IntoIterator<Item = &'a SiltingObject>) -> std::collections::BTreeMap<usize, ComplexJson> {
    let mut out = std::collections::BTreeMap::new();
    for t in objects {
        for &id in t.summands() {
            out.entry(id)
                .or_insert_with(|| ComplexJson::from_complex(s.algebra(), &s.complex(id)));
        }
    }
    out
}

fn cmd_check(cfg: &RunConfig, a: &Algebra) -> Output {
    let sum = a.summary();
    match cfg.format {
        Format::Json => Output::ok(to_json(&sum)),
        _ => {
            let mut t = format!("{}: dim {}, |A| = {}\n", sum.name, sum.dim, sum.vertices);
            writeln!(t, "prime {}, Loewy length {}", sum.prime, sum.loewy_length).unwrap();
            writeln!(t, "projective dimension vectors {:?}", sum.projective_dims).unwrap();
            writeln!(t, "injective dimension vectors {:?}", sum.injective_dims).unwrap();
            writeln!(t, "fingerprint {}", sum.fingerprint).unwrap();
            Output::ok(t)
        }
    }
}

fn cmd_enumerate(cfg: &RunConfig, s: &Session) -> Result<Output> {
    let h = explore(s, &regular_object(s), &cfg.bounds())?;
    let j = hasse_json(s, &h)?;
    let text = match cfg.format {
        Format::Json => to_json(&json!({
            "algebra": j.algebra,
            "fingerprint": j.fingerprint,
            "prime": j.prime,
            "truncated": j.truncated,
            "count": j.vertices.len(),
            "complexes": j.complexes,
            "objects": j.vertices,
        })),
        _ => {
            let mut t = String::new();
            for (i, o) in j.vertices.iter().enumerate() {
                writeln!(
                    t,
                    "{i}: summands {:?}  module {:?}  projectives {:?}",
                    o.summands, o.stau.module_dimvec, o.stau.proj_part
                )
                .unwrap();
            }
            let status = if h.truncated { " (truncated)" } else { "" };
            writeln!(t, "{} silting objects{status}", j.vertices.len()).unwrap();
            t
        }
    };
    Ok(Output::truncated(text, h.truncated))
}

fn cmd_mutate(cfg: &RunConfig, s: &Session, target: &ObjectArgs, summand: Option<usize>) -> Result<Output> {
    let t = select_object(s, cfg, target)?;
    let positions: Vec<usize> = match summand {
        Some(i) if i >= t.len() => return Err(Error::SummandMissing(i)),
        Some(i) => vec![i],
        None => (0..t.len()).collect(),
    };
    let muts = positions.iter().map(|&i| mutate(s, &t, i)).collect::<Result<Vec<_>>>()?;
    let text = match cfg.format {
        Format::Json => {
            let objects = std::iter::once(&t).chain(muts.iter().map(|m| &m.object));
            to_json(&json!({
                "object": object_json(s, &t)?,
                "mutations": muts,
                "complexes": complexes_of(s, objects),
            }))
        }
        _ => {
            let mut out = String::new();
            for (i, m) in positions.iter().zip(&muts) {
                writeln!(
                    out,
                    "summand {i}: {:?} mutation, {} -> {}, result {:?}",
                    m.direction,
                    m.removed,
                    m.added,
                    m.object.summands()
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn cmd_complete(cfg: &RunConfig, s: &Session, target: &ObjectArgs, co: bool) -> Result<Output> {
    let u = select_object(s, cfg, target)?;
    let t = if co { co_bongartz(s, &u)? } else { bongartz(s, &u)? };
    let which = if co { "co_bongartz" } else { "bongartz" };
    let text = match cfg.format {
        Format::Json => to_json(&json!({
            "input": u.summands(),
            which: object_json(s, &t)?,
            "complexes": complexes_of(s, [&u, &t]),
        })),
        _ => format!("{which} completion of {:?}: {:?}\n", u.summands(), t.summands()),
    };
    Ok(Output::ok(text))
}

fn cmd_reduce(cfg: &RunConfig, s: &Session, target: &ObjectArgs) -> Result<Output> {
    let u = select_object(s, cfg, target)?;
    let ctx = build_context(s, &u)?;
    let bounds = ExploreBounds {
        interval: Some((ctx.m.clone(), ctx.n.clone())),
        ..cfg.bounds()
    };
    let silt_u = explore(s, &ctx.n, &bounds)?;
    let report = verify_square(s, &ctx, &silt_u.vertices, cfg.sweep())?;
    let undecided = silt_u.truncated || !report.b_complete;
    let code = if !report.holds() && !undecided {
        1
    } else if undecided {
        2
    } else {
        0
    };
    let text = match cfg.format {
        Format::Json => to_json(&json!({
            "context": ctx.summary(),
            "report": report,
            "complexes": complexes_of(s, &silt_u.vertices),
        })),
        _ => format!(
            "U = {:?}: B has {} vertices and dimension {}; |silt_U| = {}, |sτ-tilt B| = {}\n\
             bijection {}, order isomorphism {}, square commutes {}, endpoints {}\n",
            u.summands(),
            ctx.b.num_vertices(),
            ctx.b.dim(),
            report.sizes.silt_u,
            report.sizes.stau_b,
            report.bijection,
            report.order_iso,
            report.square_commutes,
            report.endpoints
        ),
    };
    Ok(Output { text, code })
}

fn cmd_hasse(cfg: &RunConfig, s: &Session, dot: bool) -> Result<Output> {
    let h = explore(s, &regular_object(s), &cfg.bounds())?;
    let text = match (dot, cfg.format) {
        (true, _) | (_, Format::Dot) => hasse_dot(s, &h)?,
        (_, Format::Json) => to_json(&hasse_json(s, &h)?),
        (_, Format::Text) => {
            let mut t = String::new();
            for e in &h.edges {
                writeln!(
                    t,
                    "{:?} -> {:?} exchanging {} for {}",
                    h.vertices[e.source].summands(),
                    h.vertices[e.target].summands(),
                    e.removed,
                    e.added
                )
                .unwrap();
            }
            writeln!(t, "{} vertices, {} arrows", h.vertices.len(), h.edges.len()).unwrap();
            t
        }
    };
    Ok(Output::truncated(text, h.truncated))
}

fn cmd_mgs(cfg: &RunConfig, s: &Session) -> Result<Output> {
    let h = explore(s, &regular_object(s), &cfg.bounds())?;
    let top = h.index_of(&regular_object(s)).expect("exploration starts at A");
    let search = h
        .index_of(&shifted_regular_object(s))
        .map(|b| mgs_search(s, &h, top, b, cfg.max_depth as usize));
    let sequences: Vec<Vec<Vec<usize>>> = search
        .iter()
        .flat_map(|g| &g.sequences)
        .map(|q| q.iter().map(|t| t.summands().to_vec()).collect())
        .collect();
    let text = match cfg.format {
        Format::Json => to_json(&json!({
            "truncated": h.truncated,
            "max_len": cfg.max_depth,
            "sequences": sequences,
            "complexes": complexes_of(s, search.iter().flat_map(|g| g.sequences.iter().flatten())),
        })),
        _ => {
            let mut t = String::new();
            for q in &sequences {
                writeln!(t, "length {}: {:?}", q.len() - 1, q).unwrap();
            }
            let status = if h.truncated { " (poset truncated, list may be incomplete)" } else { "" };
            writeln!(t, "{} green sequences of length at most {}{status}", sequences.len(), cfg.max_depth).unwrap();
            t
        }
    };
    Ok(Output::truncated(text, h.truncated))
}

fn cmd_verify(cfg: &RunConfig, s: &Session) -> Result<Output> {
    let suites = Suite::parse_selection(&cfg.suite)?;
    let report = Verifier::new(s, cfg.verify_config()).run(&suites);
    let text = match cfg.format {
        Format::Json => to_json(&report),
        _ => {
            let mut t = format!("{} (prime {}, seed {})\n", report.algebra, report.prime, report.seed);
            for r in &report.suites {
                let exp = if r.experimental { " [experimental]" } else { "" };
                write!(t, "{:<11} {:<9} {} checked{exp}", r.suite.name(), r.outcome, r.checked).unwrap();
                if let Some(n) = &r.note {
                    write!(t, "; {n}").unwrap();
                }
                t.push('\n');
                for v in r.violations.iter().take(5) {
                    writeln!(t, "    {v}").unwrap();
                }
            }
            writeln!(t, "overall {}", report.outcome).unwrap();
            t
        }
    };
    Ok(Output {
        text,
        code: report.exit_code(),
    })
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output> {
    let cfg = &cli.config;
    if cfg.format == Format::Dot && !matches!(cli.command, Command::Hasse { .. }) {
        return Err(Error::Invalid("dot output is only available for hasse".into()));
    }
    // suite names are checked before any work
    Suite::parse_selection(&cfg.suite)?;
    let name = cfg
        .algebra
        .as_deref()
        .ok_or_else(|| Error::Invalid("--algebra is required".into()))?;
    let a = load_algebra(name, cfg.prime)?;
    if let Command::Check = cli.command {
        return Ok(cmd_check(cfg, &a));
    }
    let s = Session::from_algebra(a, cfg.seed);
    match &cli.command {
        Command::Check => unreachable!(),
        Command::Enumerate => cmd_enumerate(cfg, &s),
        Command::Mutate { target, summand } => cmd_mutate(cfg, &s, target, *summand),
        Command::Complete {
            target, co_bongartz, ..
        } => cmd_complete(cfg, &s, target, *co_bongartz),
        Command::Reduce { target } => cmd_reduce(cfg, &s, target),
        Command::Hasse { dot } => cmd_hasse(cfg, &s, *dot),
        Command::Mgs => cmd_mgs(cfg, &s),
        Command::Verify => cmd_verify(cfg, &s),
    }
}

/// Parses the arguments, runs the command and writes its output. Returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Truncated(_) => 2,
                _ => 1,
            };
        }
    };
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, &out.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(out.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("siltkit").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn check_reports_dimension_and_rank() {
        let out = execute(&cli(&["check", "--algebra", "a2"])).unwrap();
        assert!(out.text.contains("dim 3, |A| = 2"), "{}", out.text);
        let out = execute(&cli(&["check", "--algebra", "kronecker"])).unwrap();
        assert!(out.text.contains("dim 4, |A| = 2"));
    }

    #[test]
    fn bounds_must_be_positive() {
        assert!(Cli::try_parse_from(["siltkit", "enumerate", "--max-nodes", "0"]).is_err());
    }

    #[test]
    fn unknown_suite_is_rejected_before_loading() {
        let e = execute(&cli(&["verify", "--algebra", "/nonexistent", "--suite", "bogus"])).err().unwrap();
        assert!(matches!(e, Error::Invalid(_)));
    }

    #[test]
    fn object_tokens() {
        let s = Session::from_algebra(corpus::load("a2", None).unwrap(), 0);
        let t = parse_object(&s, "P:1, P:2[1]").unwrap();
        assert_eq!(t, SiltingObject::new([s.projective_id(0), s.shifted_projective_id(1)]));
        assert!(parse_object(&s, "Q:1").is_err());
    }
}
