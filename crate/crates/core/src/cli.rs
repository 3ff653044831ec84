//! The `dissoc` command line.
//!
//! Every subcommand writes a JSON document (or plain lines for `enumerate`
//! and `gen-trees`) to stdout; timings and diagnostics go to stderr only,
//! so identical invocations give byte-identical stdout.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_code, CanonicalCode};
use crate::dissociation::{alpha3_count_dp, alpha3_count_u64, check_guard, enumerate_mds_capped};
use crate::error::Error;
use crate::extremal::{
    exhaustive_extremal_check, generate_extremal_family, is_characterized, max_mds_formula, predicted_codes,
    SWEEP_LIMIT,
};
use crate::graph::{parse_edge_list, Forest};
use crate::kpath::{greedy_cover_matching, verify_kke, KkeMode, KkeReport};
use crate::structure::{classify_vertices, critical_structure, verify_structure_theorems, DEFAULT_ENUMERATION_CAP};
use crate::treegen::{free_trees, LevelSequence};
use crate::vertex_set::VertexSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Largest order `gen-trees` will stream (about 2.1 million trees).
pub const GENERATION_LIMIT: usize = 22;

#[derive(Parser, Debug)]
#[command(name = "dissoc", version, about = "Dissociation sets of trees and forests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one forest read from an edge-list file ("-" for stdin)
    Analyze {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        k: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        enumerate_cap: usize,
    },
    /// Print every maximum dissociation set, one per line
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check every free tree up to the given order
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        k_list: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Formula value and extremal trees for one order
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, requires = "sweep")]
        csv: Option<PathBuf>,
    },
    /// Print one edge list per free tree of the given order
    GenTrees {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Analyze { file, k, enumerate_cap } => analyze_cmd(&file, &k, enumerate_cap, out, err),
        Command::Enumerate { file, limit } => enumerate_cmd(&file, limit, out, err),
        Command::Verify { n_max, k_list, jobs, csv } => verify_cmd(n_max, &k_list, jobs, csv.as_deref(), out, err),
        Command::Extremal { n, sweep, jobs, csv } => extremal_cmd(n, sweep, jobs, csv.as_deref(), out),
        Command::GenTrees { n, count_only } => gen_trees_cmd(n, count_only, out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::GuardExceeded { .. } | Error::CountOverflow | Error::Truncated { .. } => EXIT_GUARD,
                Error::StructuralViolation(_) => EXIT_VIOLATION,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn read_forest(path: &Path) -> Result<Forest, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    parse_edge_list(&text).map_err(|e| Failure::Lib(e.into()))
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn check_ks(ks: &[usize]) -> Result<Vec<usize>, Failure> {
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if ks.is_empty() || ks[0] < 2 {
        return Err(Failure::Usage("k values must be at least 2".into()));
    }
    Ok(ks)
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub alpha3: usize,
    pub mds_count: String,
    pub critical_edges: Vec<[String; 2]>,
    pub insulated_edges: Vec<[String; 2]>,
    pub critical_triples: Vec<[String; 3]>,
    pub flexible: Vec<String>,
    pub static_included: Vec<String>,
    pub static_excluded: Vec<String>,
    pub theorem_checks: BTreeMap<String, &'static str>,
    pub kke: Vec<KkeReport>,
}

impl AnalysisReport {
    pub fn failed_checks(&self) -> usize {
        let theorems = self.theorem_checks.values().filter(|&&s| s == "fail").count();
        theorems + self.kke.iter().filter(|r| !r.holds).count()
    }
}

/// Builds the `analyze` document. Vertices appear under their input labels.
pub fn analyze(forest: &Forest, ks: &[usize], enumeration_cap: usize) -> crate::Result<AnalysisReport> {
    let counted = alpha3_count_dp(forest);
    let structure = critical_structure(forest)?;
    let cls = classify_vertices(forest);
    let names = |s: &VertexSet| s.iter().map(|v| forest.label(v)).collect::<Vec<_>>();
    let pair = |&(u, v): &(usize, usize)| [forest.label(u), forest.label(v)];
    let theorems = verify_structure_theorems(forest, enumeration_cap);
    let kke = ks
        .iter()
        .map(|&k| verify_kke(forest, k, KkeMode::Fast))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        n: forest.n(),
        alpha3: counted.alpha3,
        mds_count: counted.count.to_string(),
        critical_edges: structure.critical_edges.iter().map(pair).collect(),
        insulated_edges: structure.insulated_edges.iter().map(pair).collect(),
        critical_triples: structure
            .critical_triples
            .iter()
            .map(|t| t.map(|v| forest.label(v)))
            .collect(),
        flexible: names(&cls.flexible),
        static_included: names(&cls.static_included),
        static_excluded: names(&cls.static_excluded),
        theorem_checks: theorems.checks.iter().map(|(k, v)| (k.clone(), v.label())).collect(),
        kke,
    })
}

fn analyze_cmd(
    file: &Path,
    ks: &[usize],
    cap: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let ks = check_ks(ks)?;
    let forest = read_forest(file)?;
    let report = analyze(&forest, &ks, cap)?;
    write_json(out, &report)?;
    if report.failed_checks() > 0 {
        for (name, witness) in verify_structure_theorems(&forest, cap).failures() {
            writeln!(err, "violation: {name}: {witness}")?;
        }
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

fn enumerate_cmd(file: &Path, limit: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let forest = read_forest(file)?;
    for set in enumerate_mds_capped(&forest, limit.unwrap_or(usize::MAX)) {
        match set {
            Ok(set) => {
                let labels: Vec<String> = set.iter().map(|v| forest.label(v)).collect();
                writeln!(out, "{}", labels.join(" "))?;
            }
            Err(Error::Truncated { cap }) => {
                writeln!(err, "stopped after {cap} sets (--limit)")?;
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(EXIT_OK)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub n: usize,
    pub trees: usize,
    pub max_count: String,
    pub formula: String,
    #[serde(rename = "match")]
    pub matches: bool,
    pub failures: usize,
}

struct TreeCheck {
    count: u64,
    problems: Vec<String>,
}

fn check_one_tree(tree: &Forest, ks: &[usize]) -> crate::Result<TreeCheck> {
    let (_, count) = alpha3_count_u64(tree)?;
    let mut problems: Vec<String> = verify_structure_theorems(tree, DEFAULT_ENUMERATION_CAP)
        .failures()
        .map(|(name, witness)| format!("{name}: {witness}"))
        .collect();
    for &k in ks {
        let cert = greedy_cover_matching(tree, k)?;
        if let Err(why) = cert.validate(tree) {
            problems.push(format!("k={k} certificate: {why}"));
        }
        let kke = verify_kke(tree, k, KkeMode::Fast)?;
        if !kke.holds {
            problems.push(format!("k={k}: alpha_k {} + mu_k {} != {}", kke.alpha_k, kke.mu_k, kke.n));
        }
    }
    Ok(TreeCheck { count, problems })
}

/// Checks every free tree of order `n`: structure report, k-path
/// certificates and k-KE equality for each k, and the extremal count.
/// Problem descriptions come back in generation order.
pub fn verify_order(n: usize, ks: &[usize], pool: &rayon::ThreadPool) -> crate::Result<(VerifyRow, Vec<String>)> {
    let mut gen = free_trees(n);
    let sequences: Vec<LevelSequence> = std::iter::from_fn(|| gen.next_sequence()).collect();
    let checks: Vec<TreeCheck> = pool.install(|| {
        sequences
            .par_iter()
            .map(|s| check_one_tree(&s.to_forest(), ks))
            .collect::<crate::Result<_>>()
    })?;
    let max = checks.iter().map(|c| c.count).max().unwrap_or(0);
    let formula = max_mds_formula(n)?;
    let mut matches = num_bigint::BigUint::from(max) == formula;
    if matches && is_characterized(n) {
        let mut argmax: Vec<CanonicalCode> = sequences
            .iter()
            .zip(&checks)
            .filter(|(_, c)| c.count == max)
            .map(|(s, _)| canonical_code(&s.to_forest()).expect("tree"))
            .collect();
        argmax.sort();
        argmax.dedup();
        matches = argmax == predicted_codes(n)?;
    }
    let mut problems = Vec::new();
    for (s, c) in sequences.iter().zip(&checks) {
        for p in &c.problems {
            problems.push(format!("n={n} tree {:?}: {p}", s.as_slice()));
        }
    }
    let row = VerifyRow {
        n,
        trees: sequences.len(),
        max_count: max.to_string(),
        formula: formula.to_string(),
        matches,
        failures: problems.len(),
    };
    Ok((row, problems))
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn verify_cmd(
    n_max: usize,
    ks: &[usize],
    jobs: usize,
    csv_path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    check_guard("verify", n_max, SWEEP_LIMIT)?;
    let ks = check_ks(ks)?;
    let pool = thread_pool(jobs)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let start = Instant::now();
        let (row, problems) = verify_order(n, &ks, &pool)?;
        for p in &problems {
            writeln!(err, "violation: {p}")?;
        }
        writeln!(err, "n={n} trees={} elapsed={:.3}s", row.trees, start.elapsed().as_secs_f64())?;
        rows.push(row);
    }
    write_json(out, &rows)?;
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path)?;
        for row in &rows {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    let bad = rows.iter().any(|r| r.failures > 0 || !r.matches);
    Ok(if bad { EXIT_VIOLATION } else { EXIT_OK })
}

#[derive(Serialize)]
struct FamilyMember {
    code: CanonicalCode,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct FamilyDocument {
    n: usize,
    formula_value: String,
    characterized: bool,
    family: Vec<FamilyMember>,
}

fn extremal_cmd(n: usize, sweep: bool, jobs: usize, csv_path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    if !sweep {
        let family = generate_extremal_family(n)?
            .into_iter()
            .map(|t| FamilyMember { code: canonical_code(&t).expect("tree"), edges: t.edges().to_vec() })
            .collect();
        let doc = FamilyDocument {
            n,
            formula_value: max_mds_formula(n)?.to_string(),
            characterized: is_characterized(n),
            family,
        };
        write_json(out, &doc)?;
        return Ok(EXIT_OK);
    }
    let report = exhaustive_extremal_check(n, jobs)?;
    write_json(out, &report)?;
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path)?;
        w.serialize(VerifyRow {
            n,
            trees: report.trees,
            max_count: report.observed_max.to_string(),
            formula: report.formula_value.to_string(),
            matches: report.matches,
            failures: report.exceeding,
        })?;
        w.flush()?;
    }
    Ok(if report.matches { EXIT_OK } else { EXIT_VIOLATION })
}

fn gen_trees_cmd(n: usize, count_only: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    check_guard("gen-trees", n, GENERATION_LIMIT)?;
    if count_only {
        let mut gen = free_trees(n);
        let count = std::iter::from_fn(|| gen.next_sequence()).count();
        writeln!(out, "{count}")?;
        return Ok(EXIT_OK);
    }
    for (i, tree) in free_trees(n).enumerate() {
        writeln!(out, "# tree {i}")?;
        write!(out, "{}", tree.to_edge_list())?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("dissoc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_trees_count() {
        assert_eq!(run_capture(&["gen-trees", "--n", "4", "--count-only"]), (0, "2\n".into(), String::new()));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["gen-trees", "--n", "0"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["extremal", "--n", "5", "--csv", "x.csv"]).0, EXIT_USAGE);
    }

    #[test]
    fn guards_exit_two() {
        assert_eq!(run_capture(&["verify", "--n-max", "40"]).0, EXIT_GUARD);
        assert_eq!(run_capture(&["extremal", "--n", "30", "--sweep"]).0, EXIT_GUARD);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("analyze"));
    }

    #[test]
    fn analysis_of_p5() {
        let r = analyze(&Forest::path(5), &[2, 3], 100).unwrap();
        assert_eq!((r.alpha3, r.mds_count.as_str()), (4, "1"));
        assert_eq!(r.static_excluded, vec!["2".to_string()]);
        assert_eq!(r.failed_checks(), 0);
        assert_eq!(r.kke.len(), 2);
    }

    #[test]
    fn verify_rows_small() {
        let pool = thread_pool(1).unwrap();
        let (row, problems) = verify_order(7, &[2, 3, 4, 5], &pool).unwrap();
        assert!(problems.is_empty());
        assert_eq!((row.trees, row.max_count.as_str(), row.matches), (11, "4", true));
    }
}
