//! Command-line front end.
//!
//! Exit statuses: 0 success, 2 usage or parse errors, 3 degenerate data
//! (coinciding points, tied spacings, samples too small for the test),
//! 4 oracle mismatch.

use std::io::IsTerminal;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nnstat_core::digraph::{build_nn_digraph, count_pairs, PairCounts};
use nnstat_core::exact::{
    brute_force_pmf_reflexive, enns_recurrence_pmf, mean_reflexive, mean_shared, pmf_reflexive,
    reflexive_constant, reflexive_constant_rational, shared_constant, var_reflexive, var_shared,
    ExactPmf, SourcedMoment, ENNS_MAX_N,
};
use nnstat_core::inference::{analyze_sample, Alternative, TestResult};
use nnstat_core::Error as CoreError;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::format::{rational_string, round12, table};
use crate::io::{read_points, InputError, PmfDocument};
use crate::monte_carlo::{
    clt_check, default_workers, estimate_dimension_constants, run_simulation, simulate_counts,
    slln_trace, summarize, Distribution, McConfig, McError, Statistic,
};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "nnstat",
    version,
    about = "Nearest-neighbor digraph statistics: exact pmfs, moments, simulation and tests"
)]
pub struct Cli {
    /// Output format; defaults to a table on a terminal and JSON otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Brute,
    Enns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    Reflexive,
    Shared,
}

impl From<StatArg> for Statistic {
    fn from(s: StatArg) -> Self {
        match s {
            StatArg::Reflexive => Statistic::Reflexive,
            StatArg::Shared => Statistic::Shared,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistArg {
    Uniform,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Clt,
    Slln,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlternativeArg {
    Greater,
    Less,
    TwoSided,
}

impl From<AlternativeArg> for Alternative {
    fn from(a: AlternativeArg) -> Self {
        match a {
            AlternativeArg::Greater => Alternative::Greater,
            AlternativeArg::Less => Alternative::Less,
            AlternativeArg::TwoSided => Alternative::TwoSided,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact pmf of the number of reflexive pairs.
    Pmf {
        #[arg(long)]
        n: usize,
        /// Also compute the pmf with an independent method and compare.
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
    },
    /// Exact mean and variance of R_n or Q_n.
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "reflexive")]
        stat: StatArg,
    },
    /// Monte Carlo estimates, CLT and SLLN checks, dimension constants.
    Simulate(SimulateArgs),
    /// Counts and exact test for a 1-D point file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "two-sided")]
        alternative: AlternativeArg,
    },
    /// The limits r(d) and q(d) of E(R_n)/n and E(Q_n)/n.
    Constants {
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct SimulateArgs {
    /// Sample size (the final size for `--check slln`).
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    pub dist: DistArg,
    /// Statistic standardized by `--check clt`.
    #[arg(long, value_enum, default_value = "reflexive")]
    pub stat: StatArg,
    #[arg(long, value_enum, conflicts_with = "constants")]
    pub check: Option<CheckArg>,
    /// Estimate r(d) and q(d) for uniform points in the unit cube.
    #[arg(long)]
    pub constants: bool,
    /// Write per-replication counts to this CSV file.
    #[arg(long)]
    pub per_rep: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Degenerate(_) => EXIT_DEGENERATE,
        }
    }
}

impl From<McError> for CliError {
    fn from(e: McError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn core_error(e: CoreError) -> CliError {
    match e {
        CoreError::DuplicatePoints { .. } | CoreError::TooFewPoints { .. } => {
            CliError::Degenerate(e.to_string())
        }
        CoreError::TiedSpacings { .. } => CliError::Degenerate(format!(
            "{e}; the exact null distribution needs strictly ordered spacings \
             (regular or rounded data cannot be tested)"
        )),
        _ => CliError::Usage(e.to_string()),
    }
}

fn input_error(e: InputError) -> CliError {
    match e {
        InputError::Sample(inner) => core_error(inner),
        other => CliError::Usage(other.to_string()),
    }
}

/// A command result in every output format.
pub struct Rendered {
    pub json: Value,
    pub csv: String,
    pub table: String,
    /// Format used when none is requested and output is not a terminal.
    pub default_format: OutputFormat,
    pub exit_code: i32,
}

impl Rendered {
    fn new(json: Value, csv: String, table: String) -> Self {
        Rendered {
            json,
            csv,
            table,
            default_format: OutputFormat::Json,
            exit_code: 0,
        }
    }

    pub fn text(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => format!("{}\n", self.json),
            OutputFormat::Csv => self.csv.clone(),
            OutputFormat::Table => self.table.clone(),
        }
    }
}

fn rational_json(r: &nnstat_core::Rational) -> Value {
    Value::String(rational_string(r))
}

fn decimal(r: &nnstat_core::Rational) -> f64 {
    round12(r.to_f64().unwrap_or(f64::NAN))
}

fn pmf_rows(pmf: &ExactPmf) -> Vec<(String, String)> {
    let mut rows = vec![("n".to_string(), pmf.n().to_string())];
    for (k, p) in pmf.probs() {
        rows.push((
            format!("P(R = {k})"),
            format!("{}  ({})", rational_string(&p), decimal(&p)),
        ));
    }
    rows
}

fn pmf_csv(pmf: &ExactPmf) -> String {
    let mut out = String::from("n,k,probability,decimal\n");
    for (k, p) in pmf.probs() {
        out.push_str(&format!(
            "{},{k},{},{}\n",
            pmf.n(),
            rational_string(&p),
            decimal(&p)
        ));
    }
    out
}

pub fn cmd_pmf(n: usize, oracle: Option<Oracle>) -> Result<Rendered, CliError> {
    let oracle_pmf = match oracle {
        None => None,
        Some(Oracle::Brute) => Some(brute_force_pmf_reflexive(n).map_err(|_| {
            CliError::Usage(format!("--oracle brute supports 2 <= n <= 10, got {n}"))
        })?),
        Some(Oracle::Enns) => Some(enns_recurrence_pmf(n).map_err(|_| {
            CliError::Usage(format!(
                "--oracle enns supports 4 <= n <= {ENNS_MAX_N}, got {n}"
            ))
        })?),
    };
    let pmf = pmf_reflexive(n).map_err(core_error)?;
    let doc = PmfDocument::from(&pmf);
    let mut json = serde_json::to_value(&doc).expect("serializable");
    let mut table_text = table(&pmf_rows(&pmf));
    let mut csv = pmf_csv(&pmf);
    let mut exit_code = 0;
    if let (Some(which), Some(other)) = (oracle, oracle_pmf) {
        let matched = other == pmf;
        let name = match which {
            Oracle::Brute => "brute",
            Oracle::Enns => "enns",
        };
        json["oracle"] = json!(name);
        json["oracle_pmf"] =
            serde_json::to_value(PmfDocument::from(&other)).expect("serializable")["pmf"].clone();
        json["exact_match"] = json!(matched);
        table_text.push_str(&format!("\noracle: {name}\n"));
        table_text.push_str(&table(&pmf_rows(&other)));
        table_text.push_str(&format!("exact-match: {matched}\n"));
        csv.push_str(&format!("# oracle: {name}\n# exact-match: {matched}\n"));
        if !matched {
            exit_code = EXIT_MISMATCH;
        }
    }
    let mut r = Rendered::new(json, csv, table_text);
    r.exit_code = exit_code;
    Ok(r)
}

pub fn cmd_moments(n: usize, stat: StatArg) -> Result<Rendered, CliError> {
    let (mean, var): (SourcedMoment, SourcedMoment) = match stat {
        StatArg::Reflexive => (
            mean_reflexive(n).map_err(core_error)?,
            var_reflexive(n).map_err(core_error)?,
        ),
        StatArg::Shared => (
            mean_shared(n).map_err(core_error)?,
            var_shared(n).map_err(core_error)?,
        ),
    };
    let stat_name = match stat {
        StatArg::Reflexive => "reflexive",
        StatArg::Shared => "shared",
    };
    let json = json!({
        "n": n,
        "stat": stat_name,
        "mean": rational_json(&mean.value),
        "mean_decimal": decimal(&mean.value),
        "mean_source": mean.source.label(),
        "variance": rational_json(&var.value),
        "variance_decimal": decimal(&var.value),
        "variance_source": var.source.label(),
    });
    let csv = format!(
        "n,stat,mean,mean_source,variance,variance_source\n{n},{stat_name},{},{},{},{}\n",
        rational_string(&mean.value),
        mean.source.label(),
        rational_string(&var.value),
        var.source.label()
    );
    let table_text = table(&[
        ("n".into(), n.to_string()),
        ("statistic".into(), stat_name.into()),
        (
            "mean".into(),
            format!(
                "{}  ({})  [{}]",
                rational_string(&mean.value),
                decimal(&mean.value),
                mean.source.label()
            ),
        ),
        (
            "variance".into(),
            format!(
                "{}  ({})  [{}]",
                rational_string(&var.value),
                decimal(&var.value),
                var.source.label()
            ),
        ),
    ]);
    Ok(Rendered::new(json, csv, table_text))
}

fn json_rows(value: &Value) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, rows);
                }
            }
            Value::String(s) => rows.push((prefix.to_string(), s.clone())),
            other => rows.push((prefix.to_string(), other.to_string())),
        }
    }
    walk("", value, &mut rows);
    rows
}

fn single_row_csv(rows: &[(String, String)]) -> String {
    let header: Vec<&str> = rows.iter().map(|(k, _)| k.as_str()).collect();
    let values: Vec<&str> = rows.iter().map(|(_, v)| v.as_str()).collect();
    format!("{}\n{}\n", header.join(","), values.join(","))
}

fn from_serializable<T: serde::Serialize>(value: &T) -> Rendered {
    let json = serde_json::to_value(value).expect("serializable");
    let rows = json_rows(&json);
    Rendered::new(json, single_row_csv(&rows), table(&rows))
}

pub fn cmd_simulate(args: &SimulateArgs, workers: usize) -> Result<Rendered, CliError> {
    let config = McConfig {
        n: args.n,
        reps: args.reps,
        seed: args.seed,
        dim: args.dim,
        distribution: match args.dist {
            DistArg::Uniform => Distribution::UniformCube,
            DistArg::Normal => Distribution::StandardNormal,
        },
    };
    if args.constants {
        let est = estimate_dimension_constants(args.dim, args.n, args.reps, args.seed, workers)?;
        return Ok(from_serializable(&est));
    }
    match args.check {
        Some(CheckArg::Slln) => {
            let trace = slln_trace(args.n, args.seed)?;
            let mut csv = String::from("n,r_ratio,q_ratio\n");
            for p in &trace {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    p.n,
                    round12(p.r_ratio),
                    round12(p.q_ratio)
                ));
            }
            let rows: Vec<(String, String)> = trace
                .iter()
                .map(|p| {
                    (
                        p.n.to_string(),
                        format!("R/n = {:.6}  Q/n = {:.6}", p.r_ratio, p.q_ratio),
                    )
                })
                .collect();
            let mut r = Rendered::new(
                serde_json::to_value(&trace).expect("serializable"),
                csv,
                table(&rows),
            );
            r.default_format = OutputFormat::Csv;
            Ok(r)
        }
        Some(CheckArg::Clt) => {
            let report = clt_check(&config, args.stat.into(), workers)?;
            if let Some(path) = &args.per_rep {
                let mut csv = String::from("rep,standardized\n");
                for (i, z) in report.standardized_values.iter().enumerate() {
                    csv.push_str(&format!("{i},{}\n", round12(*z)));
                }
                write_file(path, &csv)?;
            }
            Ok(from_serializable(&report))
        }
        None => {
            if let Some(path) = &args.per_rep {
                let counts = simulate_counts(&config, workers)?;
                let mut csv = String::from("rep,reflexive,shared\n");
                for (i, c) in counts.iter().enumerate() {
                    csv.push_str(&format!("{i},{},{}\n", c.reflexive, c.shared));
                }
                write_file(path, &csv)?;
                return Ok(from_serializable(&summarize(&config, &counts, 0.0)));
            }
            let summary = run_simulation(&config, workers)?;
            eprintln!("elapsed: {:.3} s", summary.elapsed);
            Ok(from_serializable(&summary))
        }
    }
}

fn counts_json(counts: &PairCounts) -> Value {
    json!({
        "reflexive": counts.reflexive,
        "shared": counts.shared,
        "indegree_classes": counts.indegree_classes,
    })
}

pub fn test_json(t: &TestResult) -> Value {
    json!({
        "n": t.n,
        "observed": t.observed,
        "expected": rational_json(&t.expected),
        "expected_decimal": decimal(&t.expected),
        "alternative": t.alternative.label(),
        "method": t.method.label(),
        "p_value": round12(t.p_value),
        "p_value_exact": t.p_value_exact.as_ref().map(rational_json),
        "warning": t.warning,
    })
}

/// Runs the analysis; on failure the descriptive counts (when they could be
/// computed) are still rendered alongside the error.
pub fn cmd_analyze(
    input: &std::path::Path,
    alternative: AlternativeArg,
) -> Result<Rendered, CliError> {
    let sample = read_points(input).map_err(input_error)?;
    let digraph = build_nn_digraph(&sample);
    let counts = count_pairs(&digraph);
    let outcome = analyze_sample(&sample, alternative.into());
    let (test, error) = match &outcome {
        Ok(a) => (Some(&a.test), None),
        Err(CoreError::OutOfRange { .. }) if sample.len() < 3 => (
            None,
            Some(CliError::Degenerate(format!(
                "the exact test needs at least 3 points, got {}",
                sample.len()
            ))),
        ),
        Err(e) => (None, Some(core_error(e.clone()))),
    };
    let json = json!({
        "n": sample.len(),
        "dim": sample.dim(),
        "counts": counts_json(&counts),
        "tie_flag": digraph.tie_flag(),
        "test": test.map(test_json),
        "error": error.as_ref().map(|e| e.to_string()),
    });
    let mut rows = json_rows(&json);
    rows.retain(|(_, v)| v != "null");
    let mut rendered = Rendered::new(json, single_row_csv(&rows), table(&rows));
    if let Some(e) = error {
        rendered.exit_code = e.exit_code();
    }
    Ok(rendered)
}

pub fn cmd_constants(dim: usize) -> Result<Rendered, CliError> {
    let r = reflexive_constant(dim).map_err(core_error)?;
    let r_rational = reflexive_constant_rational(dim).map_err(core_error)?;
    let q = shared_constant(dim).ok();
    let json = json!({
        "dim": dim,
        "r": round12(r),
        "r_exact": true,
        "r_fraction": r_rational.as_ref().map(rational_json),
        "q": q.map(|(v, _)| v),
        "q_exact": q.is_some_and(|(_, e)| e),
        "q_note": match q {
            Some((_, true)) => "exact",
            Some((_, false)) => "empirical",
            None => "no published value",
        },
    });
    let rows = json_rows(&json);
    Ok(Rendered::new(json, single_row_csv(&rows), table(&rows)))
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Pmf { n, oracle } => cmd_pmf(*n, *oracle),
        Command::Moments { n, stat } => cmd_moments(*n, *stat),
        Command::Simulate(args) => cmd_simulate(args, default_workers()),
        Command::Analyze { input, alternative } => cmd_analyze(input, *alternative),
        Command::Constants { dim } => cmd_constants(*dim),
    }
}

/// Parses arguments, runs the command, writes its output and returns the
/// process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let rendered = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let format = cli.format.unwrap_or_else(|| {
        if cli.output.is_none() && std::io::stdout().is_terminal() {
            OutputFormat::Table
        } else {
            rendered.default_format
        }
    });
    let text = rendered.text(format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = write_file(path, &text) {
                eprintln!("error: {e}");
                return e.exit_code();
            }
        }
        None => print!("{text}"),
    }
    if rendered.exit_code != 0 {
        if let Some(msg) = rendered.json.get("error").and_then(Value::as_str) {
            eprintln!("error: {msg}");
        }
    }
    rendered.exit_code
}
