//! Command-line front end: `sweep`, `analyze`, `theory` and `validate`.
//!
//! Settings are resolved as flags, then `COMPFRONT_*` environment variables,
//! then a JSON config file (`--config`), then built-in desk-scale defaults.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::harness::{load_store, merge_stores, run_sweep, save_store, SweepConfig};
use crate::machines::{MachineConfig, MachineKind};
use crate::priors::PriorKind;
use crate::stagnation::{analyze, export_curves, render_table, CurveConfig};
use crate::theory::{export_theory_csv, theory_curves, DefaultBusyBeaver, TheoryParams};
use crate::validation::{self, Scale};
use crate::{Error, Result};

pub const ENV_THREADS: &str = "COMPFRONT_THREADS";
pub const ENV_OUT_DIR: &str = "COMPFRONT_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "compfront", version, about = "Complexity-vs-runtime frontiers of enumerated programs")]
struct Cli {
    /// JSON file with default settings; unknown keys are rejected.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for relative output paths.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every program up to a length and save the per-output store.
    Sweep(SweepArgs),
    /// Turn one or more stores into prior-weighted stagnation curves.
    Analyze(AnalyzeArgs),
    /// Evaluate the theoretical stagnation curves.
    Theory(TheoryArgs),
    /// Run the self-checks and report pass/fail per criterion.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    machine: Option<MachineKind>,
    #[arg(long = "max-len")]
    max_len: Option<u32>,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Rule 110 tape width in cells.
    #[arg(long)]
    width: Option<usize>,
    /// Tag system start word.
    #[arg(long)]
    tag_start: Option<String>,
    #[arg(long)]
    shard_count: Option<u64>,
    #[arg(long)]
    shard_index: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Store file; repeat to merge shards.
    #[arg(long = "in", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    priors: Option<Vec<PriorKind>>,
    #[arg(long)]
    grid_ratio: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    windows: Option<Vec<f64>>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print the table.
    #[arg(long)]
    print: bool,
}

#[derive(Debug, Args)]
struct TheoryArgs {
    #[arg(long)]
    t: Option<i64>,
    #[arg(long = "k-hat")]
    k_hat: Option<i64>,
    #[arg(long = "n-hat")]
    n_hat: Option<i64>,
    /// Stagnation range `a..b` (inclusive) or a single value.
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Smaller empirical sweeps.
    #[arg(long)]
    quick: bool,
    /// Criteria to run, e.g. `1,2,6`; all by default.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<u8>>,
}

/// Keys accepted in the `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    machine: Option<String>,
    max_symbol_length: Option<u32>,
    max_steps: Option<u64>,
    rule110_width: Option<usize>,
    tag_start_word: Option<String>,
    shard_count: Option<u64>,
    shard_index: Option<u64>,
    priors: Option<Vec<String>>,
    grid_ratio: Option<f64>,
    windows: Option<Vec<f64>>,
    threads: Option<usize>,
    out_dir: Option<PathBuf>,
    t: Option<i64>,
    k_hat: Option<i64>,
    n_hat: Option<i64>,
    s_range: Option<String>,
}

fn read_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Symbol length and step limit used when neither flag nor config sets them.
pub fn desk_defaults(machine: MachineKind) -> (u32, u64) {
    match machine {
        MachineKind::Brainfuck => (8, 10_000),
        MachineKind::Tag2 => (9, 10_000),
        MachineKind::Rule110 => (16, 5_000),
    }
}

fn env_var(name: &str) -> Option<String> {
    std::env::var(name).ok().filter(|v| !v.is_empty())
}

struct Common {
    threads: usize,
    out_dir: Option<PathBuf>,
}

impl Common {
    fn output(&self, given: Option<PathBuf>, default_name: String) -> PathBuf {
        let path = given.unwrap_or_else(|| PathBuf::from(default_name));
        match &self.out_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path,
        }
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
        if self.threads == 0 {
            return f();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(f)
    }
}

fn parse_s_range(s: &str) -> Result<std::ops::RangeInclusive<i64>> {
    let bad = || Error::Config(format!("bad stagnation range `{s}`, expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn parse_priors(names: &[String]) -> Result<Vec<PriorKind>> {
    names.iter().map(|n| n.parse()).collect()
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Params(_) => Failure::Usage(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

/// Parse `argv` (program name first), run the command and return the
/// process exit code: 0 on success, 1 on runtime or validation failure,
/// 2 on bad usage.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn run(cli: Cli) -> std::result::Result<i32, Failure> {
    let file = match &cli.config {
        Some(p) => read_config(p)?,
        None => FileConfig::default(),
    };
    let threads = match (cli.threads, env_var(ENV_THREADS)) {
        (Some(n), _) => n,
        (None, Some(v)) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("{ENV_THREADS} must be a thread count, got `{v}`")))?,
        (None, None) => file.threads.unwrap_or(0),
    };
    let out_dir = cli.out_dir.clone().or_else(|| env_var(ENV_OUT_DIR).map(PathBuf::from)).or(file.out_dir.clone());
    let common = Common { threads, out_dir };
    if let Some(dir) = &common.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Sweep(a) => sweep(a, &file, &common, &mut out),
        Command::Analyze(a) => analyze_cmd(a, &file, &common, &mut out),
        Command::Theory(a) => theory(a, &file, &common, &mut out),
        Command::Validate(a) => validate(a, &common, &mut out),
    }
}

fn say(out: &mut dyn Write, line: String) {
    let _ = writeln!(out, "{line}");
}

fn sweep(a: SweepArgs, file: &FileConfig, common: &Common, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let machine = match (a.machine, &file.machine) {
        (Some(m), _) => m,
        (None, Some(name)) => name.parse()?,
        (None, None) => return Err(Failure::Usage("sweep needs --machine (bf, tag2 or rule110)".into())),
    };
    let (len, steps) = desk_defaults(machine);
    let defaults = MachineConfig::default();
    let machine_config = MachineConfig {
        max_steps: a.max_steps.or(file.max_steps).unwrap_or(steps),
        rule110_width: a.width.or(file.rule110_width).unwrap_or(defaults.rule110_width),
        tag_start_word: a
            .tag_start
            .or(file.tag_start_word.clone())
            .map(String::into_bytes)
            .unwrap_or(defaults.tag_start_word),
    };
    let max_len = a.max_len.or(file.max_symbol_length).unwrap_or(len);
    let shard_count = a.shard_count.or(file.shard_count).unwrap_or(1);
    let shard_index = a.shard_index.or(file.shard_index).unwrap_or(0);
    let default_name = if shard_count > 1 {
        format!("{machine}_L{max_len}_shard{shard_index}of{shard_count}.jsonl")
    } else {
        format!("{machine}_L{max_len}.jsonl")
    };
    let path = common.output(a.out, default_name);
    let mut config = SweepConfig::new(machine, max_len, machine_config).shard(shard_index, shard_count);
    config.threads = common.threads;
    config.validate()?;
    let store = run_sweep(&config)?;
    save_store(&store, &path)?;
    let t = &store.totals;
    say(
        out,
        format!(
            "{machine} max_len {max_len}: {} programs, {} with output, {} empty, {} timeout, {} invalid; {} distinct outputs -> {}",
            t.enumerated,
            t.halted_output,
            t.halted_empty,
            t.timeout,
            t.invalid,
            store.len(),
            path.display()
        ),
    );
    Ok(0)
}

fn analyze_cmd(a: AnalyzeArgs, file: &FileConfig, common: &Common, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let priors = match (a.priors, &file.priors) {
        (Some(p), _) => p,
        (None, Some(names)) => parse_priors(names)?,
        (None, None) => PriorKind::ALL.to_vec(),
    };
    let defaults = CurveConfig::default();
    let config = CurveConfig {
        grid_ratio: a.grid_ratio.or(file.grid_ratio).unwrap_or(defaults.grid_ratio),
        windows: a.windows.or(file.windows.clone()).unwrap_or(defaults.windows),
        ..defaults
    };
    config.validate()?;
    let mut store = load_store(&a.inputs[0])?;
    for path in &a.inputs[1..] {
        store = merge_stores(&store, &load_store(path)?)?;
    }
    let table = common.install(|| analyze(&store, &priors, &config))?;
    let path = common.output(a.out, format!("{}_curves.csv", store.machine()));
    export_curves(&table, &path)?;
    if a.print {
        let _ = write!(out, "{}", render_table(&table));
    }
    say(out, format!("{} curve rows from {} outputs -> {}", table.rows.len(), store.len(), path.display()));
    Ok(0)
}

fn theory(a: TheoryArgs, file: &FileConfig, common: &Common, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let t = a.t.or(file.t).unwrap_or(30);
    let k_hat = a.k_hat.or(file.k_hat).unwrap_or(120);
    let n_hat = a.n_hat.or(file.n_hat).unwrap_or(4096);
    let s_text = a.s.or(file.s_range.clone()).unwrap_or_else(|| "1..40".into());
    let range = parse_s_range(&s_text)?;
    let base = TheoryParams {
        t,
        n_hat,
        m_hat: t - *range.start(),
        k_hat,
    };
    let rows = theory_curves(&base, range, &DefaultBusyBeaver)?;
    let path = common.output(a.out, "theory.csv".into());
    export_theory_csv(&rows, &path)?;
    say(out, format!("{} theory rows (t={t}, k_hat={k_hat}, n_hat={n_hat}, s={s_text}) -> {}", rows.len(), path.display()));
    Ok(0)
}

fn validate(a: ValidateArgs, common: &Common, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let scale = if a.quick { Scale::quick() } else { Scale::desk() };
    let wanted = |id: u8| a.only.as_ref().is_none_or(|o| o.contains(&id));
    if let Some(bad) = a.only.iter().flatten().find(|&&id| !(1..=9).contains(&id)) {
        return Err(Failure::Usage(format!("no criterion {bad}; criteria are 1 to 9")));
    }
    let mut all = true;
    for id in 1..=9u8 {
        if !wanted(id) {
            continue;
        }
        let rep = common.install(|| match id {
            1 => validation::criterion_1(),
            2 => validation::criterion_2(),
            3 => validation::criterion_3(),
            4 => validation::criterion_4(),
            5 => validation::criterion_5(),
            6 => validation::criterion_6(),
            7 => validation::criterion_7(&scale),
            8 => validation::criterion_8(&scale),
            _ => validation::criterion_9(),
        })?;
        all &= rep.passed;
        say(out, rep.to_string());
        let _ = out.flush();
    }
    Ok(if all { 0 } else { 1 })
}
