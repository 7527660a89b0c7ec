//! The `ordent` command line: generation, census, finite PC curves, entropies,
//! rates, growth classification and the logistic-map oracle.
//!
//! Tables go to `--out` or standard output as CSV (with `#` comment headers)
//! or JSON; both carry a `schema_version`. Usage errors exit with 2, data
//! errors with 1.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::census::{census, finite_pc_curve};
use crate::classes::{classify_growth, entropy_rate, growth_points, rate_upper_bound, ComplexityClass, EntropyOrder, GrowthClass};
use crate::error::{invalid_arg, Error, Result};
use crate::logistic::{exact_transition_probs, ordinal_cells, transition_json};
use crate::ordinal::{ln_factorial, TimeSeries};
use crate::process::{generate, load_series, reference_processes, save_binary, save_csv, write_csv, ProcessKind, ProcessSpec};

pub const SCHEMA_VERSION: u32 = 1;
pub const MISSING_CAVEAT: &str = "missing patterns are not necessarily forbidden";
pub const THREADS_ENV: &str = "ORDENT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "ordent", version, about = "Ordinal-pattern statistics and group entropies of time series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a series and write it as CSV or binary.
    Generate(GenerateArgs),
    /// Count ordinal patterns of length L.
    Census(CensusArgs),
    /// Finite permutation-complexity curve g(L,T) averaged over realizations.
    PcCurve(PcCurveArgs),
    /// Class-tailored permutation entropies Z(L) and Z(L)/L.
    Entropy(EntropyArgs),
    /// Entropy-rate sequences Z(L)/L with their class upper bound.
    Rate(EntropyArgs),
    /// Fit ln(allowed patterns) against L, L ln L and ln L!.
    Classify(ClassifyArgs),
    /// Exact ordinal cells and transition probabilities of the logistic map.
    Oracle(OracleArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesFormat {
    Csv,
    Bin,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parameter overrides applied on top of a `--process` description.
#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub hurst: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub amp: Option<f64>,
    #[arg(long)]
    pub y0: Option<f64>,
}

impl ParamArgs {
    fn apply(&self, kind: &mut ProcessKind) -> Result<()> {
        for (key, v) in [
            ("hurst", self.hurst),
            ("a", self.a),
            ("x0", self.x0),
            ("eps", self.eps),
            ("amp", self.amp),
            ("y0", self.y0),
        ] {
            if let Some(v) = v {
                kind.set_param(key, v)?;
            }
        }
        Ok(())
    }
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    /// Process description, e.g. `fbm:hurst=0.2` or `logistic:a=4`.
    #[arg(long)]
    pub process: Option<String>,
    /// Series file (CSV or ORDENTS1 binary) instead of a generated process.
    #[arg(long, conflicts_with = "process")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Series length.
    #[arg(long = "t", default_value_t = 100_000)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Iterations dropped before recording (maps default to 1000).
    #[arg(long)]
    pub transient: Option<usize>,
}

impl SeriesArgs {
    fn spec(&self) -> Result<ProcessSpec> {
        let text = self.process.as_deref().ok_or_else(|| invalid_arg("need --process or --input"))?;
        build_spec(text, &self.params, self.t, self.seed, self.transient)
    }

    fn load(&self) -> Result<(String, TimeSeries)> {
        match &self.input {
            Some(path) => Ok((path.display().to_string(), load_series(path)?)),
            None => {
                let spec = self.spec()?;
                Ok((spec.kind.to_string(), generate(&spec)?))
            }
        }
    }
}

fn build_spec(text: &str, params: &ParamArgs, t: usize, seed: u64, transient: Option<usize>) -> Result<ProcessSpec> {
    let mut kind = ProcessKind::from_str(text)?;
    params.apply(&mut kind)?;
    let mut spec = ProcessSpec::new(kind, t, seed);
    if let Some(n) = transient {
        spec = spec.with_transient(n);
    }
    spec.validate()?;
    Ok(spec)
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub process: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long = "t")]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub transient: Option<usize>,
    /// Series format; inferred from a `.bin` extension if omitted.
    #[arg(long, value_enum)]
    pub format: Option<SeriesFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Pattern length.
    #[arg(long = "l")]
    pub l: usize,
    /// List the patterns that never occurred.
    #[arg(long)]
    pub report_missing: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Several processes: explicit `--process` flags and/or the reference set.
#[derive(Args, Debug, Clone)]
pub struct ProcessSetArgs {
    /// Process description; repeatable.
    #[arg(long)]
    pub process: Vec<String>,
    /// Add white noise, fGn(0.75), fBm(0.2, 0.5, 0.7), noisy cubic and noisy skew tent.
    #[arg(long)]
    pub reference_set: bool,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub transient: Option<usize>,
}

impl ProcessSetArgs {
    fn specs(&self, t: usize, seed: u64) -> Result<Vec<ProcessSpec>> {
        let mut specs = Vec::new();
        for text in &self.process {
            specs.push(build_spec(text, &self.params, t, seed, self.transient)?);
        }
        if self.reference_set {
            for kind in reference_processes() {
                let mut spec = ProcessSpec::new(kind, t, seed);
                if let Some(n) = self.transient {
                    spec = spec.with_transient(n);
                }
                specs.push(spec);
            }
        }
        if specs.is_empty() {
            return Err(invalid_arg("need at least one --process or --reference-set"));
        }
        Ok(specs)
    }
}

#[derive(Args, Debug)]
pub struct PcCurveArgs {
    #[command(flatten)]
    pub processes: ProcessSetArgs,
    #[arg(long = "l")]
    pub l: usize,
    /// Series lengths: `a,b,c`, `start..end` or `start:end:step`.
    #[arg(long)]
    pub t_grid: String,
    #[arg(long, default_value_t = 10)]
    pub realizations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub processes: ProcessSetArgs,
    /// Series file; evaluated as a single realization.
    #[arg(long, conflicts_with_all = ["process", "reference_set"])]
    pub input: Option<PathBuf>,
    /// Pattern lengths: `a,b,c`, `start..end` or `start:end:step`.
    #[arg(long = "l", default_value = "3..7")]
    pub l: String,
    /// Entropic indices; 0 selects the topological entropy.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5")]
    pub alpha: Vec<f64>,
    /// Complexity class: `fac`, `exp[:c]` or `subfac:c`.
    #[arg(long, default_value = "fac")]
    pub class: String,
    #[arg(long = "t", default_value_t = 100_000)]
    pub t: usize,
    #[arg(long, default_value_t = 10)]
    pub realizations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Pattern lengths to count.
    #[arg(long = "l", default_value = "3..7")]
    pub l: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleTable {
    Cells,
    Transitions,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long = "l", default_value_t = 3)]
    pub l: usize,
    #[arg(long, value_enum, default_value = "cells")]
    pub table: OracleTable,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `a,b,c`, `start..end` (inclusive) or `start:end:step` (inclusive).
pub fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| invalid_arg(format!("not a non-negative integer: `{s}`")))
    };
    let out: Vec<usize> = if let Some((a, b)) = text.split_once("..") {
        (num(a)?..=num(b)?).collect()
    } else if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(invalid_arg(format!("expected start:end:step, got `{text}`")));
        }
        let (start, end, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if step == 0 {
            return Err(invalid_arg("step must be positive"));
        }
        (start..=end).step_by(step).collect()
    } else {
        text.split(',').map(num).collect::<Result<_>>()?
    };
    if out.is_empty() {
        return Err(invalid_arg(format!("empty list `{text}`")));
    }
    Ok(out)
}

/// `fac`, `exp`, `exp:c`, `subfac:c` (also `factorial`, `exponential`,
/// `sub-factorial`, and `c=` spelled out).
pub fn parse_class(text: &str) -> Result<ComplexityClass> {
    let (name, param) = match text.split_once(':') {
        Some((n, p)) => (n, Some(p.trim_start_matches("c="))),
        None => (text, None),
    };
    let c = param
        .map(|p| p.parse::<f64>().map_err(|_| invalid_arg(format!("bad class parameter `{p}`"))))
        .transpose()?;
    match name {
        "fac" | "factorial" => Ok(ComplexityClass::Factorial),
        "exp" | "exponential" => ComplexityClass::exponential(c.unwrap_or(1.0)),
        "subfac" | "sub-factorial" => {
            ComplexityClass::sub_factorial(c.ok_or_else(|| invalid_arg("sub-factorial class needs a c value"))?)
        }
        other => Err(invalid_arg(format!("unknown class `{other}`"))),
    }
}

/// A tidy table with metadata, rendered as CSV or JSON.
struct Table {
    meta: Vec<(String, Value)>,
    notes: Vec<String>,
    header: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Self {
            meta: Vec::new(),
            notes: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.push((key.to_string(), value.into()));
    }

    fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
                for (k, v) in &self.meta {
                    writeln!(out, "# {k}={}", plain(v))?;
                }
                for n in &self.notes {
                    writeln!(out, "# {n}")?;
                }
                writeln!(out, "{}", self.header.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(plain).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                Ok(())
            }
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
                for (k, v) in &self.meta {
                    doc.insert(k.clone(), v.clone());
                }
                if !self.notes.is_empty() {
                    doc.insert("notes".into(), json!(self.notes));
                }
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.header.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
                    .collect();
                doc.insert("rows".into(), Value::Array(rows));
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn with_output(output: &OutputArgs, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match &output.out {
        Some(path) => {
            let io_err = |source| Error::Io {
                path: path.clone(),
                source,
            };
            let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
            f(&mut w).and_then(|_| w.flush()).map_err(io_err)
        }
        None => f(stdout).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn emit(table: &Table, output: &OutputArgs, stdout: &mut dyn Write) -> Result<()> {
    with_output(output, stdout, |w| table.render(output.format, w))
}

fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write) -> Result<()> {
    let spec = build_spec(&args.process, &args.params, args.t, args.seed, args.transient)?;
    let ts = generate(&spec)?;
    let format = args.format.unwrap_or(match &args.out {
        Some(p) if p.extension().is_some_and(|e| e == "bin") => SeriesFormat::Bin,
        _ => SeriesFormat::Csv,
    });
    let (min, max) = ts
        .samples()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let summary = format!("process={} T={} min={min} max={max} seed={}", spec.kind, ts.len(), spec.seed);
    let stdout_err = |source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    match (&args.out, format) {
        (Some(path), SeriesFormat::Csv) => save_csv(&ts, path)?,
        (Some(path), SeriesFormat::Bin) => save_binary(&ts, path)?,
        (None, SeriesFormat::Csv) => {
            write_csv(&ts, stdout).map_err(stdout_err)?;
            eprintln!("{summary}");
            return Ok(());
        }
        (None, SeriesFormat::Bin) => return Err(invalid_arg("binary output needs --out")),
    }
    writeln!(stdout, "{summary}").map_err(stdout_err)
}

fn cmd_census(args: &CensusArgs, stdout: &mut dyn Write) -> Result<()> {
    let (source, ts) = args.series.load()?;
    let d = census(&ts, args.l)?;
    let mut table = Table::new(vec!["code", "ranks", "count", "probability"]);
    table.meta("source", source);
    table.meta("L", args.l);
    table.meta("T", ts.len());
    table.meta("allowed_count", d.allowed_count());
    table.meta("ln_L_factorial", ln_factorial(args.l));
    for (code, count) in d.observed() {
        table.rows.push(vec![
            json!(code.code()),
            json!(code.pattern().dashed()),
            json!(count),
            json!(count as f64 / d.total() as f64),
        ]);
    }
    if args.report_missing {
        if args.l > 10 {
            return Err(invalid_arg("--report-missing enumerates all L! patterns; use L <= 10"));
        }
        let missing: Vec<String> = d.missing().map(|c| c.pattern().dashed()).collect();
        table.meta("missing_count", missing.len());
        table.meta("missing", missing);
        table.notes.push(MISSING_CAVEAT.to_string());
    }
    emit(&table, &args.output, stdout)
}

fn cmd_pc_curve(args: &PcCurveArgs, stdout: &mut dyn Write) -> Result<()> {
    let grid = parse_usize_list(&args.t_grid)?;
    let t_max = *grid.iter().max().expect("non-empty");
    let specs = args.processes.specs(t_max, args.seed)?;
    let mut table = Table::new(vec!["process", "L", "T", "g_mean", "g_stddev"]);
    table.meta("realizations", args.realizations);
    table.meta("seed", args.seed);
    table.meta("ln_L_factorial", ln_factorial(args.l));
    for spec in &specs {
        let curve = finite_pc_curve(spec, args.l, &grid, args.realizations, args.seed)?;
        for (i, &t) in curve.t_grid.iter().enumerate() {
            table.rows.push(vec![
                json!(spec.kind.to_string()),
                json!(args.l),
                json!(t),
                json!(curve.mean[i]),
                json!(curve.stddev[i]),
            ]);
        }
    }
    emit(&table, &args.output, stdout)
}

fn entropy_table(args: &EntropyArgs, with_bound: bool) -> Result<Table> {
    let lens = parse_usize_list(&args.l)?;
    let class = parse_class(&args.class)?;
    for &a in &args.alpha {
        EntropyOrder::new(lens[0], a)?;
    }
    let mut header = vec!["process", "class", "alpha", "L", "z_mean", "z_over_l", "z_over_l_stddev"];
    if with_bound {
        header.push("upper_bound");
    }
    let mut table = Table::new(header);
    table.meta("class", class.label());
    table.meta("seed", args.seed);

    let push = |table: &mut Table, process: &str, alpha: f64, len: usize, z: f64, rate: f64, sd: f64| -> Result<()> {
        let mut row = vec![
            json!(process),
            json!(class.label()),
            json!(alpha),
            json!(len),
            json!(z),
            json!(rate),
            json!(sd),
        ];
        if with_bound {
            row.push(json!(rate_upper_bound(len, &class)?));
        }
        table.rows.push(row);
        Ok(())
    };

    if let Some(path) = &args.input {
        let ts = load_series(path)?;
        table.meta("T", ts.len());
        table.meta("realizations", 1);
        let source = path.display().to_string();
        for &alpha in &args.alpha {
            for &len in &lens {
                let z = EntropyOrder::new(len, alpha)?.evaluate(&census(&ts, len)?, &class)?;
                push(&mut table, &source, alpha, len, z, z / len as f64, 0.0)?;
            }
        }
        return Ok(table);
    }

    table.meta("T", args.t);
    table.meta("realizations", args.realizations);
    let specs = args.processes.specs(args.t, args.seed)?;
    for spec in &specs {
        for &alpha in &args.alpha {
            let est = entropy_rate(spec, &class, alpha, &lens, args.realizations, args.seed)?;
            for w in &est.warnings {
                if !table.notes.contains(w) {
                    table.notes.push(w.clone());
                }
            }
            for p in &est.points {
                push(&mut table, &spec.kind.to_string(), alpha, p.len, p.mean_entropy, p.mean_rate, p.std_rate)?;
            }
        }
    }
    Ok(table)
}

fn cmd_classify(args: &ClassifyArgs, stdout: &mut dyn Write) -> Result<()> {
    let (source, ts) = args.series.load()?;
    let lens = parse_usize_list(&args.l)?;
    let points = growth_points(&ts, &lens)?;
    let fit = classify_growth(&points)?;
    let (class, c) = match fit.class {
        GrowthClass::Exponential { c } => ("exponential", c),
        GrowthClass::Factorial { c } => ("factorial", c),
        GrowthClass::SubFactorial { c } => ("sub-factorial", c),
    };
    let mut table = Table::new(vec!["model", "c_hat", "rss", "best"]);
    table.meta("source", source);
    table.meta("T", ts.len());
    table.meta("class", class);
    table.meta("c_hat", c);
    table.meta("ln_allowed", points.iter().map(|&(l, y)| json!([l, y])).collect::<Vec<_>>());
    for m in &fit.fits {
        let name = match m.model {
            crate::classes::GrowthModel::Linear => "c*L",
            crate::classes::GrowthModel::LinLog => "c*L*ln(L)",
            crate::classes::GrowthModel::LnFactorial => "c*ln(L!)",
        };
        table.rows.push(vec![json!(name), json!(m.c), json!(m.rss), json!(m.model == fit.best)]);
    }
    emit(&table, &args.output, stdout)
}

fn cmd_oracle(args: &OracleArgs, stdout: &mut dyn Write) -> Result<()> {
    match args.table {
        OracleTable::Cells => {
            let cells = ordinal_cells(args.l)?;
            if args.output.format == Format::Json {
                let mut doc = cells.to_json();
                doc["schema_version"] = json!(SCHEMA_VERSION);
                return with_output(&args.output, stdout, |w| {
                    serde_json::to_writer_pretty(&mut *w, &doc)?;
                    writeln!(w)
                });
            }
            let mut table = Table::new(vec!["code", "ranks", "lo", "hi", "lo_closed", "hi_closed", "measure"]);
            table.meta("L", args.l);
            table.meta("allowed_count", cells.allowed_count());
            for cell in &cells.cells {
                for i in &cell.intervals {
                    table.rows.push(vec![
                        json!(cell.code().code()),
                        json!(cell.pattern.dashed()),
                        json!(i.lo),
                        json!(i.hi),
                        json!(i.lo_closed),
                        json!(i.hi_closed),
                        json!(i.measure()),
                    ]);
                }
            }
            emit(&table, &args.output, stdout)
        }
        OracleTable::Transitions => {
            let m = exact_transition_probs(args.l)?;
            if args.output.format == Format::Json {
                let mut doc = transition_json(&m);
                doc["schema_version"] = json!(SCHEMA_VERSION);
                return with_output(&args.output, stdout, |w| {
                    serde_json::to_writer_pretty(&mut *w, &doc)?;
                    writeln!(w)
                });
            }
            let mut table = Table::new(vec!["from", "to", "p"]);
            table.meta("L", args.l);
            for from in m.sources() {
                for (to, p) in m.row(from) {
                    table.rows.push(vec![json!(from.pattern().dashed()), json!(to.pattern().dashed()), json!(p)]);
                }
            }
            emit(&table, &args.output, stdout)
        }
    }
}

/// Sizes the global worker pool from `ORDENT_THREADS`, if set.
fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| invalid_arg(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    configure_threads()?;
    match &cli.command {
        Command::Generate(a) => cmd_generate(a, stdout),
        Command::Census(a) => cmd_census(a, stdout),
        Command::PcCurve(a) => cmd_pc_curve(a, stdout),
        Command::Entropy(a) => {
            let table = entropy_table(a, false)?;
            emit(&table, &a.output, stdout)
        }
        Command::Rate(a) => {
            let table = entropy_table(a, true)?;
            emit(&table, &a.output, stdout)
        }
        Command::Classify(a) => cmd_classify(a, stdout),
        Command::Oracle(a) => cmd_oracle(a, stdout),
    }
}

/// Exit status for an error: 2 for invalid arguments, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("ordent: {e}");
            exit_code(&e)
        }
    }
}
