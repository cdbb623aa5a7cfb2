//! Command-line front end: `generate`, `analyze`, `graph`, `verify`.
//!
//! Every run is described by a serializable [`RunConfig`]; equal configs give
//! byte-identical output. Exit codes: 0 ok, 1 a bound or identity is
//! violated, 2 configuration or precondition error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{default_prefix_len, Analysis, AnalysisConfig, EnginePreference};
use crate::error::{Error, Result};
use crate::frequency::cluster_frequencies;
use crate::qnum::{parse_rational, QuadraticNumber};
use crate::rauzy::dot::{graph_to_dot, reduced_to_dot};
use crate::rauzy::{classify_mu_paths, mirror_automorphism, MuClassification};
use crate::words::WordSource;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Default prefix length for `generate`.
pub const DEFAULT_GENERATE_LEN: usize = 1000;

#[derive(Parser, Debug)]
#[command(name = "factorfreq", version, about = "Factor frequencies and Rauzy graphs of infinite words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a prefix of the word with a provenance header
    Generate(RunArgs),
    /// Per-order factor statistics: C, ΔC, P, X, Y, Z, F
    Analyze(RunArgs),
    /// Rauzy graph of one order as DOT
    Graph(RunArgs),
    /// Evaluate every bound over an order range
    Verify(RunArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// Fixed point of a morphism, e.g. "0->01;1->0"
    #[arg(long, group = "source")]
    pub morphism: Option<String>,
    /// Mechanical word "SLOPE;INTERCEPT"; numbers are p/q or (a,b,d) for a+b√d
    #[arg(long, group = "source")]
    pub mechanical: Option<String>,
    /// Interval exchange "LENGTHS;PERMUTATION;START", e.g. "1/5 1/2 3/10;3 2 1;0"
    #[arg(long, group = "source")]
    pub iet: Option<String>,
    /// Periodic word pattern^ω
    #[arg(long, group = "source")]
    pub periodic: Option<String>,
    /// File holding an explicit prefix; lines starting with '#' are ignored
    #[arg(long = "prefix-file", group = "source")]
    pub prefix_file: Option<PathBuf>,
    /// Run configuration as JSON (replaces all other flags)
    #[arg(long, group = "source")]
    pub config: Option<PathBuf>,
    /// Seed letter of the morphism fixed point
    #[arg(long, default_value = "0")]
    pub seed: String,
    /// Prefix length
    #[arg(short = 'N')]
    pub n: Option<usize>,
    #[arg(long = "n-from", default_value_t = 1)]
    pub n_from: usize,
    /// Defaults to --n-from
    #[arg(long = "n-to")]
    pub n_to: Option<usize>,
    #[arg(long, value_enum, default_value_t = EnginePreference::Auto)]
    pub engine: EnginePreference,
    /// Fixed-point bits for interval exchanges with data from several fields
    #[arg(long)]
    pub precision: Option<u32>,
    /// Empirical merge slack τ (rational)
    #[arg(long, default_value = "4")]
    pub slack: String,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Export the reduced Rauzy graph
    #[arg(long)]
    pub reduced: bool,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Generate,
    Analyze,
    Graph,
    Verify,
}

/// Everything that determines a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub source: WordSource,
    /// prefix length; `None` for the command's default
    #[serde(default)]
    pub prefix_len: Option<usize>,
    pub n_from: usize,
    pub n_to: usize,
    #[serde(default)]
    pub engine: EnginePreference,
    /// empirical merge slack as a rational string
    pub slack: String,
    #[serde(default)]
    pub format: Option<OutputFormat>,
    #[serde(default)]
    pub reduced: bool,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn parse_number(s: &str) -> Result<QuadraticNumber> {
    s.trim().parse()
}

/// `SLOPE;INTERCEPT`, intercept defaulting to 0.
pub fn parse_mechanical(spec: &str) -> Result<WordSource> {
    let mut parts = spec.split(';');
    let slope = parse_number(parts.next().unwrap_or(""))?;
    let intercept = match parts.next() {
        Some(s) if !s.trim().is_empty() => parse_number(s)?,
        _ => QuadraticNumber::zero(),
    };
    if parts.next().is_some() {
        return Err(Error::Parse(format!("mechanical spec `{spec}` has more than two fields")));
    }
    Ok(WordSource::Mechanical { slope, intercept })
}

/// `LENGTHS;PERMUTATION;START`, whitespace-separated lists, start defaulting to 0.
pub fn parse_iet(spec: &str, precision_bits: Option<u32>) -> Result<WordSource> {
    let parts: Vec<&str> = spec.split(';').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(Error::Parse(format!("iet spec `{spec}` needs LENGTHS;PERMUTATION[;START]")));
    }
    let lengths = parts[0]
        .split_whitespace()
        .map(parse_number)
        .collect::<Result<Vec<_>>>()?;
    let permutation = parts[1]
        .split_whitespace()
        .map(|p| p.parse::<usize>().map_err(|e| Error::Parse(format!("permutation entry `{p}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let start = match parts.get(2) {
        Some(s) if !s.trim().is_empty() => parse_number(s)?,
        _ => QuadraticNumber::zero(),
    };
    Ok(WordSource::IntervalExchange {
        lengths,
        permutation,
        start,
        precision_bits,
    })
}

/// Letters of a prefix file, skipping `#` lines and whitespace.
pub fn read_prefix_file(path: &PathBuf) -> Result<WordSource> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let word: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.chars().filter(|c| !c.is_whitespace()))
        .collect();
    if word.is_empty() {
        return Err(Error::Parse(format!("{}: no letters in prefix file", path.display())));
    }
    Ok(WordSource::ExplicitPrefix { word })
}

impl RunConfig {
    pub fn from_args(command: CommandKind, a: &RunArgs) -> Result<Self> {
        if let Some(path) = &a.config {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            if cfg.command != command {
                return Err(Error::InvalidParameter(format!(
                    "config is for `{:?}`, not `{:?}`",
                    cfg.command, command
                )));
            }
            return Ok(cfg);
        }
        if a.precision.is_some() && a.iet.is_none() {
            return Err(Error::InvalidParameter("--precision applies to --iet sources only".into()));
        }
        let source = if let Some(m) = &a.morphism {
            WordSource::MorphismFixedPoint {
                morphism: m.parse()?,
                seed: a.seed.clone(),
            }
        } else if let Some(s) = &a.mechanical {
            parse_mechanical(s)?
        } else if let Some(s) = &a.iet {
            parse_iet(s, a.precision)?
        } else if let Some(p) = &a.periodic {
            WordSource::periodic(p)
        } else if let Some(path) = &a.prefix_file {
            read_prefix_file(path)?
        } else {
            return Err(Error::InvalidParameter(
                "one of --morphism, --mechanical, --iet, --periodic, --prefix-file, --config is required".into(),
            ));
        };
        parse_rational(&a.slack)?;
        Ok(RunConfig {
            command,
            source,
            prefix_len: a.n,
            n_from: a.n_from,
            n_to: a.n_to.unwrap_or(a.n_from),
            engine: a.engine,
            slack: a.slack.clone(),
            format: a.format,
            reduced: a.reduced,
            out: a.out.clone(),
        })
    }

    fn analysis(&self) -> Result<Analysis> {
        if self.n_to < self.n_from {
            return Err(Error::InvalidParameter(format!(
                "--n-to {} is below --n-from {}",
                self.n_to, self.n_from
            )));
        }
        let config = AnalysisConfig {
            engine: self.engine,
            prefix_len: self.prefix_len,
            slack: parse_rational(&self.slack)?,
        };
        Analysis::new(self.source.clone(), self.n_to, config)
    }
}

/// Result of a run: exit code and the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Runs one configured command.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let (text, code, note) = match cfg.command {
        CommandKind::Generate => (generate(cfg)?, EXIT_OK, String::new()),
        CommandKind::Analyze => (analyze(cfg)?, EXIT_OK, String::new()),
        CommandKind::Graph => (graph(cfg)?, EXIT_OK, String::new()),
        CommandKind::Verify => verify(cfg)?,
    };
    let stdout = match &cfg.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome {
        code,
        stdout,
        stderr: note,
    })
}

/// Parses arguments (including the program name) and runs.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (kind, args) = match &cli.command {
        Command::Generate(a) => (CommandKind::Generate, a),
        Command::Analyze(a) => (CommandKind::Analyze, a),
        Command::Graph(a) => (CommandKind::Graph, a),
        Command::Verify(a) => (CommandKind::Verify, a),
    };
    match RunConfig::from_args(kind, args).and_then(|cfg| run(&cfg)) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn generate(cfg: &RunConfig) -> Result<String> {
    let n = cfg.prefix_len.unwrap_or(DEFAULT_GENERATE_LEN);
    let word = cfg.source.generate(n)?;
    let precision = match &cfg.source {
        WordSource::IntervalExchange {
            precision_bits: Some(b),
            ..
        } => format!("{b} bits"),
        WordSource::IntervalExchange { lengths, start, .. }
            if crate::qnum::common_radicand(lengths.iter().chain(std::iter::once(start))).is_none() =>
        {
            format!("{} bits", crate::words::DEFAULT_PRECISION_BITS)
        }
        _ => "exact".into(),
    };
    let mut out = String::new();
    writeln!(out, "# source: {}", cfg.source.describe()).unwrap();
    writeln!(out, "# N: {n}").unwrap();
    writeln!(out, "# precision: {precision}").unwrap();
    writeln!(out, "{word}").unwrap();
    Ok(out)
}

/// One row of `analyze`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyzeRow {
    pub n: usize,
    pub c: usize,
    pub delta_c: usize,
    pub p_n: usize,
    pub p_n1: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub f: usize,
    pub engine: String,
    pub adequate: bool,
    /// frequency classes of `L_{n+1}`: value and member factors
    pub classes: Vec<(String, Vec<String>)>,
}

fn analyze_rows(cfg: &RunConfig) -> Result<Vec<AnalyzeRow>> {
    let a = cfg.analysis()?;
    let idx = a.index();
    let slack = parse_rational(&cfg.slack)?;
    (cfg.n_from..=cfg.n_to)
        .map(|n| {
            let (c, delta_c) = idx.complexity(n)?;
            let s = idx.special_factors(n)?;
            let freqs = a.frequencies(n)?;
            let clustering = cluster_frequencies(&freqs, n + 1, &slack)?;
            Ok(AnalyzeRow {
                n,
                c,
                delta_c,
                p_n: idx.palindrome_complexity(n)?,
                p_n1: idx.palindrome_complexity(n + 1)?,
                x: s.x,
                y: s.y,
                z: s.z,
                f: clustering.count(),
                engine: freqs.engine.to_string(),
                adequate: idx.is_adequate(n + 1),
                classes: clustering
                    .classes
                    .iter()
                    .map(|k| {
                        (
                            k.representative.to_string(),
                            k.members.iter().map(|w| idx.render(w)).collect(),
                        )
                    })
                    .collect(),
            })
        })
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn analyze(cfg: &RunConfig) -> Result<String> {
    let rows = analyze_rows(cfg)?;
    match cfg.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "C", "dC", "P_n", "P_n1", "X", "Y", "Z", "F", "engine"])
                .map_err(|e| Error::Io(e.to_string()))?;
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    r.c.to_string(),
                    r.delta_c.to_string(),
                    r.p_n.to_string(),
                    r.p_n1.to_string(),
                    r.x.to_string(),
                    r.y.to_string(),
                    r.z.to_string(),
                    r.f.to_string(),
                    r.engine.clone(),
                ])
                .map_err(|e| Error::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        OutputFormat::Dot => Err(Error::InvalidParameter("analyze writes csv or json".into())),
    }
}

#[derive(Serialize)]
struct GraphJson {
    order: usize,
    engine: String,
    vertices: Vec<String>,
    edges: Vec<(String, String, String, String)>,
}

fn graph(cfg: &RunConfig) -> Result<String> {
    if cfg.n_to != cfg.n_from {
        return Err(Error::InvalidParameter("graph takes a single order (--n-from)".into()));
    }
    let n = cfg.n_from;
    let a = cfg.analysis()?;
    let g = a.graph(n)?;
    let r = a.reduced(&g)?;
    let idx = a.index();
    let closed = idx.reversal_closure_defect(n)?.is_empty() && idx.reversal_closure_defect(n + 1)?.is_empty();
    let mu: Option<MuClassification> = if closed && !r.degenerate {
        let m = mirror_automorphism(&g, idx)?;
        Some(classify_mu_paths(&g, &r, &m, idx)?)
    } else {
        None
    };
    match cfg.format.unwrap_or(OutputFormat::Dot) {
        OutputFormat::Dot if cfg.reduced => Ok(reduced_to_dot(&g, &r, mu.as_ref())),
        OutputFormat::Dot => Ok(graph_to_dot(&g, mu.as_ref().map(|m| (r.paths.as_slice(), m)))),
        OutputFormat::Json => {
            let v = |i: usize| g.render(&g.vertices()[i]);
            let j = GraphJson {
                order: n,
                engine: g.engine.to_string(),
                vertices: g.vertices().iter().map(|w| g.render(w)).collect(),
                edges: g
                    .edges()
                    .iter()
                    .map(|e| (g.render(&e.factor), v(e.source), v(e.target), e.label.to_string()))
                    .collect(),
            };
            if cfg.reduced {
                to_json(&r)
            } else {
                to_json(&j)
            }
        }
        OutputFormat::Csv => Err(Error::InvalidParameter("graph writes dot or json".into())),
    }
}

fn verify(cfg: &RunConfig) -> Result<(String, i32, String)> {
    let a = cfg.analysis()?;
    let range = a.verify_range(cfg.n_from, cfg.n_to)?;
    let text = match cfg.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => range.to_csv()?,
        OutputFormat::Json => to_json(&range)?,
        OutputFormat::Dot => return Err(Error::InvalidParameter("verify writes csv or json".into())),
    };
    let mut note = format!(
        "verify: {} orders, engine {}, {} violations\n",
        range.reports.len(),
        range.engine,
        range.violations.len()
    );
    for (n, what) in &range.violations {
        writeln!(note, "violation at n={n}: {what}").unwrap();
    }
    let code = if range.is_clean() { EXIT_OK } else { EXIT_VIOLATION };
    Ok((text, code, note))
}

/// Default prefix length the analysis commands use for the given order range.
pub fn effective_prefix_len(cfg: &RunConfig) -> usize {
    cfg.prefix_len
        .or_else(|| cfg.source.max_len())
        .unwrap_or_else(|| default_prefix_len(cfg.n_to))
}
