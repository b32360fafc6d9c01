//! The `cogmap` command line.
//!
//! Every subcommand builds an [`OutputDocument`] and renders it as an
//! aligned text table, JSON or CSV. Vertex numbers are 1-based on the
//! command line and in all output.
//!
//! Exit codes: 0 success, 1 usage, 2 input validation, 3 numerical or path
//! budget failure, 4 method not applicable (impulse scoring on an unstable
//! map).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, ErrorKind, Result};
use crate::impulse::{self, SimulationOptions, StabilityVerdict};
use crate::influence::{self, InfluenceOptions, InfluenceReport, PathInfluence};
use crate::kosko::{self, WeightMode};
use crate::map::{format_weight, load_map, CognitiveMap, LoadOptions, MapFormat};
use crate::paths::{self, PathBudget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_NOT_APPLICABLE: i32 = 4;

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Argument => EXIT_USAGE,
        ErrorKind::Validation => EXIT_VALIDATION,
        ErrorKind::Numerical => EXIT_NUMERICAL,
        ErrorKind::NotApplicable => EXIT_NOT_APPLICABLE,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cogmap",
    version,
    about = "Influence analysis of weighted signed cognitive maps"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub format: OutputFormat,
    /// Map file format; inferred from the extension when omitted (`.json`
    /// is JSON, anything else CSV).
    #[arg(long, global = true)]
    pub input_format: Option<InputFormat>,
    /// Parse CSV cells with a decimal comma, cells separated by `;`.
    #[arg(long, global = true)]
    pub decimal_comma: bool,
    /// Worker threads for the pairwise influence loop.
    #[arg(long, env = "COGMAP_THREADS", default_value_t = 1, global = true)]
    pub threads: usize,
    /// Abort when a vertex pair has more simple paths than this.
    #[arg(long, default_value_t = PathBudget::DEFAULT_MAX_PATHS, global = true)]
    pub max_paths: usize,
    /// Longest path considered, in edges (default: number of vertices).
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Impulse convergence threshold on max |p(t)|.
    #[arg(long, default_value_t = SimulationOptions::DEFAULT_EPS, global = true)]
    pub eps: f64,
    /// Impulse step limit (default: 1000 n, at most 100000).
    #[arg(long, global = true)]
    pub max_steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Accumulated influence matrix Z and the Inf_am ranking; with
    /// --from/--to, the per-path breakdown of one entry.
    Analyze {
        map: PathBuf,
        #[command(flatten)]
        pair: OptionalPair,
    },
    /// Impulse and accumulated rankings side by side.
    Compare { map: PathBuf },
    /// Inf_am of eta * W against eta * Inf_am(W).
    ScaleCheck {
        map: PathBuf,
        /// Scale factors, comma separated.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        eta: Vec<f64>,
    },
    /// Impulse scores and ranking; with --from, the trace of a unit impulse
    /// at that vertex.
    Impulse {
        map: PathBuf,
        /// Start vertex of a unit impulse.
        #[arg(long)]
        from: Option<usize>,
    },
    /// Eigenvalues of W and the impulse-stability verdict.
    Stability { map: PathBuf },
    /// All simple paths between two vertices.
    Paths {
        map: PathBuf,
        #[command(flatten)]
        pair: Pair,
    },
    /// Kosko min-max influence between two vertices.
    Kosko {
        map: PathBuf,
        #[command(flatten)]
        pair: Pair,
        /// Use |w| instead of signed weights.
        #[arg(long)]
        abs_weights: bool,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Pair {
    #[arg(long)]
    pub from: usize,
    #[arg(long)]
    pub to: usize,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OptionalPair {
    #[arg(long, requires = "to")]
    pub from: Option<usize>,
    #[arg(long, requires = "from")]
    pub to: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Accumulated,
    Impulse,
    Kosko,
    Stability,
    Paths,
    Compare,
    ScaleCheck,
}

/// What every subcommand produces before rendering.
#[derive(Debug, Clone, Serialize)]
pub struct OutputDocument {
    pub method: Method,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub payload: Value,
    #[serde(skip)]
    table: String,
    #[serde(skip)]
    csv: String,
}

impl OutputDocument {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.table.clone(),
            OutputFormat::Csv => self.csv.clone(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("document serialises");
                s.push('\n');
                s
            }
        }
    }
}

/// Parses `args` and runs the command, writing the rendered document to
/// `stdout` and diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let rendered = err.render().to_string();
            let sink: &mut dyn Write = if err.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok((doc, code)) => {
            if stdout
                .write_all(doc.render(cli.common.format).as_bytes())
                .is_err()
            {
                return EXIT_VALIDATION;
            }
            code
        }
        Err(err) => {
            let _ = writeln!(stderr, "cogmap: {err}");
            exit_code(err.kind())
        }
    }
}

fn read_map(path: &Path, common: &CommonArgs, stdin: &mut dyn Read) -> Result<CognitiveMap> {
    let format = match common.input_format {
        Some(InputFormat::Json) => MapFormat::Json,
        Some(InputFormat::Csv) => MapFormat::Csv,
        None => MapFormat::from_path(path),
    };
    let opts = LoadOptions {
        decimal_comma: common.decimal_comma,
    };
    if path.as_os_str() == "-" {
        load_map(stdin, format, opts)
    } else {
        let file = std::fs::File::open(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        load_map(file, format, opts)
    }
}

fn vertex(map: &CognitiveMap, one_based: usize) -> Result<usize> {
    if one_based == 0 || one_based > map.n() {
        return Err(Error::InvalidArgument(format!(
            "vertex {one_based} out of range 1..={}",
            map.n()
        )));
    }
    Ok(one_based - 1)
}

fn budget(common: &CommonArgs) -> PathBudget {
    PathBudget {
        max_paths: common.max_paths,
        max_len: common.max_len,
    }
}

fn sim_options(map: &CognitiveMap, common: &CommonArgs) -> SimulationOptions {
    let mut opts = SimulationOptions::for_map(map);
    opts.eps = common.eps;
    if let Some(steps) = common.max_steps {
        opts.max_steps = steps;
    }
    opts
}

fn influence_options(common: &CommonArgs) -> InfluenceOptions {
    InfluenceOptions {
        budget: budget(common),
        threads: common.threads,
    }
}

/// Runs a parsed command. The second value is the exit code to use on
/// success (scale-check reports a ranking change with a nonzero code).
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(OutputDocument, i32)> {
    let common = &cli.common;
    match &cli.command {
        Command::Analyze { map, pair } => {
            let map = read_map(map, common, stdin)?;
            let pair = match (pair.from, pair.to) {
                (Some(f), Some(t)) => Some((vertex(&map, f)?, vertex(&map, t)?)),
                _ => None,
            };
            Ok((cmd_analyze(&map, common, pair)?, EXIT_OK))
        }
        Command::Compare { map } => {
            let map = read_map(map, common, stdin)?;
            Ok((cmd_compare(&map, common)?, EXIT_OK))
        }
        Command::ScaleCheck { map, eta } => {
            let map = read_map(map, common, stdin)?;
            let doc = cmd_scale_check(&map, common, eta)?;
            let consistent = doc.payload["all_rankings_identical"].as_bool() == Some(true);
            Ok((doc, if consistent { EXIT_OK } else { EXIT_NUMERICAL }))
        }
        Command::Impulse { map, from } => {
            let map = read_map(map, common, stdin)?;
            let from = from.map(|f| vertex(&map, f)).transpose()?;
            Ok((cmd_impulse(&map, common, from)?, EXIT_OK))
        }
        Command::Stability { map } => {
            let map = read_map(map, common, stdin)?;
            Ok((cmd_stability(&map)?, EXIT_OK))
        }
        Command::Paths { map, pair } => {
            let map = read_map(map, common, stdin)?;
            let (f, t) = (vertex(&map, pair.from)?, vertex(&map, pair.to)?);
            Ok((cmd_paths(&map, common, f, t)?, EXIT_OK))
        }
        Command::Kosko {
            map,
            pair,
            abs_weights,
        } => {
            let map = read_map(map, common, stdin)?;
            let (f, t) = (vertex(&map, pair.from)?, vertex(&map, pair.to)?);
            let mode = if *abs_weights {
                WeightMode::Magnitude
            } else {
                WeightMode::Signed
            };
            Ok((cmd_kosko(&map, common, f, t, mode)?, EXIT_OK))
        }
    }
}

fn document(
    method: Method,
    map: &CognitiveMap,
    payload: Value,
    table: String,
    csv: String,
) -> OutputDocument {
    OutputDocument {
        method,
        n: map.n(),
        labels: map.labels().map(<[String]>::to_vec),
        payload,
        table,
        csv,
    }
}

fn one_based(ranking: &[usize]) -> Vec<usize> {
    ranking.iter().map(|v| v + 1).collect()
}

fn fmt3(x: f64) -> String {
    let s = format!("{x:.3}");
    // Avoid printing "-0.000" for tiny negatives.
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_owned()
    } else {
        s
    }
}

fn path_text(vertices: &[usize]) -> String {
    vertices
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" -> ")
}

fn matrix_table(title: &str, rows: &[Vec<f64>]) -> String {
    let n = rows.len();
    let mut out = format!("{title}\n");
    let width = rows
        .iter()
        .flatten()
        .map(|v| fmt3(*v).len())
        .max()
        .unwrap_or(5)
        .max(5);
    let _ = write!(out, "{:>4}", "");
    for j in 1..=n {
        let _ = write!(out, "  {:>width$}", j);
    }
    out.push('\n');
    for (i, row) in rows.iter().enumerate() {
        let _ = write!(out, "{:>4}", i + 1);
        for v in row {
            let _ = write!(out, "  {:>width$}", fmt3(*v));
        }
        out.push('\n');
    }
    out
}

fn matrix_csv(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format_weight(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn ranking_table(
    title: &str,
    map: &CognitiveMap,
    report_scores: &[f64],
    ranking: &[usize],
) -> String {
    let mut out = format!("{title}\n");
    let labelled = map.labels().is_some();
    let _ = writeln!(
        out,
        "{:>6}  {:>10}{}",
        "Vertex",
        "Score",
        if labelled { "  Label" } else { "" }
    );
    for &v in ranking {
        let _ = write!(out, "{:>6}  {:>10}", v + 1, fmt3(report_scores[v]));
        if labelled {
            let _ = write!(out, "  {}", map.label(v));
        }
        out.push('\n');
    }
    out
}

fn ranking_csv(scores: &[f64], ranking: &[usize]) -> String {
    let mut out = String::from("vertex,score\n");
    for &v in ranking {
        let _ = writeln!(out, "{},{}", v + 1, format_weight(scores[v]));
    }
    out
}

fn report_json(report: &InfluenceReport) -> Value {
    json!({ "scores": report.scores, "ranking": one_based(&report.ranking) })
}

pub fn cmd_analyze(
    map: &CognitiveMap,
    common: &CommonArgs,
    pair: Option<(usize, usize)>,
) -> Result<OutputDocument> {
    if let Some((from, to)) = pair {
        return analyze_pair(map, common, from, to);
    }
    let z = influence::influence_matrix_with(map, &influence_options(common))?;
    let report = influence::general_influence(&z);
    let mu = map.max_abs_weight().value();
    let rows = z.to_rows();
    let payload = json!({
        "mu": mu,
        "influence": rows,
        "scores": report.scores,
        "ranking": one_based(&report.ranking),
    });
    let mut table = matrix_table(
        &format!("Influence matrix Z (mu = {})", format_weight(mu)),
        &rows,
    );
    table.push('\n');
    table.push_str(&ranking_table(
        "General influence Inf_am",
        map,
        &report.scores,
        &report.ranking,
    ));
    Ok(document(
        Method::Accumulated,
        map,
        payload,
        table,
        matrix_csv(&rows),
    ))
}

fn analyze_pair(
    map: &CognitiveMap,
    common: &CommonArgs,
    from: usize,
    to: usize,
) -> Result<OutputDocument> {
    let parts: Vec<PathInfluence> = influence::pair_breakdown(map, from, to, budget(common))?;
    let total: f64 = parts.iter().map(|p| p.partial).sum();
    let json_paths: Vec<Value> = parts
        .iter()
        .map(|p| {
            json!({
                "path": one_based(p.path.vertices()),
                "full": p.full,
                "truncated": p.truncated,
                "partial": p.partial,
            })
        })
        .collect();
    let payload = json!({
        "mu": map.max_abs_weight().value(),
        "from": from + 1,
        "to": to + 1,
        "paths": json_paths,
        "influence": total,
    });
    let mut table = format!("Accumulated influence {} -> {}\n", from + 1, to + 1);
    let mut csv = String::from("path,full,truncated,partial\n");
    for p in &parts {
        let _ = writeln!(
            table,
            "  {:<24} z = {:>8}  z~ = {:>8}  partial = {:>8}",
            path_text(p.path.vertices()),
            fmt3(p.full),
            fmt3(p.truncated),
            fmt3(p.partial)
        );
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            one_based(p.path.vertices())
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join("-"),
            format_weight(p.full),
            format_weight(p.truncated),
            format_weight(p.partial)
        );
    }
    if parts.is_empty() {
        table.push_str("  no simple path: vertex unreachable\n");
    }
    let _ = writeln!(table, "z_{}{} = {}", from + 1, to + 1, fmt3(total));
    Ok(document(Method::Accumulated, map, payload, table, csv))
}

fn verdict_json(v: &StabilityVerdict) -> Value {
    json!({
        "eigenvalues": v.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "magnitudes": v.magnitudes,
        "spectral_radius": v.spectral_radius(),
        "all_distinct": v.all_distinct,
        "all_within_unit": v.all_within_unit,
        "stable": v.stable,
    })
}

fn verdict_line(v: &StabilityVerdict) -> String {
    let mags: Vec<String> = v.magnitudes.iter().map(|m| fmt3(*m)).collect();
    format!(
        "{} (nonzero |lambda|: {}; distinct: {}; within unit disc: {})",
        if v.stable {
            "impulse stable"
        } else {
            "impulse unstable"
        },
        if mags.is_empty() {
            "none".to_owned()
        } else {
            mags.join(", ")
        },
        if v.all_distinct { "yes" } else { "no" },
        if v.all_within_unit { "yes" } else { "no" },
    )
}

pub fn cmd_stability(map: &CognitiveMap) -> Result<OutputDocument> {
    let v = impulse::stability_check(map)?;
    let mut table = String::from("Eigenvalues of W\n");
    let mut csv = String::from("re,im,modulus\n");
    for z in &v.eigenvalues {
        let _ = writeln!(
            table,
            "  {:>9} {:>+9}i   |lambda| = {}",
            fmt3(z.re),
            fmt3(z.im),
            fmt3(z.norm())
        );
        let _ = writeln!(
            csv,
            "{},{},{}",
            format_weight(z.re),
            format_weight(z.im),
            format_weight(z.norm())
        );
    }
    let _ = writeln!(table, "{}", verdict_line(&v));
    Ok(document(
        Method::Stability,
        map,
        verdict_json(&v),
        table,
        csv,
    ))
}

pub fn cmd_impulse(
    map: &CognitiveMap,
    common: &CommonArgs,
    from: Option<usize>,
) -> Result<OutputDocument> {
    let opts = sim_options(map, common);
    if let Some(source) = from {
        let n = map.n();
        let trace = impulse::simulate(map, &impulse::unit_impulse(n, source), &vec![0.0; n], opts)?;
        let payload = json!({
            "from": source + 1,
            "converged": trace.converged,
            "steps": trace.steps(),
            "steps_to_converge": trace.steps_to_converge,
            "max_abs_impulse": trace.max_abs_impulse(),
            "values": trace.values,
            "impulses": trace.impulses,
        });
        let mut table = format!("Unit impulse at vertex {}\n", source + 1);
        match trace.steps_to_converge {
            Some(s) => {
                let _ = writeln!(table, "converged after {s} steps (eps = {})", opts.eps);
            }
            None => {
                let _ = writeln!(
                    table,
                    "not converged after {} steps; max |p| = {:.3e}",
                    trace.steps(),
                    trace.max_abs_impulse()
                );
            }
        }
        let _ = writeln!(table, "{:>6}  {:>12}", "Vertex", "v(T) - v(0)");
        for (j, d) in trace.cumulative_change().iter().enumerate() {
            let _ = writeln!(table, "{:>6}  {:>12}", j + 1, fmt3(*d));
        }
        return Ok(document(
            Method::Impulse,
            map,
            payload,
            table,
            trace.to_csv(),
        ));
    }

    let report = impulse::impulse_general_influence(map, opts)?;
    let payload = json!({
        "scores": report.scores,
        "ranking": one_based(&report.ranking),
        "steps": report.steps,
    });
    let table = ranking_table(
        "Impulse influence Inf_p",
        map,
        &report.scores,
        &report.ranking,
    );
    let csv = ranking_csv(&report.scores, &report.ranking);
    Ok(document(Method::Impulse, map, payload, table, csv))
}

pub fn cmd_paths(
    map: &CognitiveMap,
    common: &CommonArgs,
    from: usize,
    to: usize,
) -> Result<OutputDocument> {
    let set = paths::enumerate_with_budget(map, from, to, budget(common))?;
    let mut table = String::new();
    let mut csv = String::from("path,weights\n");
    let mut json_paths = Vec::with_capacity(set.count());
    for p in &set.paths {
        let weights: Vec<f64> = p.edge_weights(map).collect();
        let wtext: Vec<String> = weights.iter().map(|w| format_weight(*w)).collect();
        let _ = writeln!(table, "{} [{}]", path_text(p.vertices()), wtext.join(", "));
        let ids: Vec<String> = p.vertices().iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(csv, "{},{}", ids.join("-"), wtext.join(";"));
        json_paths.push(json!({ "vertices": one_based(p.vertices()), "weights": weights }));
    }
    let _ = writeln!(
        table,
        "{} simple path(s) from {} to {}",
        set.count(),
        from + 1,
        to + 1
    );
    if set.depth_limited {
        let _ = writeln!(table, "note: longer paths omitted by --max-len");
    }
    let payload = json!({
        "from": from + 1,
        "to": to + 1,
        "count": set.count(),
        "depth_limited": set.depth_limited,
        "paths": json_paths,
    });
    Ok(document(Method::Paths, map, payload, table, csv))
}

pub fn cmd_kosko(
    map: &CognitiveMap,
    common: &CommonArgs,
    from: usize,
    to: usize,
    mode: WeightMode,
) -> Result<OutputDocument> {
    let k = kosko::total_influence(map, from, to, mode, budget(common))?;
    let mut table = format!(
        "Kosko influence {} -> {} ({} weights)\n",
        from + 1,
        to + 1,
        match mode {
            WeightMode::Signed => "signed",
            WeightMode::Magnitude => "absolute",
        }
    );
    let mut csv = String::from("path,indirect\n");
    let mut json_paths = Vec::new();
    for (p, ip) in &k.per_path {
        let _ = writeln!(
            table,
            "  {:<24} I_p = {}",
            path_text(p.vertices()),
            fmt3(*ip)
        );
        let ids: Vec<String> = p.vertices().iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(csv, "{},{}", ids.join("-"), format_weight(*ip));
        json_paths.push(json!({ "vertices": one_based(p.vertices()), "indirect": ip }));
    }
    match k.total {
        Some(t) => {
            let _ = writeln!(table, "T = {}", fmt3(t));
            let _ = writeln!(csv, "total,{}", format_weight(t));
        }
        None => {
            let _ = writeln!(
                table,
                "no influence: no path from {} to {}",
                from + 1,
                to + 1
            );
            csv.push_str("total,\n");
        }
    }
    let payload = json!({
        "from": from + 1,
        "to": to + 1,
        "mode": mode,
        "paths": json_paths,
        "total": k.total,
    });
    Ok(document(Method::Kosko, map, payload, table, csv))
}

pub fn cmd_compare(map: &CognitiveMap, common: &CommonArgs) -> Result<OutputDocument> {
    let verdict = impulse::stability_check(map)?;
    let z = influence::influence_matrix_with(map, &influence_options(common))?;
    let accumulated = influence::general_influence(&z);
    let n = map.n();

    let impulse_report = if verdict.stable {
        Some(impulse::impulse_general_influence(
            map,
            sim_options(map, common),
        )?)
    } else {
        None
    };
    let agree = impulse_report
        .as_ref()
        .map(|r| r.ranking == accumulated.ranking);
    let note = match agree {
        Some(true) => "rankings agree".to_owned(),
        Some(false) => {
            let diff = (0..n)
                .filter(|&k| impulse_report.as_ref().unwrap().ranking[k] != accumulated.ranking[k])
                .count();
            format!("rankings differ at {diff} of {n} positions")
        }
        None => "impulse method not applicable: map is not impulse stable".to_owned(),
    };

    let impulse_json = match &impulse_report {
        Some(r) => json!({
            "applicable": true,
            "scores": r.scores,
            "ranking": one_based(&r.ranking),
        }),
        None => json!({ "applicable": false, "reason": "unstable" }),
    };
    let payload = json!({
        "stability": verdict_json(&verdict),
        "accumulated": report_json(&accumulated),
        "impulse": impulse_json,
        "rankings_agree": agree,
        "note": note,
    });

    let mut table = format!("Stability: {}\n\n", verdict_line(&verdict));
    let _ = writeln!(
        table,
        "{:>4}  {:>16}  {:>16}",
        "Rank", "Impulse Inf_p", "Accumulated Inf_am"
    );
    for k in 0..n {
        let imp = match &impulse_report {
            Some(r) => format!("{} ({})", r.ranking[k] + 1, fmt3(r.scores[r.ranking[k]])),
            None => {
                if k == 0 {
                    "unstable - n/a".to_owned()
                } else {
                    String::new()
                }
            }
        };
        let acc = accumulated.ranking[k];
        let _ = writeln!(
            table,
            "{:>4}  {:>16}  {:>16}",
            k + 1,
            imp,
            format!("{} ({})", acc + 1, fmt3(accumulated.scores[acc]))
        );
    }
    let _ = writeln!(table, "\n{note}");

    let mut csv =
        String::from("rank,impulse_vertex,impulse_score,accumulated_vertex,accumulated_score\n");
    for k in 0..n {
        let acc = accumulated.ranking[k];
        let (iv, is) = match &impulse_report {
            Some(r) => (
                (r.ranking[k] + 1).to_string(),
                format_weight(r.scores[r.ranking[k]]),
            ),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            k + 1,
            iv,
            is,
            acc + 1,
            format_weight(accumulated.scores[acc])
        );
    }
    Ok(document(Method::Compare, map, payload, table, csv))
}

/// Largest `|a - b| / |b|` over entries with `b != 0`; `|a|` where `b == 0`.
pub fn max_relative_deviation(actual: &[f64], expected: &[f64]) -> f64 {
    actual
        .iter()
        .zip(expected)
        .map(|(a, b)| {
            if *b == 0.0 {
                a.abs()
            } else {
                (a - b).abs() / b.abs()
            }
        })
        .fold(0.0, f64::max)
}

pub fn cmd_scale_check(
    map: &CognitiveMap,
    common: &CommonArgs,
    etas: &[f64],
) -> Result<OutputDocument> {
    if etas.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one --eta value is required".into(),
        ));
    }
    let opts = influence_options(common);
    let base = influence::general_influence(&influence::influence_matrix_with(map, &opts)?);
    let mut runs = Vec::with_capacity(etas.len());
    let mut all_identical = true;
    let mut columns = Vec::with_capacity(etas.len());
    for &eta in etas {
        let scaled = map.scale(eta)?;
        let report =
            influence::general_influence(&influence::influence_matrix_with(&scaled, &opts)?);
        let expected: Vec<f64> = base.scores.iter().map(|s| s * eta).collect();
        let deviation = max_relative_deviation(&report.scores, &expected);
        let identical = report.ranking == base.ranking;
        all_identical &= identical;
        runs.push(json!({
            "eta": eta,
            "scores": report.scores,
            "expected": expected,
            "max_relative_deviation": deviation,
            "ranking": one_based(&report.ranking),
            "ranking_identical": identical,
        }));
        columns.push((eta, report, deviation, identical));
    }
    let payload = json!({
        "baseline": report_json(&base),
        "runs": runs,
        "all_rankings_identical": all_identical,
    });

    let mut table = String::from("Inf_am under scaling W -> eta W\n");
    let _ = write!(table, "{:>6}  {:>10}", "Vertex", "eta=1");
    for (eta, ..) in &columns {
        let _ = write!(table, "  {:>12}", format!("eta={}", format_weight(*eta)));
    }
    table.push('\n');
    for &v in &base.ranking {
        let _ = write!(table, "{:>6}  {:>10}", v + 1, fmt3(base.scores[v]));
        for (_, report, ..) in &columns {
            let _ = write!(table, "  {:>12}", fmt3(report.scores[v]));
        }
        table.push('\n');
    }
    for (eta, _, deviation, identical) in &columns {
        let _ = writeln!(
            table,
            "eta = {}: max relative deviation from eta * Inf_am(W) = {:.3e}; ranking {}",
            format_weight(*eta),
            deviation,
            if *identical { "identical" } else { "CHANGED" }
        );
    }

    let mut csv = String::from("vertex,eta=1");
    for (eta, ..) in &columns {
        let _ = write!(csv, ",eta={}", format_weight(*eta));
    }
    csv.push('\n');
    for &v in &base.ranking {
        let _ = write!(csv, "{},{}", v + 1, format_weight(base.scores[v]));
        for (_, report, ..) in &columns {
            let _ = write!(csv, ",{}", format_weight(report.scores[v]));
        }
        csv.push('\n');
    }
    Ok(document(Method::ScaleCheck, map, payload, table, csv))
}
