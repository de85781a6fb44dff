//! `trideg` command-line interface.
//!
//! Exit codes: 0 success, 2 usage error, 3 input/output or parse error,
//! 4 a checked mathematical claim failed (certificate, bound, identity),
//! 130 search interrupted with a resumable checkpoint.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, OnceLock};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{bounds_report, BoundName, BoundsReport, Status};
use crate::construction::{construct, ConstructionError};
use crate::graph::Graph;
use crate::graph6;
use crate::identities::check_composition_all;
use crate::search::{self, enumerate_td, is_triangle_distinct, probe_regular, SearchError, SearchOptions};
use crate::verify::{verify_identities, VerifyConfig, MAX_EXHAUSTIVE_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_CLAIM: i32 = 4;
pub const EXIT_INTERRUPTED: i32 = 130;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Graph6,
    Edges,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "trideg", version, about = "Construct, verify and search for triangle-distinct graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and certify the recursive triangle-distinct graph of order N.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Read graph6 lines and report triangle-distinctness and every bound.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// `all` or a comma-separated list of bound names.
        #[arg(long, default_value = "all")]
        bounds: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exhaustively enumerate labeled graphs of order N.
    Search {
        #[arg(long)]
        n: usize,
        /// Probe regular graphs over the admissible degree window instead.
        #[arg(long)]
        regular: bool,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, env = "TRIDEG_WORKERS")]
        workers: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Required for order 9 (2^36 labeled graphs).
        #[arg(long)]
        allow_long: bool,
        /// Count automorphisms and cross-check class sizes.
        #[arg(long)]
        automorphisms: bool,
        /// Disable early exit on repeated triangle-degrees.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = search::DEFAULT_BLOCK_SIZE)]
        block_size: u64,
        /// Stop with a checkpoint after this many blocks.
        #[arg(long)]
        stop_after_blocks: Option<u64>,
    },
    /// Check the triangle-degree identities exhaustively and on random graphs.
    Verify {
        #[arg(long, default_value_t = MAX_EXHAUSTIVE_ORDER)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        compose_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compose two graphs and compare closed-form against counted triangle-degrees.
    Compose {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long, value_enum, default_value = "graph6")]
        emit: Emit,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Error carrying its exit code; the message goes to stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    fn claim(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CLAIM,
            message: message.into(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Construct { n, emit } => cmd_construct(n, emit, out),
        Command::Check { input, bounds, json } => cmd_check(&input, &bounds, json.as_deref(), out),
        Command::Search {
            n,
            regular,
            max_edges,
            workers,
            checkpoint,
            json,
            allow_long,
            automorphisms,
            no_prune,
            block_size,
            stop_after_blocks,
        } => {
            let opts = SearchOptions {
                regular_degree: None,
                max_edges,
                workers: workers.unwrap_or_else(default_workers),
                prune: !no_prune,
                allow_long,
                count_automorphisms: automorphisms,
                block_size,
                checkpoint,
                stop_after_blocks,
                cancel: Some(interrupt_flag()),
                progress: false,
            };
            cmd_search(n, regular, &opts, json.as_deref(), out, err)
        }
        Command::Verify {
            n_max,
            samples,
            compose_samples,
            seed,
            json,
        } => cmd_verify(
            VerifyConfig {
                n_max,
                samples,
                compose_samples,
                seed,
            },
            json.as_deref(),
            out,
        ),
        Command::Compose { g, h, emit, json } => cmd_compose(&g, &h, emit, json.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

/// Process-wide Ctrl-C flag shared by every search started from this process.
fn interrupt_flag() -> Arc<AtomicBool> {
    static FLAG: OnceLock<Arc<AtomicBool>> = OnceLock::new();
    FLAG.get_or_init(|| {
        let flag = Arc::new(AtomicBool::new(false));
        let handler_flag = Arc::clone(&flag);
        // Another handler may already be installed (embedding, tests); the
        // search then simply cannot be interrupted by Ctrl-C.
        let _ = ctrlc::set_handler(move || handler_flag.store(true, Ordering::SeqCst));
        flag
    })
    .clone()
}

fn emit_line(out: &mut dyn Write, s: &str) -> Result<(), Failure> {
    writeln!(out, "{s}").map_err(|e| Failure::io(format!("writing output: {e}")))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

/// Reads graph6 lines, skipping blank lines and `#` comments.
pub fn read_graph6_file(path: &Path) -> Result<Vec<(usize, Graph)>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph6_lines(&text).map_err(|(line, e)| format!("{}:{line}: {e}", path.display()))
}

pub fn parse_graph6_lines(text: &str) -> Result<Vec<(usize, Graph)>, (usize, graph6::Graph6Error)> {
    let mut graphs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g = graph6::decode_str(line).map_err(|e| (i + 1, e))?;
        graphs.push((i + 1, g));
    }
    Ok(graphs)
}

fn cmd_construct(n: usize, emit: Emit, out: &mut dyn Write) -> Outcome {
    let gc = match construct(n) {
        Ok(gc) => gc,
        Err(e @ ConstructionError::BelowMinimumOrder(_)) => return Err(Failure::usage(e.to_string())),
        Err(e) => return Err(Failure::claim(e.to_string())),
    };
    let g = gc.graph();
    match emit {
        Emit::Graph6 => emit_line(out, &graph6::encode_string(g))?,
        Emit::Edges => {
            out.write_all(g.edge_list().as_bytes())
                .map_err(|e| Failure::io(format!("writing output: {e}")))?;
        }
        Emit::Json => {
            let labels: Vec<serde_json::Value> = gc
                .labels()
                .iter()
                .enumerate()
                .map(|(r, &v)| json!({"label": format!("v_{}", r + 1), "vertex": v}))
                .collect();
            let value = json!({
                "schema_version": SCHEMA_VERSION,
                "order": gc.order(),
                "edges": g.size(),
                "graph6": graph6::encode_string(g),
                "labels": labels,
                "degree_sequence": gc.degree_sequence(),
                "triangle_sequence": gc.triangle_sequence(),
                "certificate": gc.certificate(),
                "certified": gc.certificate().passed(),
            });
            emit_line(out, &serde_json::to_string_pretty(&value).expect("json"))?;
        }
    }
    Ok(if gc.certificate().passed() { EXIT_OK } else { EXIT_CLAIM })
}

fn parse_bound_selection(list: &str) -> Result<Vec<BoundName>, Failure> {
    if list == "all" {
        return Ok(BoundName::ALL.to_vec());
    }
    list.split(',')
        .map(|s| {
            BoundName::parse(s.trim()).ok_or_else(|| {
                let known: Vec<&str> = BoundName::ALL.iter().map(|b| b.as_str()).collect();
                Failure::usage(format!("unknown bound `{s}`; expected `all` or any of {}", known.join(", ")))
            })
        })
        .collect()
}

#[derive(Serialize)]
struct CheckedGraph {
    line: usize,
    graph6: String,
    triangle_distinct: bool,
    bounds: BoundsReport,
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Violated => "VIOLATED",
        Status::NotApplicable => "n/a",
        Status::Indeterminate => "indeterminate",
    }
}

fn cmd_check(input: &Path, bounds: &str, json_out: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let selection = parse_bound_selection(bounds)?;
    let graphs = read_graph6_file(input).map_err(Failure::io)?;
    let mut checked = Vec::with_capacity(graphs.len());
    let mut violated = false;
    for (line, g) in graphs {
        let report = bounds_report(&g, &selection);
        let td = is_triangle_distinct(&g);
        let mut text = format!(
            "line {line}: {} n={} e={} {}\n",
            graph6::encode_string(&g),
            g.order(),
            g.size(),
            if td { "triangle-distinct" } else { "not triangle-distinct" }
        );
        for e in &report.entries {
            let _ = writeln!(text, "  {:<22} {:<13} observed {} threshold {}", e.bound.as_str(), status_word(e.status), e.observed, e.threshold);
        }
        out.write_all(text.as_bytes())
            .map_err(|e| Failure::io(format!("writing output: {e}")))?;
        violated |= td && !report.all_hold();
        checked.push(CheckedGraph {
            line,
            graph6: graph6::encode_string(&g),
            triangle_distinct: td,
            bounds: report,
        });
    }
    if let Some(path) = json_out {
        write_json(path, &json!({"schema_version": SCHEMA_VERSION, "graphs": checked}))?;
    }
    if violated {
        return Err(Failure::claim("a triangle-distinct graph violates a bound"));
    }
    Ok(EXIT_OK)
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::CheckpointIo(_) | SearchError::CheckpointFormat(_) | SearchError::CheckpointMismatch(_) => {
            Failure::io(e.to_string())
        }
        SearchError::Pool(_) => Failure::io(e.to_string()),
        _ => Failure::usage(e.to_string()),
    }
}

fn cmd_search(
    n: usize,
    regular: bool,
    opts: &SearchOptions,
    json_out: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let result = if regular {
        probe_regular(n, opts).map(|p| {
            let mut lines = vec![format!(
                "# order {} regular window ({:.4}, {:.4}] degrees {:?} examined {:?} skipped-odd {:?} td-hits {}",
                p.order, p.window_low, p.window_high, p.window_degrees, p.examined, p.skipped_odd, p.td_hits
            )];
            for r in &p.reports {
                lines.extend(r.td_classes.iter().map(|c| c.canonical.to_string()));
            }
            (lines, serde_json::to_value(&p).expect("json"), p.reports.iter().all(search::witnesses_consistent))
        })
    } else {
        enumerate_td(n, opts).map(|r| {
            let mut lines = vec![format!(
                "# order {} visited {} labeled {} td-labeled {} classes {} min-edges {}",
                r.order,
                r.visited,
                r.labeled_count,
                r.td_labeled,
                r.td_classes.len(),
                r.min_edges.map_or("-".to_string(), |m| m.to_string())
            )];
            lines.extend(r.td_classes.iter().map(|c| c.canonical.to_string()));
            let ok = search::witnesses_consistent(&r) && r.automorphism_check != Some(false);
            (lines, serde_json::to_value(&r).expect("json"), ok)
        })
    };
    match result {
        Ok((lines, value, consistent)) => {
            for l in &lines {
                emit_line(out, l)?;
            }
            if let Some(path) = json_out {
                write_json(path, &value)?;
            }
            if consistent {
                Ok(EXIT_OK)
            } else {
                Err(Failure::claim("a reported witness failed re-verification"))
            }
        }
        Err(SearchError::Interrupted { partial, checkpoint }) => {
            let where_ = checkpoint.map_or("no checkpoint file given".to_string(), |p| {
                format!("resume with --checkpoint {}", p.display())
            });
            let _ = writeln!(
                err,
                "interrupted after {} of {} labeled graphs; {where_}",
                partial.visited,
                partial.range_end - partial.range_start
            );
            Ok(EXIT_INTERRUPTED)
        }
        Err(e) => Err(search_failure(e)),
    }
}

fn cmd_verify(cfg: VerifyConfig, json_out: Option<&Path>, out: &mut dyn Write) -> Outcome {
    if cfg.n_max > MAX_EXHAUSTIVE_ORDER {
        return Err(Failure::usage(format!(
            "--n-max {} exceeds the exhaustive limit {MAX_EXHAUSTIVE_ORDER}",
            cfg.n_max
        )));
    }
    let report = verify_identities(&cfg);
    for t in &report.totals {
        emit_line(
            out,
            &format!(
                "{:<26} checks {:>8} failures {}",
                serde_json::to_value(t.identity).expect("json").as_str().unwrap_or("?"),
                t.checks,
                t.failures
            ),
        )?;
    }
    if let Some(path) = json_out {
        write_json(path, &report)?;
    }
    if report.failure_count() == 0 {
        Ok(EXIT_OK)
    } else {
        Err(Failure::claim(format!("{} identity failures", report.failure_count())))
    }
}

fn first_graph(path: &Path) -> Result<Graph, Failure> {
    let mut graphs = read_graph6_file(path).map_err(Failure::io)?;
    if graphs.is_empty() {
        return Err(Failure::io(format!("{}: no graph found", path.display())));
    }
    Ok(graphs.swap_remove(0).1)
}

fn cmd_compose(g_path: &Path, h_path: &Path, emit: Emit, json_out: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let g = first_graph(g_path)?;
    let h = first_graph(h_path)?;
    if g.order() == 0 || h.order() == 0 {
        return Err(Failure::usage("both factors need at least one vertex"));
    }
    let gh = crate::identities::compose(&g, &h);
    let rows = check_composition_all(&g, &h);
    let agree = rows.iter().all(|r| r.holds);
    match emit {
        Emit::Graph6 => {
            emit_line(out, &graph6::encode_string(&gh))?;
            emit_line(out, "#   u   v  index  formula   direct  agree")?;
            for r in &rows {
                let (u, v) = (r.vertices[0], r.vertices[1]);
                emit_line(
                    out,
                    &format!("# {u:>3} {v:>3} {:>6} {:>8} {:>8}  {}", u * h.order() + v, r.rhs, r.lhs, if r.holds { "yes" } else { "NO" }),
                )?;
            }
        }
        Emit::Edges => {
            out.write_all(gh.edge_list().as_bytes())
                .map_err(|e| Failure::io(format!("writing output: {e}")))?;
        }
        Emit::Json => {}
    }
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "g": graph6::encode_string(&g),
        "h": graph6::encode_string(&h),
        "composition": graph6::encode_string(&gh),
        "rows": rows,
        "all_agree": agree,
    });
    if emit == Emit::Json {
        emit_line(out, &serde_json::to_string_pretty(&value).expect("json"))?;
    }
    if let Some(path) = json_out {
        write_json(path, &value)?;
    }
    if agree {
        Ok(EXIT_OK)
    } else {
        Err(Failure::claim("closed-form triangle-degree disagrees with direct count"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("trideg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(run_args(&["construct"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["construct", "--n", "x"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn construct_below_seven_is_usage_error() {
        let (code, _, err) = run_args(&["construct", "--n", "6"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("below order 5"));
    }

    #[test]
    fn graph6_lines_skip_comments() {
        let text = "# header\n\nBw\n  \nFBnnw\n";
        let graphs = parse_graph6_lines(text).unwrap();
        assert_eq!(graphs.iter().map(|(l, _)| *l).collect::<Vec<_>>(), vec![3, 5]);
        assert_eq!(parse_graph6_lines("Bw\nB!\n").unwrap_err().0, 2);
    }

    #[test]
    fn bound_selection() {
        assert_eq!(parse_bound_selection("all").unwrap().len(), 8);
        assert_eq!(
            parse_bound_selection("edge_lb, census_bound").unwrap(),
            vec![BoundName::EdgeLb, BoundName::CensusBound]
        );
        assert_eq!(parse_bound_selection("bogus").unwrap_err().code, EXIT_USAGE);
    }
}
