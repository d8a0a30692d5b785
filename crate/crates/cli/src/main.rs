//! Batch front end for the positroid library.
//!
//! Every run prints a header record with the configuration and library
//! version, then results. Exit codes: 0 success, 2 invalid input,
//! 3 certificate failure, 4 resource limit reached.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use positroid::dissect::{
    self, check_good_dissection, Ambient, Dissection, GoodMode, Limits, Provenance, Selector,
    Verdict,
};
use positroid::plabic::{cell_bases, PlabicGraph};
use positroid::tropical::{self, TropClass, TropPluckerVector};
use positroid::{DecoratedPermutation, LeDiagram};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "positroid", version, about = "Positroid cells, hypersimplex dissections, T-duality and tropical subdivisions")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Rank parameter (k1 for hypersimplex commands, k for amplituhedron ones).
    #[arg(long, global = true, env = "POSITROID_K")]
    k: Option<usize>,
    #[arg(long, global = true, env = "POSITROID_N")]
    n: Option<usize>,
    /// Amplituhedron parameter; only even values are meaningful for T-duality.
    #[arg(long, global = true, env = "POSITROID_M", default_value_t = 2)]
    m: usize,
    #[arg(long, global = true, env = "POSITROID_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "POSITROID_JOBS", default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, env = "POSITROID_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long = "limit-secs", global = true, env = "POSITROID_LIMIT_SECS")]
    limit_secs: Option<u64>,
    #[arg(long = "limit-results", global = true, env = "POSITROID_LIMIT_RESULTS")]
    limit_results: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report on one cell: Le-diagram, dimension, bases, components, plabic graph.
    Cell { label: String },
    /// T-duality (m = 2 on decorated permutations; other even m on affine ones).
    Tdual {
        label: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Parity duality of an amplituhedron cell of Gr_{k,n} into Gr_{n−k−2,n}.
    Parity { label: String },
    /// Cyclic shift by t.
    Shift {
        label: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        t: i64,
    },
    /// Generate or certify dissections.
    Dissect {
        #[command(subcommand)]
        action: DissectAction,
    },
    /// Enumerate generalized triangles, triangulations or good dissections.
    Enumerate {
        #[arg(value_enum)]
        what: EnumerateWhat,
    },
    /// Tropical Plücker vectors and their subdivisions.
    Trop {
        #[command(subcommand)]
        action: TropAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Hyp,
    Amp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SelectorArg {
    All,
    First,
    Random,
}

#[derive(Subcommand, Debug)]
enum DissectAction {
    /// Dissections from the recursions (hyp: Δ_{k,n}; amp: A_{n,k,2}).
    Generate {
        #[arg(long, value_enum, default_value_t = Side::Hyp)]
        ambient: Side,
        #[arg(long, value_enum, default_value_t = SelectorArg::First)]
        selector: SelectorArg,
    },
    /// Check collections read from a file or stdin, one per line.
    Check {
        #[arg(long, value_enum, default_value_t = Side::Hyp)]
        ambient: Side,
        input: Option<String>,
    },
    /// Check collections and their goodness.
    GoodCheck {
        #[arg(long, value_enum, default_value_t = Side::Hyp)]
        ambient: Side,
        input: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnumerateWhat {
    Triangles,
    Triangulations,
    Dissections,
    Good,
    GoodDissections,
    Tnk,
}

#[derive(Subcommand, Debug)]
enum TropAction {
    /// Draw a positive vector from the seed.
    Sample,
    Classify { input: Option<String> },
    Subdivide { input: Option<String> },
    /// Secondary cone of the subdivision induced by the vector.
    Cone { input: Option<String> },
    /// Strata of good dissections of Δ_{k,n} by cone dimension.
    Fvector,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<positroid::Error> for Failure {
    fn from(e: positroid::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Output {
    format: Format,
    out: io::BufWriter<io::Stdout>,
}

impl Output {
    fn record(&mut self, value: &Value, text: impl FnOnce() -> String) {
        let line = match self.format {
            Format::Json => value.to_string(),
            Format::Text | Format::Dot => text(),
        };
        let _ = writeln!(self.out, "{line}");
    }

    fn raw(&mut self, s: &str) {
        let _ = write!(self.out, "{s}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.config.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.config.jobs).build_global();
    }
    let mut out = Output { format: cli.config.format, out: io::BufWriter::new(io::stdout()) };
    let header = json!({
        "type": "run",
        "version": VERSION,
        "config": config_json(&cli),
    });
    if cli.config.format != Format::Dot {
        out.record(&header, || format!("# positroid {VERSION} {}", config_json(&cli)));
    }
    let result = run(&cli, &mut out);
    let _ = out.out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn config_json(cli: &Cli) -> Value {
    let c = &cli.config;
    json!({
        "command": format!("{:?}", cli.command),
        "k": c.k,
        "n": c.n,
        "m": c.m,
        "seed": c.seed,
        "jobs": c.jobs,
        "format": format!("{:?}", c.format).to_lowercase(),
        "limit_secs": c.limit_secs,
        "limit_results": c.limit_results,
    })
}

fn run(cli: &Cli, out: &mut Output) -> CliResult<()> {
    let c = &cli.config;
    match &cli.command {
        Command::Cell { label } => cmd_cell(&parse_label(label)?, out),
        Command::Tdual { label, inverse } => cmd_tdual(&parse_label(label)?, *inverse, c.m, out),
        Command::Parity { label } => {
            let p = parse_label(label)?;
            let q = p.parity_dual_gl(p.k())?;
            emit_label(out, "parity", &p, &q);
            Ok(())
        }
        Command::Shift { label, t } => {
            let p = parse_label(label)?;
            emit_label(out, "shift", &p, &p.cyclic_shift(*t));
            Ok(())
        }
        Command::Dissect { action } => cmd_dissect(action, c, out),
        Command::Enumerate { what } => cmd_enumerate(*what, c, out),
        Command::Trop { action } => cmd_trop(action, c, out),
    }
}

fn parse_label(s: &str) -> CliResult<DecoratedPermutation> {
    s.trim().parse().map_err(|e: positroid::Error| invalid(format!("{s}: {e}")))
}

fn need(v: Option<usize>, name: &str) -> CliResult<usize> {
    v.ok_or_else(|| invalid(format!("--{name} is required")))
}

fn emit_label(out: &mut Output, op: &str, input: &DecoratedPermutation, output: &DecoratedPermutation) {
    let v = json!({"type": "result", "op": op, "input": input.to_string(), "output": output.to_string()});
    out.record(&v, || output.to_string());
}

fn cmd_cell(p: &DecoratedPermutation, out: &mut Output) -> CliResult<()> {
    let d = LeDiagram::from_permutation(p);
    let g = PlabicGraph::from_lediagram(&d);
    if out.format == Format::Dot {
        out.raw(&g.to_dot());
        return Ok(());
    }
    let bases: Vec<Vec<usize>> = cell_bases(p).iter().map(|&b| positroid::subsets::elements(b)).collect();
    let v = json!({
        "type": "result",
        "label": p.to_string(),
        "n": p.n(),
        "k": p.k(),
        "dimension": d.dimension(),
        "le_diagram": d.to_json()["rows"],
        "bases": bases,
        "components": p.cyclic_interval_components(),
        "sif": p.is_sif(),
        "loopless": p.is_loopless(),
        "coloopless": p.is_coloopless(),
        "tree": g.is_tree(),
        "forest": g.is_forest(),
        "trip_permutation": g.trip_permutation().to_string(),
        "plabic_dot": g.to_dot(),
    });
    out.record(&v, || {
        format!(
            "label {p}\nn {} k {} dimension {}\nle-diagram\n{}bases {}\ncomponents {} sif {} tree {} forest {}",
            p.n(),
            p.k(),
            d.dimension(),
            d,
            bases.len(),
            p.cyclic_interval_components(),
            p.is_sif(),
            g.is_tree(),
            g.is_forest()
        )
    });
    Ok(())
}

fn cmd_tdual(p: &DecoratedPermutation, inverse: bool, m: usize, out: &mut Output) -> CliResult<()> {
    if m == 2 {
        let q = if inverse { p.t_dual_inverse()? } else { p.t_dual()? };
        emit_label(out, if inverse { "t_dual_inverse" } else { "t_dual" }, p, &q);
        return Ok(());
    }
    if inverse || m % 2 == 1 {
        return Err(invalid("general-m T-duality is available forward only, for even m"));
    }
    let q = p.to_affine().t_dual_general_m(m)?;
    let dec = q.to_decorated();
    let v = json!({"type": "result", "op": "t_dual", "m": m, "input": p.to_string(), "affine": q.window(), "output": dec.to_string()});
    out.record(&v, || dec.to_string());
    Ok(())
}

fn read_input(path: &Option<String>) -> CliResult<String> {
    match path.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| invalid(e.to_string()))?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| invalid(format!("{p}: {e}"))),
    }
}

/// One collection per line: labels separated by whitespace, or a JSON
/// object with a "cells" array.
fn parse_collections(text: &str, side: Side, c: &Config) -> CliResult<Vec<Dissection>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let labels: Vec<DecoratedPermutation> = if line.starts_with('{') {
            let v: Value = serde_json::from_str(line).map_err(|e| invalid(e.to_string()))?;
            v["cells"]
                .as_array()
                .ok_or_else(|| invalid("JSON record without a cells array"))?
                .iter()
                .map(|x| parse_label(x.as_str().unwrap_or_default()))
                .collect::<CliResult<_>>()?
        } else {
            line.split_whitespace().map(parse_label).collect::<CliResult<_>>()?
        };
        let first = labels.first().ok_or_else(|| invalid("empty collection"))?;
        let n = c.n.unwrap_or(first.n());
        let k = c.k.unwrap_or(first.k());
        let d = match side {
            Side::Hyp => Dissection::new(Ambient::Hypersimplex { k1: k, n }, labels, Provenance::User)?,
            Side::Amp => Dissection::new(Ambient::Amplituhedron { n, k }, labels, Provenance::User)?.t_dual_inverse()?,
        };
        out.push(d);
    }
    Ok(out)
}

fn cells_json(d: &Dissection) -> Vec<String> {
    d.cells.iter().map(|c| c.to_string()).collect()
}

fn cmd_dissect(action: &DissectAction, c: &Config, out: &mut Output) -> CliResult<()> {
    match action {
        DissectAction::Generate { ambient, selector } => {
            let n = need(c.n, "n")?;
            let k = need(c.k, "k")?;
            let sel = match selector {
                SelectorArg::All => Selector::All,
                SelectorArg::First => Selector::First,
                SelectorArg::Random => Selector::Random(c.seed),
            };
            let list = match ambient {
                Side::Hyp => dissect::recursive_dissections_hyp(k, n, sel)?,
                Side::Amp => dissect::recursive_dissections_amp(n, k, sel)?,
            };
            let cap = c.limit_results.unwrap_or(usize::MAX);
            let kept = &list[..list.len().min(cap)];
            let hyp: Vec<Dissection> = match ambient {
                Side::Amp => kept.iter().map(|d| d.t_dual_inverse()).collect::<Result<_, _>>()?,
                Side::Hyp => kept.to_vec(),
            };
            let verdicts = dissect::check_dissections(&hyp)?;
            for (d, verdict) in kept.iter().zip(verdicts) {
                if !verdict.is_dissection() {
                    return Err(Failure { code: 3, message: format!("recursive output failed: {verdict:?}") });
                }
                let mut v = json!({
                    "type": "dissection",
                    "cells": cells_json(d),
                    "flags": {"triangulation": verdict == Verdict::Triangulation},
                });
                if *ambient == Side::Amp {
                    v["backing"] = json!("theorem-backed: equals the T-dual of the hypersimplex recursion");
                }
                out.record(&v, || cells_json(d).join(" "));
            }
            let truncated = list.len() > cap;
            let v = json!({"type": "summary", "count": list.len().min(cap), "complete": !truncated});
            out.record(&v, || format!("# count {}", list.len().min(cap)));
            if truncated {
                return Err(Failure { code: 4, message: "result limit reached".into() });
            }
            Ok(())
        }
        DissectAction::Check { ambient, input } | DissectAction::GoodCheck { ambient, input } => {
            let good = matches!(action, DissectAction::GoodCheck { .. });
            let text = read_input(input)?;
            let list = parse_collections(&text, *ambient, c)?;
            let mut failed = false;
            for d in &list {
                let g = check_good_dissection(d)?;
                failed |= !g.verdict.is_dissection() || (good && !g.good);
                let mut v = json!({"type": "verdict", "cells": cells_json(d), "verdict": g.verdict});
                if good {
                    v["good"] = json!(g.good);
                    v["witness"] = json!(g.witness);
                }
                if *ambient == Side::Amp {
                    v["cells"] = json!(cells_json(&d.t_dual()?));
                    v["hypersimplex_cells"] = json!(cells_json(d));
                    v["backing"] = json!("conjecture-backed: certified on the T-dual hypersimplex side");
                }
                out.record(&v, || {
                    let base = match &g.verdict {
                        Verdict::Invalid { reason } => format!("invalid: {reason}"),
                        Verdict::Dissection => "dissection".into(),
                        Verdict::Triangulation => "triangulation".into(),
                    };
                    if good {
                        format!("{base}; good {}", g.good)
                    } else {
                        base
                    }
                });
            }
            if failed {
                return Err(Failure { code: 3, message: "some collection failed certification".into() });
            }
            Ok(())
        }
    }
}

fn limits(c: &Config) -> Limits {
    Limits {
        max_results: c.limit_results,
        deadline: c.limit_secs.map(|s| Instant::now() + Duration::from_secs(s)),
    }
}

fn cmd_enumerate(what: EnumerateWhat, c: &Config, out: &mut Output) -> CliResult<()> {
    let n = need(c.n, "n")?;
    let k = need(c.k, "k")?;
    let mut summary = json!({"type": "summary", "k1": k, "n": n});
    let complete = match what {
        EnumerateWhat::Triangles => {
            let all = dissect::enumerate_generalized_triangles(k, n)?;
            for p in &all {
                out.record(&json!({"type": "cell", "label": p.to_string()}), || p.to_string());
            }
            summary["count"] = json!(all.len());
            true
        }
        EnumerateWhat::Tnk => {
            if k == 0 {
                return Err(invalid("--k must be at least 1"));
            }
            let fam = dissect::tnk_family(n, k - 1)?;
            for d in &fam {
                emit_dissection(d, out)?;
            }
            summary["count"] = json!(fam.len());
            true
        }
        EnumerateWhat::Triangulations | EnumerateWhat::Dissections => {
            let e = if what == EnumerateWhat::Triangulations {
                dissect::enumerate_triangulations(k, n, limits(c))?
            } else {
                dissect::enumerate_dissections(k, n, limits(c))?
            };
            for d in &e.items {
                emit_dissection(d, out)?;
            }
            summary["count"] = json!(e.count());
            e.complete
        }
        EnumerateWhat::Good | EnumerateWhat::GoodDissections => {
            let mode = if what == EnumerateWhat::Good { GoodMode::Triangulations } else { GoodMode::Dissections };
            let g = dissect::enumerate_good(k, n, mode, limits(c))?;
            for (d, dim) in g.items.iter().zip(&g.cone_dimensions) {
                let v = json!({
                    "type": "dissection",
                    "cells": cells_json(d),
                    "flags": {"good": true, "triangulation": d.cells.len() as u64 == dissect::finest_cell_count(k, n)},
                    "cone_dimension": dim,
                });
                out.record(&v, || format!("{} | cone {dim}", cells_json(d).join(" ")));
            }
            summary["count"] = json!(g.items.len());
            summary["strata"] = json!(g.strata);
            summary["grading"] = json!("secondary-cone dimension modulo the n-dimensional lineality; leading 1 is the empty face");
            summary["amplituhedron"] = json!("via T-duality; the hypersimplex/amplituhedron correspondence of good dissections is conjectural");
            g.complete
        }
    };
    summary["complete"] = json!(complete);
    out.record(&summary, || format!("# {summary}"));
    if !complete {
        return Err(Failure { code: 4, message: "resource limit reached; output is partial".into() });
    }
    Ok(())
}

fn emit_dissection(d: &Dissection, out: &mut Output) -> CliResult<()> {
    let g = check_good_dissection(d)?;
    let regular = tropical::dissection_cone(d)?.is_regular();
    let v = json!({
        "type": "dissection",
        "cells": cells_json(d),
        "flags": {"good": g.good, "regular": regular, "triangulation": g.verdict == Verdict::Triangulation},
    });
    out.record(&v, || format!("{} | good {} regular {regular}", cells_json(d).join(" "), g.good));
    Ok(())
}

fn read_vector(input: &Option<String>, c: &Config) -> CliResult<TropPluckerVector> {
    let text = read_input(input)?;
    if text.trim_start().starts_with('{') {
        // JSON lines, as written by `trop sample`: the first record with values.
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let v: Value = serde_json::from_str(line).map_err(|e| invalid(e.to_string()))?;
            if v.get("values").is_some() {
                return Ok(TropPluckerVector::from_json(&v)?);
            }
        }
        return Err(invalid("no record with values in the input"));
    }
    let k = need(c.k, "k")?;
    let n = need(c.n, "n")?;
    Ok(TropPluckerVector::from_text(k, n, &text)?)
}

fn cmd_trop(action: &TropAction, c: &Config, out: &mut Output) -> CliResult<()> {
    match action {
        TropAction::Sample => {
            let p = tropical::sample_positive(need(c.k, "k")?, need(c.n, "n")?, c.seed)?;
            let mut v = p.to_json();
            v["type"] = json!("vector");
            v["seed"] = json!(c.seed);
            out.record(&v, || p.to_text());
        }
        TropAction::Classify { input } => {
            let p = read_vector(input, c)?;
            let class = p.classify();
            out.record(&json!({"type": "result", "class": class}), || format!("{class:?}").to_lowercase());
        }
        TropAction::Subdivide { input } => {
            let p = read_vector(input, c)?;
            let s = tropical::subdivision(&p)?;
            let report = s.certify();
            let labels: Option<Vec<String>> = s.to_dissection().ok().map(|d| cells_json(&d));
            let cells: Vec<Vec<Vec<usize>>> = s
                .cells
                .iter()
                .map(|cell| cell.iter().map(|&b| positroid::subsets::elements(b)).collect())
                .collect();
            let v = json!({"type": "subdivision", "class": p.classify(), "labels": labels, "cells": cells, "report": report});
            out.record(&v, || match &labels {
                Some(l) => l.join(" "),
                None => format!("{} cells, not all positroidal", s.cells.len()),
            });
            if !report.volume_conserved || !report.matroidal || (p.classify() == TropClass::Positive && !report.positroidal) {
                return Err(Failure { code: 3, message: "subdivision failed certification".into() });
            }
        }
        TropAction::Cone { input } => {
            let p = read_vector(input, c)?;
            let s = tropical::subdivision(&p)?;
            let cone = tropical::secondary_cone(p.k(), p.n(), &s.cells)?;
            let v = json!({
                "type": "cone",
                "dimension": cone.dimension,
                "lineality": p.n(),
                "regular": cone.is_regular(),
                "cells": s.cells.len(),
            });
            out.record(&v, || format!("dimension {} (modulo lineality {})", cone.dimension, p.n()));
        }
        TropAction::Fvector => {
            let k = need(c.k, "k")?;
            let n = need(c.n, "n")?;
            let g = dissect::enumerate_good(k, n, GoodMode::Dissections, limits(c))?;
            let v = json!({"type": "fvector", "k": k, "n": n, "strata": g.strata, "total": g.strata.iter().sum::<usize>(), "complete": g.complete});
            out.record(&v, || format!("{:?}", g.strata));
            if !g.complete {
                return Err(Failure { code: 4, message: "resource limit reached; strata are partial".into() });
            }
        }
    }
    Ok(())
}
