mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use signcirc_core::campaigns::{run_campaign, CampaignId, CampaignOptions};
use signcirc_core::catalog::{self, apply_indicator, complete_graph, hajos_graph, negative_cycle};
use signcirc_core::criticality::{criticality_report, density_check, potential};
use signcirc_core::{
    chi_c_with, find_sp_hom_with, full_clique, hat_clique, verify_list_lemma, ChiOptions, CliqueParams, ColorLabel,
    Error as CoreError, Fraction, Homomorphism, LemmaId, SearchOptions, SearchOutcome, SignedMultigraph,
};

use input::{format_coloring, load_graph, parse_coloring, read_source};

const SCHEMA: u64 = 1;

#[derive(Parser)]
#[command(name = "signcirc", version, about = "Circular colourings of signed graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: all cores). With 1, timing fields are dropped
    /// so reports are byte-identical between runs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Give up after this many seconds and exit with status 3.
    #[arg(long, global = true)]
    deadline_s: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Circular chromatic number within the candidate budget.
    ChiC {
        /// Graph file, or `-` for standard input.
        graph: String,
        #[arg(long)]
        q_max: Option<u32>,
        /// Largest fraction tried, as `p/q`.
        #[arg(long)]
        ceiling: Option<Fraction>,
    },
    /// Decide whether the graph maps to K^s_{p;q}.
    CheckHom { graph: String, p: u32, q: u32 },
    /// Check a colouring file against a graph.
    VerifyColoring {
        graph: String,
        coloring: String,
        #[arg(long, default_value_t = 10)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        q: u32,
    },
    /// Named graphs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run a list-colouring verifier, or `all` of them.
    VerifyLemma { id: String },
    /// Run an exhaustive verification campaign.
    Campaign {
        id: String,
        /// Vertex bound for BROOKS.
        #[arg(long)]
        n_max: Option<usize>,
        /// Longest cycle for NEGATIVE_CYCLES.
        #[arg(long)]
        l_max: Option<usize>,
        /// Largest index for DENSITY_FAMILY.
        #[arg(long)]
        k_max: Option<usize>,
        /// Write every failing graph into this directory.
        #[arg(long)]
        emit_witnesses: Option<PathBuf>,
    },
    /// Criticality verdict with one probe per edge.
    CriticalCheck { graph: String, p: u32, q: u32 },
    /// Generate a graph from a family.
    Emit {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit {
        name: String,
        /// In text mode, print the golden colouring instead of the graph.
        #[arg(long)]
        coloring: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    NegativeCycle { l: usize },
    Complete { n: usize },
    Hajos { k: usize },
    /// The Hajós graph with every edge replaced by the indicator gadget.
    Density { k: usize },
    HatClique { p: u32, q: u32 },
    FullClique { p: u32, q: u32 },
}

/// What a command produced: the JSON body, the verdict, and optional raw
/// text for `--format text`.
struct Outcome {
    body: Value,
    pass: bool,
    raw_text: Option<String>,
}

impl Outcome {
    fn verdict(body: Value, pass: bool) -> Outcome {
        Outcome { body, pass, raw_text: None }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::ChiC { .. } => "chi-c",
        Command::CheckHom { .. } => "check-hom",
        Command::VerifyColoring { .. } => "verify-coloring",
        Command::Catalog { .. } => "catalog",
        Command::VerifyLemma { .. } => "verify-lemma",
        Command::Campaign { .. } => "campaign",
        Command::CriticalCheck { .. } => "critical-check",
        Command::Emit { .. } => "emit",
    }
}

fn labels(colors: &[u32], params: CliqueParams) -> Value {
    if params == CliqueParams::TEN_THIRDS {
        json!(colors.iter().map(|&c| ColorLabel::label(c).expect("colour below 10")).collect::<Vec<_>>())
    } else {
        Value::Null
    }
}

fn graph_doc(g: &SignedMultigraph) -> Value {
    json!({ "vertices": g.n(), "edges": g.m(), "graph_text": g.to_text() })
}

fn deadline(cli: &Cli) -> Option<Duration> {
    cli.deadline_s.map(Duration::from_secs_f64)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::ChiC { graph, q_max, ceiling } => {
            let g = load_graph(graph)?;
            let opts = ChiOptions { q_max: *q_max, ceiling: *ceiling, deadline: deadline(cli) };
            let report = chi_c_with(&g, &opts)?;
            let mut body = serde_json::to_value(&report)?;
            body["witness_labels"] = labels(&report.witness, report.params);
            Ok(Outcome::verdict(body, true))
        }
        Command::CheckHom { graph, p, q } => {
            let g = load_graph(graph)?;
            let params = CliqueParams::new(*p, *q)?;
            let opts = SearchOptions { deadline: deadline(cli).map(|d| Instant::now() + d), domains: None };
            match find_sp_hom_with(&g, params, &opts)? {
                SearchOutcome::Found(h) => Ok(Outcome::verdict(
                    json!({ "colorable": true, "params": params, "assignment": h.assignment, "labels": labels(&h.assignment, params) }),
                    true,
                )),
                SearchOutcome::NotFound => Ok(Outcome::verdict(json!({ "colorable": false, "params": params }), false)),
                SearchOutcome::Aborted => Err(CoreError::DeadlineExceeded.into()),
            }
        }
        Command::VerifyColoring { graph, coloring, p, q } => {
            let g = load_graph(graph)?;
            let params = CliqueParams::new(*p, *q)?;
            let colors = parse_coloring(&read_source(coloring)?, g.n(), params).with_context(|| coloring.clone())?;
            let violations: Vec<Value> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| !params.allows(colors[e.u], colors[e.v], e.sign))
                .map(|(i, e)| json!({ "edge": i, "u": e.u, "v": e.v, "sign": e.sign.symbol().to_string(), "colors": [colors[e.u], colors[e.v]] }))
                .collect();
            let valid = violations.is_empty();
            debug_assert_eq!(valid, signcirc_core::verify_hom(&g, &Homomorphism { assignment: colors.clone(), params }));
            Ok(Outcome::verdict(json!({ "valid": valid, "params": params, "violations": violations }), valid))
        }
        Command::Catalog { action: CatalogAction::List } => {
            let graphs: Vec<Value> = catalog::all()
                .iter()
                .map(|g| {
                    json!({
                        "name": g.name,
                        "description": g.description,
                        "vertices": g.graph.n(),
                        "edges": g.graph.m(),
                        "expected_chi_c": g.expected_chi_c,
                        "has_golden_coloring": g.golden_coloring.is_some(),
                    })
                })
                .collect();
            let raw = catalog::names().iter().map(|n| format!("{n}\n")).collect();
            Ok(Outcome { body: json!({ "graphs": graphs }), pass: true, raw_text: Some(raw) })
        }
        Command::Catalog { action: CatalogAction::Emit { name, coloring } } => {
            let g = catalog::build(name)?;
            let coloring_text = g.golden_coloring.as_ref().map(|h| format_coloring(&h.assignment, h.params));
            let raw = if *coloring {
                Some(coloring_text.clone().with_context(|| format!("{} has no golden colouring", g.name))?)
            } else {
                Some(g.graph.to_text())
            };
            let mut body = graph_doc(&g.graph);
            body["name"] = json!(g.name);
            body["description"] = json!(g.description);
            body["vertex_names"] = json!(g.vertex_names);
            body["expected_chi_c"] = json!(g.expected_chi_c);
            body["coloring_text"] = json!(coloring_text);
            Ok(Outcome { body, pass: true, raw_text: raw })
        }
        Command::VerifyLemma { id } => {
            let ids: Vec<LemmaId> = if id.eq_ignore_ascii_case("all") { LemmaId::ALL.to_vec() } else { vec![id.parse()?] };
            let reports: Vec<_> = ids.into_iter().map(verify_list_lemma).collect();
            let pass = reports.iter().all(|r| r.passed());
            Ok(Outcome::verdict(json!({ "passed": pass, "reports": reports }), pass))
        }
        Command::Campaign { id, n_max, l_max, k_max, emit_witnesses } => {
            let id: CampaignId = id.parse()?;
            let opts = CampaignOptions { n_max: *n_max, l_max: *l_max, k_max: *k_max, deadline: deadline(cli) };
            let report = run_campaign(id, &opts)?;
            if let Some(dir) = emit_witnesses {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (i, f) in report.failures.iter().enumerate() {
                    if let Some(text) = &f.graph {
                        let path = dir.join(format!("{}_{i}.sg", id.name().to_ascii_lowercase()));
                        let body = format!("# {}\n{text}", f.description);
                        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
                    }
                }
            }
            let pass = report.passed();
            let mut body = serde_json::to_value(&report)?;
            body["passed"] = json!(pass);
            Ok(Outcome::verdict(body, pass))
        }
        Command::CriticalCheck { graph, p, q } => {
            let g = load_graph(graph)?;
            let params = CliqueParams::new(*p, *q)?;
            let report = criticality_report(&g, params)?;
            let pass = report.critical;
            let mut body = serde_json::to_value(&report)?;
            body["potential"] = json!(potential(&g));
            body["density"] = serde_json::to_value(density_check(&g))?;
            Ok(Outcome::verdict(body, pass))
        }
        Command::Emit { family } => {
            let (name, g) = match family {
                Family::NegativeCycle { l } => (format!("negative-cycle {l}"), negative_cycle(*l)?),
                Family::Complete { n } => (format!("complete {n}"), complete_graph(*n)),
                Family::Hajos { k } => (format!("hajos {k}"), hajos_graph(*k)?),
                Family::Density { k } => (format!("density {k}"), apply_indicator(&hajos_graph(*k)?)?),
                Family::HatClique { p, q } => (format!("hat-clique {p} {q}"), hat_clique(CliqueParams::new(*p, *q)?)),
                Family::FullClique { p, q } => (format!("full-clique {p} {q}"), full_clique(CliqueParams::new(*p, *q)?)),
            };
            let mut body = graph_doc(&g);
            body["family"] = json!(name);
            Ok(Outcome { body, pass: true, raw_text: Some(g.to_text()) })
        }
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(command));
    match body {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    Value::Object(doc)
}

fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = doc {
        for (k, v) in map {
            match v {
                Value::String(s) if s.contains('\n') => out.push_str(&format!("{k}:\n{s}")),
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
    }
    out
}

/// 2 for bad input, 3 for an exhausted budget.
fn error_status(err: &anyhow::Error) -> (u8, &'static str) {
    let core = err.chain().find_map(|e| e.downcast_ref::<CoreError>());
    match core {
        Some(CoreError::DeadlineExceeded) | Some(CoreError::NoCandidate { .. }) => (3, "inconclusive"),
        _ => (2, "input_error"),
    }
}

fn setup_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let result = setup_threads(cli.threads).and_then(|_| run(&cli));
    match result {
        Ok(outcome) => {
            let status = if outcome.pass { 0 } else { 1 };
            let mut doc = envelope(name, outcome.body);
            doc["status"] = json!(if outcome.pass { "pass" } else { "fail" });
            if cli.threads == Some(1) {
                strip_timing(&mut doc);
            }
            match (cli.format, outcome.raw_text) {
                (Format::Text, Some(raw)) => print!("{raw}"),
                (Format::Text, None) => print!("{}", render_text(&doc)),
                (Format::Json, _) => println!("{}", serde_json::to_string_pretty(&doc).expect("serialisable")),
            }
            ExitCode::from(status)
        }
        Err(err) => {
            let (status, kind) = error_status(&err);
            eprintln!("error: {err:#}");
            let doc = envelope(name, json!({ "status": kind, "error": format!("{err:#}") }));
            if cli.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serialisable"));
            }
            ExitCode::from(status)
        }
    }
}
