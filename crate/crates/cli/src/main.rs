//! `mfiber`: resolution graphs and Milnor-fibre invariants of `f + z·g`.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mfiber_core::algebra::{parse_poly, BiPoly};
use mfiber_core::corpus::{check_corpus, load_dir};
use mfiber_core::graph::{to_dual_graph, DecoratedGraph};
use mfiber_core::oracles::{consistency_report, curve_report, graph_report, milnor_number};
use mfiber_core::pipeline::{curve_invariants, invariants, resolve, BranchData, Resolution};
use mfiber_core::Error;
use serde_json::Value;

use render::Meta;

#[derive(Parser)]
#[command(name = "mfiber", version, about = "Milnor fibre invariants of f + z*g from a common embedded resolution")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Clone)]
enum Cmd {
    /// Decorated resolution graph.
    Resolve(Opts),
    /// Consolidated report: zeta, chi, classification, fibre, boundary.
    Invariants(Opts),
    /// Monodromy zeta function as a product of (1-t^k)^e.
    Zeta(Opts),
    /// Euler characteristic of the fibre, with nu(zeta) alongside.
    Chi(Opts),
    /// CaseI, CaseII or Mixed.
    Classify(Opts),
    /// Handle description of the fibre.
    Fiber(Opts),
    /// Boundary surgery record and covering data.
    Boundary(Opts),
    /// Consistency reports for one input or a whole corpus.
    Check(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    #[arg(short = 'f', value_name = "POLY")]
    f: Option<String>,
    #[arg(short = 'g', value_name = "POLY")]
    g: Option<String>,
    /// Plane-curve mode: only `-f` is given.
    #[arg(long)]
    curve_only: bool,
    /// Decorated graph in JSON (`*.json`) or DOT.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Branch file written by `resolve --emit-branches`.
    #[arg(long, value_name = "FILE")]
    branches: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Omit the metadata header (tool, version, timestamp).
    #[arg(long)]
    no_meta: bool,
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,
    /// With `resolve` on polynomial input: also write the branch file.
    #[arg(long, value_name = "FILE")]
    emit_branches: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

/// Why the run stopped: bad input (exit 2) or a failed check (exit 1).
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) | Error::Internal(_) | Error::NonGeneric(..) => Failure::Check(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

enum Input {
    Poly { f: BiPoly, g: Option<BiPoly> },
    Branches(BranchData),
    Graph(DecoratedGraph),
}

fn read_file(p: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn read_graph(p: &Path) -> Result<DecoratedGraph, Failure> {
    let text = read_file(p)?;
    let is_json = p.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    Ok(if is_json { DecoratedGraph::from_json(&text)? } else { DecoratedGraph::from_dot(&text)? })
}

/// Enforce exactly one input mode and the flag combinations each allows.
fn input(cmd: &Cmd, o: &Opts) -> Result<Option<Input>, Failure> {
    let bad = |m: &str| Err(Failure::Input(m.into()));
    let modes = usize::from(o.f.is_some()) + usize::from(o.graph.is_some()) + usize::from(o.branches.is_some());
    let is_check = matches!(cmd, Cmd::Check(_));
    if o.corpus.is_some() {
        if !is_check {
            return bad("--corpus is only valid with `check`");
        }
        if modes > 0 {
            return bad("--corpus excludes -f, --graph and --branches");
        }
        return Ok(None);
    }
    if modes != 1 {
        return bad(if is_check {
            "give exactly one of -f, --graph, --branches, --corpus"
        } else {
            "give exactly one of -f, --graph, --branches"
        });
    }
    if o.g.is_some() && o.f.is_none() {
        return bad("-g needs -f");
    }
    if o.emit_branches.is_some() && !(matches!(cmd, Cmd::Resolve(_)) && o.f.is_some()) {
        return bad("--emit-branches needs `resolve` with polynomial input");
    }
    if o.format == Format::Dot && !matches!(cmd, Cmd::Resolve(_)) {
        return bad("--format dot is only available for `resolve`");
    }
    if let Some(f) = &o.f {
        let f = parse_poly(f)?;
        let g = o.g.as_deref().map(parse_poly).transpose()?;
        match (&g, o.curve_only) {
            (Some(_), true) => return bad("--curve-only excludes -g"),
            (None, false) => return bad("-g is required (or pass --curve-only for plane-curve mode)"),
            _ => {}
        }
        return Ok(Some(Input::Poly { f, g }));
    }
    if o.curve_only {
        return bad("--curve-only applies to -f input; graph and branch files carry their own mode");
    }
    if let Some(p) = &o.graph {
        return Ok(Some(Input::Graph(read_graph(p)?)));
    }
    let p = o.branches.as_ref().expect("one mode is set");
    Ok(Some(Input::Branches(BranchData::from_json(&read_file(p)?)?)))
}

impl Cmd {
    fn opts(&self) -> &Opts {
        let (Cmd::Resolve(o) | Cmd::Invariants(o) | Cmd::Zeta(o) | Cmd::Chi(o) | Cmd::Classify(o) | Cmd::Fiber(o) | Cmd::Boundary(o) | Cmd::Check(o)) = self;
        o
    }
}

fn run(cmd: &Cmd) -> Result<(String, bool), Failure> {
    let o = cmd.opts();
    let meta = (!o.no_meta).then(Meta::now);
    let input = input(cmd, o)?;
    if let Cmd::Check(_) = cmd {
        return check(o, input, meta.as_ref());
    }
    let input = input.expect("not in corpus mode");
    let (graph, resolution, poly) = match input {
        Input::Poly { f, g } => {
            let r = resolve(&f, g.as_ref())?;
            (r.graph.clone(), Some(r), Some(f))
        }
        Input::Branches(b) => (to_dual_graph(&b.cluster()?), None, None),
        Input::Graph(g) => (g, None, None),
    };
    if let Some(path) = &o.emit_branches {
        let data = BranchData::from_set(&resolution.as_ref().expect("polynomial input").branches);
        let text = serde_json::to_string_pretty(&data.to_json()).expect("json") + "\n";
        std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    // a graph without g-arrows is a plane curve
    let curve = graph.g_arrows.is_empty();
    if curve && matches!(cmd, Cmd::Classify(_) | Cmd::Fiber(_)) {
        return Err(Failure::Input(format!("`{}` needs a germ pair; this input is a plane curve", cmd_name(cmd))));
    }
    let out = match cmd {
        Cmd::Resolve(_) => resolve_out(o, &graph, resolution.as_ref(), meta.as_ref()),
        _ if curve => {
            let mut ci = curve_invariants(&graph)?;
            if let Some(f) = &poly {
                if f.squarefree_part().normalized() == f.normalized() {
                    ci.milnor_number = Some(milnor_number(f)?);
                }
            }
            render::curve(cmd_name(cmd), &ci, o.format == Format::Json, meta.as_ref())
        }
        _ => render::pair(cmd_name(cmd), &graph, &invariants(&graph), o.format == Format::Json, meta.as_ref()),
    };
    Ok((out, true))
}

fn cmd_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Resolve(_) => "resolve",
        Cmd::Invariants(_) => "invariants",
        Cmd::Zeta(_) => "zeta",
        Cmd::Chi(_) => "chi",
        Cmd::Classify(_) => "classify",
        Cmd::Fiber(_) => "fiber",
        Cmd::Boundary(_) => "boundary",
        Cmd::Check(_) => "check",
    }
}

fn resolve_out(o: &Opts, graph: &DecoratedGraph, res: Option<&Resolution>, meta: Option<&Meta>) -> String {
    match o.format {
        Format::Json => {
            let mut v: Value = serde_json::from_str(&graph.to_json()).expect("graph json");
            if let Some(m) = meta {
                v["meta"] = m.to_json();
            }
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Dot => meta.map_or_else(String::new, |m| m.comment("//")) + &graph.to_dot(),
        Format::Text => meta.map_or_else(String::new, |m| m.comment("#")) + &render::graph_text(graph, res),
    }
}

fn check(o: &Opts, input: Option<Input>, meta: Option<&Meta>) -> Result<(String, bool), Failure> {
    let outcomes = match input {
        None => {
            let dir = o.corpus.as_ref().expect("corpus mode");
            let entries = load_dir(dir)?;
            if entries.is_empty() {
                eprintln!("warning: corpus {} has no entries", dir.display());
            }
            check_corpus(&entries)
        }
        Some(input) => {
            let (name, report) = match input {
                Input::Poly { f, g: Some(g) } => (format!("f = {f}; g = {g}"), consistency_report(&f, &g)),
                Input::Poly { f, g: None } => (format!("f = {f}"), curve_report(&f)),
                Input::Graph(g) => {
                    let name = o.graph.as_ref().expect("graph mode").display().to_string();
                    let r = graph_report(&g, &name);
                    (name, r)
                }
                Input::Branches(b) => {
                    let name = o.branches.as_ref().expect("branch mode").display().to_string();
                    (name.clone(), graph_report(&to_dual_graph(&b.cluster()?), &name))
                }
            };
            vec![mfiber_core::corpus::EntryOutcome { name, report }]
        }
    };
    let pass = outcomes.iter().all(|e| e.report.pass);
    Ok((render::check(&outcomes, pass, o.format == Format::Json, meta), pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.cmd.opts().out.clone();
    let (text, ok) = match run(&cli.cmd) {
        Ok(r) => r,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            return ExitCode::from(1);
        }
    };
    let written = match out_path {
        Some(p) => std::fs::write(&p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
