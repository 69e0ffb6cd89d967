//! Validation corpora: a directory of germ-pair files (`*.txt`, two lines
//! `f = …` / `g = …`), optional goldens (`<stem>.expected.json`, the
//! invariants report), and optional graph files (`*.graph.json`, `*.dot`).

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::{parse_poly, BiPoly};
use crate::graph::DecoratedGraph;
use crate::oracles::{consistency_report, graph_report, CheckRecord, ConsistencyReport};
use crate::par;
use crate::pipeline::{invariants, resolve};
use crate::Error;

#[derive(Clone, Debug)]
pub enum EntryInput {
    Pair { f: BiPoly, g: BiPoly },
    Graph(DecoratedGraph),
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub input: Result<EntryInput, Error>,
    pub golden: Option<Result<Value, Error>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub report: ConsistencyReport,
}

/// Parse `f = …` / `g = …`; blank lines and `#` comments are skipped.
pub fn parse_pair(text: &str) -> Result<(BiPoly, BiPoly), Error> {
    let (mut f, mut g) = (None, None);
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (key, rhs) = line.split_once('=').ok_or_else(|| Error::Input(format!("expected `f = …` or `g = …`, got `{line}`")))?;
        let slot = match key.trim() {
            "f" => &mut f,
            "g" => &mut g,
            k => return Err(Error::Input(format!("unknown key `{k}`"))),
        };
        if slot.is_some() {
            return Err(Error::Input(format!("`{}` given twice", key.trim())));
        }
        *slot = Some(parse_poly(rhs.trim())?);
    }
    match (f, g) {
        (Some(f), Some(g)) => Ok((f, g)),
        _ => Err(Error::Input("a germ-pair file needs both `f = …` and `g = …`".into())),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Entries of a corpus directory, sorted by file name. Only the directory
/// listing itself can fail; bad entries carry their error.
pub fn load_dir(dir: &Path) -> Result<Vec<Entry>, Error> {
    let listing = fs::read_dir(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
    let mut names: Vec<String> = listing.filter_map(|e| e.ok()).filter_map(|e| e.file_name().into_string().ok()).collect();
    names.sort();
    let mut out = Vec::new();
    for name in &names {
        let path = dir.join(name);
        let input = if let Some(stem) = name.strip_suffix(".txt") {
            let golden = names
                .contains(&format!("{stem}.expected.json"))
                .then(|| read(&dir.join(format!("{stem}.expected.json"))).and_then(|t| serde_json::from_str(&t).map_err(|e| Error::Input(format!("golden: {e}")))));
            out.push(Entry {
                name: name.clone(),
                input: read(&path).and_then(|t| parse_pair(&t)).map(|(f, g)| EntryInput::Pair { f, g }),
                golden,
            });
            continue;
        } else if name.ends_with(".graph.json") {
            read(&path).and_then(|t| DecoratedGraph::from_json(&t))
        } else if name.ends_with(".dot") {
            read(&path).and_then(|t| DecoratedGraph::from_dot(&t))
        } else {
            continue;
        };
        out.push(Entry { name: name.clone(), input: input.map(EntryInput::Graph), golden: None });
    }
    Ok(out)
}

/// Full report for one entry, including the golden comparison.
pub fn check_entry(entry: &Entry) -> EntryOutcome {
    let mut report = match &entry.input {
        Err(e) => ConsistencyReport {
            checks: vec![CheckRecord {
                name: "read entry".into(),
                inputs: entry.name.clone(),
                expected: "readable".into(),
                actual: e.to_string(),
                pass: false,
            }],
            pass: false,
        },
        Ok(EntryInput::Pair { f, g }) => consistency_report(f, g),
        Ok(EntryInput::Graph(graph)) => graph_report(graph, &entry.name),
    };
    if let (Some(golden), Ok(EntryInput::Pair { f, g })) = (&entry.golden, &entry.input) {
        let actual = resolve(f, Some(g)).map(|r| invariants(&r.graph).to_json());
        let pass = matches!((golden, &actual), (Ok(a), Ok(b)) if a == b);
        report.pass &= pass;
        report.checks.push(CheckRecord {
            name: "golden invariants".into(),
            inputs: entry.name.clone(),
            expected: golden.as_ref().map_or_else(|e| e.to_string(), |_| "matches golden".into()),
            actual: match (&actual, pass) {
                (_, true) => "matches golden".into(),
                (Ok(_), false) => "differs".into(),
                (Err(e), false) => e.to_string(),
            },
            pass,
        });
    }
    EntryOutcome { name: entry.name.clone(), report }
}

/// Check every entry, fanning out per entry; output order is entry order.
pub fn check_corpus(entries: &[Entry]) -> Vec<EntryOutcome> {
    par::map(entries, check_entry)
}

pub fn check_corpus_sequential(entries: &[Entry]) -> Vec<EntryOutcome> {
    par::map_sequential(entries, check_entry)
}
