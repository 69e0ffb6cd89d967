//! Text and JSON renderings. JSON objects have sorted keys, so equal inputs
//! give byte-identical output; only the optional `meta` block varies.

use std::fmt::Write as _;

use mfiber_core::corpus::EntryOutcome;
use mfiber_core::fiber::{HomotopyClass, ZETA_CONVENTION};
use mfiber_core::graph::DecoratedGraph;
use mfiber_core::pipeline::{CurveInvariants, Invariants, Resolution, REPORT_SCHEMA_VERSION};
use mfiber_core::puiseux::format_q;
use mfiber_core::zeta::CycloProduct;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

const ZETA_NOTE: &str = "zeta factors (1-t^k)^e with exponents fixed by chi = nu(zeta); \
for x^d + z*y^d this gives (1-t^d)^-1, not the alternative form t^d - 1";

pub struct Meta {
    generated: String,
}

impl Meta {
    pub fn now() -> Meta {
        let generated = time::OffsetDateTime::now_utc()
            .format(&time::format_description::well_known::Rfc3339)
            .unwrap_or_else(|_| "unknown".into());
        Meta { generated }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": "mfiber",
            "version": env!("CARGO_PKG_VERSION"),
            "generated": self.generated,
            "zeta_convention": ZETA_CONVENTION,
            "zeta_note": ZETA_NOTE,
        })
    }

    pub fn comment(&self, prefix: &str) -> String {
        format!(
            "{prefix} mfiber {} generated {}\n{prefix} zeta_convention {}: {ZETA_NOTE}\n",
            env!("CARGO_PKG_VERSION"),
            self.generated,
            ZETA_CONVENTION
        )
    }
}

fn json_out(mut v: Value, meta: Option<&Meta>) -> String {
    if let (Some(m), Some(obj)) = (meta, v.as_object_mut()) {
        obj.insert("meta".into(), m.to_json());
    }
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn text_out(body: String, meta: Option<&Meta>) -> String {
    meta.map_or_else(String::new, |m| m.comment("#")) + &body
}

/// Keep `schema_version`, `zeta_convention` and the listed keys.
fn select(full: Value, keys: &[&str]) -> Value {
    let mut out = Map::new();
    if let Value::Object(mut m) = full {
        for k in ["schema_version", "zeta_convention", "mode"].iter().chain(keys) {
            if let Some(v) = m.remove(*k) {
                out.insert((*k).into(), v);
            }
        }
    }
    Value::Object(out)
}

fn tpoly(c: &[BigInt]) -> String {
    let mut s = String::new();
    for (k, a) in c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        let mag = a.abs();
        let sign = if a.is_negative() { "-" } else { "+" };
        if s.is_empty() {
            s.push_str(if a.is_negative() { "-" } else { "" });
        } else {
            let _ = write!(s, " {sign} ");
        }
        let one = mag == BigInt::from(1);
        match (k, one) {
            (0, _) => s.push_str(&mag.to_string()),
            (1, true) => s.push('t'),
            (1, false) => s.push_str(&format!("{mag}*t")),
            (_, true) => s.push_str(&format!("t^{k}")),
            (_, false) => s.push_str(&format!("{mag}*t^{k}")),
        }
    }
    s
}

fn zeta_text(z: &CycloProduct) -> String {
    let (num, den) = z.expanded();
    format!("zeta = {z}    [convention {ZETA_CONVENTION}]\n  expanded: ({}) / ({})\n", tpoly(&num), tpoly(&den))
}

fn ids(prefix: &str, v: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = v.into_iter().map(|i| format!("{prefix}{i}")).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn graph_text(g: &DecoratedGraph, res: Option<&Resolution>) -> String {
    let mut s = String::new();
    if let Some(r) = res {
        let _ = writeln!(s, "shear: x -> x + {}*y", r.branches.shear);
        for (k, b) in r.branches.branches.iter().enumerate() {
            let ce: Vec<String> = b.char_exponents.iter().map(format_q).collect();
            let _ = writeln!(
                s,
                "branch {k}: germ {} alpha {} e {} orbit {} char exponents [{}] multiplicities {:?}",
                b.germ.name(),
                b.alpha,
                b.e,
                b.orbit_size,
                ce.join(", "),
                b.mult_sequence
            );
        }
    }
    let _ = writeln!(s, "vertices: {}", g.vertices.len());
    for v in &g.vertices {
        let _ = writeln!(s, "  v{}  m={} l={} euler={}", v.id, v.m, v.l, v.euler);
    }
    let edges: Vec<String> = g.edges.iter().map(|e| format!("v{}-v{}", e[0], e[1])).collect();
    let _ = writeln!(s, "edges: {}", if edges.is_empty() { "none".into() } else { edges.join(", ") });
    for (name, list) in [("f", &g.f_arrows), ("g", &g.g_arrows)] {
        for a in list {
            let _ = writeln!(s, "{name}-arrow a{} at v{} (alpha {})", a.id, a.attach, a.alpha);
        }
    }
    s
}

fn class_text(c: &HomotopyClass) -> String {
    match c {
        HomotopyClass::CaseI => "CaseI: F is homotopy equivalent to the Milnor fibre of f; zeta_Phi = zeta_f".into(),
        HomotopyClass::CaseII { m } => format!("CaseII: F is a bouquet of {} two-spheres (m = {m})", m.saturating_sub(1)),
        HomotopyClass::Mixed(_) => "Mixed: both W1 and W2 are non-empty; see the fibre description".into(),
    }
}

fn fiber_text(g: &DecoratedGraph, inv: &Invariants) -> String {
    let p = &inv.partition;
    let d = &inv.description;
    let mut s = String::new();
    let _ = writeln!(s, "partition: W1 = {} W2 = {}", ids("v", p.w1.iter().copied()), ids("v", p.w2.iter().copied()));
    for r in [&d.region_f1, &d.region_feps, &d.region_w2] {
        let _ = writeln!(
            s,
            "region {}: vertices {} f-arrows {} monodromy: {}",
            r.label,
            ids("v", r.vertices.iter().copied()),
            ids("a", r.f_arrows.iter().copied()),
            r.monodromy
        );
    }
    for c in &d.interface_circles {
        let _ = writeln!(s, "interface v{}-v{}: {} circles", c.edge[0], c.edge[1], c.count);
    }
    for h in &d.handles {
        let _ = writeln!(
            s,
            "handles at a{} (v{}): {} x (disk x S^1 glued with twist {}, framing {}); monodromy: {}",
            h.arrow, h.base_vertex, h.count, h.twist, h.framing, h.monodromy
        );
    }
    let _ = g;
    s
}

fn boundary_text(inv: &Invariants) -> String {
    let mut s = String::new();
    for f in &inv.surgery {
        let _ = writeln!(s, "surgery at a{} (v{}): {} meridian curves, coefficient {}", f.arrow, f.attach, f.curves, f.coefficient);
    }
    if let Some(cov) = &inv.covering {
        s.push_str(&covering_text(cov));
    }
    s
}

fn covering_text(cov: &[mfiber_core::fiber::Covering]) -> String {
    cov.iter().map(|c| format!("covering at a{}: {} components of degree {}\n", c.arrow, c.components, c.degree)).collect()
}

pub fn pair(cmd: &str, g: &DecoratedGraph, inv: &Invariants, as_json: bool, meta: Option<&Meta>) -> String {
    if as_json {
        let full = inv.to_json();
        let v = match cmd {
            "zeta" => select(full, &["zeta"]),
            "chi" => select(full, &["chi", "nu_of_zeta"]),
            "classify" => select(full, &["classification"]),
            "fiber" => select(full, &["partition", "fiber_description"]),
            "boundary" => select(full, &["boundary_surgery", "boundary_covering"]),
            _ => full,
        };
        return json_out(v, meta);
    }
    let chi = format!("chi = {}    (nu(zeta) = {})\n", inv.chi, inv.zeta.valuation_at_infinity());
    let body = match cmd {
        "zeta" => zeta_text(&inv.zeta),
        "chi" => chi,
        "classify" => class_text(&inv.class) + "\n",
        "fiber" => fiber_text(g, inv),
        "boundary" => boundary_text(inv),
        _ => format!("{}{chi}{}\n{}{}", zeta_text(&inv.zeta), class_text(&inv.class), fiber_text(g, inv), boundary_text(inv)),
    };
    text_out(body, meta)
}

pub fn curve(cmd: &str, ci: &CurveInvariants, as_json: bool, meta: Option<&Meta>) -> String {
    if as_json {
        let full = ci.to_json();
        let v = match cmd {
            "zeta" => select(full, &["zeta"]),
            "chi" => select(full, &["nu_of_zeta", "milnor_number"]),
            "boundary" => select(full, &["boundary_covering"]),
            _ => full,
        };
        return json_out(v, meta);
    }
    let nu = ci.zeta.valuation_at_infinity();
    let chi = match ci.milnor_number {
        Some(mu) => format!("chi(F_f) = nu(zeta_f) = {nu}    (1 - mu = {}, mu = {mu})\n", 1 - mu as i64),
        None => format!("chi(F_f) = nu(zeta_f) = {nu}\n"),
    };
    let body = match cmd {
        "zeta" => zeta_text(&ci.zeta),
        "chi" => chi,
        "boundary" => covering_text(&ci.covering),
        _ => format!("plane-curve mode\n{}{chi}{}", zeta_text(&ci.zeta), covering_text(&ci.covering)),
    };
    text_out(body, meta)
}

pub fn check(outcomes: &[EntryOutcome], pass: bool, as_json: bool, meta: Option<&Meta>) -> String {
    if as_json {
        let v = json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "entries": outcomes.iter().map(|o| json!({"name": o.name, "report": o.report.to_json()})).collect::<Vec<_>>(),
            "pass": pass,
        });
        return json_out(v, meta);
    }
    let mut s = String::new();
    for o in outcomes {
        let ok = o.report.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(s, "{:<4}  {}  ({ok}/{} checks)", if o.report.pass { "pass" } else { "FAIL" }, o.name, o.report.checks.len());
        if !o.report.pass {
            for line in o.report.to_table().lines() {
                let _ = writeln!(s, "      {line}");
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.report.pass).count();
    let _ = writeln!(s, "{} entries, {failed} failed: {}", outcomes.len(), if pass { "pass" } else { "FAIL" });
    text_out(s, meta)
}
