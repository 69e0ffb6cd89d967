//! Invariants of the Milnor fiber of `Φ = f + z·g` read off the decorated graph.
//!
//! Zeta functions follow the convention `ζ = ∏(1 − t^k)^{e_k}` with
//! `χ = ν(ζ)`; see [`ZETA_CONVENTION`].

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cluster::Germ;
use crate::graph::DecoratedGraph;
use crate::zeta::CycloProduct;
use crate::Error;

/// Recorded in every report: exponents as in the Euler characteristic
/// corollary, under which `χ = ν(ζ)`.
pub const ZETA_CONVENTION: &str = "eulerchar";

pub const MONODROMY_TRIVIAL: &str = "homotopically trivial";
pub const MONODROMY_EQUALS_MF: &str = "equals m_f";
pub const MONODROMY_CYCLIC: &str = "cyclic permutation of the m_{w_a} handles";
pub const MONODROMY_UNSPECIFIED: &str = "unspecified";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub w1: BTreeSet<usize>,
    pub w2: BTreeSet<usize>,
    pub a_f1: BTreeSet<usize>,
    pub a_f2: BTreeSet<usize>,
    pub a_g1: BTreeSet<usize>,
    pub a_g2: BTreeSet<usize>,
}

/// `W1 = {m ≤ l}`, ties included; arrows follow their attach vertex.
pub fn partition(g: &DecoratedGraph) -> Partition {
    let mut p = Partition::default();
    for v in &g.vertices {
        if v.m <= v.l {
            p.w1.insert(v.id);
        } else {
            p.w2.insert(v.id);
        }
    }
    for a in &g.f_arrows {
        if p.w1.contains(&a.attach) { &mut p.a_f1 } else { &mut p.a_f2 }.insert(a.id);
    }
    for a in &g.g_arrows {
        if p.w1.contains(&a.attach) { &mut p.a_g1 } else { &mut p.a_g2 }.insert(a.id);
    }
    p
}

/// Neighbouring vertices plus attached f-arrows.
pub fn delta_f(g: &DecoratedGraph, w: usize) -> Result<usize, Error> {
    g.vertex(w)?;
    Ok(g.neighbors(w).len() + g.arrows_at(Germ::F, w).count())
}

/// Full valence, g-arrows included.
pub fn delta_full(g: &DecoratedGraph, w: usize) -> Result<usize, Error> {
    Ok(delta_f(g, w)? + g.arrows_at(Germ::G, w).count())
}

fn attach_m(g: &DecoratedGraph, arrow: usize) -> u64 {
    let a = g.g_arrows.iter().find(|a| a.id == arrow).expect("g-arrow of the partition");
    g.vertex(a.attach).expect("valid graph").m
}

/// `∏_{W1} (1 − t^{m_w})^{δ_{w,f} − 2} · ∏_{A_{g,2}} (1 − t^{m_{w_a}})^{−1}`.
pub fn zeta_phi(g: &DecoratedGraph, p: &Partition) -> CycloProduct {
    let mut z = CycloProduct::one();
    for &w in &p.w1 {
        let v = g.vertex(w).expect("valid graph");
        if v.m > 0 {
            z.add_factor(v.m, delta_f(g, w).expect("valid graph") as i64 - 2);
        }
    }
    for &a in &p.a_g2 {
        z.add_factor(attach_m(g, a), -1);
    }
    z
}

/// `Σ_{W1} m_w (2 − δ_{w,f}) + Σ_{A_{g,2}} m_{w_a}`.
pub fn euler_char(g: &DecoratedGraph, p: &Partition) -> i64 {
    let mut chi = 0i64;
    for &w in &p.w1 {
        let v = g.vertex(w).expect("valid graph");
        chi += v.m as i64 * (2 - delta_f(g, w).expect("valid graph") as i64);
    }
    for &a in &p.a_g2 {
        chi += attach_m(g, a) as i64;
    }
    chi
}

/// A'Campo: `∏_w (1 − t^{m_w})^{δ_w − 2}` over a plane-curve graph.
pub fn zeta_acampo(g: &DecoratedGraph) -> Result<CycloProduct, Error> {
    if !g.g_arrows.is_empty() {
        return Err(Error::Input("A'Campo's formula needs a plane-curve graph (no g-arrows)".into()));
    }
    let mut z = CycloProduct::one();
    for v in &g.vertices {
        if v.m == 0 {
            return Err(Error::InvalidGraph(format!("vertex {} has m = 0", v.id)));
        }
        z.add_factor(v.m, delta_f(g, v.id)? as i64 - 2);
    }
    Ok(z)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub label: String,
    pub vertices: Vec<usize>,
    pub f_arrows: Vec<usize>,
    pub monodromy: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterfaceCircles {
    pub edge: [usize; 2],
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Handle {
    pub arrow: usize,
    pub base_vertex: usize,
    pub count: u64,
    pub twist: u32,
    pub framing: i64,
    pub monodromy: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberDescription {
    pub region_f1: Region,
    pub region_feps: Region,
    pub region_w2: Region,
    pub interface_circles: Vec<InterfaceCircles>,
    pub handles: Vec<Handle>,
}

pub fn fiber_description(g: &DecoratedGraph, p: &Partition) -> FiberDescription {
    let region_f1 = Region {
        label: "T̄_{f,1} \\ T′".into(),
        vertices: p.w1.iter().copied().collect(),
        f_arrows: p.a_f1.iter().copied().collect(),
        monodromy: MONODROMY_TRIVIAL.into(),
    };
    let region_feps = Region {
        label: "T̄_ε".into(),
        vertices: Vec::new(),
        f_arrows: g.f_arrows.iter().map(|a| a.id).collect(),
        monodromy: MONODROMY_EQUALS_MF.into(),
    };
    let region_w2 = Region {
        label: "T̄₂ \\ (T′ ∪ T_{g,2})".into(),
        vertices: p.w2.iter().copied().collect(),
        f_arrows: p.a_f2.iter().copied().collect(),
        monodromy: MONODROMY_TRIVIAL.into(),
    };
    let interface_circles = g
        .edges
        .iter()
        .filter(|e| p.w1.contains(&e[0]) != p.w1.contains(&e[1]))
        .map(|e| {
            let (a, b) = (g.vertex(e[0]).expect("valid"), g.vertex(e[1]).expect("valid"));
            InterfaceCircles { edge: *e, count: a.m.gcd(&b.m) }
        })
        .collect();
    let handles = g
        .g_arrows
        .iter()
        .map(|a| Handle {
            arrow: a.id,
            base_vertex: a.attach,
            count: g.vertex(a.attach).expect("valid").m,
            twist: a.alpha,
            framing: -i64::from(a.alpha),
            monodromy: if p.a_g2.contains(&a.id) { MONODROMY_CYCLIC } else { MONODROMY_UNSPECIFIED }.into(),
        })
        .collect();
    FiberDescription { region_f1, region_feps, region_w2, interface_circles, handles }
}

/// Independent count: `Σ_{W1} m_w (2 − δ_w^{full}) + Σ_{A_g} m_{w_a}`.
pub fn chi_from_description(g: &DecoratedGraph, fd: &FiberDescription) -> i64 {
    let mut chi = 0i64;
    for &w in &fd.region_f1.vertices {
        let v = g.vertex(w).expect("valid graph");
        chi += v.m as i64 * (2 - delta_full(g, w).expect("valid graph") as i64);
    }
    chi + fd.handles.iter().map(|h| h.count as i64).sum::<i64>()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyClass {
    /// `F ≃ F_{f,sing}` and `ζ_Φ = ζ_f`.
    CaseI,
    /// `F ≃ ∨_{m−1} S²`.
    CaseII { m: u64 },
    Mixed(Box<FiberDescription>),
}

impl HomotopyClass {
    pub fn tag(&self) -> &'static str {
        match self {
            HomotopyClass::CaseI => "CaseI",
            HomotopyClass::CaseII { .. } => "CaseII",
            HomotopyClass::Mixed(_) => "Mixed",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            HomotopyClass::CaseI => json!({"tag": "CaseI", "statement": "F is homotopy equivalent to F_{f,sing}; zeta_Phi = zeta_f"}),
            HomotopyClass::CaseII { m } => json!({
                "tag": "CaseII",
                "m": m,
                "statement": format!("F is homotopy equivalent to a bouquet of {} two-spheres", m.saturating_sub(1)),
            }),
            HomotopyClass::Mixed(fd) => json!({"tag": "Mixed", "fiber_description": fd}),
        }
    }
}

pub fn classify(g: &DecoratedGraph, p: &Partition) -> HomotopyClass {
    if p.w2.is_empty() {
        HomotopyClass::CaseI
    } else if p.w1.is_empty() {
        let m = p.a_g2.iter().map(|&a| attach_m(g, a)).sum();
        HomotopyClass::CaseII { m }
    } else {
        HomotopyClass::Mixed(Box::new(fiber_description(g, p)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryFamily {
    pub arrow: usize,
    pub attach: usize,
    pub curves: u64,
    /// Dehn surgery coefficient `1/l_a`, as a string.
    pub coefficient: String,
}

/// Per g-arrow, `m_{w_a}` meridian curves with coefficient `1/l_a`.
pub fn boundary_surgery(fd: &FiberDescription) -> Vec<SurgeryFamily> {
    fd.handles
        .iter()
        .map(|h| SurgeryFamily { arrow: h.arrow, attach: h.base_vertex, curves: h.count, coefficient: format!("1/{}", h.twist) })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Covering {
    pub arrow: usize,
    pub components: u64,
    pub degree: u64,
}

/// Per f-arrow: `gcd(α_a, m_{w_a})` components, each covering with degree
/// `α_a / gcd(α_a, m_{w_a})`.
pub fn boundary_covering_data(g: &DecoratedGraph) -> Vec<Covering> {
    g.f_arrows
        .iter()
        .map(|a| {
            let m = g.vertex(a.attach).expect("valid").m;
            let c = u64::from(a.alpha).gcd(&m);
            Covering { arrow: a.id, components: c, degree: u64::from(a.alpha) / c }
        })
        .collect()
}
