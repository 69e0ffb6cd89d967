//! From germs (or discrete branch data, or a graph) to the invariants.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{parse_rational, BiPoly, Q};
use crate::cluster::{walk, ClusterTree, Germ, WalkBranch};
use crate::fiber::{
    boundary_covering_data, boundary_surgery, classify, euler_char, fiber_description, partition, zeta_acampo, zeta_phi, Covering,
    FiberDescription, HomotopyClass, Partition, SurgeryFamily, ZETA_CONVENTION,
};
use crate::graph::{to_dual_graph, DecoratedGraph};
use crate::puiseux::{expand_pair, format_q, BranchSet, Instance};
use crate::zeta::CycloProduct;
use crate::Error;

pub const BRANCH_SCHEMA_VERSION: u32 = 1;
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Reject inputs outside the theory: zero germs, germs not through the
/// origin, and pairs with a common factor.
pub fn check_germs(f: &BiPoly, g: Option<&BiPoly>) -> Result<(), Error> {
    for (name, p) in std::iter::once(("f", f)).chain(g.map(|g| ("g", g))) {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.constant_term().is_zero() {
            return Err(Error::NotThroughOrigin(name.into()));
        }
    }
    if let Some(g) = g {
        let h = f.gcd(g);
        if !h.is_constant() {
            return Err(Error::CommonFactor(h.to_string()));
        }
    }
    Ok(())
}

/// Discrete branch data: what the cluster needs and what branch files hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchInfo {
    pub germ: Germ,
    pub e: u32,
    pub alpha: u32,
    pub orbit_size: usize,
    pub char_exponents: Vec<Q>,
    pub mult_sequence: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    pub branches: Vec<BranchInfo>,
    pub instances: Vec<Instance>,
    pub contact: Vec<Vec<Option<Q>>>,
}

impl BranchData {
    pub fn from_set(set: &BranchSet) -> BranchData {
        BranchData {
            branches: set
                .branches
                .iter()
                .map(|b| BranchInfo {
                    germ: b.germ,
                    e: b.e,
                    alpha: b.alpha,
                    orbit_size: b.orbit_size,
                    char_exponents: b.char_exponents.clone(),
                    mult_sequence: b.mult_sequence.clone(),
                })
                .collect(),
            instances: set.instances.clone(),
            contact: set.instance_contact.clone(),
        }
    }

    /// Model exponents of every ℂ-branch: characteristic exponents plus
    /// contacts whose denominators do not force a new characteristic pair.
    pub fn walk_branches(&self) -> Vec<WalkBranch> {
        let n = self.instances.len();
        (0..n)
            .map(|i| {
                let b = &self.branches[self.instances[i].branch];
                let mut exps = b.char_exponents.clone();
                for j in (0..n).filter(|&j| j != i) {
                    let Some(c) = &self.contact[i][j] else { continue };
                    let den = b
                        .char_exponents
                        .iter()
                        .filter(|beta| *beta < c)
                        .fold(Q::from_integer(1.into()), |acc, beta| lcm_den(&acc, beta));
                    if (den.to_integer() % c.denom()).is_zero() {
                        exps.push(c.clone());
                    }
                }
                exps.sort();
                exps.dedup();
                WalkBranch { germ: b.germ, alpha: b.alpha, e: b.e, exponents: exps }
            })
            .collect()
    }

    pub fn cluster(&self) -> Result<ClusterTree, Error> {
        walk(&self.walk_branches(), &|i, j| self.contact[i][j].clone())
    }

    pub fn to_json(&self) -> Value {
        let n = self.instances.len();
        json!({
            "schema_version": BRANCH_SCHEMA_VERSION,
            "branches": self.branches.iter().map(|b| json!({
                "germ": b.germ.name(),
                "e": b.e,
                "alpha": b.alpha,
                "orbit_size": b.orbit_size,
                "char_exponents": b.char_exponents.iter().map(format_q).collect::<Vec<_>>(),
                "mult_sequence": b.mult_sequence,
            })).collect::<Vec<_>>(),
            "instances": self.instances.iter().map(|i| json!({"branch": i.branch, "copy": i.copy})).collect::<Vec<_>>(),
            "contacts": (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| json!({
                "a": i, "b": j, "exponent": self.contact[i][j].as_ref().map(format_q),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(text: &str) -> Result<BranchData, Error> {
        let bad = |m: &str| Error::Input(format!("branch file: {m}"));
        let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        if v["schema_version"].as_u64() != Some(u64::from(BRANCH_SCHEMA_VERSION)) {
            return Err(bad("missing or unsupported schema_version"));
        }
        let uint = |x: &Value, k: &str| x[k].as_u64().ok_or_else(|| bad(&format!("field {k}")));
        let rat = |x: &Value| x.as_str().and_then(parse_rational).ok_or_else(|| bad("rational exponent"));
        let mut branches = Vec::new();
        for b in v["branches"].as_array().ok_or_else(|| bad("branches"))? {
            let germ = match b["germ"].as_str() {
                Some("f") => Germ::F,
                Some("g") => Germ::G,
                _ => return Err(bad("germ must be \"f\" or \"g\"")),
            };
            branches.push(BranchInfo {
                germ,
                e: uint(b, "e")? as u32,
                alpha: uint(b, "alpha")? as u32,
                orbit_size: uint(b, "orbit_size")? as usize,
                char_exponents: b["char_exponents"].as_array().ok_or_else(|| bad("char_exponents"))?.iter().map(rat).collect::<Result<_, _>>()?,
                mult_sequence: b["mult_sequence"]
                    .as_array()
                    .ok_or_else(|| bad("mult_sequence"))?
                    .iter()
                    .map(|m| m.as_u64().map(|m| m as u32).ok_or_else(|| bad("mult_sequence")))
                    .collect::<Result<_, _>>()?,
            });
        }
        let mut instances = Vec::new();
        for i in v["instances"].as_array().ok_or_else(|| bad("instances"))? {
            let inst = Instance { branch: uint(i, "branch")? as usize, copy: uint(i, "copy")? as usize };
            if inst.branch >= branches.len() {
                return Err(bad("instance of unknown branch"));
            }
            instances.push(inst);
        }
        let n = instances.len();
        let mut contact = vec![vec![None; n]; n];
        for c in v["contacts"].as_array().ok_or_else(|| bad("contacts"))? {
            let (a, b) = (uint(c, "a")? as usize, uint(c, "b")? as usize);
            if a >= n || b >= n || a == b {
                return Err(bad("contact between unknown instances"));
            }
            let x = if c["exponent"].is_null() { None } else { Some(rat(&c["exponent"])?) };
            contact[a][b] = x.clone();
            contact[b][a] = x;
        }
        Ok(BranchData { branches, instances, contact })
    }
}

fn lcm_den(acc: &Q, beta: &Q) -> Q {
    use num_integer::Integer;
    Q::from_integer(acc.to_integer().lcm(beta.denom()))
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub branches: BranchSet,
    pub tree: ClusterTree,
    pub graph: DecoratedGraph,
}

/// Minimal common embedded resolution of `f·g` (or of `f` alone).
pub fn resolve(f: &BiPoly, g: Option<&BiPoly>) -> Result<Resolution, Error> {
    check_germs(f, g)?;
    let branches = expand_pair(f, g)?;
    let tree = BranchData::from_set(&branches).cluster()?;
    let graph = to_dual_graph(&tree);
    Ok(Resolution { branches, tree, graph })
}

#[derive(Clone, Debug)]
pub struct Invariants {
    pub partition: Partition,
    pub zeta: CycloProduct,
    pub chi: i64,
    pub class: HomotopyClass,
    pub description: FiberDescription,
    pub surgery: Vec<SurgeryFamily>,
    /// Boundary covering data of `f`, reported in the first case.
    pub covering: Option<Vec<Covering>>,
}

pub fn invariants(graph: &DecoratedGraph) -> Invariants {
    let p = partition(graph);
    let zeta = zeta_phi(graph, &p);
    let chi = euler_char(graph, &p);
    let class = classify(graph, &p);
    let description = fiber_description(graph, &p);
    let surgery = boundary_surgery(&description);
    let covering = matches!(class, HomotopyClass::CaseI).then(|| boundary_covering_data(&graph.without_g()));
    Invariants { partition: p, zeta, chi, class, description, surgery, covering }
}

impl Invariants {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "zeta_convention": ZETA_CONVENTION,
            "zeta": self.zeta.to_json(),
            "chi": self.chi,
            "nu_of_zeta": self.zeta.valuation_at_infinity(),
            "classification": self.class.to_json(),
            "partition": self.partition,
            "fiber_description": self.description,
            "boundary_surgery": self.surgery,
            "boundary_covering": self.covering,
        })
    }
}

/// Plane-curve mode: A'Campo zeta function of `f` and the boundary covering data.
#[derive(Clone, Debug)]
pub struct CurveInvariants {
    pub zeta: CycloProduct,
    pub covering: Vec<Covering>,
    /// Filled in when the germ itself is known.
    pub milnor_number: Option<usize>,
}

pub fn curve_invariants(graph: &DecoratedGraph) -> Result<CurveInvariants, Error> {
    Ok(CurveInvariants { zeta: zeta_acampo(graph)?, covering: boundary_covering_data(graph), milnor_number: None })
}

impl CurveInvariants {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "mode": "plane-curve",
            "zeta_convention": ZETA_CONVENTION,
            "zeta": self.zeta.to_json(),
            "nu_of_zeta": self.zeta.valuation_at_infinity(),
            "milnor_number": self.milnor_number,
            "boundary_covering": self.covering,
        })
    }
}
