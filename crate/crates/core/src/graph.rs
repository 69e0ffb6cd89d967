//! Decorated dual resolution graph Γ.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Q;
use crate::cluster::{ClusterTree, Germ};
use crate::Error;

pub const GRAPH_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub m: u64,
    pub l: u64,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: usize,
    pub attach: usize,
    pub alpha: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DecoratedGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[usize; 2]>,
    pub f_arrows: Vec<Arrow>,
    pub g_arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    schema_version: u32,
    #[serde(flatten)]
    graph: DecoratedGraph,
}

/// One vertex per blowup in creation order; Euler numbers from proximity;
/// arrows where strict transforms leave.
pub fn to_dual_graph(tree: &ClusterTree) -> DecoratedGraph {
    let mults = tree.divisor_multiplicities();
    let mut euler: Vec<i64> = vec![-1; tree.points.len()];
    let mut edges: BTreeSet<[usize; 2]> = BTreeSet::new();
    let key = |a: usize, b: usize| [a.min(b), a.max(b)];
    for p in &tree.points {
        for &q in &p.proximate_to {
            euler[q] -= 1;
            edges.insert(key(p.id, q));
        }
        if p.proximate_to.len() == 2 {
            let v: Vec<usize> = p.proximate_to.iter().copied().collect();
            edges.remove(&key(v[0], v[1]));
        }
    }
    let vertices = tree
        .points
        .iter()
        .map(|p| Vertex { id: p.id, m: mults[p.id].0, l: mults[p.id].1, euler: euler[p.id] })
        .collect();
    let mut terms = tree.terminals.clone();
    terms.sort_by_key(|t| (tree.branches[t.branch].germ, t.branch));
    let (mut f_arrows, mut g_arrows) = (Vec::new(), Vec::new());
    for (id, t) in terms.iter().enumerate() {
        let b = &tree.branches[t.branch];
        let a = Arrow { id, attach: t.attach, alpha: b.alpha };
        match b.germ {
            Germ::F => f_arrows.push(a),
            Germ::G => g_arrows.push(a),
        }
    }
    DecoratedGraph { vertices, edges: edges.into_iter().collect(), f_arrows, g_arrows }
}

impl DecoratedGraph {
    pub fn vertex(&self, id: usize) -> Result<&Vertex, Error> {
        self.vertices.iter().find(|v| v.id == id).ok_or(Error::UnknownVertex(id))
    }

    fn index(&self) -> BTreeMap<usize, usize> {
        self.vertices.iter().enumerate().map(|(k, v)| (v.id, k)).collect()
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|e| if e[0] == id { Some(e[1]) } else if e[1] == id { Some(e[0]) } else { None })
            .collect()
    }

    pub fn arrows_at(&self, germ: Germ, id: usize) -> impl Iterator<Item = &Arrow> {
        let list = match germ {
            Germ::F => &self.f_arrows,
            Germ::G => &self.g_arrows,
        };
        list.iter().filter(move |a| a.attach == id)
    }

    /// Structural validity: unique ids, edges and arrows between known
    /// vertices, the vertex graph a tree, negative Euler numbers.
    pub fn validate(&self) -> Result<(), Error> {
        let idx = self.index();
        if idx.len() != self.vertices.len() {
            return Err(Error::InvalidGraph("duplicate vertex id".into()));
        }
        if self.vertices.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if let Some(v) = self.vertices.iter().find(|v| v.euler >= 0) {
            return Err(Error::InvalidGraph(format!("vertex {} has non-negative Euler number", v.id)));
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if e[0] == e[1] || !idx.contains_key(&e[0]) || !idx.contains_key(&e[1]) {
                return Err(Error::InvalidGraph(format!("bad edge {:?}", e)));
            }
            if !seen.insert([e[0].min(e[1]), e[0].max(e[1])]) {
                return Err(Error::InvalidGraph(format!("repeated edge {:?}", e)));
            }
        }
        let mut arrow_ids = BTreeSet::new();
        for a in self.f_arrows.iter().chain(&self.g_arrows) {
            if !idx.contains_key(&a.attach) {
                return Err(Error::InvalidGraph(format!("arrow {} attaches to unknown vertex {}", a.id, a.attach)));
            }
            if a.alpha == 0 {
                return Err(Error::InvalidGraph(format!("arrow {} has zero multiplicity", a.id)));
            }
            if !arrow_ids.insert(a.id) {
                return Err(Error::InvalidGraph(format!("duplicate arrow id {}", a.id)));
            }
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(Error::InvalidGraph("vertex graph is not a tree".into()));
        }
        let mut reached = BTreeSet::from([self.vertices[0].id]);
        let mut stack = vec![self.vertices[0].id];
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if reached.insert(w) {
                    stack.push(w);
                }
            }
        }
        if reached.len() != self.vertices.len() {
            return Err(Error::InvalidGraph("vertex graph is not connected".into()));
        }
        Ok(())
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let idx = self.index();
        let n = self.vertices.len();
        let mut m = vec![vec![0i64; n]; n];
        for (k, v) in self.vertices.iter().enumerate() {
            m[k][k] = v.euler;
        }
        for e in &self.edges {
            let (a, b) = (idx[&e[0]], idx[&e[1]]);
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    pub fn determinant(&self) -> BigInt {
        let m = self.intersection_matrix();
        bareiss(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn is_negative_definite(&self) -> bool {
        let m = self.intersection_matrix();
        let n = m.len();
        let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer((-x).into())).collect()).collect();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &a[k][k];
                let pivot = a[k][k..].to_vec();
                for (x, y) in a[i][k..].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        true
    }

    /// Per vertex `(id, euler·m + Σ adj m + Σ α_f, euler·l + Σ adj l + Σ α_g)`.
    pub fn vanishing_residuals(&self) -> Vec<(usize, i64, i64)> {
        let idx = self.index();
        self.vertices
            .iter()
            .map(|v| {
                let (mut rf, mut rg) = (v.euler * v.m as i64, v.euler * v.l as i64);
                for w in self.neighbors(v.id) {
                    let w = &self.vertices[idx[&w]];
                    rf += w.m as i64;
                    rg += w.l as i64;
                }
                rf += self.arrows_at(Germ::F, v.id).map(|a| i64::from(a.alpha)).sum::<i64>();
                rg += self.arrows_at(Germ::G, v.id).map(|a| i64::from(a.alpha)).sum::<i64>();
                (v.id, rf, rg)
            })
            .collect()
    }

    pub fn check_vanishing(&self) -> Result<(), Error> {
        match self.vanishing_residuals().into_iter().find(|r| r.1 != 0 || r.2 != 0) {
            None => Ok(()),
            Some((v, a, b)) => Err(Error::Verification(format!("total transform does not vanish at vertex {v}: ({a}, {b})"))),
        }
    }

    /// Blow up a free point of `E_v`.
    pub fn blowup_free_point(&self, v: usize) -> Result<DecoratedGraph, Error> {
        let old = self.vertex(v)?.clone();
        let mut g = self.clone();
        let id = self.vertices.iter().map(|w| w.id).max().unwrap_or(0) + 1;
        for w in g.vertices.iter_mut().filter(|w| w.id == v) {
            w.euler -= 1;
        }
        g.vertices.push(Vertex { id, m: old.m, l: old.l, euler: -1 });
        g.edges.push([v, id]);
        g.edges.sort();
        Ok(g)
    }

    /// Plane-curve restriction: the same graph with the g-arrows removed.
    pub fn without_g(&self) -> DecoratedGraph {
        DecoratedGraph { g_arrows: Vec::new(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile { schema_version: GRAPH_SCHEMA_VERSION, graph: self.clone() };
        serde_json::to_string_pretty(&file).expect("graph serialises") + "\n"
    }

    pub fn from_json(text: &str) -> Result<DecoratedGraph, Error> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Input(format!("graph JSON: {e}")))?;
        if file.schema_version != GRAPH_SCHEMA_VERSION {
            return Err(Error::Input(format!("unsupported graph schema_version {}", file.schema_version)));
        }
        file.graph.validate()?;
        Ok(file.graph)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph resolution {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  v{} [label=\"({}, {}) e={}\"];", v.id, v.m, v.l, v.euler);
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -- v{};", e[0], e[1]);
        }
        for (germ, list) in [("f", &self.f_arrows), ("g", &self.g_arrows)] {
            for a in list {
                let _ = writeln!(s, "  a{} [shape=none, label=\"{}:{}\"];", a.id, germ, a.alpha);
                let _ = writeln!(s, "  v{} -- a{} [dir=forward, arrowhead=normal];", a.attach, a.id);
            }
        }
        s.push_str("}\n");
        s
    }

    /// Reads back the DOT dialect written by [`DecoratedGraph::to_dot`].
    pub fn from_dot(text: &str) -> Result<DecoratedGraph, Error> {
        let bad = |l: &str| Error::Input(format!("unrecognised DOT line: {l}"));
        let mut g = DecoratedGraph::default();
        let mut arrow_label: BTreeMap<usize, (String, u32)> = BTreeMap::new();
        let mut arrow_attach: BTreeMap<usize, usize> = BTreeMap::new();
        for raw in text.lines() {
            let l = raw.trim().trim_end_matches(';');
            if l.is_empty() || l.starts_with("//") || l.starts_with("graph") || l == "}" {
                continue;
            }
            let (head, attrs) = match l.find('[') {
                Some(k) => (l[..k].trim(), &l[k..]),
                None => (l, ""),
            };
            let label = attrs.split("label=\"").nth(1).and_then(|r| r.split('"').next());
            if let Some((a, b)) = head.split_once("--") {
                let (a, b) = (a.trim(), b.trim());
                let va = a.strip_prefix('v').and_then(|x| x.parse().ok()).ok_or_else(|| bad(raw))?;
                if let Some(vb) = b.strip_prefix('v').and_then(|x| x.parse().ok()) {
                    g.edges.push([va, vb]);
                } else {
                    let ab = b.strip_prefix('a').and_then(|x| x.parse().ok()).ok_or_else(|| bad(raw))?;
                    arrow_attach.insert(ab, va);
                }
            } else if let Some(id) = head.strip_prefix('v').and_then(|x| x.parse().ok()) {
                let label = label.ok_or_else(|| bad(raw))?;
                let (ml, e) = label.split_once(" e=").ok_or_else(|| bad(raw))?;
                let (m, l) = ml.trim_matches(|c| c == '(' || c == ')').split_once(',').ok_or_else(|| bad(raw))?;
                g.vertices.push(Vertex {
                    id,
                    m: m.trim().parse().map_err(|_| bad(raw))?,
                    l: l.trim().parse().map_err(|_| bad(raw))?,
                    euler: e.trim().parse().map_err(|_| bad(raw))?,
                });
            } else if let Some(id) = head.strip_prefix('a').and_then(|x| x.parse().ok()) {
                let (germ, alpha) = label.and_then(|s| s.split_once(':')).ok_or_else(|| bad(raw))?;
                arrow_label.insert(id, (germ.to_string(), alpha.parse().map_err(|_| bad(raw))?));
            } else {
                return Err(bad(raw));
            }
        }
        for (id, (germ, alpha)) in arrow_label {
            let attach = *arrow_attach.get(&id).ok_or_else(|| Error::Input(format!("arrow a{id} is not attached")))?;
            let a = Arrow { id, attach, alpha };
            match germ.as_str() {
                "f" => g.f_arrows.push(a),
                "g" => g.g_arrows.push(a),
                _ => return Err(Error::Input(format!("arrow a{id} has unknown germ {germ}"))),
            }
        }
        g.validate()?;
        Ok(g)
    }
}

/// Fraction-free Gaussian elimination with row pivoting.
pub fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}
