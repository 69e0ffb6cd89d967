//! Independent cross-checks: resultant-based intersection multiplicities,
//! Milnor numbers, and the bundled consistency report.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{BiPoly, UniPoly};
use crate::graph::DecoratedGraph;
use crate::par;
use crate::fiber::{chi_from_description, euler_char, fiber_description, partition, zeta_acampo, zeta_phi};
use crate::pipeline::{check_germs, resolve, REPORT_SCHEMA_VERSION};
use crate::puiseux::{choose_shear, verify_branch};
use crate::Error;

/// Shears tried after the Puiseux shear.
const EXTRA_SHEARS: [i64; 16] = [5, 11, -7, 13, -17, 23, 29, -31, 37, -41, 43, 47, -53, 59, 61, -67];

/// Leading y-coefficient constant, so no intersection escapes to infinity.
fn regular_at_infinity(p: &BiPoly, c: i64) -> bool {
    let t = p.top_form().shear(c);
    let d = t.total_degree().unwrap_or(0);
    !t.coeff(0, d).is_zero()
}

/// The sheared curves meet the line `x = 0` in no common point besides the origin.
fn origin_only_on_axis(f: &BiPoly, g: &BiPoly, c: i64) -> bool {
    let axis = |p: &BiPoly| p.shear(c).y_coeffs().iter().map(|u| u.coeff(0)).collect::<Vec<_>>();
    let h = UniPoly::from_coeffs(axis(f)).gcd(&UniPoly::from_coeffs(axis(g)));
    h.order() == h.degree()
}

fn admissible(f: &BiPoly, g: &BiPoly, c: i64) -> bool {
    regular_at_infinity(f, c) && regular_at_infinity(g, c) && origin_only_on_axis(f, g, c)
}

fn resultant_order(f: &BiPoly, g: &BiPoly, c: i64) -> Result<usize, Error> {
    crate::algebra::resultant_order(&f.shear(c), &g.shear(c)).ok_or_else(|| Error::CommonFactor(f.gcd(g).to_string()))
}

/// `i₀(f, g) = ord_x Res_y(f, g)` in coordinates where both leading
/// y-coefficients are constant and the origin is the only common point on
/// `x = 0`; certified again by agreement under two such shears.
pub fn intersection_multiplicity_resultant(f: &BiPoly, g: &BiPoly) -> Result<usize, Error> {
    for p in [f, g] {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(0);
    }
    if !f.gcd(g).is_constant() {
        return Err(Error::CommonFactor(f.gcd(g).to_string()));
    }
    let first = choose_shear(&[f, g]);
    let mut shears = std::iter::once(first).chain(EXTRA_SHEARS).filter(|&c| admissible(f, g, c));
    let (c0, c1) = match (shears.next(), shears.find(|&c| c != first)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Internal("no admissible shear".into())),
    };
    let (i0, i1) = (resultant_order(f, g, c0)?, resultant_order(f, g, c1)?);
    if i0 != i1 {
        return Err(Error::NonGeneric(c0, i0, c1, i1));
    }
    Ok(i0)
}

/// `μ(f) = i₀(f_x, f_y)`; zero for germs smooth at (or not through) the origin.
pub fn milnor_number(f: &BiPoly) -> Result<usize, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.multiplicity_at_origin().unwrap_or(0) <= 1 {
        return Ok(0);
    }
    let (fx, fy) = (f.derivative_x(), f.derivative_y());
    let h = fx.gcd(&fy);
    if !h.is_constant() {
        if h.constant_term().is_zero() {
            return Err(Error::NonIsolated(h.to_string()));
        }
        let (a, b) = (fx.exact_div(&h).expect("gcd divides"), fy.exact_div(&h).expect("gcd divides"));
        return intersection_multiplicity_resultant(&a, &b);
    }
    intersection_multiplicity_resultant(&fx, &fy)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl ConsistencyReport {
    fn push(&mut self, name: &str, inputs: &str, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.pass &= pass;
        self.checks.push(CheckRecord { name: name.into(), inputs: inputs.into(), expected, actual, pass });
    }

    fn fail(&mut self, name: &str, inputs: &str, err: &Error) {
        self.pass = false;
        self.checks.push(CheckRecord {
            name: name.into(),
            inputs: inputs.into(),
            expected: "no error".into(),
            actual: err.to_string(),
            pass: false,
        });
    }

    pub fn to_json(&self) -> Value {
        json!({"schema_version": REPORT_SCHEMA_VERSION, "checks": self.checks, "pass": self.pass})
    }

    pub fn to_table(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let mut s = String::new();
        let _ = writeln!(s, "{:<w$}  {:<4}  {:<24}  actual", "check", "ok", "expected");
        for c in &self.checks {
            let _ = writeln!(s, "{:<w$}  {:<4}  {:<24}  {}", c.name, if c.pass { "pass" } else { "FAIL" }, c.expected, c.actual);
        }
        let _ = writeln!(s, "overall: {}", if self.pass { "pass" } else { "FAIL" });
        s
    }
}

/// Checks that need only the graph: the linear-algebra certificate,
/// χ = ν(ζ), the two summation paths for χ, and one free blowup at every
/// vertex.
pub fn graph_report(graph: &DecoratedGraph, inputs: &str) -> ConsistencyReport {
    let mut rep = ConsistencyReport { checks: Vec::new(), pass: true };
    if let Err(e) = graph.validate() {
        rep.fail("graph structure", inputs, &e);
        return rep;
    }
    graph_checks(&mut rep, graph, inputs);
    rep
}

fn graph_checks(rep: &mut ConsistencyReport, graph: &DecoratedGraph, inputs: &str) {
    let bad: Vec<_> = graph.vanishing_residuals().into_iter().filter(|r| r.1 != 0 || r.2 != 0).collect();
    rep.push("total transform vanishing", inputs, "[]", format!("{bad:?}"));
    rep.push("determinant", inputs, 1, graph.determinant().abs());
    rep.push("negative definite", inputs, true, graph.is_negative_definite());
    let p = partition(graph);
    let zeta = zeta_phi(graph, &p);
    let chi = euler_char(graph, &p);
    rep.push("chi = nu(zeta)", inputs, chi, zeta.valuation_at_infinity());
    rep.push("chi from description", inputs, chi, chi_from_description(graph, &fiber_description(graph, &p)));
    let ids: Vec<usize> = graph.vertices.iter().map(|v| v.id).collect();
    let sweep = par::map(&ids, |&v| {
        graph.blowup_free_point(v).map(|b| {
            let pb = partition(&b);
            (zeta_phi(&b, &pb), euler_char(&b, &pb), b.determinant().abs())
        })
    });
    let mut bad = Vec::new();
    for (v, r) in ids.iter().zip(sweep) {
        match r {
            Ok((z, c, d)) if z == zeta && c == chi && d == 1.into() => {}
            Ok((z, c, d)) => bad.push(format!("v{v}: zeta {z}, chi {c}, det {d}")),
            Err(e) => bad.push(format!("v{v}: {e}")),
        }
    }
    rep.push("blowup invariance at every vertex", inputs, "[]", format!("{bad:?}"));
}

/// Run every cross-check on a germ pair. Failures become report entries.
pub fn consistency_report(f: &BiPoly, g: &BiPoly) -> ConsistencyReport {
    let mut rep = ConsistencyReport { checks: Vec::new(), pass: true };
    let inputs = format!("f = {f}; g = {g}");
    if let Err(e) = check_germs(f, Some(g)) {
        rep.fail("input", &inputs, &e);
        return rep;
    }
    let res = match resolve(f, Some(g)) {
        Ok(r) => r,
        Err(e) => {
            rep.fail("resolution", &inputs, &e);
            return rep;
        }
    };
    let graph = &res.graph;
    for (k, b) in res.branches.branches.iter().enumerate() {
        let name = format!("branch {k} multiplicity sequence");
        rep.push(&name, &inputs, format!("{:?}", b.euclid_sequence()), format!("{:?}", b.mult_sequence));
        let germ = if b.germ == crate::cluster::Germ::F { f } else { g };
        match verify_branch(germ, b) {
            Ok(_) => rep.push(&format!("branch {k} vanishing certificate"), &inputs, "ok", "ok"),
            Err(e) => rep.fail(&format!("branch {k} vanishing certificate"), &inputs, &e),
        }
    }
    match intersection_multiplicity_resultant(f, g) {
        Ok(i) => {
            rep.push("noether = resultant", &inputs, i, res.tree.noether_sum());
            match res.branches.intersection_fg() {
                Ok(c) => rep.push("contact formula = resultant", &inputs, i, c),
                Err(e) => rep.fail("contact formula = resultant", &inputs, &e),
            }
        }
        Err(e) => rep.fail("noether = resultant", &inputs, &e),
    }
    match (intersection_multiplicity_resultant(f, g), intersection_multiplicity_resultant(g, f)) {
        (Ok(a), Ok(b)) => rep.push("resultant symmetric", &inputs, a, b),
        (Err(e), _) | (_, Err(e)) => rep.fail("resultant symmetric", &inputs, &e),
    }
    graph_checks(&mut rep, graph, &inputs);
    let p = partition(graph);
    let zeta = zeta_phi(graph, &p);
    let zf = resolve(f, None).and_then(|r| zeta_acampo(&r.graph));
    match &zf {
        Ok(zf) if p.w2.is_empty() => rep.push("case I: zeta_phi = zeta_f", &inputs, zf, &zeta),
        Ok(_) => {}
        Err(e) => rep.fail("plane curve zeta_f", &inputs, e),
    }
    if let Ok(zf) = &zf {
        if f.squarefree_part().normalized() == f.normalized() {
            match milnor_number(f) {
                Ok(mu) => rep.push("nu(zeta_f) = 1 - mu", &inputs, 1 - mu as i64, zf.valuation_at_infinity()),
                Err(e) => rep.fail("nu(zeta_f) = 1 - mu", &inputs, &e),
            }
        }
    }
    rep
}

/// Plane-curve checks for a single germ: branch certificates, the graph
/// certificate, A'Campo against the Milnor number, and blowup invariance
/// of `ζ_f`.
pub fn curve_report(f: &BiPoly) -> ConsistencyReport {
    let mut rep = ConsistencyReport { checks: Vec::new(), pass: true };
    let inputs = format!("f = {f}");
    let res = match resolve(f, None) {
        Ok(r) => r,
        Err(e) => {
            rep.fail("resolution", &inputs, &e);
            return rep;
        }
    };
    for (k, b) in res.branches.branches.iter().enumerate() {
        rep.push(&format!("branch {k} multiplicity sequence"), &inputs, format!("{:?}", b.euclid_sequence()), format!("{:?}", b.mult_sequence));
        match verify_branch(f, b) {
            Ok(_) => rep.push(&format!("branch {k} vanishing certificate"), &inputs, "ok", "ok"),
            Err(e) => rep.fail(&format!("branch {k} vanishing certificate"), &inputs, &e),
        }
    }
    let graph = &res.graph;
    let bad: Vec<_> = graph.vanishing_residuals().into_iter().filter(|r| r.1 != 0).collect();
    rep.push("total transform vanishing", &inputs, "[]", format!("{bad:?}"));
    rep.push("determinant", &inputs, 1, graph.determinant().abs());
    let zf = match zeta_acampo(graph) {
        Ok(z) => z,
        Err(e) => {
            rep.fail("plane curve zeta_f", &inputs, &e);
            return rep;
        }
    };
    if f.squarefree_part().normalized() == f.normalized() {
        match milnor_number(f) {
            Ok(mu) => rep.push("nu(zeta_f) = 1 - mu", &inputs, 1 - mu as i64, zf.valuation_at_infinity()),
            Err(e) => rep.fail("nu(zeta_f) = 1 - mu", &inputs, &e),
        }
    }
    let ids: Vec<usize> = graph.vertices.iter().map(|v| v.id).collect();
    let bad: Vec<String> = par::map(&ids, |&v| match graph.blowup_free_point(v).and_then(|b| zeta_acampo(&b)) {
        Ok(z) if z == zf => None,
        Ok(z) => Some(format!("v{v}: {z}")),
        Err(e) => Some(format!("v{v}: {e}")),
    })
    .into_iter()
    .flatten()
    .collect();
    rep.push("blowup invariance of zeta_f at every vertex", &inputs, "[]", format!("{bad:?}"));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn p(s: &str) -> BiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_multiplicity_resultant(&p("x"), &p("y")).unwrap(), 1);
        assert_eq!(intersection_multiplicity_resultant(&p("x^2+y^3"), &p("x")).unwrap(), 3);
        assert_eq!(intersection_multiplicity_resultant(&p("x^2+y^3"), &p("y")).unwrap(), 2);
        assert!(matches!(intersection_multiplicity_resultant(&p("x^2"), &p("x*y")), Err(Error::CommonFactor(_))));
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number(&p("x^2+y^3")).unwrap(), 2);
        assert_eq!(milnor_number(&p("x^2+y^2")).unwrap(), 1);
        assert!(matches!(milnor_number(&p("x^2*y")), Err(Error::NonIsolated(_))));
        for k in 1..=4 {
            assert_eq!(milnor_number(&p(&format!("x^2+y^{}", 2 * k + 1))).unwrap(), 2 * k);
        }
    }

    #[test]
    fn reports_pass() {
        for (f, g) in [("x^2+y^3", "x"), ("x^3", "y^3"), ("x^2*y^2", "x+y")] {
            let r = consistency_report(&p(f), &p(g));
            assert!(r.pass, "{}", r.to_table());
        }
    }
}
