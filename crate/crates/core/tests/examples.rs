//! Worked examples, module by module.

use mfiber_core::algebra::{parse_poly, BiPoly, Q, UniPoly};
use mfiber_core::cluster::Germ;
use mfiber_core::fiber::{
    boundary_covering_data, boundary_surgery, chi_from_description, classify, delta_f, euler_char, fiber_description, partition,
    zeta_acampo, zeta_phi, Covering, HomotopyClass, MONODROMY_CYCLIC,
};
use mfiber_core::oracles::{consistency_report, intersection_multiplicity_resultant, milnor_number};
use mfiber_core::pipeline::{resolve, BranchData};
use mfiber_core::puiseux::{expand_pair, puiseux_branches, verify_branch};
use mfiber_core::zeta::CycloProduct;
use mfiber_core::Error;

fn p(s: &str) -> BiPoly {
    parse_poly(s).unwrap()
}

fn q(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

#[test]
fn parsing() {
    let c = p("x^2 + y^3");
    assert_eq!(c.terms().len(), 2);
    assert_eq!(c.coeff(2, 0), q(1, 1));
    assert_eq!(c.coeff(0, 3), q(1, 1));
    assert!(p("0").is_zero());
    let e = p("(x+y)^2 - x^2 - 2*x*y");
    assert_eq!(e.terms().len(), 1);
    assert_eq!(e.coeff(0, 2), q(1, 1));
    assert!(matches!(parse_poly("x^2 + z"), Err(Error::UnknownVariable { .. })));
    assert!(matches!(parse_poly("x^2 +"), Err(Error::Syntax { .. })));
}

#[test]
fn gcds() {
    assert_eq!(p("x^2*y").gcd(&p("x*y^2")), p("x*y"));
    assert!(p("x^2+y^3").gcd(&p("x")).is_constant());
    let a = p("3*x^2+6*y^3");
    assert_eq!(a.gcd(&a), a.normalized());
}

#[test]
fn squarefree_decompositions() {
    assert_eq!(p("(x^2+y^3)^2").squarefree_decompose(), vec![(p("x^2+y^3"), 2)]);
    let d = p("x^2*y^3").squarefree_decompose();
    assert_eq!(d, vec![(p("x"), 2), (p("y"), 3)]);
    let d = p("x^3 + x^2*y - x*y^2 - y^3").squarefree_decompose();
    assert_eq!(d, vec![(p("x-y"), 1), (p("x+y"), 2)]);
}

#[test]
fn resultants() {
    let r = p("y-x").resultant_y(&p("y+x"));
    assert!(r == UniPoly::from_ints(&[0, 2]) || r == UniPoly::from_ints(&[0, -2]));
    assert_eq!(p("y^2").resultant_y(&p("x")), UniPoly::from_ints(&[0, 0, 1]));
    let c = p("x^2+y^3");
    assert!(c.resultant_y(&c).is_zero());
}

#[test]
fn multiplicities() {
    assert_eq!(p("x^2+y^3").multiplicity_at_origin(), Some(2));
    assert_eq!(p("1+x").multiplicity_at_origin(), Some(0));
    assert_eq!(p("x^2*y^2").multiplicity_at_origin(), Some(4));
}

#[test]
fn newton_polygons() {
    let e = p("x^2+y^3").newton_polygon().unwrap();
    assert_eq!(e.len(), 1);
    assert_eq!(e[0].slope, (3, 2));
    let e = p("x+y").newton_polygon().unwrap();
    assert_eq!((e.len(), e[0].slope), (1, (1, 1)));
    let e = p("x^5 + x^2*y + y^3").newton_polygon().unwrap();
    assert_eq!(e.len(), 2);
    let ends: Vec<Vec<(u32, u32)>> = e.iter().map(|x| x.support.iter().map(|t| (t.0, t.1)).collect()).collect();
    assert!(ends.contains(&vec![(2, 1), (5, 0)]) || ends.contains(&vec![(5, 0), (2, 1)]));
    assert!(ends.iter().any(|s| s.contains(&(0, 3)) && s.contains(&(2, 1))));
}

#[test]
fn puiseux_examples() {
    let b = puiseux_branches(&p("x^2+y^3")).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!((b[0].e, b[0].alpha, b[0].orbit_size), (2, 1, 1));
    assert_eq!(b[0].char_exponents, vec![q(3, 2)]);
    assert_eq!(b[0].mult_sequence, vec![2, 1, 1]);

    let b = puiseux_branches(&p("x*y")).unwrap();
    assert_eq!(b.len(), 2);
    for br in &b {
        assert!(br.char_exponents.is_empty());
        assert_eq!((br.mult_sequence.clone(), br.alpha), (vec![1], 1));
    }

    let b = puiseux_branches(&p("(x^2+y^3)^2")).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!((b[0].alpha, b[0].e, b[0].mult_sequence.clone()), (2, 2, vec![2, 1, 1]));
}

#[test]
fn contact_intersections() {
    let s = expand_pair(&p("x"), Some(&p("y"))).unwrap();
    assert_eq!(s.intersection_fg().unwrap(), 1);
    let s = expand_pair(&p("x^2+y^3"), Some(&p("x"))).unwrap();
    assert_eq!(s.intersection_fg().unwrap(), 3);
    let s = expand_pair(&p("x^2+y^3"), Some(&p("y"))).unwrap();
    assert_eq!(s.intersection_fg().unwrap(), 2);
}

#[test]
fn vanishing_certificates() {
    let f = p("x^2+y^3");
    let b = &puiseux_branches(&f).unwrap()[0];
    let cert = verify_branch(&f, b).unwrap();
    assert!(cert.order.is_none_or(|o| o >= cert.bound));

    let line = p("y-x");
    let b = &puiseux_branches(&line).unwrap()[0];
    assert_eq!(verify_branch(&line, b).unwrap().order, None);

    // a branch of a different curve is rejected
    let wrong = &puiseux_branches(&p("x^2+2*y^3")).unwrap()[0];
    assert!(verify_branch(&f, wrong).is_err());
}

#[test]
fn cluster_examples() {
    let r = resolve(&p("x"), Some(&p("y"))).unwrap();
    assert_eq!(r.tree.points.len(), 1);
    assert_eq!((r.tree.points[0].strict_mult_f, r.tree.points[0].strict_mult_g), (1, 1));

    let r = resolve(&p("x^2+y^3"), None).unwrap();
    let m: Vec<u64> = r.tree.points.iter().map(|c| c.strict_mult_f).collect();
    assert_eq!(m, vec![2, 1, 1]);

    for d in 2..=6 {
        let r = resolve(&p(&format!("x^{d}")), Some(&p(&format!("y^{d}")))).unwrap();
        assert_eq!(r.tree.points.len(), 1);
        assert_eq!((r.tree.points[0].strict_mult_f, r.tree.points[0].strict_mult_g), (d, d));
    }
}

#[test]
fn blowup_of_example_vertex() {
    for d in 2..=6u64 {
        let g = resolve(&p(&format!("x^{d}")), Some(&p(&format!("y^{d}")))).unwrap().graph;
        let b = g.blowup_free_point(0).unwrap();
        assert_eq!(b.vertices.len(), 2);
        assert_eq!((b.vertices[1].m, b.vertices[1].l), (d, d));
        assert_eq!((b.vertices[0].euler, b.vertices[1].euler), (-2, -1));
    }
}

#[test]
fn partitions_and_valences() {
    let g = resolve(&p("x^3"), Some(&p("y^3"))).unwrap().graph;
    let pt = partition(&g);
    assert_eq!((pt.w1.len(), pt.w2.len()), (1, 0));
    assert_eq!(delta_f(&g, 0).unwrap(), 1);

    let g = resolve(&p("x^2*y^2"), Some(&p("x+y"))).unwrap().graph;
    assert_eq!((g.vertices[0].m, g.vertices[0].l), (4, 1));
    let pt = partition(&g);
    assert_eq!((pt.w1.len(), pt.w2.len(), pt.a_g2.len()), (0, 1, 1));

    let g = resolve(&p("x"), Some(&p("x^2+y^3"))).unwrap().graph;
    assert!(g.vertices.iter().all(|v| v.m <= v.l));
    assert!(partition(&g).w2.is_empty());

    let g = resolve(&p("x^2+y^3"), Some(&p("x"))).unwrap().graph;
    let top = g.vertices.iter().find(|v| v.m == 6).unwrap();
    assert_eq!(delta_f(&g, top.id).unwrap(), 3);
}

#[test]
fn zeta_and_chi() {
    for d in 2..=6u64 {
        let g = resolve(&p(&format!("x^{d}")), Some(&p(&format!("y^{d}")))).unwrap().graph;
        let pt = partition(&g);
        assert_eq!(zeta_phi(&g, &pt), CycloProduct::factor(d, -1));
        assert_eq!(euler_char(&g, &pt), d as i64);
    }
    let g = resolve(&p("x^2*y^2"), Some(&p("x+y"))).unwrap().graph;
    let pt = partition(&g);
    assert_eq!(zeta_phi(&g, &pt), CycloProduct::factor(4, -1));
    assert_eq!(euler_char(&g, &pt), 4);

    let g = resolve(&p("x"), Some(&p("y"))).unwrap().graph;
    let pt = partition(&g);
    assert_eq!(zeta_phi(&g, &pt), CycloProduct::factor(1, -1));
    assert_eq!(euler_char(&g, &pt), 1);
    assert_eq!(zeta_phi(&g, &pt).valuation_at_infinity(), 1);
}

#[test]
fn acampo() {
    let g = resolve(&p("x^2+y^3"), None).unwrap().graph;
    let mut ms: Vec<u64> = g.vertices.iter().map(|v| v.m).collect();
    ms.sort();
    assert_eq!(ms, vec![2, 3, 6]);
    let z = zeta_acampo(&g).unwrap();
    assert_eq!(z, CycloProduct::from_pairs(&[(6, 1), (2, -1), (3, -1)]));
    assert_eq!(z.valuation_at_infinity(), -1);
    assert_eq!(1 - milnor_number(&p("x^2+y^3")).unwrap() as i64, -1);

    assert_eq!(zeta_acampo(&resolve(&p("x"), None).unwrap().graph).unwrap(), CycloProduct::factor(1, -1));
    let z = zeta_acampo(&resolve(&p("x*y"), None).unwrap().graph).unwrap();
    assert!(z.is_one());
    assert_eq!(z.valuation_at_infinity(), 0);
}

#[test]
fn zeta_algebra() {
    assert_eq!(CycloProduct::factor(1, -1).valuation_at_infinity(), 1);
    assert_eq!(CycloProduct::from_pairs(&[(6, 1), (2, -1), (3, -1)]).valuation_at_infinity(), -1);
    assert_eq!(CycloProduct::one().valuation_at_infinity(), 0);
    assert!(CycloProduct::factor(2, 1).multiply(&CycloProduct::factor(2, -1)).is_one());
    assert_eq!(
        CycloProduct::factor(2, 1).multiply(&CycloProduct::factor(3, 1)),
        CycloProduct::from_pairs(&[(2, 1), (3, 1)])
    );
}

#[test]
fn classification() {
    for d in 2..=6 {
        let g = resolve(&p(&format!("x^{d}")), Some(&p(&format!("y^{d}")))).unwrap().graph;
        assert_eq!(classify(&g, &partition(&g)), HomotopyClass::CaseI);
    }
    let g = resolve(&p("x^2*y^2"), Some(&p("x+y"))).unwrap().graph;
    assert_eq!(classify(&g, &partition(&g)), HomotopyClass::CaseII { m: 4 });
    let g = resolve(&p("x^3+y^4"), Some(&p("y^2+x^5"))).unwrap().graph;
    assert_eq!(classify(&g, &partition(&g)).tag(), "Mixed");
}

#[test]
fn fiber_descriptions() {
    for d in 2..=6u64 {
        let g = resolve(&p(&format!("x^{d}")), Some(&p(&format!("y^{d}")))).unwrap().graph;
        let fd = fiber_description(&g, &partition(&g));
        assert!(fd.region_w2.vertices.is_empty());
        assert_eq!(fd.handles.len(), 1);
        let h = &fd.handles[0];
        assert_eq!((h.count, h.twist, h.framing), (d, d as u32, -(d as i64)));
        assert_eq!(chi_from_description(&g, &fd), d as i64);
        let s = boundary_surgery(&fd);
        assert_eq!((s[0].curves, s[0].coefficient.clone()), (d, format!("1/{d}")));
    }
    let g = resolve(&p("x^2*y^2"), Some(&p("x+y"))).unwrap().graph;
    let fd = fiber_description(&g, &partition(&g));
    assert!(fd.region_f1.vertices.is_empty());
    let h = &fd.handles[0];
    assert_eq!((h.count, h.twist, h.framing, h.monodromy.as_str()), (4, 1, -1, MONODROMY_CYCLIC));
    assert_eq!(chi_from_description(&g, &fd), 4);
    assert_eq!(boundary_surgery(&fd)[0].coefficient, "1/1");

    let g = resolve(&p("x"), Some(&p("y"))).unwrap().graph;
    let fd = fiber_description(&g, &partition(&g));
    assert_eq!((fd.handles[0].count, fd.handles[0].twist), (1, 1));
    assert_eq!(chi_from_description(&g, &fd), 1);

    // two g-branches give two independent surgery families
    let g = resolve(&p("x"), Some(&p("y*(y-x^2)"))).unwrap().graph;
    assert_eq!(boundary_surgery(&fiber_description(&g, &partition(&g))).len(), 2);
}

#[test]
fn coverings() {
    let cov = |s: &str| boundary_covering_data(&resolve(&p(s), None).unwrap().graph);
    assert_eq!(cov("x^2+y^3"), vec![Covering { arrow: 0, components: 1, degree: 1 }]);
    assert_eq!(cov("(x^2+y^3)^2"), vec![Covering { arrow: 0, components: 2, degree: 1 }]);
    let c = cov("x^2");
    assert_eq!((c[0].components, c[0].degree), (2, 1));
}

#[test]
fn resultant_oracle() {
    assert_eq!(intersection_multiplicity_resultant(&p("x"), &p("y")).unwrap(), 1);
    assert_eq!(intersection_multiplicity_resultant(&p("x^2+y^3"), &p("x")).unwrap(), 3);
    assert_eq!(intersection_multiplicity_resultant(&p("x^2+y^3"), &p("y")).unwrap(), 2);
    assert_eq!(milnor_number(&p("x^2+y^3")).unwrap(), 2);
    assert_eq!(milnor_number(&p("x^2+y^2")).unwrap(), 1);
    assert!(matches!(milnor_number(&p("x^2*y")), Err(Error::NonIsolated(_))));
}

#[test]
fn consistency_examples() {
    for (f, g, tag) in [("x^2+y^3", "x", "CaseII"), ("x^3", "y^3", "CaseI"), ("x^2*y^2", "x+y", "CaseII")] {
        let rep = consistency_report(&p(f), &p(g));
        assert!(rep.pass, "{}", rep.to_table());
        let gr = resolve(&p(f), Some(&p(g))).unwrap().graph;
        assert_eq!(classify(&gr, &partition(&gr)).tag(), tag);
    }
}

#[test]
fn input_errors() {
    assert!(matches!(resolve(&p("x^2"), Some(&p("x"))), Err(Error::CommonFactor(_))));
    assert!(matches!(resolve(&p("1+x"), Some(&p("y"))), Err(Error::NotThroughOrigin(_))));
    assert!(matches!(resolve(&p("0"), Some(&p("y"))), Err(Error::ZeroPolynomial)));
}

#[test]
fn branch_file_round_trip() {
    let r = resolve(&p("x^3+y^4"), Some(&p("y^2+x^5"))).unwrap();
    let data = BranchData::from_set(&r.branches);
    let text = serde_json::to_string(&data.to_json()).unwrap();
    let back = BranchData::from_json(&text).unwrap();
    assert_eq!(back, data);
    assert_eq!(mfiber_core::graph::to_dual_graph(&back.cluster().unwrap()), r.graph);
    assert!(back.branches.iter().any(|b| b.germ == Germ::G));
}
