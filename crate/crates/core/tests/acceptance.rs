//! Acceptance criteria 1–9; one line each, nonzero exit on any failure.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use mfiber_core::algebra::{parse_poly, BiPoly};
use mfiber_core::corpus::{load_dir, EntryInput};
use mfiber_core::fiber::{
    boundary_covering_data, chi_from_description, classify, euler_char, fiber_description, partition, zeta_acampo, zeta_phi,
    HomotopyClass,
};
use mfiber_core::graph::DecoratedGraph;
use mfiber_core::oracles::{intersection_multiplicity_resultant, milnor_number};
use mfiber_core::par;
use mfiber_core::pipeline::{invariants, resolve};
use mfiber_core::zeta::CycloProduct;

type Outcome = Result<String, String>;

fn p(s: &str) -> BiPoly {
    parse_poly(s).expect("literal parses")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pairs() -> Vec<(String, BiPoly, BiPoly)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    load_dir(&dir)
        .expect("shipped corpus")
        .into_iter()
        .filter_map(|e| match e.input {
            Ok(EntryInput::Pair { f, g }) => Some((e.name, f, g)),
            _ => None,
        })
        .collect()
}

fn graphs() -> Vec<(String, DecoratedGraph)> {
    par::map(&pairs(), |(n, f, g)| (n.clone(), resolve(f, Some(g)).expect("corpus pair resolves").graph))
}

fn c1() -> Outcome {
    for d in 2..=6u64 {
        let t = Instant::now();
        let r = resolve(&p(&format!("x^{d}")), Some(&p(&format!("y^{d}")))).map_err(|e| e.to_string())?;
        let g = &r.graph;
        ensure(g.vertices.len() == 1 && g.vertices[0].m == d && g.vertices[0].l == d, || format!("d={d}: graph {g:?}"))?;
        let inv = invariants(g);
        ensure(inv.class == HomotopyClass::CaseI, || format!("d={d}: class {}", inv.class.tag()))?;
        ensure(inv.chi == d as i64, || format!("d={d}: chi {}", inv.chi))?;
        ensure(inv.zeta == CycloProduct::factor(d, -1), || format!("d={d}: zeta {}", inv.zeta))?;
        ensure(inv.to_json()["zeta_convention"] == "eulerchar", || "convention flag missing".into())?;
        ensure(t.elapsed() < Duration::from_secs(1), || format!("d={d}: {:?}", t.elapsed()))?;
    }
    Ok("x^d, y^d for d = 2..6: one vertex m = l = d, CaseI, chi = d, zeta = (1-t^d)^-1".into())
}

fn c2() -> Outcome {
    let t = Instant::now();
    let f = p("x^2+y^3");
    let g = resolve(&f, None).map_err(|e| e.to_string())?.graph;
    let mut ms: Vec<u64> = g.vertices.iter().map(|v| v.m).collect();
    ms.sort();
    ensure(ms == [2, 3, 6], || format!("multiplicities {ms:?}"))?;
    let z = zeta_acampo(&g).map_err(|e| e.to_string())?;
    ensure(z == CycloProduct::from_pairs(&[(6, 1), (2, -1), (3, -1)]), || format!("zeta_f {z}"))?;
    let mu = milnor_number(&f).map_err(|e| e.to_string())?;
    ensure(mu == 2 && z.valuation_at_infinity() == -1 && 1 - mu as i64 == -1, || format!("mu {mu}, nu {}", z.valuation_at_infinity()))?;
    ensure(t.elapsed() < Duration::from_secs(1), || format!("{:?}", t.elapsed()))?;
    Ok(format!("cusp: m = (2,3,6), zeta_f = {z}, nu = -1 = 1 - mu, mu = 2"))
}

fn c3() -> Outcome {
    let t = Instant::now();
    let g = resolve(&p("x^2*y^2"), Some(&p("x+y"))).map_err(|e| e.to_string())?.graph;
    let pt = partition(&g);
    ensure(pt.w1.is_empty(), || "W1 not empty".into())?;
    ensure(classify(&g, &pt) == HomotopyClass::CaseII { m: 4 }, || "not CaseII with m = 4".into())?;
    ensure(euler_char(&g, &pt) == 4 && zeta_phi(&g, &pt) == CycloProduct::factor(4, -1), || "chi or zeta".into())?;
    ensure(t.elapsed() < Duration::from_secs(1), || format!("{:?}", t.elapsed()))?;
    Ok("x^2 y^2, x+y: W1 empty, m = 4, chi = 4, zeta = (1-t^4)^-1, bouquet of 3 spheres".into())
}

fn c4(graphs: &[(String, DecoratedGraph)]) -> Outcome {
    ensure(graphs.len() >= 15, || format!("only {} corpus pairs", graphs.len()))?;
    let mut tags = std::collections::BTreeSet::new();
    for (n, g) in graphs {
        let pt = partition(g);
        let (chi, z) = (euler_char(g, &pt), zeta_phi(g, &pt));
        ensure(chi == z.valuation_at_infinity(), || format!("{n}: chi {chi} vs nu {}", z.valuation_at_infinity()))?;
        tags.insert(classify(g, &pt).tag());
    }
    ensure(tags.len() == 3, || format!("classes covered: {tags:?}"))?;
    Ok(format!("chi = nu(zeta) on {} corpus pairs covering {tags:?}", graphs.len()))
}

fn c5(graphs: &[(String, DecoratedGraph)]) -> Outcome {
    let bad: Vec<String> = par::map(graphs, |(n, g)| {
        let pt = partition(g);
        let (z, chi) = (zeta_phi(g, &pt), euler_char(g, &pt));
        g.vertices
            .iter()
            .filter_map(|v| {
                let b = g.blowup_free_point(v.id).ok()?;
                let pb = partition(&b);
                (zeta_phi(&b, &pb).exponents() != z.exponents() || euler_char(&b, &pb) != chi).then(|| format!("{n} at v{}", v.id))
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    ensure(bad.is_empty(), || format!("changed: {bad:?}"))?;
    let n: usize = graphs.iter().map(|(_, g)| g.vertices.len()).sum();
    Ok(format!("zeta exponent map and chi unchanged by {n} single free blowups"))
}

fn c6(pairs: &[(String, BiPoly, BiPoly)]) -> Outcome {
    let mut tangential = false;
    for (n, f, g) in pairs {
        let r = resolve(f, Some(g)).map_err(|e| format!("{n}: {e}"))?;
        let i = intersection_multiplicity_resultant(f, g).map_err(|e| format!("{n}: {e}"))?;
        ensure(r.tree.noether_sum() == i as u64, || format!("{n}: noether {} vs resultant {i}", r.tree.noether_sum()))?;
        // tangential: more than one common cluster point
        tangential |= r.tree.points.iter().filter(|c| c.strict_mult_f > 0 && c.strict_mult_g > 0).count() > 1;
    }
    ensure(pairs.len() >= 10 && tangential, || "corpus too small or no tangential pair".into())?;
    Ok(format!("noether sum = resultant on {} pairs, tangential ones included", pairs.len()))
}

fn c7(pairs: &[(String, BiPoly, BiPoly)], graphs: &[(String, DecoratedGraph)]) -> Outcome {
    let mut all: Vec<(String, DecoratedGraph)> = graphs.to_vec();
    for (n, f, _) in pairs {
        all.push((format!("{n} (f alone)"), resolve(f, None).map_err(|e| e.to_string())?.graph));
    }
    for (n, g) in &all {
        g.check_vanishing().map_err(|e| format!("{n}: {e}"))?;
        ensure(g.determinant().magnitude() == &1u32.into(), || format!("{n}: det {}", g.determinant()))?;
    }
    Ok(format!("total transform vanishes and det = ±1 on {} graphs", all.len()))
}

fn c8(graphs: &[(String, DecoratedGraph)]) -> Outcome {
    for (n, g) in graphs {
        let pt = partition(g);
        let (a, b) = (chi_from_description(g, &fiber_description(g, &pt)), euler_char(g, &pt));
        ensure(a == b, || format!("{n}: {a} vs {b}"))?;
    }
    Ok(format!("chi from the fibre description = euler_char on {} pairs", graphs.len()))
}

fn c9() -> Outcome {
    let cov = |s: &str| resolve(&p(s), None).map(|r| boundary_covering_data(&r.graph)).map_err(|e| e.to_string());
    let sq = cov("(x^2+y^3)^2")?;
    ensure(sq.len() == 1 && sq[0].components == 2 && sq[0].degree == 1, || format!("(x^2+y^3)^2: {sq:?}"))?;
    let c = cov("x^2+y^3")?;
    ensure(c.len() == 1 && c[0].components == 1 && c[0].degree == 1, || format!("x^2+y^3: {c:?}"))?;
    Ok("(x^2+y^3)^2: 2 components of degree 1; x^2+y^3: 1 component of degree 1".into())
}

fn main() {
    let start = Instant::now();
    let pairs = pairs();
    let graphs = graphs();
    let results: Vec<(usize, Outcome)> = vec![
        (1, c1()),
        (2, c2()),
        (3, c3()),
        (4, c4(&graphs)),
        (5, c5(&graphs)),
        (6, c6(&pairs)),
        (7, c7(&pairs, &graphs)),
        (8, c8(&graphs)),
        (9, c9()),
    ];
    let mut failed = 0;
    for (k, r) in &results {
        match r {
            Ok(msg) => println!("criterion {k}: pass  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL  {msg}");
            }
        }
    }
    let elapsed = start.elapsed();
    println!("acceptance: {} of 9 criteria pass in {elapsed:.2?}", 9 - failed);
    if failed > 0 || elapsed > Duration::from_secs(30) {
        std::process::exit(1);
    }
}
