use mfiber_core::algebra::{parse_poly, resultant_order, BiPoly, Q};
use mfiber_core::fiber::{chi_from_description, euler_char, fiber_description, partition, zeta_phi};
use mfiber_core::oracles::intersection_multiplicity_resultant;
use mfiber_core::pipeline::resolve;
use mfiber_core::zeta::CycloProduct;
use proptest::prelude::*;

fn poly_from(terms: &[(u32, u32, i64)]) -> BiPoly {
    let mut p = BiPoly::zero();
    for &(i, j, c) in terms {
        p = &p + &BiPoly::monomial(Q::from_integer(c.into()), i, j);
    }
    p
}

fn small_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -4i64..=4), 1..6)
        .prop_map(|t| poly_from(&t))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn cyclo() -> impl Strategy<Value = CycloProduct> {
    prop::collection::vec((1u64..12, -3i64..=3), 0..5).prop_map(|v| CycloProduct::from_pairs(&v))
}

/// Germs built from a few singular and smooth pieces, so resolutions stay small.
fn germ() -> impl Strategy<Value = BiPoly> {
    let piece = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        (1i64..4).prop_map(|c| format!("y-{c}*x")),
        (2u32..4, 2u32..6, 1i64..3).prop_map(|(a, b, c)| format!("y^{a}-{c}*x^{b}")),
        (2u32..4, 1i64..3).prop_map(|(b, c)| format!("x^2+{c}*y^{}", b + 1)),
        (2u32..4, 2u32..6).prop_map(|(a, b)| format!("y^{a}+x^{b}+x^{}", b + 1)),
    ];
    prop::collection::vec((piece, 1u32..3), 1..3).prop_map(|v| {
        let s: Vec<String> = v.into_iter().map(|(p, e)| format!("({p})^{e}")).collect();
        parse_poly(&s.join("*")).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclo_laws(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(a.multiply(&b), b.multiply(&a));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert!(a.multiply(&a.invert()).is_one());
        prop_assert_eq!(a.multiply(&b).valuation_at_infinity(), a.valuation_at_infinity() + b.valuation_at_infinity());
        prop_assert_eq!(a.multiply(&CycloProduct::one()), a.clone());
        // expanded numerator/denominator degrees account for the valuation
        let (num, den) = a.expanded();
        prop_assert_eq!(den.len() as i64 - num.len() as i64, a.valuation_at_infinity());
    }

    #[test]
    fn print_parse_round_trip(p in small_poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn squarefree_reassembles(p in small_poly(), q in small_poly()) {
        let p = &(&p * &q) * &p;
        prop_assume!(!p.is_constant());
        let parts = p.squarefree_decompose();
        let mut prod = BiPoly::one();
        for (f, m) in &parts {
            for _ in 0..*m {
                prod = &prod * f;
            }
        }
        prop_assert_eq!(prod.normalized(), p.normalized());
        for (i, (a, _)) in parts.iter().enumerate() {
            prop_assert_eq!(a.squarefree_part(), a.normalized());
            for (b, _) in &parts[i + 1..] {
                prop_assert!(a.gcd(b).is_constant());
            }
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in small_poly(), b in small_poly(), c in small_poly()) {
        let (p, q) = (&a * &c, &b * &c);
        let r = p.resultant_y(&q);
        let common = p.gcd(&q).degree_y().unwrap_or(0) > 0;
        if p.degree_y().unwrap_or(0) > 0 && q.degree_y().unwrap_or(0) > 0 {
            prop_assert_eq!(r.is_zero(), common);
        }
        prop_assert_eq!(resultant_order(&p, &q), r.order());
    }

    #[test]
    fn multiplicity_is_additive(a in small_poly(), b in small_poly()) {
        let m = |p: &BiPoly| p.multiplicity_at_origin().unwrap();
        prop_assert_eq!(m(&(&a * &b)), m(&a) + m(&b));
    }

    #[test]
    fn newton_polygon_is_lower_convex(p in small_poly()) {
        let p = &p * &BiPoly::monomial(Q::from_integer(1.into()), 1, 1);
        let p = &p - &BiPoly::monomial(p.constant_term(), 0, 0);
        prop_assume!(!p.is_zero());
        let edges = p.newton_polygon().unwrap();
        for w in edges.windows(2) {
            let (a, b) = (w[0].slope, w[1].slope);
            prop_assert!(u64::from(a.0) * u64::from(b.1) < u64::from(b.0) * u64::from(a.1));
        }
        for e in &edges {
            let (s, t) = e.slope;
            let level = |i: u32, j: u32| u64::from(s) * u64::from(i) + u64::from(t) * u64::from(j);
            prop_assert!(e.support.len() >= 2);
            let c = level(e.support[0].0, e.support[0].1);
            for (i, j, _) in &e.support {
                prop_assert_eq!(level(*i, *j), c);
            }
            for &(i, j) in p.terms().keys() {
                prop_assert!(level(i, j) >= c);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipeline_invariants(f in germ(), g in germ()) {
        prop_assume!(f.gcd(&g).is_constant());
        let r = resolve(&f, Some(&g)).unwrap();
        let n = r.branches.instances.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(&r.branches.instance_contact[i][j], &r.branches.instance_contact[j][i]);
            }
        }
        for b in &r.branches.branches {
            prop_assert_eq!(&b.euclid_sequence(), &b.mult_sequence);
        }
        let i0 = intersection_multiplicity_resultant(&f, &g).unwrap();
        prop_assert_eq!(i0, intersection_multiplicity_resultant(&g, &f).unwrap());
        prop_assert_eq!(i0 as u64, r.tree.noether_sum());
        prop_assert_eq!(i0 as u64, r.branches.intersection_fg().unwrap());

        let graph = &r.graph;
        prop_assert!(graph.check_vanishing().is_ok());
        prop_assert_eq!(graph.determinant().magnitude().clone(), 1u32.into());
        let pt = partition(graph);
        let (z, chi) = (zeta_phi(graph, &pt), euler_char(graph, &pt));
        prop_assert_eq!(chi, z.valuation_at_infinity());
        prop_assert_eq!(chi, chi_from_description(graph, &fiber_description(graph, &pt)));
        for v in &graph.vertices {
            let b = graph.blowup_free_point(v.id).unwrap();
            let pb = partition(&b);
            prop_assert_eq!(&zeta_phi(&b, &pb), &z);
            prop_assert_eq!(euler_char(&b, &pb), chi);
        }
    }

    #[test]
    fn contact_symmetry_single_germ(f in germ()) {
        let r = resolve(&f, None).unwrap();
        let n = r.branches.instances.len();
        for i in 0..n {
            prop_assert!(r.branches.instance_contact[i][i].is_none());
            for j in 0..n {
                prop_assert_eq!(&r.branches.instance_contact[i][j], &r.branches.instance_contact[j][i]);
                if i != j {
                    prop_assert!(r.branches.instance_contact[i][j].is_some());
                }
            }
        }
    }
}
