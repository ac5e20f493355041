mod common;

use common::*;
use mplab_core::io::{emit_graph6, parse_edge_list, parse_graph6};
use mplab_core::structure::{are_isomorphic, automorphism_orbits, find_isomorphism, invariants, DEFAULT_ISO_BUDGET};
use mplab_core::{FamilySpec, Graph};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn graph6_round_trip(g in arb_graph(20)) {
        prop_assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn isomorphism_under_relabelling(g in arb_graph(9), seed in any::<u64>()) {
        let perm = &permutations(g.n(), 1, seed)[0];
        let h = g.relabel(perm);
        let phi = find_isomorphism(&g, &h, DEFAULT_ISO_BUDGET).unwrap().expect("relabelled copy");
        for e in g.edges() {
            prop_assert!(h.has_edge(phi[e.u], phi[e.v]));
        }
        prop_assert!(are_isomorphic(&h, &g, DEFAULT_ISO_BUDGET).unwrap());
        prop_assert!(are_isomorphic(&g, &g, DEFAULT_ISO_BUDGET).unwrap());
        prop_assert_eq!(invariants(&g), invariants(&h));
    }

    #[test]
    fn isomorphism_is_symmetric(a in arb_graph(7), b in arb_graph(7)) {
        let ab = are_isomorphic(&a, &b, DEFAULT_ISO_BUDGET).unwrap();
        prop_assert_eq!(ab, are_isomorphic(&b, &a, DEFAULT_ISO_BUDGET).unwrap());
        if invariants(&a) != invariants(&b) {
            prop_assert!(!ab);
        }
    }
}

#[test]
fn graph6_round_trip_on_corpus() {
    for (name, g) in corpus() {
        assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g, "{name}");
    }
}

#[test]
fn generated_degrees_match_the_family() {
    for spec in mplab_core::corpus::default_specs() {
        let g = spec.generate().unwrap();
        let nominal = match &spec {
            FamilySpec::Cycle(_) => 2,
            FamilySpec::Complete(n) => n - 1,
            FamilySpec::CompleteBipartite(a, _) => *a,
            FamilySpec::Circulant { gens, .. } => gens.len(),
            FamilySpec::Petersen => 3,
            FamilySpec::Hypercube(k) | FamilySpec::FoldedCube(k) => *k,
            FamilySpec::Hamming { d, q } => d * (q - 1),
            FamilySpec::HalvedCube(k) => k * (k - 1) / 2,
            FamilySpec::Torus(dims) => 2 * dims.len(),
            FamilySpec::Product(_) => unreachable!(),
        };
        assert!(g.is_connected(), "{spec}");
        assert_eq!(g.regular_degree(), Some(nominal), "{spec}");
        assert_eq!(2 * g.m(), g.n() * nominal, "{spec}");
    }
}

#[test]
fn hamming_binary_is_the_hypercube() {
    for d in 1..=4 {
        let h = FamilySpec::Hamming { d, q: 2 }.generate().unwrap();
        let q = if d == 1 {
            gen("complete:2")
        } else {
            FamilySpec::Hypercube(d).generate().unwrap()
        };
        assert!(are_isomorphic(&h, &q, DEFAULT_ISO_BUDGET).unwrap(), "d={d}");
    }
}

#[test]
fn small_family_identities() {
    let k4 = gen("complete:4");
    for s in ["fq:3", "hamming:1,4", "halfcube:3"] {
        assert!(are_isomorphic(&gen(s), &k4, DEFAULT_ISO_BUDGET).unwrap(), "{s}");
    }
    let prism = gen("circulant:6:2,4,3");
    let c3k2 = gen("cycle:3").cartesian_product(&gen("complete:2")).unwrap();
    assert!(are_isomorphic(&c3k2, &prism, DEFAULT_ISO_BUDGET).unwrap());
    assert_eq!(gen("product:complete:2*complete:2*complete:2"), gen("hypercube:3"));
    assert_eq!(parse_graph6("C~").unwrap(), k4);
    assert_eq!(emit_graph6(&gen("complete:2")), "A_");
    assert_eq!(parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0").unwrap(), gen("cycle:4"));
    assert!(parse_edge_list("4 1\n0 4").is_err());
}

#[test]
fn circulants_are_vertex_transitive() {
    let specs = mplab_core::corpus::circulant_specs(12, DEFAULT_ISO_BUDGET).unwrap();
    assert!(specs.len() > 30);
    for spec in specs {
        let g = spec.generate().unwrap();
        assert!(automorphism_orbits(&g, DEFAULT_ISO_BUDGET).unwrap().transitive, "{spec}");
    }
}

#[test]
fn corpus_members_are_vertex_transitive() {
    for (name, g) in corpus() {
        let orbits = automorphism_orbits(&g, DEFAULT_ISO_BUDGET).unwrap();
        assert!(orbits.transitive, "{name}");
    }
    let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    assert!(!automorphism_orbits(&path, DEFAULT_ISO_BUDGET).unwrap().transitive);
}
