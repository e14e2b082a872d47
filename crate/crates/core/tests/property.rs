mod common;

use hypersens::hypergraph::random_permutation;
use hypersens::property::{clique_size_for, Witness};
use hypersens::sensitivity::sensitivity_at;
use hypersens::{seeded_rng, BitString, CliqueSpec, Error, Hypergraph, PropertySpec};
use proptest::prelude::*;

use common::*;

fn graph_specs() -> Vec<PropertySpec> {
    vec![
        PropertySpec::isolated_vertex(7).unwrap(),
        PropertySpec::isolated_triangle(7).unwrap(),
        PropertySpec::isolated_clique(7, 2, 1, 4).unwrap(),
        PropertySpec::isolated_clique(6, 3, 1, 4).unwrap(),
        PropertySpec::isolated_clique(6, 3, 2, 4).unwrap(),
        PropertySpec::isolated_clique(7, 3, 2, 5).unwrap(),
    ]
}

fn brute(p: &PropertySpec, g: &Hypergraph) -> bool {
    let e = edge_set(g);
    match *p {
        PropertySpec::IsolatedVertex { v } => brute_isolated_vertex(v, &e),
        _ => {
            let c = p.as_clique().unwrap();
            brute_isolated_clique(c.v, c.k, c.i, c.h, &e)
        }
    }
}

/// Random graph with planted cliques so that both values occur.
fn sample(p: &PropertySpec, rng: &mut hypersens::Rng, round: usize) -> Hypergraph {
    use rand::Rng;
    let (v, k) = p.graph_shape().unwrap();
    let density = [0.05, 0.2, 0.5, 0.9][round % 4];
    let mut g = Hypergraph::random(v, k, density, rng).unwrap();
    if round.is_multiple_of(3) {
        if let Some(c) = p.as_clique() {
            let start = rng.gen_range(0..=v - c.h);
            let s: Vec<usize> = (start..start + c.h).collect();
            let mut bits = g.into_bits();
            let s_vs = hypersens::VertexSet::new(s).unwrap();
            for (id, e) in Hypergraph::complete(v, k)
                .unwrap()
                .edges()
                .into_iter()
                .enumerate()
            {
                let meet = e.iter().filter(|x| s_vs.contains(**x)).count();
                if meet == k {
                    bits.set(id, true);
                } else if meet >= c.i && rng.gen_bool(0.8) {
                    bits.set(id, false);
                }
            }
            g = Hypergraph::from_bits(v, k, bits).unwrap();
        }
    }
    g
}

#[test]
fn graph_evaluators_match_brute_force() {
    let mut rng = seeded_rng(11);
    for p in graph_specs() {
        let mut seen = [false; 2];
        for round in 0..300 {
            let g = sample(&p, &mut rng, round);
            let r = p.evaluate_graph(&g).unwrap();
            assert_eq!(r.value, brute(&p, &g), "{p:?} {:?}", g.edges());
            seen[r.value as usize] = true;
            if let Some(Witness::Vertices(s)) = &r.witness {
                if let Some(c) = p.as_clique() {
                    assert!(is_isolated_clique(&edge_set(&g), c.k, c.i, s));
                }
            }
        }
        assert!(seen[0] && seen[1], "{p:?} only produced one value");
    }
}

#[test]
fn isomorphism_invariance() {
    let mut rng = seeded_rng(12);
    for p in graph_specs() {
        let v = p.graph_shape().unwrap().0;
        for round in 0..100 {
            let g = sample(&p, &mut rng, round);
            let sigma = random_permutation(v, &mut rng);
            let h = g.relabel(&sigma).unwrap();
            assert_eq!(
                p.evaluate_graph(&g).unwrap().value,
                p.evaluate_graph(&h).unwrap().value
            );
            assert_eq!(
                sensitivity_at(&p, g.bits()).unwrap().s_at_x,
                sensitivity_at(&p, h.bits()).unwrap().s_at_x
            );
        }
    }
}

#[test]
fn rubinstein_matches_definition() {
    let mut rng = seeded_rng(13);
    for k in [2, 4, 6] {
        let n = k * k;
        let rub = PropertySpec::rubinstein(k).unwrap();
        let cyc = PropertySpec::cyclic_rubinstein(k).unwrap();
        for round in 0..400 {
            let density = [0.1, 0.2, 0.35][round % 3];
            let x = BitString::random(n, density, &mut rng);
            assert_eq!(
                rub.evaluate(&x).unwrap().value,
                brute_rubinstein(k, &x),
                "{x}"
            );
            assert_eq!(
                cyc.evaluate(&x).unwrap().value,
                brute_cyclic_rubinstein(k, &x),
                "{x}"
            );
        }
    }
    assert_eq!(PropertySpec::rubinstein(3), Err(Error::OddK(3)));
    let bad = BitString::zeros(15);
    assert!(matches!(
        PropertySpec::rubinstein(4).unwrap().evaluate(&bad),
        Err(Error::BadLength {
            expected: 16,
            got: 15
        })
    ));
}

#[test]
fn cyclic_closure_is_shift_invariant() {
    let mut rng = seeded_rng(14);
    let cyc = PropertySpec::cyclic_rubinstein(4).unwrap();
    for _ in 0..200 {
        let x = BitString::random(16, 0.2, &mut rng);
        let y = hypersens::property::cyclic_shift(&x, 5);
        assert_eq!(
            cyc.evaluate(&x).unwrap().value,
            cyc.evaluate(&y).unwrap().value
        );
    }
}

#[test]
fn spec_validation() {
    assert!(CliqueSpec::new(6, 3, 3, 4).is_err());
    assert!(CliqueSpec::with_i_override(6, 3, 3, 4).is_ok());
    assert!(matches!(
        CliqueSpec::new(6, 3, 0, 4),
        Err(Error::IOutOfRange { .. })
    ));
    assert_eq!(
        CliqueSpec::new(3, 2, 1, 4),
        Err(Error::HTooLarge { h: 4, v: 3 })
    );
    assert!(CliqueSpec::new(6, 3, 1, 3).is_err());
    assert_eq!(clique_size_for(16, 2, 0.5), 4);
    assert_eq!(clique_size_for(27, 2, 1.0 / 3.0), 3);
    assert_eq!(clique_size_for(10, 3, 0.0), 4);
    let g = Hypergraph::empty(5, 2).unwrap();
    assert_eq!(
        PropertySpec::isolated_triangle(6)
            .unwrap()
            .evaluate_graph(&g),
        Err(Error::SpecMismatch)
    );
}

#[test]
fn spec_json_round_trip() {
    use hypersens::property::PropertySpecJson;
    for p in graph_specs().into_iter().chain([
        PropertySpec::rubinstein(4).unwrap(),
        PropertySpec::cyclic_rubinstein(2).unwrap(),
    ]) {
        let j = PropertySpecJson::from(&p);
        let text = serde_json::to_string(&j).unwrap();
        let back: PropertySpecJson = serde_json::from_str(&text).unwrap();
        assert_eq!(PropertySpec::try_from(&back).unwrap(), p);
    }
    let t: PropertySpecJson =
        serde_json::from_str(r#"{"variant":"isolated-clique","v":16,"k":2,"i":1,"t":0.5}"#)
            .unwrap();
    assert_eq!(
        PropertySpec::try_from(&t).unwrap(),
        PropertySpec::isolated_clique(16, 2, 1, 4).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangle_evaluator_agrees(seed in any::<u64>(), v in 3usize..9, density in 0.0f64..1.0) {
        let p = PropertySpec::isolated_triangle(v).unwrap();
        let g = Hypergraph::random(v, 2, density, &mut seeded_rng(seed)).unwrap();
        prop_assert_eq!(p.evaluate_graph(&g).unwrap().value, brute(&p, &g));
    }

    #[test]
    fn clique_property_on_isolated_clique_union(v in 5usize..10, h in 3usize..5) {
        prop_assume!(h <= v);
        let p = PropertySpec::isolated_clique(v, 2, 1, h).unwrap();
        let g = Hypergraph::clique_on(v, 2, &hypersens::VertexSet::range(h)).unwrap();
        prop_assert!(p.evaluate_graph(&g).unwrap().value);
    }
}
