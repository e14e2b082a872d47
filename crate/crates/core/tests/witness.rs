mod common;

use hypersens::family::{generate_family, trim_sets};
use hypersens::field::make_field;
use hypersens::sensitivity::enumerate_sensitive_tuples;
use hypersens::witness::{
    build_isolated_vertex_witness, clique_packing_bound, near_clique_construction, WitnessJson,
};
use hypersens::{
    build_s0_witness, build_s1_witness, certify_blocks, clique_packing, sensitivity_at,
    triangle_packing, BitString, CliqueSpec, Hypergraph, PropertySpec,
};

use common::*;

/// Pairwise check: no two members share `k` vertices.
fn edge_disjoint(members: &[hypersens::VertexSet], k: usize) -> bool {
    members.iter().enumerate().all(|(a, x)| {
        members[a + 1..]
            .iter()
            .all(|y| x.iter().filter(|e| y.contains(**e)).count() < k)
    })
}

#[test]
fn triangle_packing_sizes() {
    for v in 3..=200 {
        let p = triangle_packing(v).unwrap();
        assert!(p
            .members
            .iter()
            .all(|m| m.len() == 3 && m.iter().all(|&x| x < v)));
        if v <= 60 {
            assert!(edge_disjoint(&p.members, 2), "v = {v}");
        }
        let vp = v - (v - 3) % 6;
        assert_eq!(p.members.len(), vp * (vp - 1) / 6);
        if v >= 9 {
            assert!(6 * p.members.len() >= (v - 5) * (v - 6), "v = {v}");
        }
    }
    assert_eq!(triangle_packing(7).unwrap().members.len(), 1);
}

#[test]
fn clique_packing_meets_maximality_bound() {
    for k in 2..=4 {
        for v in k + 1..=14 {
            let p = clique_packing(v, k).unwrap();
            assert!(edge_disjoint(&p.members, k));
            assert!(
                p.members.len() as f64 >= clique_packing_bound(v, k),
                "v={v} k={k}"
            );
        }
    }
    let k6 = clique_packing(6, 2).unwrap();
    let exact = hypersens::block_sensitivity_exact(
        &PropertySpec::isolated_triangle(6).unwrap(),
        &BitString::zeros(15),
        3,
    )
    .unwrap();
    assert_eq!(k6.members.len(), exact.value);
    assert!(clique_packing(8, 3).unwrap().members.len() >= 5);
}

#[test]
fn packings_certify_at_empty_graph() {
    for (v, k) in [(6, 2), (9, 2), (7, 3), (8, 3), (7, 4)] {
        let p = PropertySpec::isolated_clique(v, k, 1, k + 1).unwrap();
        let packing = if k == 2 {
            triangle_packing(v).unwrap()
        } else {
            clique_packing(v, k).unwrap()
        };
        let x = BitString::zeros(p.input_len());
        let cert = certify_blocks(&p, &x, &packing.edge_blocks()).unwrap();
        assert_eq!(cert.count, packing.members.len());
    }
}

/// Re-adding each removed edge must produce an isolated clique.
fn check_s0(spec: &CliqueSpec, g: &Hypergraph, removed: &[usize]) {
    let p = PropertySpec::IsolatedClique(*spec);
    assert!(!p.evaluate_graph(g).unwrap().value);
    let report = sensitivity_at(&p, g.bits()).unwrap();
    for e in removed {
        assert!(report.sensitive_bits.contains(e));
    }
    assert!(enumerate_sensitive_tuples(spec, g).unwrap().len() >= removed.len());
}

#[test]
fn s0_from_disjoint_triangles() {
    for v in [9, 12, 15] {
        let spec = CliqueSpec::new(v, 2, 1, 3).unwrap();
        let members = triangle_packing(v).unwrap().vertex_disjoint();
        let sets: Vec<Vec<u64>> = members
            .iter()
            .map(|m| m.iter().map(|&x| x as u64).collect())
            .collect();
        let w = build_s0_witness(&sets, &spec).unwrap();
        assert_eq!(w.expected_tuples, members.len());
        check_s0(&spec, &w.graph, &w.removed);
    }
}

#[test]
fn s0_from_trimmed_family() {
    let f = make_field(5, 1).unwrap();
    let fam = trim_sets(&generate_family(&f, 2, 1, None).unwrap(), 4).unwrap();
    let spec = CliqueSpec::new(25, 3, 2, 4).unwrap();
    let w = build_s0_witness(&fam.sets, &spec).unwrap();
    assert_eq!(w.expected_tuples, 25);
    let p = PropertySpec::IsolatedClique(spec);
    assert!(!p.evaluate_graph(&w.graph).unwrap().value);
    for &e in &w.removed {
        let mut bits = w.graph.bits().clone();
        bits.flip(e);
        assert!(p.evaluate(&bits).unwrap().value);
    }
}

#[test]
fn near_clique_builder() {
    let c = near_clique_construction(64, 2).unwrap();
    assert_eq!((c.family.q, c.family.ell), (4, 2));
    check_s0(&c.spec, &c.witness.graph, &c.witness.removed);
    let c = near_clique_construction(300, 3).unwrap();
    assert_eq!(c.spec.i, 2);
    assert_eq!(c.family.set_size(), 4);
    let p = PropertySpec::IsolatedClique(c.spec);
    assert!(!p.evaluate_graph(&c.witness.graph).unwrap().value);
    for &e in c.witness.removed.iter().step_by(97) {
        let mut bits = c.witness.graph.bits().clone();
        bits.flip(e);
        assert!(p.evaluate(&bits).unwrap().value);
    }
}

#[test]
fn s1_sensitive_set_is_inside_plus_boundary() {
    for v in 4..=10 {
        for (k, i, h) in [(2, 1, 3), (2, 1, 4), (3, 1, 4), (3, 2, 4)] {
            if h > v {
                continue;
            }
            let p = PropertySpec::isolated_clique(v, k, i, h).unwrap();
            let g = build_s1_witness(v, k, h).unwrap();
            let got = sensitivity_at(&p, g.bits()).unwrap().sensitive_bits;
            let want: Vec<usize> = combinations(v, k)
                .iter()
                .enumerate()
                .filter(|(_, e)| {
                    let meet = e.iter().filter(|&&x| x < h).count();
                    meet == k || meet >= i
                })
                .map(|(_, e)| {
                    hypersens::rank_subset(&hypersens::VertexSet::new(e.clone()).unwrap(), k)
                        .unwrap()
                })
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            assert_eq!(got, want, "v={v} k={k} i={i} h={h}");
        }
    }
}

#[test]
fn isolated_vertex_witness() {
    for v in 4..=8 {
        let p = PropertySpec::isolated_vertex(v).unwrap();
        let g = build_isolated_vertex_witness(v).unwrap();
        let r = sensitivity_at(&p, g.bits()).unwrap();
        assert_eq!(r.s_at_x, v - 1);
        // only edges to the isolated vertex are sensitive once v >= 5
        if v >= 5 {
            for &b in &r.sensitive_bits {
                assert!(hypersens::unrank_subset(b, v, 2).unwrap().contains(v - 1));
            }
        }
    }
}

#[test]
fn witness_json_has_metadata() {
    let g = build_s1_witness(5, 2, 3).unwrap();
    let w = WitnessJson::new(&g, "s1", [("h", serde_json::json!(3))], None);
    let v = serde_json::to_value(&w).unwrap();
    assert_eq!(v["v"], 5);
    assert_eq!(v["edges"], serde_json::json!([[1, 2], [1, 3], [2, 3]]));
    assert_eq!(v["metadata"]["construction"], "s1");
    let back: WitnessJson = serde_json::from_value(v).unwrap();
    assert_eq!(Hypergraph::try_from(&back.graph).unwrap(), g);
}
