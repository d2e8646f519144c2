mod common;

use proptest::prelude::*;
use rptkit_core::diagram::{
    break_line, bridges, canonical_hash, enumerate_connected_multigraphs, extract_subdiagram,
    insert_vertex, is_connected, is_one_particle_irreducible,
};
use rptkit_core::{Diagram, Edge, EdgeVariance, ExternalLeg, ModelSpec, Variance, Vertex, VertexKind};

fn edge_list(d: &Diagram) -> Vec<(usize, usize)> {
    d.edges().iter().map(|e| (e.u as usize, e.v as usize)).collect()
}

#[test]
fn bridge_classification_matches_edge_removal() {
    let mut seen = 0;
    for d in enumerate_connected_multigraphs(6, 5).unwrap() {
        let edges = edge_list(&d);
        let n = d.vertices().len();
        let oracle: Vec<usize> =
            (0..edges.len()).filter(|&i| !common::connected_without(n, &edges, Some(i))).collect();
        assert_eq!(bridges(&d), oracle, "{:?}", d.edges());
        assert_eq!(is_one_particle_irreducible(&d).unwrap(), oracle.is_empty());
        seen += 1;
    }
    assert!(seen > 1000, "only {seen} graphs");
}

#[test]
fn enumeration_yields_only_connected_graphs_once() {
    let all: Vec<Diagram> = enumerate_connected_multigraphs(4, 4).unwrap().collect();
    assert!(all.iter().all(is_connected));
    let mut keys: Vec<_> = all.iter().map(|d| (d.vertices().len(), edge_list(d))).collect();
    let before = keys.len();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), before);
}

fn random_connected(seed: u64, vertices: u32, extra: usize) -> Diagram {
    use rand::Rng;
    let mut rng = common::rng(seed);
    let mut edges = Vec::new();
    for v in 1..vertices {
        edges.push(Edge::new(rng.gen_range(0..v), v, 0, EdgeVariance::UpperLower));
    }
    for _ in 0..extra {
        edges.push(Edge::new(rng.gen_range(0..vertices), rng.gen_range(0..vertices), 0, EdgeVariance::UpperLower));
    }
    let legs = (0..2)
        .map(|i| ExternalLeg {
            vertex: rng.gen_range(0..vertices),
            ty: 0,
            variance: if i == 0 { Variance::Upper } else { Variance::Lower },
        })
        .collect();
    let vs = (0..vertices).map(|id| Vertex { id, kind: VertexKind::Physical }).collect();
    Diagram::new(ModelSpec::single_type(), vs, edges, legs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extracting_and_reinserting_is_identity(seed in any::<u64>(), v in 2u32..=6, extra in 0usize..4, mask in 1u32..63) {
        let d = random_connected(seed, v, extra);
        let ids: Vec<u32> = (0..v).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!ids.is_empty());
        let sub = extract_subdiagram(&d, &ids).unwrap();
        prop_assert_eq!(insert_vertex(&d, &ids, &sub).unwrap(), d);
    }

    #[test]
    fn breaking_a_line_adds_a_bridge_only_when_it_was_one(seed in any::<u64>(), v in 1u32..=5, extra in 0usize..3, pick in any::<usize>()) {
        let d = random_connected(seed, v, extra);
        prop_assume!(!d.edges().is_empty());
        let id = pick % d.edges().len();
        let was_bridge = bridges(&d).contains(&id);
        let broken = break_line(&d, id, 0).unwrap();
        prop_assert!(is_connected(&broken.inserted));
        prop_assert_eq!(broken.inserted.el(), d.el());
        prop_assert_eq!(broken.inserted.edges().len(), d.edges().len() + 2);
        prop_assert_eq!(bridges(&broken.inserted).len(), bridges(&d).len() + usize::from(was_bridge));
        prop_assert!(broken.counterterm.is_subtracted());
    }

    #[test]
    fn canonical_hash_ignores_labels(seed in any::<u64>(), v in 1u32..=5, extra in 0usize..3, shift in 1u32..50) {
        let d = random_connected(seed, v, extra);
        // reverse the labels and move them away from zero
        let relabel = |x: u32| (v - 1 - x) * 3 + shift;
        let vs = d.vertices().iter().map(|x| Vertex { id: relabel(x.id), kind: x.kind }).collect();
        let es = d.edges().iter().map(|e| Edge::new(relabel(e.u), relabel(e.v), e.ty, e.variance)).collect();
        let legs = d.external_legs().iter().map(|l| ExternalLeg { vertex: relabel(l.vertex), ..*l }).collect();
        let moved = Diagram::new(d.model().clone(), vs, es, legs).unwrap();
        prop_assert_eq!(canonical_hash(&moved).unwrap(), canonical_hash(&d).unwrap());
    }

    #[test]
    fn diagram_json_round_trip(seed in any::<u64>(), v in 1u32..=5, extra in 0usize..3) {
        let d = random_connected(seed, v, extra);
        let text = serde_json::to_string(&d).unwrap();
        let back: Diagram = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, d);
    }
}
