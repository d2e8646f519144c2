//! Deterministic inputs for the engine benchmarks.

use rptkit_core::{Diagram, Edge, EdgeVariance, ModelSpec, MomentTable, MultiIndex, Rational, Vertex, VertexKind};

/// Normalized moment table whose entries follow a fixed rational pattern,
/// so every run times the same arithmetic.
pub fn patterned_moments(num_types: usize, max_order: u32) -> MomentTable {
    let values = MultiIndex::all_up_to(num_types, max_order)
        .into_iter()
        .enumerate()
        .filter(|(_, k)| !k.is_zero())
        .map(|(i, k)| {
            let num = (i as i64 * 7) % 23 - 11;
            let den = (i as i64 % 5) + 1;
            (k, Rational::new(num.into(), den.into()))
        });
    MomentTable::normalized(num_types, max_order, values).expect("zero index is excluded")
}

/// `n` vertices on a cycle with every vertex also carrying a self-loop.
pub fn decorated_ring(n: u32) -> Diagram {
    let vertices = (0..n).map(|id| Vertex { id, kind: VertexKind::Physical }).collect();
    let edges = (0..n)
        .flat_map(|i| {
            [
                Edge::new(i, (i + 1) % n, 0, EdgeVariance::UpperLower),
                Edge::new(i, i, 0, EdgeVariance::UpperLower),
            ]
        })
        .collect();
    Diagram::new(ModelSpec::single_type(), vertices, edges, Vec::new()).expect("valid ring")
}
