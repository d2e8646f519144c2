use std::collections::{BTreeMap, BTreeSet};

use super::graph::components;
use super::{
    gauge_invariant_vertex_check, Diagram, Edge, EdgeVariance, ExternalLeg, LegSignature, Variance,
    Vertex, VertexKind,
};
use crate::error::{Error, Result};

/// One boundary slot of a subdiagram: a cut line or one of the host
/// diagram's own external legs attached inside.
#[derive(Debug, Clone, Copy)]
enum Boundary {
    /// `inside_is_u`: which end of the edge lies in the subdiagram.
    Cut { edge: usize, inside_is_u: bool },
    Leg { leg: usize },
}

#[derive(Debug, Clone, Copy)]
struct BoundarySlot {
    kind: Boundary,
    inside: u32,
    ty: usize,
    variance: Variance,
}

fn subset(d: &Diagram, ids: &[u32]) -> Result<BTreeSet<u32>> {
    if ids.is_empty() {
        return Err(Error::InvalidArgument("subdiagram vertex set is empty".into()));
    }
    let set: BTreeSet<u32> = ids.iter().copied().collect();
    if let Some(missing) = set.iter().find(|&&id| !d.contains_vertex(id)) {
        return Err(Error::InvalidArgument(format!(
            "vertex {missing} of the subdiagram is not in the diagram"
        )));
    }
    Ok(set)
}

/// Cut lines sorted by (outside vertex id, type, inside variance), then the
/// host's external legs attached inside, in their own order.
fn boundary(d: &Diagram, inside: &BTreeSet<u32>) -> Vec<BoundarySlot> {
    let mut cuts: Vec<(u32, BoundarySlot)> = Vec::new();
    for (id, e) in d.edges().iter().enumerate() {
        let (at_u, at_v) = e.variance.ends();
        match (inside.contains(&e.u), inside.contains(&e.v)) {
            (true, false) => cuts.push((
                e.v,
                BoundarySlot {
                    kind: Boundary::Cut { edge: id, inside_is_u: true },
                    inside: e.u,
                    ty: e.ty,
                    variance: at_u,
                },
            )),
            (false, true) => cuts.push((
                e.u,
                BoundarySlot {
                    kind: Boundary::Cut { edge: id, inside_is_u: false },
                    inside: e.v,
                    ty: e.ty,
                    variance: at_v,
                },
            )),
            _ => {}
        }
    }
    cuts.sort_by_key(|(outside, s)| (*outside, s.ty, s.variance, s.inside));
    let mut slots: Vec<BoundarySlot> = cuts.into_iter().map(|(_, s)| s).collect();
    slots.extend(
        d.external_legs()
            .iter()
            .enumerate()
            .filter(|(_, l)| inside.contains(&l.vertex))
            .map(|(i, l)| BoundarySlot {
                kind: Boundary::Leg { leg: i },
                inside: l.vertex,
                ty: l.ty,
                variance: l.variance,
            }),
    );
    slots
}

/// The induced subdiagram on `ids`, with one external leg per boundary slot
/// in insertion order. Inserting it back with [`insert_vertex`] is the
/// identity.
pub fn extract_subdiagram(d: &Diagram, ids: &[u32]) -> Result<Diagram> {
    let inside = subset(d, ids)?;
    let vertices = d.vertices().iter().filter(|v| inside.contains(&v.id)).copied().collect();
    let edges = d
        .edges()
        .iter()
        .filter(|e| inside.contains(&e.u) && inside.contains(&e.v))
        .copied()
        .collect();
    let legs = boundary(d, &inside)
        .into_iter()
        .map(|s| ExternalLeg { vertex: s.inside, ty: s.ty, variance: s.variance })
        .collect();
    Diagram::new(d.model().clone(), vertices, edges, legs)
}

/// Replaces the subdiagram on `ids` by `replacement`.
///
/// The replacement's external legs must match the boundary of the removed
/// subdiagram in type, number, order and variance (see
/// [`extract_subdiagram`] for the boundary order). Replacement vertex ids are
/// kept unless they collide with surviving vertices, in which case they are
/// moved above the largest id in use.
pub fn insert_vertex(d: &Diagram, ids: &[u32], replacement: &Diagram) -> Result<Diagram> {
    let inside = subset(d, ids)?;
    if replacement.model().num_types() != d.model().num_types() {
        return Err(Error::InvalidArgument("replacement uses a different type set".into()));
    }
    let slots = boundary(d, &inside);
    let rep_legs = replacement.external_legs();
    if rep_legs.len() != slots.len() {
        return Err(Error::SignatureMismatch {
            position: slots.len().min(rep_legs.len()),
            detail: format!("expected {} legs, replacement has {}", slots.len(), rep_legs.len()),
        });
    }
    for (position, (slot, leg)) in slots.iter().zip(rep_legs).enumerate() {
        if (slot.ty, slot.variance) != (leg.ty, leg.variance) {
            return Err(Error::SignatureMismatch {
                position,
                detail: format!(
                    "boundary has ({}, {:?}), replacement has ({}, {:?})",
                    slot.ty, slot.variance, leg.ty, leg.variance
                ),
            });
        }
    }

    let outside: Vec<Vertex> =
        d.vertices().iter().filter(|v| !inside.contains(&v.id)).copied().collect();
    let mut used: BTreeSet<u32> = outside.iter().map(|v| v.id).collect();
    let mut next_free = d
        .vertices()
        .iter()
        .chain(replacement.vertices())
        .map(|v| v.id + 1)
        .max()
        .unwrap_or(0);
    let mut relabel = BTreeMap::new();
    for v in replacement.vertices() {
        let id = if used.contains(&v.id) {
            next_free += 1;
            next_free - 1
        } else {
            v.id
        };
        used.insert(id);
        relabel.insert(v.id, id);
    }

    let mut vertices = outside;
    vertices.extend(replacement.vertices().iter().map(|v| Vertex { id: relabel[&v.id], kind: v.kind }));

    let mut edges: Vec<Edge> = d
        .edges()
        .iter()
        .filter(|e| !inside.contains(&e.u) && !inside.contains(&e.v))
        .copied()
        .collect();
    edges.extend(
        replacement
            .edges()
            .iter()
            .map(|e| Edge { u: relabel[&e.u], v: relabel[&e.v], ..*e }),
    );

    let mut legs = d.external_legs().to_vec();
    for (slot, leg) in slots.iter().zip(rep_legs) {
        let target = relabel[&leg.vertex];
        match slot.kind {
            Boundary::Cut { edge, inside_is_u } => {
                let mut e = d.edges()[edge];
                if inside_is_u {
                    e.u = target;
                } else {
                    e.v = target;
                }
                edges.push(e);
            }
            Boundary::Leg { leg: i } => legs[i].vertex = target,
        }
    }
    Ok(Diagram::new(d.model().clone(), vertices, edges, legs)?.with_subtracted(d.is_subtracted()))
}

/// The two terms produced by breaking a line: the insertion itself and its
/// vacuum-subtraction counterterm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrokenLine {
    pub line_type: usize,
    pub influence_type: usize,
    /// The broken line with a new vertex carrying a type-`b` loop.
    pub inserted: Diagram,
    /// Same topology, flagged as the subtracted `<X^b X^b>` term.
    pub counterterm: Diagram,
}

/// Breaks internal line `edge_id` (type `a`) by a type-`b` influence: a new
/// two-valent bare vertex splits the line and carries a type-`b` loop.
///
/// The new vertex receives one upper and one lower type-`a` end and a
/// balanced `b` loop, so it is gauge invariant whatever the variance of the
/// broken line. The capital `A` of the subtraction term is read as the type
/// `a` of the broken line.
pub fn break_line(d: &Diagram, edge_id: usize, influence_type: usize) -> Result<BrokenLine> {
    let Some(&line) = d.edges().get(edge_id) else {
        return Err(Error::InvalidArgument(format!(
            "edge {edge_id} is not an internal line (diagram has {} internal lines)",
            d.edges().len()
        )));
    };
    if influence_type >= d.model().num_types() {
        return Err(Error::InvalidArgument(format!(
            "influence type {influence_type} out of range for {} types",
            d.model().num_types()
        )));
    }
    let new_id = d.vertices().last().map_or(0, |v| v.id + 1);
    let (at_u, at_v) = line.variance.ends();

    let mut vertices = d.vertices().to_vec();
    vertices.push(Vertex { id: new_id, kind: VertexKind::Bare });
    let mut edges: Vec<Edge> = d
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != edge_id)
        .map(|(_, e)| *e)
        .collect();
    edges.push(Edge::new(line.u, new_id, line.ty, EdgeVariance::from_ends(at_u, at_u.flipped())));
    edges.push(Edge::new(new_id, line.v, line.ty, EdgeVariance::from_ends(at_u, at_v)));
    edges.push(Edge::new(new_id, new_id, influence_type, EdgeVariance::UpperLower));

    let inserted = Diagram::new(d.model().clone(), vertices, edges, d.external_legs().to_vec())?;
    let counterterm = inserted.clone().with_subtracted(true);
    Ok(BrokenLine { line_type: line.ty, influence_type, inserted, counterterm })
}

/// True iff the vertex set splits into two non-empty parts with no line
/// between them, each holding a gauge-invariant share of the external legs.
pub fn factorizes(d: &Diagram) -> bool {
    let comps = components(d);
    if comps.len() < 2 {
        return false;
    }
    let sigs: Vec<LegSignature> = comps
        .iter()
        .map(|c| {
            d.external_legs()
                .iter()
                .filter(|l| c.binary_search(&l.vertex).is_ok())
                .map(|l| (l.ty, l.variance))
                .collect()
        })
        .collect();
    if sigs.iter().all(gauge_invariant_vertex_check) {
        // any single component against the rest is then a valid split
        return true;
    }
    let k = comps.len().min(20);
    (1u64..(1 << k) - 1).any(|mask| {
        let (mut a, mut b) = (LegSignature::default(), LegSignature::default());
        for (i, s) in sigs.iter().enumerate() {
            let side = if i < k && mask & (1 << i) != 0 { &mut a } else { &mut b };
            side.0.extend_from_slice(&s.0);
        }
        gauge_invariant_vertex_check(&a) && gauge_invariant_vertex_check(&b)
    })
}

/// Connected, external legs of a single type, and no factorization.
pub fn is_prime(d: &Diagram) -> bool {
    let connected = components(d).len() <= 1;
    let single_type = d
        .external_legs()
        .windows(2)
        .all(|w| w[0].ty == w[1].ty);
    connected && single_type && !factorizes(d)
}
