use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::Zero;

use super::graph::is_connected;
use super::{Diagram, Edge, EdgeVariance, ExternalLeg, Vertex, VertexKind};
use crate::combinatorics::double_factorial;
use crate::cumulant::ModelSpec;
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_EDGES: u32 = 7;
pub const MAX_ENUMERATION_VERTICES: u32 = 6;

/// Largest vertex count accepted by [`canonical_form`] (it tries every
/// relabeling).
const MAX_CANONICAL_VERTICES: usize = 8;

/// Stream of every labeled connected multigraph on vertices `0..v` with
/// `1..=max_edges` edges and `1 <= v <= max_vertices`, single type, no
/// external legs.
///
/// Ordered by vertex count, then edge count, then the edge multiset in
/// lexicographic order of vertex pairs `(i, j)`, `i <= j`.
#[derive(Debug, Clone)]
pub struct ConnectedMultigraphs {
    max_edges: u32,
    max_vertices: u32,
    vertices: u32,
    edges: u32,
    slots: Vec<(u32, u32)>,
    // non-decreasing slot indices: a multiset of `edges` slots
    combo: Option<Vec<usize>>,
}

pub fn enumerate_connected_multigraphs(max_edges: u32, max_vertices: u32) -> Result<ConnectedMultigraphs> {
    if max_edges > MAX_ENUMERATION_EDGES {
        return Err(Error::CapExceeded {
            what: "max_edges",
            value: max_edges as u64,
            cap: MAX_ENUMERATION_EDGES as u64,
        });
    }
    if max_vertices > MAX_ENUMERATION_VERTICES {
        return Err(Error::CapExceeded {
            what: "max_vertices",
            value: max_vertices as u64,
            cap: MAX_ENUMERATION_VERTICES as u64,
        });
    }
    let mut it = ConnectedMultigraphs {
        max_edges,
        max_vertices,
        vertices: 1,
        edges: 1,
        slots: Vec::new(),
        combo: None,
    };
    if max_edges >= 1 && max_vertices >= 1 {
        it.start_block();
    }
    Ok(it)
}

impl ConnectedMultigraphs {
    fn start_block(&mut self) {
        let v = self.vertices;
        self.slots = (0..v).flat_map(|i| (i..v).map(move |j| (i, j))).collect();
        self.combo = Some(vec![0; self.edges as usize]);
    }

    /// Moves to the next (vertices, edges) block with enough edges to be
    /// connected, or ends the stream.
    fn next_block(&mut self) {
        loop {
            if self.edges < self.max_edges {
                self.edges += 1;
            } else if self.vertices < self.max_vertices {
                self.vertices += 1;
                self.edges = 1;
            } else {
                self.combo = None;
                return;
            }
            if self.edges + 1 >= self.vertices {
                self.start_block();
                return;
            }
        }
    }

    fn advance_combo(&mut self) {
        let last = self.slots.len() - 1;
        let combo = self.combo.as_mut().expect("active block");
        match (0..combo.len()).rev().find(|&i| combo[i] < last) {
            Some(i) => {
                let value = combo[i] + 1;
                for c in &mut combo[i..] {
                    *c = value;
                }
            }
            None => self.next_block(),
        }
    }

    fn current(&self) -> Diagram {
        let combo = self.combo.as_ref().expect("active block");
        let edges = combo
            .iter()
            .map(|&s| {
                let (u, v) = self.slots[s];
                Edge::new(u, v, 0, EdgeVariance::UpperLower)
            })
            .collect();
        let vertices = (0..self.vertices).map(|id| Vertex { id, kind: VertexKind::Generic }).collect();
        Diagram::new(ModelSpec::single_type(), vertices, edges, Vec::new())
            .expect("generated diagrams are valid")
    }
}

impl Iterator for ConnectedMultigraphs {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        while self.combo.is_some() {
            let d = self.current();
            self.advance_combo();
            if is_connected(&d) {
                return Some(d);
            }
        }
        None
    }
}

/// Number of perfect matchings of `n` items: `(n-1)!!` for even `n`, else 0.
pub fn count_pairings(n: u32) -> BigUint {
    if n % 2 == 1 {
        return BigUint::zero();
    }
    double_factorial(n as i64 - 1).expect("n - 1 >= -1")
}

/// Relabeling-invariant form of a diagram: the lexicographically smallest
/// encoding over all vertex relabelings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    kinds: Vec<VertexKind>,
    edges: Vec<Edge>,
    legs: Vec<ExternalLeg>,
    subtracted: bool,
}

pub fn canonical_form(d: &Diagram) -> Result<CanonicalForm> {
    let n = d.vertices().len();
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::CapExceeded {
            what: "vertices",
            value: n as u64,
            cap: MAX_CANONICAL_VERTICES as u64,
        });
    }
    let index = |id: u32| d.vertex_index(id).expect("validated diagram");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<CanonicalForm> = None;
    loop {
        // perm[old index] = new label
        let mut kinds = vec![VertexKind::Generic; n];
        for (old, v) in d.vertices().iter().enumerate() {
            kinds[perm[old]] = v.kind;
        }
        let mut edges: Vec<Edge> = d
            .edges()
            .iter()
            .map(|e| {
                Edge::new(perm[index(e.u)] as u32, perm[index(e.v)] as u32, e.ty, e.variance)
                    .canonical()
            })
            .collect();
        edges.sort();
        let legs = d
            .external_legs()
            .iter()
            .map(|l| ExternalLeg { vertex: perm[index(l.vertex)] as u32, ..*l })
            .collect();
        let form = CanonicalForm { kinds, edges, legs, subtracted: d.is_subtracted() };
        if best.as_ref().is_none_or(|b| form < *b) {
            best = Some(form);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.expect("at least one permutation"))
}

/// Hash of [`canonical_form`]; equal for relabeled copies of a diagram.
pub fn canonical_hash(d: &Diagram) -> Result<u64> {
    let mut h = DefaultHasher::new();
    canonical_form(d)?.hash(&mut h);
    Ok(h.finish())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn enumeration_examples() {
        let one: Vec<Diagram> = enumerate_connected_multigraphs(1, 2).unwrap().collect();
        assert_eq!(one.len(), 2);
        assert_eq!(one[0].vertices().len(), 1);
        assert!(one[0].edges()[0].is_loop());
        assert_eq!(one[1].edges(), &[Edge::new(0, 1, 0, EdgeVariance::UpperLower)]);

        // labeled: {00,00} on one vertex; {01}, {01,01}, {00,01}, {01,11} on two
        let two: Vec<Diagram> = enumerate_connected_multigraphs(2, 2).unwrap().collect();
        assert_eq!(two.len(), 6);
        // up to relabeling (variances made symmetric so only topology counts)
        let classes: BTreeSet<CanonicalForm> = two
            .iter()
            .map(|d| {
                let edges = d
                    .edges()
                    .iter()
                    .map(|e| Edge { variance: EdgeVariance::UpperUpper, ..*e })
                    .collect();
                let plain = Diagram::new(d.model().clone(), d.vertices().to_vec(), edges, vec![]);
                canonical_form(&plain.unwrap()).unwrap()
            })
            .collect();
        assert_eq!(classes.len(), 5);

        assert!(matches!(
            enumerate_connected_multigraphs(8, 3),
            Err(Error::CapExceeded { what: "max_edges", .. })
        ));
        assert!(enumerate_connected_multigraphs(3, 7).is_err());
        assert_eq!(enumerate_connected_multigraphs(0, 3).unwrap().count(), 0);
    }

    #[test]
    fn enumeration_is_deterministic_and_distinct() {
        let a: Vec<Diagram> = enumerate_connected_multigraphs(4, 3).unwrap().collect();
        let b: Vec<Diagram> = enumerate_connected_multigraphs(4, 3).unwrap().collect();
        assert_eq!(a, b);
        let distinct: BTreeSet<String> = a.iter().map(|d| serde_json::to_string(d).unwrap()).collect();
        assert_eq!(distinct.len(), a.len());
    }

    #[test]
    fn pairings() {
        assert_eq!(count_pairings(0), BigUint::from(1u32));
        assert_eq!(count_pairings(4), BigUint::from(3u32));
        assert_eq!(count_pairings(5), BigUint::zero());
        assert_eq!(count_pairings(8), BigUint::from(105u32));
    }

    #[test]
    fn canonical_hash_ignores_labels() {
        let model = ModelSpec::single_type();
        let vs = |n: u32| (0..n).map(|id| Vertex { id, kind: VertexKind::Bare }).collect::<Vec<_>>();
        let a = Diagram::new(
            model.clone(),
            vs(3),
            vec![Edge::new(0, 0, 0, EdgeVariance::UpperLower), Edge::new(0, 1, 0, EdgeVariance::UpperLower), Edge::new(1, 2, 0, EdgeVariance::UpperLower)],
            vec![],
        )
        .unwrap();
        let b = Diagram::new(
            model,
            vs(3),
            vec![Edge::new(2, 2, 0, EdgeVariance::UpperLower), Edge::new(2, 1, 0, EdgeVariance::UpperLower), Edge::new(1, 0, 0, EdgeVariance::UpperLower)],
            vec![],
        )
        .unwrap();
        assert_ne!(a, b);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_eq!(canonical_hash(&a).unwrap(), canonical_hash(&b).unwrap());
    }
}
