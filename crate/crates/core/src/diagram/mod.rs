//! Typed Feynman/Kubo diagrams as labeled multigraphs.
//!
//! A [`Diagram`] is a multigraph (parallel edges and self-loops allowed)
//! whose internal edges are propagator lines carrying a particle type and an
//! index variance at each end, plus an ordered list of external legs. Edge
//! lists are kept in a canonical order so that structural equality is
//! diagram identity; edge ids are positions in that order.

mod enumerate;
mod graph;
mod ops;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cumulant::ModelSpec;
use crate::error::{Error, Result};

pub use enumerate::{
    canonical_form, canonical_hash, count_pairings, enumerate_connected_multigraphs,
    CanonicalForm, ConnectedMultigraphs, MAX_ENUMERATION_EDGES, MAX_ENUMERATION_VERTICES,
};
pub use graph::{bridges, components, is_connected, is_one_particle_irreducible};
pub use ops::{
    break_line, extract_subdiagram, factorizes, insert_vertex, is_prime, BrokenLine,
};

/// Index position of one end of a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variance {
    #[serde(rename = "u")]
    Upper,
    #[serde(rename = "l")]
    Lower,
}

impl Variance {
    pub fn flipped(self) -> Variance {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }

    fn letter(self) -> char {
        match self {
            Variance::Upper => 'u',
            Variance::Lower => 'l',
        }
    }
}

/// Variances at the `(u, v)` ends of an internal edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeVariance {
    #[serde(rename = "ul")]
    UpperLower,
    #[serde(rename = "lu")]
    LowerUpper,
    #[serde(rename = "uu")]
    UpperUpper,
    #[serde(rename = "ll")]
    LowerLower,
}

impl EdgeVariance {
    pub fn from_ends(at_u: Variance, at_v: Variance) -> Self {
        use Variance::*;
        match (at_u, at_v) {
            (Upper, Lower) => EdgeVariance::UpperLower,
            (Lower, Upper) => EdgeVariance::LowerUpper,
            (Upper, Upper) => EdgeVariance::UpperUpper,
            (Lower, Lower) => EdgeVariance::LowerLower,
        }
    }

    pub fn ends(self) -> (Variance, Variance) {
        use Variance::*;
        match self {
            EdgeVariance::UpperLower => (Upper, Lower),
            EdgeVariance::LowerUpper => (Lower, Upper),
            EdgeVariance::UpperUpper => (Upper, Upper),
            EdgeVariance::LowerLower => (Lower, Lower),
        }
    }

    pub fn reversed(self) -> Self {
        let (a, b) = self.ends();
        EdgeVariance::from_ends(b, a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Bare,
    Physical,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    #[serde(rename = "type")]
    pub ty: usize,
    pub variance: EdgeVariance,
}

impl Edge {
    pub fn new(u: u32, v: u32, ty: usize, variance: EdgeVariance) -> Self {
        Edge { u, v, ty, variance }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Oriented with `u <= v`; self-loops get a fixed variance order.
    fn canonical(self) -> Edge {
        if self.u > self.v || (self.u == self.v && self.variance == EdgeVariance::LowerUpper) {
            Edge { u: self.v, v: self.u, ty: self.ty, variance: self.variance.reversed() }
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExternalLeg {
    pub vertex: u32,
    #[serde(rename = "type")]
    pub ty: usize,
    pub variance: Variance,
}

/// Ordered `(type, variance)` pairs of a set of legs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LegSignature(pub Vec<(usize, Variance)>);

impl LegSignature {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(usize, Variance)> for LegSignature {
    fn from_iter<I: IntoIterator<Item = (usize, Variance)>>(iter: I) -> Self {
        LegSignature(iter.into_iter().collect())
    }
}

/// True iff, for every type, upper and lower legs occur in equal numbers
/// (so every type also appears an even number of times).
pub fn gauge_invariant_vertex_check(signature: &LegSignature) -> bool {
    let mut balance = std::collections::BTreeMap::<usize, i64>::new();
    for &(ty, var) in &signature.0 {
        *balance.entry(ty).or_default() += match var {
            Variance::Upper => 1,
            Variance::Lower => -1,
        };
    }
    balance.values().all(|&b| b == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramData", into = "DiagramData")]
pub struct Diagram {
    model: ModelSpec,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    external_legs: Vec<ExternalLeg>,
    subtracted: bool,
}

impl Diagram {
    /// Validates references and types, then canonicalizes vertex and edge
    /// order. External legs keep the given order.
    pub fn new(
        model: ModelSpec,
        mut vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        external_legs: Vec<ExternalLeg>,
    ) -> Result<Self> {
        model.validate()?;
        vertices.sort();
        let mut ids = BTreeSet::new();
        for v in &vertices {
            if !ids.insert(v.id) {
                return Err(Error::InvalidDiagram(format!("duplicate vertex id {}", v.id)));
            }
        }
        let types = model.num_types();
        for e in &edges {
            for end in [e.u, e.v] {
                if !ids.contains(&end) {
                    return Err(Error::InvalidDiagram(format!(
                        "edge ({}, {}) references missing vertex {end}",
                        e.u, e.v
                    )));
                }
            }
            if e.ty >= types {
                return Err(Error::InvalidDiagram(format!(
                    "edge type {} out of range for {types} types",
                    e.ty
                )));
            }
        }
        for leg in &external_legs {
            if !ids.contains(&leg.vertex) {
                return Err(Error::InvalidDiagram(format!(
                    "external leg attached to missing vertex {}",
                    leg.vertex
                )));
            }
            if leg.ty >= types {
                return Err(Error::InvalidDiagram(format!(
                    "leg type {} out of range for {types} types",
                    leg.ty
                )));
            }
        }
        let mut edges: Vec<Edge> = edges.into_iter().map(Edge::canonical).collect();
        edges.sort();
        Ok(Diagram { model, vertices, edges, external_legs, subtracted: false })
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Internal edges in canonical order; an edge id is a position here.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn external_legs(&self) -> &[ExternalLeg] {
        &self.external_legs
    }

    /// Number of external legs.
    pub fn el(&self) -> u32 {
        self.external_legs.len() as u32
    }

    /// Marks a vacuum-subtraction counterterm.
    pub fn is_subtracted(&self) -> bool {
        self.subtracted
    }

    pub fn with_subtracted(mut self, subtracted: bool) -> Self {
        self.subtracted = subtracted;
        self
    }

    pub fn leg_signature(&self) -> LegSignature {
        self.external_legs.iter().map(|l| (l.ty, l.variance)).collect()
    }

    pub fn contains_vertex(&self, id: u32) -> bool {
        self.vertex_index(id).is_some()
    }

    pub(crate) fn vertex_index(&self, id: u32) -> Option<usize> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok()
    }

    /// Every half-edge and external leg meeting vertex `id`.
    pub fn vertex_signature(&self, id: u32) -> LegSignature {
        let mut sig = Vec::new();
        for e in &self.edges {
            let (at_u, at_v) = e.variance.ends();
            if e.u == id {
                sig.push((e.ty, at_u));
            }
            if e.v == id {
                sig.push((e.ty, at_v));
            }
        }
        sig.extend(
            self.external_legs
                .iter()
                .filter(|l| l.vertex == id)
                .map(|l| (l.ty, l.variance)),
        );
        LegSignature(sig)
    }

    /// Graphviz rendering: edges labeled `t<type>`, external legs drawn as
    /// half-edges to boxed terminals.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph diagram {\n");
        if self.subtracted {
            out.push_str("  label=\"subtracted\";\n");
        }
        for v in &self.vertices {
            let kind = match v.kind {
                VertexKind::Bare => "bare",
                VertexKind::Physical => "physical",
                VertexKind::Generic => "generic",
            };
            let _ = writeln!(out, "  v{} [label=\"{} {}\"];", v.id, v.id, kind);
        }
        for e in &self.edges {
            let (a, b) = e.variance.ends();
            let _ = writeln!(
                out,
                "  v{} -- v{} [label=\"t{}\", taillabel=\"{}\", headlabel=\"{}\"];",
                e.u,
                e.v,
                e.ty,
                a.letter(),
                b.letter()
            );
        }
        for (i, leg) in self.external_legs.iter().enumerate() {
            let _ = writeln!(
                out,
                "  leg{i} [shape=box, label=\"t{} {}\"];\n  v{} -- leg{i} [label=\"t{}\"];",
                leg.ty,
                leg.variance.letter(),
                leg.vertex,
                leg.ty
            );
        }
        out.push_str("}\n");
        out
    }
}

/// The JSON shape of a [`Diagram`] before validation. Parsing into this type
/// only checks the document structure; [`Diagram::try_from`] then checks
/// references and types.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramData {
    pub model: ModelSpec,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub external_legs: Vec<ExternalLeg>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub subtracted: bool,
}

impl From<Diagram> for DiagramData {
    fn from(d: Diagram) -> Self {
        DiagramData {
            model: d.model,
            vertices: d.vertices,
            edges: d.edges,
            external_legs: d.external_legs,
            subtracted: d.subtracted,
        }
    }
}

impl TryFrom<DiagramData> for Diagram {
    type Error = Error;

    fn try_from(r: DiagramData) -> Result<Self> {
        Ok(Diagram::new(r.model, r.vertices, r.edges, r.external_legs)?
            .with_subtracted(r.subtracted))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn model(types: usize) -> ModelSpec {
        ModelSpec::new(types, 0, num_rational::BigRational::from_integer(1.into())).unwrap()
    }

    pub fn vertices(n: u32) -> Vec<Vertex> {
        (0..n).map(|id| Vertex { id, kind: VertexKind::Bare }).collect()
    }

    pub fn ul(u: u32, v: u32, ty: usize) -> Edge {
        Edge::new(u, v, ty, EdgeVariance::UpperLower)
    }

    pub fn lu(u: u32, v: u32, ty: usize) -> Edge {
        Edge::new(u, v, ty, EdgeVariance::LowerUpper)
    }

    pub fn leg(vertex: u32, ty: usize, variance: Variance) -> ExternalLeg {
        ExternalLeg { vertex, ty, variance }
    }

    /// Two vertices joined by a pair of opposite-variance type-0 lines.
    pub fn vacuum_bubble() -> Diagram {
        Diagram::new(model(2), vertices(2), vec![ul(0, 1, 0), lu(0, 1, 0)], vec![]).unwrap()
    }

    /// Self-loop vertices joined by a single line.
    pub fn dumbbell() -> Diagram {
        Diagram::new(
            model(1),
            vertices(2),
            vec![ul(0, 0, 0), ul(1, 1, 0), ul(0, 1, 0)],
            vec![],
        )
        .unwrap()
    }
}
