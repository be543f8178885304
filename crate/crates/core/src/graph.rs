//! Finite simple graphs whose vertices are words over `Z_q`.
//!
//! Vertex ids are positions in the lexicographic order of the labels, so two
//! graphs built from the same label set always agree on ids. Maps between
//! graphs are explicit id tables ([`VertexMap`]); isomorphism and automorphism
//! are verified for a given map, never searched for.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A word `x ∈ Z_q^n`. The alphabet size lives on the owning graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel(Vec<u8>);

impl VertexLabel {
    pub fn new(coords: Vec<u8>, q: u8) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::usage(
                "vertex label must have at least one coordinate",
            ));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= q) {
            return Err(Error::usage(format!("coordinate {c} is outside Z_{q}")));
        }
        Ok(VertexLabel(coords))
    }

    /// Parses a digit string such as `"0110"`.
    pub fn parse(s: &str, q: u8) -> Result<Self> {
        let coords = s
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::usage(format!("label {s:?} is not a digit string")))
            })
            .collect::<Result<Vec<u8>>>()?;
        VertexLabel::new(coords, q)
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<u8>) -> Self {
        debug_assert!(!coords.is_empty());
        VertexLabel(coords)
    }

    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based coordinate access.
    pub fn coord(&self, position: usize) -> u8 {
        self.0[position - 1]
    }

    pub fn hamming_distance(&self, other: &VertexLabel) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub(crate) fn concat(&self, other: &VertexLabel) -> VertexLabel {
        let mut coords = self.0.clone();
        coords.extend_from_slice(&other.0);
        VertexLabel(coords)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            let ch = char::from_digit(c as u32, 36).unwrap_or('?');
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

/// A finite simple undirected graph on lexicographically sorted labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    q: u8,
    n: usize,
    vertices: Vec<VertexLabel>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl LabeledGraph {
    /// Validates labels and edges. Edges may be given in either orientation
    /// and any order; they are stored as sorted `(i, j)` with `i < j`.
    pub fn new(
        q: u8,
        n: usize,
        vertices: Vec<VertexLabel>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if q < 2 {
            return Err(Error::usage(format!(
                "alphabet size q={q} must be at least 2"
            )));
        }
        if n == 0 {
            return Err(Error::usage("word length n must be at least 1"));
        }
        if vertices.is_empty() {
            return Err(Error::usage("graph must have at least one vertex"));
        }
        for v in &vertices {
            if v.len() != n {
                return Err(Error::usage(format!("label {v} does not have length {n}")));
            }
            if v.coords().iter().any(|&c| c >= q) {
                return Err(Error::usage(format!(
                    "label {v} has a coordinate outside Z_{q}"
                )));
            }
        }
        if let Some(w) = vertices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::usage(format!(
                "vertices must be strictly increasing in lexicographic order ({} before {})",
                w[0], w[1]
            )));
        }
        let order = vertices.len();
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a >= order || b >= order {
                return Err(Error::usage(format!(
                    "edge ({a}, {b}) references a missing vertex"
                )));
            }
            match a.cmp(&b) {
                Ordering::Equal => return Err(Error::usage(format!("self-loop at vertex {a}"))),
                Ordering::Less => normalized.push((a, b)),
                Ordering::Greater => normalized.push((b, a)),
            }
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::usage(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::assemble(q, n, vertices, normalized))
    }

    /// Builds a graph from sorted, validated labels and a rule listing
    /// candidate neighbor labels of a vertex. Candidates that are not
    /// vertices are ignored; the rule must be symmetric.
    pub(crate) fn from_neighbor_rule<F>(
        q: u8,
        n: usize,
        vertices: Vec<VertexLabel>,
        rule: F,
    ) -> Self
    where
        F: Fn(&VertexLabel, &mut Vec<VertexLabel>),
    {
        let mut edges = Vec::new();
        let mut candidates = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            candidates.clear();
            rule(v, &mut candidates);
            for c in &candidates {
                if let Ok(j) = vertices.binary_search(c) {
                    if j > i {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self::assemble(q, n, vertices, edges)
    }

    fn assemble(q: u8, n: usize, vertices: Vec<VertexLabel>, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        LabeledGraph {
            q,
            n,
            vertices,
            edges,
            adjacency,
        }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Word length of every label.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.vertices[v]
    }

    /// Sorted `(i, j)` pairs with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.vertices.binary_search(label).ok()
    }

    /// `N_G(v)` as a sorted id slice.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.adjacency
            .get(v)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::usage(format!("vertex id {v} out of range 0..{}", self.order())))
    }

    pub(crate) fn adj(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.neighbors(v).map(<[usize]>::len)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency[0].len();
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    /// `G[W]` together with the embedding of its ids into `G`.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<(LabeledGraph, VertexMap)> {
        if subset.is_empty() {
            return Err(Error::usage("induced subgraph needs a nonempty vertex set"));
        }
        let mut ids = subset.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&bad) = ids.iter().find(|&&v| v >= self.order()) {
            return Err(Error::usage(format!(
                "vertex id {bad} out of range 0..{}",
                self.order()
            )));
        }
        let mut edges = Vec::new();
        for (a, &old) in ids.iter().enumerate() {
            for &nb in &self.adjacency[old] {
                if nb > old {
                    if let Ok(b) = ids.binary_search(&nb) {
                        edges.push((a, b));
                    }
                }
            }
        }
        edges.sort_unstable();
        let vertices = ids.iter().map(|&v| self.vertices[v].clone()).collect();
        let sub = Self::assemble(self.q, self.n, vertices, edges);
        let embedding = VertexMap {
            image: ids,
            target_order: self.order(),
        };
        Ok((sub, embedding))
    }
}

/// Id of the product vertex `(u, v)` in `G □ H`, where `h_order = |V(H)|`.
pub fn product_id(u: usize, v: usize, h_order: usize) -> usize {
    u * h_order + v
}

/// `G □ H`. Labels are `G`'s coordinates followed by `H`'s.
pub fn cartesian_product(g: &LabeledGraph, h: &LabeledGraph) -> LabeledGraph {
    let h_order = h.order();
    let vertices = g
        .vertices
        .iter()
        .flat_map(|u| h.vertices.iter().map(move |v| u.concat(v)))
        .collect();
    let mut edges = Vec::with_capacity(g.size() * h_order + h.size() * g.order());
    for u in 0..g.order() {
        for &(a, b) in &h.edges {
            edges.push((product_id(u, a, h_order), product_id(u, b, h_order)));
        }
    }
    for &(a, b) in &g.edges {
        for v in 0..h_order {
            edges.push((product_id(a, v, h_order), product_id(b, v, h_order)));
        }
    }
    edges.sort_unstable();
    LabeledGraph::assemble(g.q.max(h.q), g.n + h.n, vertices, edges)
}

/// A table sending each source id to a target id.
///
/// Construction only checks ranges; bijectivity is part of what
/// [`check_isomorphism`] verifies, so that malformed maps can be diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    image: Vec<usize>,
    target_order: usize,
}

impl VertexMap {
    pub fn new(image: Vec<usize>, target_order: usize) -> Result<Self> {
        if let Some(&bad) = image.iter().find(|&&t| t >= target_order) {
            return Err(Error::usage(format!(
                "map image {bad} out of range 0..{target_order}"
            )));
        }
        Ok(VertexMap {
            image,
            target_order,
        })
    }

    pub fn identity(order: usize) -> Self {
        VertexMap {
            image: (0..order).collect(),
            target_order: order,
        }
    }

    pub fn from_fn(
        source_order: usize,
        target_order: usize,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        VertexMap::new((0..source_order).map(f).collect(), target_order)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn source_order(&self) -> usize {
        self.image.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn is_bijection(&self) -> bool {
        self.injectivity_violation().is_none() && self.image.len() == self.target_order
    }

    fn injectivity_violation(&self) -> Option<(usize, usize)> {
        let mut preimage = vec![usize::MAX; self.target_order];
        for (v, &t) in self.image.iter().enumerate() {
            if preimage[t] != usize::MAX {
                return Some((preimage[t], v));
            }
            preimage[t] = v;
        }
        None
    }

    pub fn inverse(&self) -> Option<VertexMap> {
        if !self.is_bijection() {
            return None;
        }
        let mut image = vec![0; self.target_order];
        for (v, &t) in self.image.iter().enumerate() {
            image[t] = v;
        }
        Some(VertexMap {
            image,
            target_order: self.image.len(),
        })
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &VertexMap) -> Result<VertexMap> {
        if self.target_order != then.source_order() {
            return Err(Error::usage(format!(
                "cannot compose: target has {} vertices, next map expects {}",
                self.target_order,
                then.source_order()
            )));
        }
        Ok(VertexMap {
            image: self.image.iter().map(|&t| then.image[t]).collect(),
            target_order: then.target_order,
        })
    }

    /// `self ∘ (a b)`: the map with the images of `a` and `b` exchanged.
    pub fn with_swapped_images(&self, a: usize, b: usize) -> VertexMap {
        let mut image = self.image.clone();
        image.swap(a, b);
        VertexMap {
            image,
            target_order: self.target_order,
        }
    }
}

/// Why a map fails to be an isomorphism, with the offending source pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapViolation {
    /// Both source vertices have the same image.
    NotInjective(usize, usize),
    /// An edge of the source whose image is not an edge.
    EdgeLost(usize, usize),
    /// A non-edge of the source whose image is an edge.
    EdgeGained(usize, usize),
}

impl MapViolation {
    pub fn pair(&self) -> (usize, usize) {
        match *self {
            MapViolation::NotInjective(a, b)
            | MapViolation::EdgeLost(a, b)
            | MapViolation::EdgeGained(a, b) => (a, b),
        }
    }
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::NotInjective(a, b) => write!(f, "vertices {a} and {b} share an image"),
            MapViolation::EdgeLost(a, b) => write!(f, "edge ({a}, {b}) maps to a non-edge"),
            MapViolation::EdgeGained(a, b) => write!(f, "non-edge ({a}, {b}) maps to an edge"),
        }
    }
}

/// Checks whether `m` is an isomorphism `G → H`.
///
/// Returns `Ok(None)` for an isomorphism and `Ok(Some(witness))` otherwise.
pub fn check_isomorphism(
    g: &LabeledGraph,
    h: &LabeledGraph,
    m: &VertexMap,
) -> Result<Option<MapViolation>> {
    if m.source_order() != g.order() || m.target_order() != h.order() {
        return Err(Error::usage(format!(
            "map is {} -> {} vertices but graphs have {} and {}",
            m.source_order(),
            m.target_order(),
            g.order(),
            h.order()
        )));
    }
    if g.order() != h.order() {
        return Err(Error::usage(format!(
            "graphs have different orders {} and {}",
            g.order(),
            h.order()
        )));
    }
    if let Some((a, b)) = m.injectivity_violation() {
        return Ok(Some(MapViolation::NotInjective(a, b)));
    }
    for &(u, v) in g.edges() {
        if !h.has_edge(m.apply(u), m.apply(v)) {
            return Ok(Some(MapViolation::EdgeLost(u, v)));
        }
    }
    if g.size() == h.size() {
        return Ok(None);
    }
    // Every edge was preserved but H has more: pull back an unmatched one.
    let inv = m
        .inverse()
        .expect("injective map between equal-order graphs");
    for &(a, b) in h.edges() {
        let (u, v) = (inv.apply(a), inv.apply(b));
        if !g.has_edge(u, v) {
            return Ok(Some(MapViolation::EdgeGained(u.min(v), u.max(v))));
        }
    }
    unreachable!("edge counts differ but every edge of H has a preimage edge")
}

pub fn is_isomorphism(g: &LabeledGraph, h: &LabeledGraph, m: &VertexMap) -> Result<bool> {
    check_isomorphism(g, h, m).map(|w| w.is_none())
}

pub fn is_automorphism(g: &LabeledGraph, m: &VertexMap) -> Result<bool> {
    is_isomorphism(g, g, m)
}
