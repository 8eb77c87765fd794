//! Dense bit-row graphs plus the set and density primitives everything else
//! consumes.
//!
//! Graphs are immutable after construction in all algorithm paths; the few
//! mutating helpers (`add_edge`, `remove_edge`) exist for the generators.

use crate::frac::Frac;
use fixedbitset::FixedBitSet;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex sets are not disjoint (share vertex {0})")]
    NotDisjoint(usize),
    #[error("density is undefined for an empty side")]
    EmptySide,
    #[error("vertex set universe {set_n} does not match graph order {graph_n}")]
    UniverseMismatch { set_n: usize, graph_n: usize },
    #[error("adjacency not symmetric at ({u},{v})")]
    NotSymmetric { u: usize, v: usize },
}

/// Subset of `[0, n)` for a fixed universe size `n`, backed by a bitset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = Self::empty(n);
        s.bits.insert(v);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        n: usize,
        indices: I,
    ) -> Result<Self, GraphError> {
        let mut bits = FixedBitSet::with_capacity(n);
        for v in indices {
            if v >= n {
                return Err(GraphError::IndexOutOfRange { index: v, n });
            }
            bits.insert(v);
        }
        Ok(VertexSet { bits })
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        VertexSet { bits }
    }

    /// Universe size `n` (not the cardinality).
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.bits.len() && self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.bits.len());
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.remove(v);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn min(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSet { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSet { bits }
    }

    /// `[0, n) \ self`.
    pub fn complement_in_universe(&self) -> VertexSet {
        let mut bits = FixedBitSet::with_capacity(self.bits.len());
        bits.insert_range(..);
        bits.difference_with(&self.bits);
        VertexSet { bits }
    }
}

// Serialized as a sorted index array; deserialization is intentionally absent
// because the universe size is not part of the wire form.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// Undirected simple graph: vertex count plus one neighbor bit-row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for v in 0..n {
            g.rows[v].insert_range(..);
            g.rows[v].remove(v);
        }
        g
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::IndexOutOfRange {
                index: u,
                n: self.n,
            });
        }
        if v >= self.n {
            return Err(GraphError::IndexOutOfRange {
                index: v,
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u].contains(v)
    }

    /// Neighbor bit-row of `v`.
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    /// Degree plus one.
    pub fn closed_degree(&self, v: usize) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::IndexOutOfRange {
                index: v,
                n: self.n,
            });
        }
        Ok(self.degree(v) + 1)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.rows[u]
                .ones()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let mut rows = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut row = FixedBitSet::with_capacity(self.n);
            row.insert_range(..);
            row.difference_with(&self.rows[v]);
            row.remove(v);
            rows.push(row);
        }
        Graph { n: self.n, rows }
    }

    /// Subgraph induced by `s`, relabeled `0..|s|`, plus the map from new
    /// indices back to the original ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if s.universe() != self.n {
            return Err(GraphError::UniverseMismatch {
                set_n: s.universe(),
                graph_n: self.n,
            });
        }
        let map: Vec<usize> = s.iter().collect();
        let k = map.len();
        let mut inv = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inv[old] = new;
        }
        let mut g = Graph::edgeless(k);
        for (new_u, &old_u) in map.iter().enumerate() {
            let mut row = self.rows[old_u].clone();
            row.intersect_with(s.bits());
            for old_v in row.ones() {
                let new_v = inv[old_v];
                if new_v > new_u {
                    g.rows[new_u].insert(new_v);
                    g.rows[new_v].insert(new_u);
                }
            }
        }
        Ok((g, map))
    }

    fn check_sides(&self, a: &VertexSet, b: &VertexSet) -> Result<(), GraphError> {
        if a.universe() != self.n {
            return Err(GraphError::UniverseMismatch {
                set_n: a.universe(),
                graph_n: self.n,
            });
        }
        if b.universe() != self.n {
            return Err(GraphError::UniverseMismatch {
                set_n: b.universe(),
                graph_n: self.n,
            });
        }
        if let Some(shared) = a.bits().intersection(b.bits()).next() {
            return Err(GraphError::NotDisjoint(shared));
        }
        Ok(())
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint).
    pub fn crossing_edges(&self, a: &VertexSet, b: &VertexSet) -> Result<u64, GraphError> {
        self.check_sides(a, b)?;
        let mut total = 0u64;
        for v in a.iter() {
            total += self.rows[v].intersection_count(b.bits()) as u64;
        }
        Ok(total)
    }

    /// Crossing-edge count divided by `|a|*|b|`, exact and unreduced.
    pub fn density_between(&self, a: &VertexSet, b: &VertexSet) -> Result<Frac, GraphError> {
        let cross = self.crossing_edges(a, b)?;
        let (la, lb) = (a.len() as u64, b.len() as u64);
        if la == 0 || lb == 0 {
            return Err(GraphError::EmptySide);
        }
        Ok(Frac::new(cross, la * lb))
    }

    /// True iff there is no edge between `a` and `b`; vacuously true when a
    /// side is empty.
    pub fn is_anticomplete(&self, a: &VertexSet, b: &VertexSet) -> Result<bool, GraphError> {
        self.check_sides(a, b)?;
        for v in a.iter() {
            if !self.rows[v].is_disjoint(b.bits()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff every `a`-`b` pair is adjacent; vacuously true when a side is
    /// empty.
    pub fn is_complete_between(&self, a: &VertexSet, b: &VertexSet) -> Result<bool, GraphError> {
        self.check_sides(a, b)?;
        for v in a.iter() {
            if !b.bits().is_subset(&self.rows[v]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Full-scan validation of symmetry and irreflexivity.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        for u in 0..self.n {
            if self.rows[u].contains(u) {
                return Err(GraphError::SelfLoop(u));
            }
            for v in self.rows[u].ones() {
                if !self.rows[v].contains(u) {
                    return Err(GraphError::NotSymmetric { u, v });
                }
            }
        }
        Ok(())
    }
}

/// The pentagon itself: cycle on vertices `0..5` in order.
pub fn c5() -> Graph {
    Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
}

/// Petersen graph on 10 vertices (outer cycle 0..5, inner star 5..10).
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, 5 + (i + 2) % 5));
    }
    Graph::from_edge_list(10, &edges).unwrap()
}
