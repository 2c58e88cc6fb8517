//! Plain semigraphs: a vertex set plus edges that are ordered tuples of at
//! least two distinct vertices. Two edges are the same edge when they have the
//! same length and agree either forwards or reversed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("edge has {0} vertices; at least 2 are required")]
    TooShort(usize),
    #[error("edge references unknown vertex {0}")]
    UnknownVertex(String),
    #[error("edge repeats vertex {0}")]
    RepeatedVertex(String),
    #[error("edge {0} already present (possibly reversed)")]
    DuplicateEdge(String),
}

/// Position-based vertex taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    /// Only ever first or last in its edges.
    End,
    /// Only ever strictly inside its edges.
    Middle,
    /// Inside some edge and at an extreme of another.
    MiddleEnd,
    /// In no edge.
    Isolated,
}

/// Edge equality up to reversal.
pub fn same_edge<V: PartialEq>(a: &[V], b: &[V]) -> bool {
    a.len() == b.len() && (a.iter().eq(b.iter()) || a.iter().eq(b.iter().rev()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigraph<V: Ord + Clone + Debug> {
    vertices: BTreeSet<V>,
    edges: Vec<Vec<V>>,
}

impl<V: Ord + Clone + Debug> Default for Semigraph<V> {
    fn default() -> Self {
        Semigraph {
            vertices: BTreeSet::new(),
            edges: Vec::new(),
        }
    }
}

impl<V: Ord + Clone + Debug> Semigraph<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: V) -> bool {
        self.vertices.insert(v)
    }

    pub fn add_edge(&mut self, edge: Vec<V>) -> Result<(), StructureError> {
        if edge.len() < 2 {
            return Err(StructureError::TooShort(edge.len()));
        }
        let mut seen = BTreeSet::new();
        for v in &edge {
            if !self.vertices.contains(v) {
                return Err(StructureError::UnknownVertex(format!("{v:?}")));
            }
            if !seen.insert(v) {
                return Err(StructureError::RepeatedVertex(format!("{v:?}")));
            }
        }
        if self.edges.iter().any(|e| same_edge(e, &edge)) {
            return Err(StructureError::DuplicateEdge(format!("{edge:?}")));
        }
        self.edges.push(edge);
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &V> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> &[Vec<V>] {
        &self.edges
    }

    pub fn classify_vertices(&self) -> BTreeMap<V, VertexClass> {
        // (seen at an extreme, seen inside)
        let mut positions: BTreeMap<&V, (bool, bool)> = BTreeMap::new();
        for edge in &self.edges {
            let last = edge.len() - 1;
            for (i, v) in edge.iter().enumerate() {
                let entry = positions.entry(v).or_default();
                if i == 0 || i == last {
                    entry.0 = true;
                } else {
                    entry.1 = true;
                }
            }
        }
        self.vertices
            .iter()
            .map(|v| {
                let class = match positions.get(v) {
                    None => VertexClass::Isolated,
                    Some((true, false)) => VertexClass::End,
                    Some((false, true)) => VertexClass::Middle,
                    Some(_) => VertexClass::MiddleEnd,
                };
                (v.clone(), class)
            })
            .collect()
    }

    /// True when every edge has the same number of vertices (vacuously true
    /// without edges).
    pub fn is_uniform(&self) -> bool {
        match self.edges.first() {
            None => true,
            Some(first) => self.edges.iter().all(|e| e.len() == first.len()),
        }
    }

    /// Whether every pair of edges shares a vertex.
    pub fn edges_pairwise_intersect(&self) -> bool {
        let sets: Vec<BTreeSet<&V>> = self.edges.iter().map(|e| e.iter().collect()).collect();
        sets.iter()
            .enumerate()
            .all(|(i, a)| sets[i + 1..].iter().all(|b| !a.is_disjoint(b)))
    }

    /// Histogram of edge sizes.
    pub fn edge_size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for e in &self.edges {
            *hist.entry(e.len()).or_insert(0) += 1;
        }
        hist
    }
}
