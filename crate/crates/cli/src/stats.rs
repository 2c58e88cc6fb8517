//! Summary statistics of a model graph for `train` and `inspect`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use semigraph_core::semigraph::VertexClass;
use semigraph_core::{FeatureKind, KnowledgeSemigraph, VertexId};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct GraphStats {
    pub features: Vec<FeatureKind>,
    pub tagger: String,
    pub documents: BTreeMap<String, usize>,
    /// role -> kind -> vertex count
    pub vertices: BTreeMap<String, BTreeMap<String, usize>>,
    pub vertex_total: usize,
    pub semiedges: usize,
    pub graphical_edges: usize,
    pub graphical_edges_by_kind: BTreeMap<String, usize>,
    /// graphical degree -> number of vertices
    pub degree_histogram: BTreeMap<usize, usize>,
    /// edge size -> number of edges, semiedges and graphical edges together
    pub edge_sizes: BTreeMap<usize, usize>,
    pub vertex_classes: BTreeMap<String, usize>,
    pub uniform: bool,
    pub edges_pairwise_intersect: bool,
}

impl GraphStats {
    pub fn of(g: &KnowledgeSemigraph, tagger: &str) -> GraphStats {
        let mut documents = BTreeMap::new();
        for (_, role) in g.documents() {
            *documents.entry(role.as_str().to_string()).or_insert(0) += 1;
        }
        let mut vertices: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for v in g.vertices() {
            *vertices
                .entry(v.role.as_str().to_string())
                .or_default()
                .entry(v.id.kind.to_string())
                .or_insert(0) += 1;
        }

        let mut degree: BTreeMap<&VertexId, usize> = g.vertices().map(|v| (&v.id, 0)).collect();
        let mut by_kind = BTreeMap::new();
        for e in g.graphical_edges() {
            *degree.get_mut(&e.test).expect("edge endpoint exists") += 1;
            *degree.get_mut(&e.train).expect("edge endpoint exists") += 1;
            *by_kind.entry(e.test.kind.to_string()).or_insert(0) += 1;
        }
        let mut degree_histogram = BTreeMap::new();
        for d in degree.values() {
            *degree_histogram.entry(*d).or_insert(0) += 1;
        }

        let topology = g.topology();
        let mut vertex_classes = BTreeMap::new();
        for class in topology.classify_vertices().values() {
            let name = match class {
                VertexClass::End => "end",
                VertexClass::Middle => "middle",
                VertexClass::MiddleEnd => "middle_end",
                VertexClass::Isolated => "isolated",
            };
            *vertex_classes.entry(name.to_string()).or_insert(0) += 1;
        }

        GraphStats {
            features: g.mask().kinds().collect(),
            tagger: tagger.to_string(),
            documents,
            vertices,
            vertex_total: g.vertex_count(),
            semiedges: g.semiedge_count(),
            graphical_edges: g.graphical_edge_count(),
            graphical_edges_by_kind: by_kind,
            degree_histogram,
            edge_sizes: topology.edge_size_histogram(),
            vertex_classes,
            uniform: topology.is_uniform(),
            edges_pairwise_intersect: topology.edges_pairwise_intersect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let features: Vec<String> = self.features.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(out, "features: {}", features.join(" "));
        let _ = writeln!(out, "tagger: {}", self.tagger);
        let _ = writeln!(out, "documents:");
        for (role, n) in &self.documents {
            let _ = writeln!(out, "  {role}: {n}");
        }
        let _ = writeln!(out, "vertices: {}", self.vertex_total);
        for (role, kinds) in &self.vertices {
            let cells: Vec<String> = kinds.iter().map(|(k, n)| format!("{k}={n}")).collect();
            let _ = writeln!(out, "  {role}: {}", cells.join(" "));
        }
        let _ = writeln!(out, "semiedges: {}", self.semiedges);
        let _ = writeln!(out, "graphical edges: {}", self.graphical_edges);
        for (kind, n) in &self.graphical_edges_by_kind {
            let _ = writeln!(out, "  {kind}: {n}");
        }
        let _ = writeln!(out, "degree histogram (graphical degree: vertices):");
        for (d, n) in &self.degree_histogram {
            let _ = writeln!(out, "  {d}: {n}");
        }
        let _ = writeln!(out, "edge sizes (size: edges):");
        for (s, n) in &self.edge_sizes {
            let _ = writeln!(out, "  {s}: {n}");
        }
        let classes: Vec<String> = self.vertex_classes.iter().map(|(c, n)| format!("{c}={n}")).collect();
        let _ = writeln!(out, "vertex classes: {}", classes.join(" "));
        let _ = writeln!(out, "uniform: {}", if self.uniform { "yes" } else { "no" });
        let _ = writeln!(
            out,
            "every two edges intersect: {} (informational)",
            if self.edges_pairwise_intersect { "yes" } else { "no" }
        );
        out
    }
}
