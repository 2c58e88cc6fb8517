//! Versioned JSON model files.
//!
//! Weights are written as decimal strings using the shortest representation
//! that parses back to the same `f64`, so save/load/save is byte-stable.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::knowledge::{FeatureVertex, GraphicalEdge, KnowledgeSemigraph, Role, SemiEdge, VertexId};
use super::GraphError;
use crate::corpus::ClassLabel;
use crate::features::{ClassCounts, CorpusTotals, FeatureKind, FeatureMask, Pattern, PatternSet};

/// Newest model file version this build reads and the one it writes.
pub const MODEL_VERSION: u32 = 1;

/// A trained graph plus the tagger it was built with.
#[derive(Debug, Clone, PartialEq)]
pub struct SavedModel {
    pub graph: KnowledgeSemigraph,
    /// `builtin` or a tagger model path.
    pub tagger: String,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    config: ConfigRecord,
    totals: BTreeMap<FeatureKind, u64>,
    class_counts: Vec<CountRecord>,
    vertices: Vec<VertexRecord>,
    semiedges: Vec<Vec<String>>,
    graphical_edges: Vec<EdgeRecord>,
}

/// Peeked before the full parse so that newer files fail with a clear error.
#[derive(Deserialize)]
struct VersionOnly {
    version: u32,
}

#[derive(Serialize, Deserialize)]
struct ConfigRecord {
    features: Vec<FeatureKind>,
    tagger: String,
}

#[derive(Serialize, Deserialize)]
struct CountRecord {
    kind: FeatureKind,
    class: ClassLabel,
    pattern: Vec<String>,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct VertexRecord {
    id: String,
    doc: String,
    kind: FeatureKind,
    role: Role,
    weight: Option<String>,
    patterns: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct EdgeRecord {
    test: String,
    train: String,
    matched: usize,
    weight: String,
}

fn parse_weight(raw: &str, what: &str) -> Result<f64, GraphError> {
    match raw.parse::<f64>() {
        Ok(w) if w.is_finite() && w >= 0.0 => Ok(w),
        _ => Err(GraphError::Inconsistent(format!("{what}: bad weight {raw:?}"))),
    }
}

fn parse_vertex_id(raw: &str) -> Result<VertexId, GraphError> {
    VertexId::parse(raw).ok_or_else(|| GraphError::Inconsistent(format!("bad vertex id {raw:?}")))
}

impl SavedModel {
    pub fn new(graph: KnowledgeSemigraph, tagger: impl Into<String>) -> Self {
        SavedModel {
            graph,
            tagger: tagger.into(),
        }
    }

    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let file = ModelFile {
            version: MODEL_VERSION,
            config: ConfigRecord {
                features: g.mask().kinds().collect(),
                tagger: self.tagger.clone(),
            },
            totals: g.mask().kinds().map(|k| (k, g.totals().get(k))).collect(),
            class_counts: g
                .counts()
                .entries()
                .map(|(class, p, count)| CountRecord {
                    kind: p.kind,
                    class,
                    pattern: p.items.clone(),
                    count,
                })
                .collect(),
            vertices: g
                .vertices()
                .map(|v| VertexRecord {
                    id: v.id.to_string(),
                    doc: v.id.doc.clone(),
                    kind: v.id.kind,
                    role: v.role,
                    weight: v.weight.map(|w| w.to_string()),
                    patterns: v.patterns.iter().map(|p| p.items.clone()).collect(),
                })
                .collect(),
            semiedges: g
                .semiedges()
                .map(|e| e.vertices.iter().map(ToString::to_string).collect())
                .collect(),
            graphical_edges: g
                .graphical_edges()
                .map(|e| EdgeRecord {
                    test: e.test.to_string(),
                    train: e.train.to_string(),
                    matched: e.matched,
                    weight: e.weight.to_string(),
                })
                .collect(),
        };
        let mut json = serde_json::to_string(&file).expect("model serializes");
        json.push('\n');
        json
    }

    pub fn from_json(json: &str) -> Result<SavedModel, GraphError> {
        let version: VersionOnly = serde_json::from_str(json).map_err(|e| GraphError::Format(e.to_string()))?;
        if version.version > MODEL_VERSION {
            return Err(GraphError::UnsupportedVersion {
                found: version.version,
                supported: MODEL_VERSION,
            });
        }
        let file: ModelFile = serde_json::from_str(json).map_err(|e| GraphError::Format(e.to_string()))?;

        let mask: FeatureMask = file.config.features.iter().copied().collect();
        let mut totals = CorpusTotals::default();
        for (kind, total) in &file.totals {
            totals.set(*kind, *total);
        }
        let mut counts = ClassCounts::default();
        for c in file.class_counts {
            if c.pattern.len() != c.kind.arity() || c.count == 0 {
                return Err(GraphError::Inconsistent(format!(
                    "bad count record for {:?}",
                    c.pattern
                )));
            }
            counts.add(c.class, Pattern::new(c.kind, c.pattern), c.count);
        }

        let mut vertices = Vec::with_capacity(file.vertices.len());
        for v in file.vertices {
            let id = VertexId::new(v.doc, v.kind);
            if id.to_string() != v.id {
                return Err(GraphError::Inconsistent(format!(
                    "vertex id {:?} does not match its doc/kind",
                    v.id
                )));
            }
            let weight = v.weight.as_deref().map(|w| parse_weight(w, &v.id)).transpose()?;
            let mut patterns = PatternSet::new(v.kind);
            for items in v.patterns {
                if items.len() != v.kind.arity() {
                    return Err(GraphError::Inconsistent(format!("vertex {id} has a malformed pattern")));
                }
                patterns.insert(Pattern::new(v.kind, items));
            }
            vertices.push(FeatureVertex {
                id,
                role: v.role,
                patterns,
                weight,
            });
        }
        let semiedges = file
            .semiedges
            .iter()
            .map(|tuple| {
                Ok(SemiEdge {
                    vertices: tuple.iter().map(|s| parse_vertex_id(s)).collect::<Result<_, _>>()?,
                })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        let edges = file
            .graphical_edges
            .iter()
            .map(|e| {
                Ok(GraphicalEdge {
                    test: parse_vertex_id(&e.test)?,
                    train: parse_vertex_id(&e.train)?,
                    matched: e.matched,
                    weight: parse_weight(&e.weight, &e.test)?,
                })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;

        let graph = KnowledgeSemigraph::from_parts(mask, counts, totals, vertices, semiedges, edges)?;
        Ok(SavedModel {
            graph,
            tagger: file.config.tagger,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), GraphError> {
        fs::write(path, self.to_json()).map_err(|source| GraphError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<SavedModel, GraphError> {
        let json = fs::read_to_string(path).map_err(|source| GraphError::Io {
            path: path.display().to_string(),
            source,
        })?;
        SavedModel::from_json(&json)
    }
}
