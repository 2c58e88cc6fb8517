//! Semigraph structures: the plain tuple-edge semigraph and the weighted
//! knowledge semigraph used for classification.

mod knowledge;
mod persist;
pub mod structure;

use thiserror::Error;

pub use knowledge::{FeatureVertex, GraphicalEdge, KnowledgeSemigraph, Role, SemiEdge, VertexId};
pub use persist::{SavedModel, MODEL_VERSION};
pub use structure::{Semigraph, StructureError, VertexClass};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("training set is empty")]
    EmptyTraining,
    #[error("at least one feature kind must be enabled")]
    NoFeatures,
    #[error("duplicate document id {0}")]
    DuplicateDocument(String),
    #[error("duplicate document ids: {}", .0.join(", "))]
    DuplicateDocuments(Vec<String>),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown document {0}")]
    UnknownDocument(String),
    #[error("document {0} is not a test document")]
    NotATestDocument(String),
    #[error("inconsistent model: {0}")]
    Inconsistent(String),
    #[error("model file version {found} is newer than supported version {supported}")]
    UnsupportedVersion { found: u32, supported: u32 },
    #[error("malformed model file: {0}")]
    Format(String),
    #[error("cannot access model {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
