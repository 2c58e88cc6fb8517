//! Sarcasm detection over a weighted knowledge semigraph.
//!
//! Each review is reduced to seven pattern families (word bigrams and
//! trigrams, POS bigrams and trigrams, adverb-adjective intensifiers,
//! interjections and punctuation marks). Training documents become weighted
//! vertices joined per document by a semiedge; a document under test is joined
//! to training vertices that share its patterns, and the resulting edge
//! weights and degrees give a sarcastic and a non-sarcastic polarity score.
//!
//! ```
//! use semigraph_core::{ClassLabel, Document, FeatureMask, Pipeline, TaggerModel};
//!
//! let train = vec![
//!     Document::new("s1", "Oh wow, really great!", Some(ClassLabel::Sarcastic)),
//!     Document::new("n1", "The cable fits the laptop.", Some(ClassLabel::NonSarcastic)),
//! ];
//! let pipeline = Pipeline::new(TaggerModel::builtin(), FeatureMask::all());
//! let model = pipeline.train(&train).unwrap();
//! let results = pipeline
//!     .classify(&model.graph, &[Document::new("q", "Oh wow, so great!", None)])
//!     .unwrap();
//! assert_eq!(results[0].decision, ClassLabel::Sarcastic);
//! ```

pub mod corpus;
pub mod eval;
pub mod features;
pub mod pipeline;
pub mod polarity;
pub mod semigraph;
pub mod tagger;

use thiserror::Error;

pub use corpus::{ClassLabel, CorpusError, CorpusFormat, Document, TokenizedDocument};
pub use eval::{ConfusionMatrix, EvalError, MetricsReport};
pub use features::{ClassCounts, CorpusTotals, FeatureKind, FeatureMask, Pattern, PatternSet};
pub use pipeline::{EvalRun, Pipeline, RunConfig, TrainOutcome};
pub use polarity::PolarityResult;
pub use semigraph::{GraphError, KnowledgeSemigraph, Role, SavedModel, VertexId};
pub use tagger::{PosTag, TaggedDocument, TaggerError, TaggerModel};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Tagger(#[from] TaggerError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
