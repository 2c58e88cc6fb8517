//! End-to-end flows: documents in, trained graph / scores / metrics out.

use std::collections::{BTreeSet, HashMap};

use log::{debug, info, warn};
use rayon::prelude::*;

use crate::corpus::{preprocess, split, ClassLabel, CorpusError, Document};
use crate::eval::{confusion, metrics, MetricsReport};
use crate::features::{compute_class_counts, compute_totals, FeatureMask};
use crate::polarity::{score_document, PolarityResult};
use crate::semigraph::{GraphError, KnowledgeSemigraph};
use crate::tagger::{TaggedDocument, TaggerModel};
use crate::Error;

type Labeled = Vec<(TaggedDocument, ClassLabel)>;

/// Settings for a train/classify/evaluate run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub mask: FeatureMask,
    pub test_fraction: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mask: FeatureMask::all(),
            test_fraction: 0.2,
            seed: 42,
        }
    }
}

/// A trained graph and the ids of documents left out for having no words.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub graph: KnowledgeSemigraph,
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct EvalRun {
    pub results: Vec<PolarityResult>,
    pub report: MetricsReport,
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    tagger: TaggerModel,
    mask: FeatureMask,
}

impl Pipeline {
    pub fn new(tagger: TaggerModel, mask: FeatureMask) -> Self {
        Pipeline { tagger, mask }
    }

    pub fn tagger(&self) -> &TaggerModel {
        &self.tagger
    }

    pub fn mask(&self) -> FeatureMask {
        self.mask
    }

    pub fn prepare(&self, doc: &Document) -> Result<TaggedDocument, CorpusError> {
        preprocess(doc).map(|t| self.tagger.tag(&t))
    }

    /// Tags labeled documents, dropping (and reporting) those with no words.
    fn prepare_labeled(&self, docs: &[Document]) -> Result<(Labeled, Vec<String>), Error> {
        let prepared: Vec<_> = docs.par_iter().map(|d| (d, self.prepare(d))).collect();
        let mut kept = Vec::with_capacity(prepared.len());
        let mut skipped = Vec::new();
        for (doc, tagged) in prepared {
            let label = doc.label.ok_or_else(|| CorpusError::Unlabeled { id: doc.id.clone() })?;
            match tagged {
                Ok(t) => kept.push((t, label)),
                Err(CorpusError::EmptyAfterPreprocess { id }) => {
                    warn!("skipping training document {id}: no word tokens");
                    skipped.push(id);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Ok((kept, skipped))
    }

    pub fn train(&self, docs: &[Document]) -> Result<TrainOutcome, Error> {
        let (prepared, skipped) = self.prepare_labeled(docs)?;
        let mut seen = BTreeSet::new();
        let dups: Vec<String> = prepared
            .iter()
            .filter(|(d, _)| !seen.insert(d.id.as_str()))
            .map(|(d, _)| d.id.clone())
            .collect();
        if !dups.is_empty() {
            return Err(GraphError::DuplicateDocuments(dups).into());
        }
        let counts = compute_class_counts(prepared.iter().map(|(d, l)| (d, *l)), self.mask);
        let totals = compute_totals(prepared.iter().map(|(d, _)| d), self.mask);
        let graph =
            KnowledgeSemigraph::build_train_graph(prepared.iter().map(|(d, l)| (d, *l)), &counts, &totals, self.mask)?;
        info!(
            "trained on {} documents: {} vertices, {} semiedges",
            graph.train_document_count(),
            graph.vertex_count(),
            graph.semiedge_count()
        );
        Ok(TrainOutcome { graph, skipped })
    }

    /// Inserts labeled documents into an existing training graph.
    pub fn add(&self, graph: &mut KnowledgeSemigraph, docs: &[Document]) -> Result<Vec<String>, Error> {
        let (prepared, skipped) = self.prepare_labeled(docs)?;
        graph.insert_training_documents(prepared.iter().map(|(d, l)| (d, *l)))?;
        Ok(skipped)
    }

    /// Scores documents against a copy of `graph`; the input graph is left
    /// untouched. Output order follows `docs`.
    pub fn classify(&self, graph: &KnowledgeSemigraph, docs: &[Document]) -> Result<Vec<PolarityResult>, Error> {
        let prepared: Vec<_> = docs.par_iter().map(|d| self.prepare(d)).collect();

        // Test vertices are keyed by document id, so ids already in the graph
        // (or repeated in the input) get a private alias.
        let mut taken: BTreeSet<String> = graph.documents().map(|(d, _)| d.to_string()).collect();
        let mut overlay = graph.clone();
        let mut attached = Vec::new();
        let mut slots = Vec::with_capacity(docs.len());
        for (doc, tagged) in docs.iter().zip(prepared) {
            match tagged {
                Ok(mut t) => {
                    let mut alias = t.id.clone();
                    let mut n = 0;
                    while taken.contains(&alias) {
                        n += 1;
                        alias = format!("{}~test{n}", t.id);
                    }
                    taken.insert(alias.clone());
                    t.id = alias.clone();
                    attached.push(t);
                    slots.push(Some(alias));
                }
                Err(CorpusError::EmptyAfterPreprocess { .. }) => {
                    debug!("document {} has no word tokens; no evidence", doc.id);
                    slots.push(None);
                }
                Err(e) => return Err(e.into()),
            }
        }
        overlay.attach_test_documents(&attached)?;

        docs.par_iter()
            .zip(slots.par_iter())
            .map(|(doc, slot)| match slot {
                None => Ok(PolarityResult::no_evidence(&doc.id)),
                Some(alias) => {
                    let mut r = score_document(&overlay, alias)?;
                    r.doc = doc.id.clone();
                    Ok(r)
                }
            })
            .collect()
    }

    /// Trains on `train`, classifies `test` and scores the decisions against
    /// the test gold labels.
    pub fn evaluate_run(&self, train: &[Document], test: &[Document]) -> Result<EvalRun, Error> {
        let model = self.train(train)?;
        let results = self.classify(&model.graph, test)?;
        let gold: HashMap<String, ClassLabel> = test
            .iter()
            .map(|d| {
                d.label
                    .map(|l| (d.id.clone(), l))
                    .ok_or_else(|| CorpusError::Unlabeled { id: d.id.clone() })
            })
            .collect::<Result<_, _>>()?;
        let matrix = confusion(&results, &gold)?;
        Ok(EvalRun {
            report: metrics(&matrix)?,
            results,
        })
    }

    /// Stratified split per `config`, then [`evaluate_run`](Self::evaluate_run).
    pub fn evaluate_corpus(&self, docs: &[Document], config: &RunConfig) -> Result<EvalRun, Error> {
        let (train, test) = split(docs, config.test_fraction, config.seed)?;
        info!("split: {} train, {} test", train.len(), test.len());
        self.evaluate_run(&train, &test)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(id: &str, text: &str, label: ClassLabel) -> Document {
        Document::new(id, text, Some(label))
    }

    /// Sarcastic and regular documents use disjoint words, tag sequences and
    /// punctuation, so every test document only matches its own class.
    fn separable() -> (Vec<Document>, Vec<Document>) {
        use ClassLabel::*;
        let train = vec![
            d("s1", "Oh wow, really great!", Sarcastic),
            d("s2", "Wow, so brilliant!", Sarcastic),
            d("s3", "Oh yeah, totally perfect!", Sarcastic),
            d("n1", "cable fits laptop", NonSarcastic),
            d("n2", "battery fits charger", NonSarcastic),
            d("n3", "screen fits case", NonSarcastic),
        ];
        let test = vec![
            d("ts", "Oh wow, so great!", Sarcastic),
            d("tn", "cable fits charger", NonSarcastic),
        ];
        (train, test)
    }

    #[test]
    fn separable_fixture_scores_perfectly() {
        let (train, test) = separable();
        let p = Pipeline::new(TaggerModel::builtin(), FeatureMask::all());
        let run = p.evaluate_run(&train, &test).unwrap();
        assert_eq!(run.report.headline.precision, 1.0);
        assert_eq!(run.report.headline.recall, 1.0);
        assert_eq!(run.report.per_class.non_sarcastic.f_measure, 1.0);
    }

    #[test]
    fn classifying_training_documents_recovers_labels() {
        let (train, _) = separable();
        let p = Pipeline::new(TaggerModel::builtin(), FeatureMask::all());
        let model = p.train(&train).unwrap();
        let before = model.graph.clone();
        let results = p.classify(&model.graph, &train).unwrap();
        assert_eq!(model.graph, before);
        for (doc, r) in train.iter().zip(&results) {
            assert_eq!(r.doc, doc.id);
            assert_eq!(Some(r.decision), doc.label, "{}", doc.id);
        }
    }

    #[test]
    fn empty_documents_are_skipped_or_no_evidence() {
        let (mut train, _) = separable();
        train.push(d("blank", "?!", ClassLabel::Sarcastic));
        let p = Pipeline::new(TaggerModel::builtin(), FeatureMask::all());
        let model = p.train(&train).unwrap();
        assert_eq!(model.skipped, vec!["blank".to_string()]);
        let r = p.classify(&model.graph, &[Document::new("q", "!!!", None)]).unwrap();
        assert!(r[0].no_evidence);
        assert_eq!(r[0].decision, ClassLabel::NonSarcastic);
        let r = p
            .classify(&model.graph, &[Document::new("q", "zzqx qqzx", None)])
            .unwrap();
        assert_eq!(r[0].decision, ClassLabel::NonSarcastic);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let (mut docs, test) = separable();
        docs.extend(test);
        let p = Pipeline::new(TaggerModel::builtin(), FeatureMask::all());
        let config = RunConfig {
            test_fraction: 0.3,
            seed: 9,
            ..RunConfig::default()
        };
        let a = p.evaluate_corpus(&docs, &config).unwrap();
        let b = p.evaluate_corpus(&docs, &config).unwrap();
        assert_eq!(a.report.to_json(), b.report.to_json());
        assert_eq!(a.results, b.results);
    }

    #[test]
    fn duplicate_training_ids_fail() {
        let docs = vec![
            d("x", "oh wow", ClassLabel::Sarcastic),
            d("x", "fine cable", ClassLabel::NonSarcastic),
        ];
        let p = Pipeline::new(TaggerModel::builtin(), FeatureMask::all());
        assert!(matches!(
            p.train(&docs),
            Err(Error::Graph(GraphError::DuplicateDocuments(_)))
        ));
    }
}
