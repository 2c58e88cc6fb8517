//! Weighted knowledge semigraph.
//!
//! Every document contributes one vertex per enabled pattern family, joined by
//! a null-weighted semiedge in `F1..F7` order. Training vertices carry the
//! document's class-conditional weight for its own class. Test vertices carry
//! only their patterns and are joined to every same-kind training vertex they
//! share patterns with by a graphical edge of weight
//! `train weight * shared pattern count`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::structure::{Semigraph, VertexClass};
use super::GraphError;
use crate::corpus::ClassLabel;
use crate::features::{
    extract_patterns, feature_weight, ClassCounts, CorpusTotals, FeatureKind, FeatureMask, Pattern, PatternSet,
};
use crate::tagger::TaggedDocument;

/// A vertex is addressed by its document and pattern family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub doc: String,
    pub kind: FeatureKind,
}

impl VertexId {
    pub fn new(doc: impl Into<String>, kind: FeatureKind) -> Self {
        VertexId { doc: doc.into(), kind }
    }

    /// Inverse of the `Display` form `doc#Fk`.
    pub fn parse(s: &str) -> Option<VertexId> {
        let (doc, kind) = s.rsplit_once('#')?;
        Some(VertexId::new(doc, kind.parse().ok()?))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.doc, self.kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    TrainSarcastic,
    TrainNonSarcastic,
    Test,
}

impl Role {
    pub fn train(class: ClassLabel) -> Role {
        match class {
            ClassLabel::Sarcastic => Role::TrainSarcastic,
            ClassLabel::NonSarcastic => Role::TrainNonSarcastic,
        }
    }

    /// Class of a training role.
    pub fn class(self) -> Option<ClassLabel> {
        match self {
            Role::TrainSarcastic => Some(ClassLabel::Sarcastic),
            Role::TrainNonSarcastic => Some(ClassLabel::NonSarcastic),
            Role::Test => None,
        }
    }

    pub fn is_train(self) -> bool {
        self != Role::Test
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::TrainSarcastic => "train_sarcastic",
            Role::TrainNonSarcastic => "train_non_sarcastic",
            Role::Test => "test",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVertex {
    pub id: VertexId,
    pub role: Role,
    pub patterns: PatternSet,
    /// Present exactly on training vertices.
    pub weight: Option<f64>,
}

/// Null-weighted edge over one document's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiEdge {
    pub vertices: Vec<VertexId>,
}

/// Weighted two-vertex edge between a test vertex and a training vertex of the
/// same kind.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphicalEdge {
    pub test: VertexId,
    pub train: VertexId,
    /// Number of shared patterns, at least 1.
    pub matched: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeSemigraph {
    mask: FeatureMask,
    counts: ClassCounts,
    totals: CorpusTotals,
    documents: BTreeMap<String, Role>,
    vertices: BTreeMap<VertexId, FeatureVertex>,
    semiedges: BTreeMap<String, SemiEdge>,
    /// test vertex -> train vertex -> edge
    edges: BTreeMap<VertexId, BTreeMap<VertexId, GraphicalEdge>>,
}

/// Patterns of the enabled kinds of one document, in kind order.
fn enabled_sets(doc: &TaggedDocument, mask: FeatureMask) -> Vec<PatternSet> {
    extract_patterns(doc)
        .into_sets()
        .into_iter()
        .filter(|s| mask.contains(s.kind()))
        .collect()
}

impl KnowledgeSemigraph {
    /// A graph with no documents.
    pub fn empty(mask: FeatureMask) -> Result<Self, GraphError> {
        if mask.is_empty() {
            return Err(GraphError::NoFeatures);
        }
        Ok(KnowledgeSemigraph {
            mask,
            counts: ClassCounts::default(),
            totals: CorpusTotals::default(),
            documents: BTreeMap::new(),
            vertices: BTreeMap::new(),
            semiedges: BTreeMap::new(),
            edges: BTreeMap::new(),
        })
    }

    /// Builds the training graph from documents and statistics computed over
    /// exactly those documents.
    pub fn build_train_graph<'a>(
        train: impl IntoIterator<Item = (&'a TaggedDocument, ClassLabel)>,
        counts: &ClassCounts,
        totals: &CorpusTotals,
        mask: FeatureMask,
    ) -> Result<Self, GraphError> {
        let mut g = KnowledgeSemigraph::empty(mask)?;
        g.counts = counts.clone();
        g.totals = *totals;
        for (doc, label) in train {
            g.add_document_vertices(doc, Role::train(label))?;
        }
        if g.documents.is_empty() {
            return Err(GraphError::EmptyTraining);
        }
        g.reweigh();
        Ok(g)
    }

    pub(crate) fn from_parts(
        mask: FeatureMask,
        counts: ClassCounts,
        totals: CorpusTotals,
        vertices: Vec<FeatureVertex>,
        semiedges: Vec<SemiEdge>,
        edges: Vec<GraphicalEdge>,
    ) -> Result<Self, GraphError> {
        let mut g = KnowledgeSemigraph::empty(mask)?;
        g.counts = counts;
        g.totals = totals;
        for v in vertices {
            if !mask.contains(v.id.kind) {
                return Err(GraphError::Inconsistent(format!("vertex {} of disabled kind", v.id)));
            }
            if v.patterns.kind() != v.id.kind {
                return Err(GraphError::Inconsistent(format!(
                    "vertex {} holds patterns of another kind",
                    v.id
                )));
            }
            if v.role.is_train() != v.weight.is_some() {
                return Err(GraphError::Inconsistent(format!(
                    "vertex {} weight does not match its role",
                    v.id
                )));
            }
            match g.documents.get(&v.id.doc) {
                Some(role) if *role != v.role => {
                    return Err(GraphError::Inconsistent(format!(
                        "document {} has mixed roles",
                        v.id.doc
                    )))
                }
                _ => {
                    g.documents.insert(v.id.doc.clone(), v.role);
                }
            }
            if g.vertices.insert(v.id.clone(), v.clone()).is_some() {
                return Err(GraphError::Inconsistent(format!("vertex {} listed twice", v.id)));
            }
        }
        for doc in g.documents.keys() {
            if mask
                .kinds()
                .any(|k| !g.vertices.contains_key(&VertexId::new(doc.clone(), k)))
            {
                return Err(GraphError::Inconsistent(format!("document {doc} is missing vertices")));
            }
        }
        for e in semiedges {
            let doc = e.vertices.first().map(|v| v.doc.clone()).unwrap_or_default();
            if e.vertices != g.expected_semiedge(&doc) || e.vertices.len() < 2 {
                return Err(GraphError::Inconsistent(format!(
                    "semiedge of {doc} is not its vertex tuple"
                )));
            }
            g.semiedges.insert(doc, e);
        }
        for doc in g.documents.keys() {
            if mask.len() >= 2 && !g.semiedges.contains_key(doc) {
                return Err(GraphError::Inconsistent(format!("document {doc} has no semiedge")));
            }
        }
        for e in edges {
            g.check_edge(&e)?;
            let slot = g.edges.entry(e.test.clone()).or_default();
            if slot.insert(e.train.clone(), e.clone()).is_some() {
                return Err(GraphError::Inconsistent(format!(
                    "duplicate edge {} -- {}",
                    e.test, e.train
                )));
            }
        }
        Ok(g)
    }

    fn expected_semiedge(&self, doc: &str) -> Vec<VertexId> {
        self.mask.kinds().map(|k| VertexId::new(doc, k)).collect()
    }

    fn check_edge(&self, e: &GraphicalEdge) -> Result<(), GraphError> {
        let test = self.vertex(&e.test)?;
        let train = self.vertex(&e.train)?;
        if test.role != Role::Test || !train.role.is_train() {
            return Err(GraphError::Inconsistent(format!(
                "edge {} -- {} must join a test vertex to a training vertex",
                e.test, e.train
            )));
        }
        if e.test.kind != e.train.kind {
            return Err(GraphError::Inconsistent(format!(
                "edge {} -- {} crosses kinds",
                e.test, e.train
            )));
        }
        let matched = test.patterns.intersection_count(&train.patterns);
        let expected = train.weight.unwrap_or(0.0) * matched as f64;
        if matched == 0 || matched != e.matched || expected != e.weight {
            return Err(GraphError::Inconsistent(format!(
                "edge {} -- {} does not match its endpoints",
                e.test, e.train
            )));
        }
        Ok(())
    }

    /// Verifies every structural invariant, recomputing edge weights from the
    /// endpoint patterns.
    pub fn validate(&self) -> Result<(), GraphError> {
        for e in self.graphical_edges() {
            self.check_edge(e)?;
        }
        for (doc, edge) in &self.semiedges {
            if edge.vertices != self.expected_semiedge(doc) {
                return Err(GraphError::Inconsistent(format!(
                    "semiedge of {doc} is not its vertex tuple"
                )));
            }
        }
        Ok(())
    }

    fn add_document_vertices(&mut self, doc: &TaggedDocument, role: Role) -> Result<(), GraphError> {
        if self.documents.contains_key(&doc.id) {
            return Err(GraphError::DuplicateDocument(doc.id.clone()));
        }
        self.documents.insert(doc.id.clone(), role);
        for patterns in enabled_sets(doc, self.mask) {
            let id = VertexId::new(doc.id.clone(), patterns.kind());
            let weight = role.is_train().then_some(0.0);
            self.vertices.insert(
                id.clone(),
                FeatureVertex {
                    id,
                    role,
                    patterns,
                    weight,
                },
            );
        }
        let tuple = self.expected_semiedge(&doc.id);
        if tuple.len() >= 2 {
            self.semiedges.insert(doc.id.clone(), SemiEdge { vertices: tuple });
        }
        Ok(())
    }

    /// Recomputes every training vertex weight from the stored statistics.
    fn reweigh(&mut self) {
        let counts = &self.counts;
        let totals = &self.totals;
        for v in self.vertices.values_mut() {
            if let Some(class) = v.role.class() {
                v.weight = Some(feature_weight(&v.patterns, class, counts, totals));
            }
        }
    }

    /// Adds one labeled training document, updating the statistics and every
    /// training weight. Existing test vertices are re-joined afterwards.
    pub fn insert_training_document(&mut self, doc: &TaggedDocument, label: ClassLabel) -> Result<(), GraphError> {
        self.insert_training_documents([(doc, label)])
    }

    /// Batch form of [`insert_training_document`](Self::insert_training_document);
    /// all-or-nothing on duplicate ids.
    pub fn insert_training_documents<'a>(
        &mut self,
        docs: impl IntoIterator<Item = (&'a TaggedDocument, ClassLabel)>,
    ) -> Result<(), GraphError> {
        let docs: Vec<_> = docs.into_iter().collect();
        let mut dups: Vec<String> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (doc, _) in &docs {
            if self.documents.contains_key(&doc.id) || !seen.insert(doc.id.as_str()) {
                dups.push(doc.id.clone());
            }
        }
        if !dups.is_empty() {
            return Err(GraphError::DuplicateDocuments(dups));
        }
        if docs.is_empty() {
            return Ok(());
        }
        for (doc, label) in &docs {
            self.counts.add_document(doc, *label, self.mask);
            self.totals.add_document(doc, self.mask);
            self.add_document_vertices(doc, Role::train(*label))?;
        }
        self.reweigh();
        if self.documents.values().any(|r| *r == Role::Test) {
            self.rebuild_graphical_edges();
        }
        Ok(())
    }

    /// Adds test documents and joins their vertices to matching training
    /// vertices.
    pub fn attach_test_documents<'a>(
        &mut self,
        tests: impl IntoIterator<Item = &'a TaggedDocument>,
    ) -> Result<(), GraphError> {
        if self.train_document_count() == 0 {
            return Err(GraphError::EmptyTraining);
        }
        let tests: Vec<&TaggedDocument> = tests.into_iter().collect();
        for doc in &tests {
            self.add_document_vertices(doc, Role::Test)?;
        }
        let test_ids: Vec<VertexId> = tests
            .iter()
            .flat_map(|d| self.mask.kinds().map(|k| VertexId::new(d.id.clone(), k)))
            .collect();
        self.join_test_vertices(&test_ids);
        Ok(())
    }

    fn rebuild_graphical_edges(&mut self) {
        self.edges.clear();
        let test_ids: Vec<VertexId> = self
            .vertices
            .values()
            .filter(|v| v.role == Role::Test)
            .map(|v| v.id.clone())
            .collect();
        self.join_test_vertices(&test_ids);
    }

    fn join_test_vertices(&mut self, test_ids: &[VertexId]) {
        let mut index: HashMap<&Pattern, Vec<&FeatureVertex>> = HashMap::new();
        for v in self.vertices.values().filter(|v| v.role.is_train()) {
            for p in v.patterns.iter() {
                index.entry(p).or_default().push(v);
            }
        }
        let new_edges: Vec<(VertexId, BTreeMap<VertexId, GraphicalEdge>)> = test_ids
            .par_iter()
            .map(|tid| {
                let test = &self.vertices[tid];
                let mut matches: BTreeMap<&VertexId, (usize, f64)> = BTreeMap::new();
                for p in test.patterns.iter() {
                    for train in index.get(p).into_iter().flatten() {
                        let entry = matches.entry(&train.id).or_insert((0, train.weight.unwrap_or(0.0)));
                        entry.0 += 1;
                    }
                }
                let edges = matches
                    .into_iter()
                    .map(|(train, (matched, weight))| {
                        let edge = GraphicalEdge {
                            test: tid.clone(),
                            train: train.clone(),
                            matched,
                            weight: weight * matched as f64,
                        };
                        (train.clone(), edge)
                    })
                    .collect();
                (tid.clone(), edges)
            })
            .collect();
        for (tid, edges) in new_edges {
            if !edges.is_empty() {
                self.edges.insert(tid, edges);
            }
        }
    }

    pub fn mask(&self) -> FeatureMask {
        self.mask
    }

    pub fn counts(&self) -> &ClassCounts {
        &self.counts
    }

    pub fn totals(&self) -> &CorpusTotals {
        &self.totals
    }

    pub fn documents(&self) -> impl Iterator<Item = (&str, Role)> {
        self.documents.iter().map(|(d, r)| (d.as_str(), *r))
    }

    pub fn document_role(&self, doc: &str) -> Option<Role> {
        self.documents.get(doc).copied()
    }

    pub fn train_document_count(&self) -> usize {
        self.documents.values().filter(|r| r.is_train()).count()
    }

    pub fn vertex(&self, id: &VertexId) -> Result<&FeatureVertex, GraphError> {
        self.vertices
            .get(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = &FeatureVertex> {
        self.vertices.values()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices of `doc` in kind order.
    pub fn document_vertices<'a>(&'a self, doc: &'a str) -> impl Iterator<Item = &'a FeatureVertex> + 'a {
        self.mask
            .kinds()
            .filter_map(move |k| self.vertices.get(&VertexId::new(doc, k)))
    }

    pub fn semiedges(&self) -> impl Iterator<Item = &SemiEdge> {
        self.semiedges.values()
    }

    pub fn semiedge_count(&self) -> usize {
        self.semiedges.len()
    }

    pub fn graphical_edges(&self) -> impl Iterator<Item = &GraphicalEdge> {
        self.edges.values().flat_map(|m| m.values())
    }

    pub fn graphical_edge_count(&self) -> usize {
        self.edges.values().map(BTreeMap::len).sum()
    }

    /// Graphical edges at a test vertex.
    pub fn incident_edges<'a>(&'a self, test_vertex: &VertexId) -> impl Iterator<Item = &'a GraphicalEdge> + 'a {
        self.edges.get(test_vertex).into_iter().flat_map(|m| m.values())
    }

    /// Number of graphical edges at `v` whose other endpoint has role
    /// `filter` (any role when `None`). Semiedges do not count.
    pub fn degree(&self, v: &VertexId, filter: Option<Role>) -> Result<usize, GraphError> {
        let vertex = self.vertex(v)?;
        let passes = |other: &VertexId| match filter {
            None => true,
            Some(role) => self.vertices.get(other).is_some_and(|o| o.role == role),
        };
        let degree = if vertex.role == Role::Test {
            self.incident_edges(v).filter(|e| passes(&e.train)).count()
        } else {
            self.graphical_edges()
                .filter(|e| &e.train == v && passes(&e.test))
                .count()
        };
        Ok(degree)
    }

    /// Plain semigraph view: semiedges plus graphical edges as 2-tuples.
    pub fn topology(&self) -> Semigraph<VertexId> {
        let mut g = Semigraph::new();
        for id in self.vertices.keys() {
            g.add_vertex(id.clone());
        }
        for e in self.semiedges.values() {
            g.add_edge(e.vertices.clone()).expect("semiedges are well formed");
        }
        for e in self.graphical_edges() {
            g.add_edge(vec![e.test.clone(), e.train.clone()])
                .expect("graphical edges are well formed");
        }
        g
    }

    pub fn classify_vertices(&self) -> BTreeMap<VertexId, VertexClass> {
        self.topology().classify_vertices()
    }

    pub fn is_uniform(&self) -> bool {
        self.topology().is_uniform()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{compute_class_counts, compute_totals};
    use crate::tagger::PosTag;

    fn doc(id: &str, words: &[&str]) -> TaggedDocument {
        TaggedDocument {
            id: id.into(),
            tagged: words.iter().map(|w| (w.to_string(), PosTag::Noun)).collect(),
            punct_tokens: vec![],
        }
    }

    fn build(train: &[(TaggedDocument, ClassLabel)]) -> KnowledgeSemigraph {
        let mask = FeatureMask::all();
        let counts = compute_class_counts(train.iter().map(|(d, l)| (d, *l)), mask);
        let totals = compute_totals(train.iter().map(|(d, _)| d), mask);
        KnowledgeSemigraph::build_train_graph(train.iter().map(|(d, l)| (d, *l)), &counts, &totals, mask).unwrap()
    }

    #[test]
    fn counts_vertices_and_semiedges() {
        let g = build(&[
            (doc("a", &["x", "y", "z"]), ClassLabel::Sarcastic),
            (doc("b", &["x", "y"]), ClassLabel::NonSarcastic),
        ]);
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.semiedge_count(), 2);
        assert_eq!(g.graphical_edge_count(), 0);
        assert_eq!(g.semiedges().next().unwrap().vertices.len(), 7);
    }

    #[test]
    fn single_document_vertex_weight() {
        let g = build(&[(doc("a", &["a", "b", "c"]), ClassLabel::Sarcastic)]);
        let v = g.vertex(&VertexId::new("a", FeatureKind::Bigram)).unwrap();
        assert_eq!(v.weight, Some(1.0));
        assert_eq!(v.role, Role::TrainSarcastic);
    }

    #[test]
    fn empty_training_set_is_an_error() {
        let r = KnowledgeSemigraph::build_train_graph(
            std::iter::empty(),
            &ClassCounts::default(),
            &CorpusTotals::default(),
            FeatureMask::all(),
        );
        assert!(matches!(r, Err(GraphError::EmptyTraining)));
        assert!(matches!(
            KnowledgeSemigraph::empty(FeatureMask::none()),
            Err(GraphError::NoFeatures)
        ));
    }

    #[test]
    fn single_match_edge() {
        let mut g = build(&[(doc("t1", &["a", "b", "c"]), ClassLabel::Sarcastic)]);
        g.attach_test_documents([&doc("q", &["a", "b", "x", "y"])]).unwrap();
        // the bigram sets are {ab, bx, xy} vs {ab, bc}: one shared
        let edges: Vec<_> = g.incident_edges(&VertexId::new("q", FeatureKind::Bigram)).collect();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].matched, 1);
        assert_eq!(edges[0].weight, 1.0);
    }

    #[test]
    fn two_match_edge() {
        let mut g = build(&[(doc("t1", &["a", "b", "c"]), ClassLabel::Sarcastic)]);
        g.attach_test_documents([&doc("q", &["a", "b", "c"])]).unwrap();
        let e = g
            .incident_edges(&VertexId::new("q", FeatureKind::Bigram))
            .next()
            .unwrap();
        assert_eq!((e.matched, e.weight), (2, 2.0));
        g.validate().unwrap();
    }

    #[test]
    fn degrees_by_role() {
        let mut g = build(&[
            (doc("s1", &["a", "b"]), ClassLabel::Sarcastic),
            (doc("s2", &["a", "b", "c"]), ClassLabel::Sarcastic),
            (doc("s3", &["a", "b", "d"]), ClassLabel::Sarcastic),
            (doc("n1", &["a", "b", "e"]), ClassLabel::NonSarcastic),
        ]);
        g.attach_test_documents([&doc("q", &["a", "b"]), &doc("lonely", &["zz"])])
            .unwrap();
        let v = VertexId::new("q", FeatureKind::Bigram);
        assert_eq!(g.degree(&v, Some(Role::TrainSarcastic)).unwrap(), 3);
        assert_eq!(g.degree(&v, Some(Role::TrainNonSarcastic)).unwrap(), 1);
        assert_eq!(g.degree(&v, None).unwrap(), 4);
        assert_eq!(
            g.degree(&VertexId::new("lonely", FeatureKind::Bigram), None).unwrap(),
            0
        );
        assert_eq!(
            g.degree(&VertexId::new("s1", FeatureKind::Bigram), Some(Role::Test))
                .unwrap(),
            1
        );
        assert!(matches!(
            g.degree(&VertexId::new("nope", FeatureKind::Bigram), None),
            Err(GraphError::UnknownVertex(_))
        ));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let mut g = build(&[(doc("a", &["a", "b"]), ClassLabel::Sarcastic)]);
        assert!(matches!(
            g.insert_training_document(&doc("a", &["c", "d"]), ClassLabel::Sarcastic),
            Err(GraphError::DuplicateDocuments(_))
        ));
        assert!(matches!(
            g.attach_test_documents([&doc("a", &["c"])]),
            Err(GraphError::DuplicateDocument(_))
        ));
    }

    #[test]
    fn insert_into_empty_equals_single_build() {
        let d = doc("a", &["a", "b", "c", "a", "b"]);
        let mut g = KnowledgeSemigraph::empty(FeatureMask::all()).unwrap();
        g.insert_training_document(&d, ClassLabel::NonSarcastic).unwrap();
        assert_eq!(g, build(&[(d, ClassLabel::NonSarcastic)]));
    }

    #[test]
    fn insert_rejoins_test_vertices() {
        let a = doc("a", &["a", "b", "c"]);
        let b = doc("b", &["b", "c", "d"]);
        let q = doc("q", &["b", "c"]);
        let mut incremental = build(&[(a.clone(), ClassLabel::Sarcastic)]);
        incremental.attach_test_documents([&q]).unwrap();
        incremental
            .insert_training_document(&b, ClassLabel::NonSarcastic)
            .unwrap();
        let mut batch = build(&[(a, ClassLabel::Sarcastic), (b, ClassLabel::NonSarcastic)]);
        batch.attach_test_documents([&q]).unwrap();
        assert_eq!(incremental, batch);
    }

    #[test]
    fn topology_is_not_uniform_once_joined() {
        let mut g = build(&[(doc("a", &["a", "b"]), ClassLabel::Sarcastic)]);
        assert!(g.is_uniform());
        g.attach_test_documents([&doc("q", &["a", "b"])]).unwrap();
        assert!(!g.is_uniform());
        let classes = g.classify_vertices();
        assert_eq!(classes[&VertexId::new("a", FeatureKind::Bigram)], VertexClass::End);
        assert_eq!(classes[&VertexId::new("a", FeatureKind::Trigram)], VertexClass::Middle);
        // the bigram vertex is an end of both its semiedge and the graphical edge
        assert_eq!(classes[&VertexId::new("q", FeatureKind::Bigram)], VertexClass::End);
        // middle of its semiedge, end of a graphical edge (shared POS bigram)
        assert_eq!(
            classes[&VertexId::new("q", FeatureKind::PosBigram)],
            VertexClass::MiddleEnd
        );
    }

    #[test]
    fn vertex_id_round_trips_through_text() {
        let id = VertexId::new("file:3#x", FeatureKind::Punctuation);
        assert_eq!(id.to_string(), "file:3#x#F7");
        assert_eq!(VertexId::parse(&id.to_string()), Some(id));
        assert_eq!(VertexId::parse("nokind"), None);
    }

    #[test]
    fn single_kind_mask_has_no_semiedges() {
        let mask = FeatureMask::none().with(FeatureKind::Bigram);
        let d = doc("a", &["a", "b"]);
        let counts = compute_class_counts([(&d, ClassLabel::Sarcastic)], mask);
        let totals = compute_totals([&d], mask);
        let g = KnowledgeSemigraph::build_train_graph([(&d, ClassLabel::Sarcastic)], &counts, &totals, mask).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.semiedge_count(), 0);
    }
}
