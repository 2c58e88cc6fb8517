//! The seven pattern families and their class-conditional weights.
//!
//! For a document `d` of class `c` and a family `k`, the weight is
//!
//! ```text
//! w(d, k, c) = sum over distinct kind-k patterns p of d of  A(p, k, c) / T(k)
//! ```
//!
//! where `A` counts occurrences of `p` (with multiplicity) over all class-`c`
//! training documents and `T` counts all kind-`k` occurrences over the whole
//! training corpus.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::ClassLabel;
use crate::tagger::{PosTag, TaggedDocument};

/// Pattern family. The declaration order is the canonical vertex order inside
/// a document's semiedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FeatureKind {
    #[serde(rename = "F1")]
    Bigram,
    #[serde(rename = "F2")]
    Trigram,
    #[serde(rename = "F3")]
    PosBigram,
    #[serde(rename = "F4")]
    PosTrigram,
    #[serde(rename = "F5")]
    Intensifier,
    #[serde(rename = "F6")]
    Interjection,
    #[serde(rename = "F7")]
    Punctuation,
}

impl FeatureKind {
    pub const ALL: [FeatureKind; 7] = [
        FeatureKind::Bigram,
        FeatureKind::Trigram,
        FeatureKind::PosBigram,
        FeatureKind::PosTrigram,
        FeatureKind::Intensifier,
        FeatureKind::Interjection,
        FeatureKind::Punctuation,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `F1` .. `F7`.
    pub fn code(self) -> &'static str {
        ["F1", "F2", "F3", "F4", "F5", "F6", "F7"][self.index()]
    }

    pub fn name(self) -> &'static str {
        match self {
            FeatureKind::Bigram => "bigram",
            FeatureKind::Trigram => "trigram",
            FeatureKind::PosBigram => "pos_bigram",
            FeatureKind::PosTrigram => "pos_trigram",
            FeatureKind::Intensifier => "intensifier",
            FeatureKind::Interjection => "interjection",
            FeatureKind::Punctuation => "punctuation",
        }
    }

    /// Tuple length of every pattern of this kind.
    pub fn arity(self) -> usize {
        match self {
            FeatureKind::Bigram | FeatureKind::PosBigram | FeatureKind::Intensifier => 2,
            FeatureKind::Trigram | FeatureKind::PosTrigram => 3,
            FeatureKind::Interjection | FeatureKind::Punctuation => 1,
        }
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for FeatureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        FeatureKind::ALL
            .into_iter()
            .find(|k| k.code().eq_ignore_ascii_case(s) || k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown feature {s:?} (expected F1..F7)"))
    }
}

/// Set of enabled pattern families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FeatureMask([bool; 7]);

impl Default for FeatureMask {
    fn default() -> Self {
        FeatureMask::all()
    }
}

impl FeatureMask {
    pub fn all() -> Self {
        FeatureMask([true; 7])
    }

    pub fn none() -> Self {
        FeatureMask([false; 7])
    }

    pub fn with(mut self, kind: FeatureKind) -> Self {
        self.0[kind.index()] = true;
        self
    }

    pub fn without(mut self, kind: FeatureKind) -> Self {
        self.0[kind.index()] = false;
        self
    }

    pub fn contains(&self, kind: FeatureKind) -> bool {
        self.0[kind.index()]
    }

    pub fn kinds(&self) -> impl Iterator<Item = FeatureKind> + '_ {
        FeatureKind::ALL.into_iter().filter(|k| self.contains(*k))
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl FromIterator<FeatureKind> for FeatureMask {
    fn from_iter<I: IntoIterator<Item = FeatureKind>>(iter: I) -> Self {
        iter.into_iter().fold(FeatureMask::none(), FeatureMask::with)
    }
}

/// One pattern: a word n-gram, tag n-gram, adverb/adjective pair,
/// interjection word or punctuation mark.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub kind: FeatureKind,
    pub items: Vec<String>,
}

impl Pattern {
    pub fn new<S: Into<String>>(kind: FeatureKind, items: impl IntoIterator<Item = S>) -> Self {
        Pattern {
            kind,
            items: items.into_iter().map(Into::into).collect(),
        }
    }
}

/// Distinct patterns of one kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSet {
    kind: FeatureKind,
    patterns: BTreeSet<Pattern>,
}

impl PatternSet {
    pub fn new(kind: FeatureKind) -> Self {
        PatternSet {
            kind,
            patterns: BTreeSet::new(),
        }
    }

    pub fn from_patterns(kind: FeatureKind, patterns: impl IntoIterator<Item = Pattern>) -> Self {
        let mut set = PatternSet::new(kind);
        for p in patterns {
            set.insert(p);
        }
        set
    }

    pub fn kind(&self) -> FeatureKind {
        self.kind
    }

    /// Panics if `pattern` is of another kind.
    pub fn insert(&mut self, pattern: Pattern) -> bool {
        assert_eq!(pattern.kind, self.kind, "pattern kind does not match set kind");
        self.patterns.insert(pattern)
    }

    pub fn contains(&self, pattern: &Pattern) -> bool {
        self.patterns.contains(pattern)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pattern> {
        self.patterns.iter()
    }

    /// Number of patterns present in both sets.
    pub fn intersection_count(&self, other: &PatternSet) -> usize {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().filter(|p| large.contains(p)).count()
    }
}

/// The seven pattern sets of one document, indexed by kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentPatterns {
    sets: [PatternSet; 7],
}

impl DocumentPatterns {
    pub fn get(&self, kind: FeatureKind) -> &PatternSet {
        &self.sets[kind.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &PatternSet> {
        self.sets.iter()
    }

    pub fn into_sets(self) -> [PatternSet; 7] {
        self.sets
    }
}

fn windows_of<'a, T: AsRef<str> + 'a>(kind: FeatureKind, items: &'a [T]) -> impl Iterator<Item = Pattern> + 'a {
    items
        .windows(kind.arity())
        .map(move |w| Pattern::new(kind, w.iter().map(|s| s.as_ref().to_string())))
}

/// Every kind-`kind` pattern instance of `doc`, with multiplicity, in text order.
pub fn pattern_occurrences(doc: &TaggedDocument, kind: FeatureKind) -> Vec<Pattern> {
    match kind {
        FeatureKind::Bigram | FeatureKind::Trigram => {
            let words: Vec<&str> = doc.words().collect();
            windows_of(kind, &words).collect()
        }
        FeatureKind::PosBigram | FeatureKind::PosTrigram => {
            let tags: Vec<&str> = doc.tags().map(PosTag::as_str).collect();
            windows_of(kind, &tags).collect()
        }
        FeatureKind::Intensifier => doc
            .tagged
            .windows(2)
            .filter(|w| w[0].1 == PosTag::Adv && w[1].1 == PosTag::Adj)
            .map(|w| Pattern::new(kind, [w[0].0.as_str(), w[1].0.as_str()]))
            .collect(),
        FeatureKind::Interjection => doc
            .tagged
            .iter()
            .filter(|(_, t)| *t == PosTag::Intj)
            .map(|(w, _)| Pattern::new(kind, [w.as_str()]))
            .collect(),
        FeatureKind::Punctuation => doc
            .punct_tokens
            .iter()
            .map(|c| Pattern::new(kind, [c.to_string()]))
            .collect(),
    }
}

/// Distinct patterns of every kind.
pub fn extract_patterns(doc: &TaggedDocument) -> DocumentPatterns {
    DocumentPatterns {
        sets: FeatureKind::ALL.map(|kind| PatternSet::from_patterns(kind, pattern_occurrences(doc, kind))),
    }
}

/// Corpus-wide occurrence totals per kind (both classes, with multiplicity).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CorpusTotals([u64; 7]);

impl CorpusTotals {
    pub fn get(&self, kind: FeatureKind) -> u64 {
        self.0[kind.index()]
    }

    pub fn set(&mut self, kind: FeatureKind, total: u64) {
        self.0[kind.index()] = total;
    }

    pub fn add_document(&mut self, doc: &TaggedDocument, mask: FeatureMask) {
        for kind in mask.kinds() {
            self.0[kind.index()] += pattern_occurrences(doc, kind).len() as u64;
        }
    }

    /// Every total multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> CorpusTotals {
        CorpusTotals(self.0.map(|t| t * factor))
    }
}

pub fn compute_totals<'a>(train: impl IntoIterator<Item = &'a TaggedDocument>, mask: FeatureMask) -> CorpusTotals {
    let mut totals = CorpusTotals::default();
    for doc in train {
        totals.add_document(doc, mask);
    }
    totals
}

/// Per (kind, class) occurrence counts of each pattern.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassCounts {
    counts: BTreeMap<(FeatureKind, ClassLabel), BTreeMap<Pattern, u64>>,
}

impl ClassCounts {
    pub fn get(&self, class: ClassLabel, pattern: &Pattern) -> u64 {
        self.counts
            .get(&(pattern.kind, class))
            .and_then(|m| m.get(pattern))
            .copied()
            .unwrap_or(0)
    }

    pub fn add(&mut self, class: ClassLabel, pattern: Pattern, count: u64) {
        if count == 0 {
            return;
        }
        *self
            .counts
            .entry((pattern.kind, class))
            .or_default()
            .entry(pattern)
            .or_insert(0) += count;
    }

    pub fn add_document(&mut self, doc: &TaggedDocument, class: ClassLabel, mask: FeatureMask) {
        for kind in mask.kinds() {
            for p in pattern_occurrences(doc, kind) {
                self.add(class, p, 1);
            }
        }
    }

    /// All `(class, pattern, count)` entries in a fixed order.
    pub fn entries(&self) -> impl Iterator<Item = (ClassLabel, &Pattern, u64)> {
        self.counts
            .iter()
            .flat_map(|((_, class), m)| m.iter().map(move |(p, c)| (*class, p, *c)))
    }

    /// Number of distinct patterns of `kind` seen in `class`.
    pub fn distinct(&self, kind: FeatureKind, class: ClassLabel) -> usize {
        self.counts.get(&(kind, class)).map_or(0, BTreeMap::len)
    }

    /// Every count multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> ClassCounts {
        let mut counts = self.counts.clone();
        for m in counts.values_mut() {
            for c in m.values_mut() {
                *c *= factor;
            }
        }
        ClassCounts { counts }
    }
}

pub fn compute_class_counts<'a>(
    train: impl IntoIterator<Item = (&'a TaggedDocument, ClassLabel)>,
    mask: FeatureMask,
) -> ClassCounts {
    let mut counts = ClassCounts::default();
    for (doc, class) in train {
        counts.add_document(doc, class, mask);
    }
    counts
}

/// Class-conditional weight of one document's kind-`k` patterns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureWeight {
    pub doc: String,
    pub kind: FeatureKind,
    pub class: ClassLabel,
    pub weight: f64,
    /// Set when `T(kind)` is zero and no ratio was taken.
    pub degenerate: bool,
}

impl FeatureWeight {
    pub fn compute(
        doc: &str,
        patterns: &PatternSet,
        class: ClassLabel,
        counts: &ClassCounts,
        totals: &CorpusTotals,
    ) -> FeatureWeight {
        let total = totals.get(patterns.kind());
        FeatureWeight {
            doc: doc.to_string(),
            kind: patterns.kind(),
            class,
            weight: feature_weight(patterns, class, counts, totals),
            degenerate: total == 0,
        }
    }
}

/// Sum of `A(p, class) / T(kind)` over the distinct patterns in `patterns`.
/// Zero when `T(kind)` is zero.
pub fn feature_weight(patterns: &PatternSet, class: ClassLabel, counts: &ClassCounts, totals: &CorpusTotals) -> f64 {
    let total = totals.get(patterns.kind());
    if total == 0 {
        return 0.0;
    }
    let numerator: u64 = patterns.iter().map(|p| counts.get(class, p)).sum();
    numerator as f64 / total as f64
}

/// Writes `doc_id<TAB>kind<TAB>class<TAB>weight` lines.
pub fn write_weight_dump<'a, W: Write>(
    mut out: W,
    weights: impl IntoIterator<Item = &'a FeatureWeight>,
) -> io::Result<()> {
    for w in weights {
        writeln!(out, "{}\t{}\t{}\t{}", w.doc, w.kind, w.class, w.weight)?;
    }
    Ok(())
}
