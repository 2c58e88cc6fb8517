//! Lexicon and suffix-rule part-of-speech tagger over the Universal POS tags.
//!
//! A model is a `word -> tag` lexicon plus an ordered list of suffix rules for
//! unknown words. Lookup order: lexicon, all-numeric tokens as `NUM`, longest
//! matching suffix, then `NOUN`.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::TokenizedDocument;

const BUILTIN_LEXICON: &str = include_str!("../resources/lexicon.tsv");
const BUILTIN_SUFFIXES: &str = include_str!("../resources/suffixes.tsv");

/// Marker accepted by [`load_tagger`] for the bundled model.
pub const BUILTIN: &str = "builtin";

#[derive(Debug, Error)]
pub enum TaggerError {
    #[error("cannot read tagger model {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Corrupt { path: String, line: usize, message: String },
}

/// Universal POS tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Adj,
    Adp,
    Adv,
    Aux,
    Cconj,
    Det,
    Intj,
    Noun,
    Num,
    Part,
    Pron,
    Propn,
    Punct,
    Sconj,
    Sym,
    Verb,
    X,
}

impl PosTag {
    pub const ALL: [PosTag; 17] = [
        PosTag::Adj,
        PosTag::Adp,
        PosTag::Adv,
        PosTag::Aux,
        PosTag::Cconj,
        PosTag::Det,
        PosTag::Intj,
        PosTag::Noun,
        PosTag::Num,
        PosTag::Part,
        PosTag::Pron,
        PosTag::Propn,
        PosTag::Punct,
        PosTag::Sconj,
        PosTag::Sym,
        PosTag::Verb,
        PosTag::X,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Adj => "ADJ",
            PosTag::Adp => "ADP",
            PosTag::Adv => "ADV",
            PosTag::Aux => "AUX",
            PosTag::Cconj => "CCONJ",
            PosTag::Det => "DET",
            PosTag::Intj => "INTJ",
            PosTag::Noun => "NOUN",
            PosTag::Num => "NUM",
            PosTag::Part => "PART",
            PosTag::Pron => "PRON",
            PosTag::Propn => "PROPN",
            PosTag::Punct => "PUNCT",
            PosTag::Sconj => "SCONJ",
            PosTag::Sym => "SYM",
            PosTag::Verb => "VERB",
            PosTag::X => "X",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown POS tag {s:?}"))
    }
}

/// Word tokens paired with their tags, plus the punctuation marks carried over
/// from tokenization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedDocument {
    pub id: String,
    pub tagged: Vec<(String, PosTag)>,
    pub punct_tokens: Vec<char>,
}

impl TaggedDocument {
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.tagged.iter().map(|(w, _)| w.as_str())
    }

    pub fn tags(&self) -> impl Iterator<Item = PosTag> + '_ {
        self.tagged.iter().map(|(_, t)| *t)
    }
}

/// Where a tagger model came from. Stored alongside trained models so that
/// classification reuses the same tagger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaggerSource {
    Builtin,
    Path(PathBuf),
}

impl fmt::Display for TaggerSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaggerSource::Builtin => f.write_str(BUILTIN),
            TaggerSource::Path(p) => write!(f, "{}", p.display()),
        }
    }
}

impl From<&str> for TaggerSource {
    fn from(s: &str) -> Self {
        if s == BUILTIN {
            TaggerSource::Builtin
        } else {
            TaggerSource::Path(PathBuf::from(s))
        }
    }
}

/// Immutable tagging model.
#[derive(Debug, Clone)]
pub struct TaggerModel {
    source: TaggerSource,
    lexicon: HashMap<String, PosTag>,
    /// Sorted longest suffix first.
    suffixes: Vec<(String, PosTag)>,
}

impl TaggerModel {
    pub fn builtin() -> Self {
        let lexicon = parse_table(BUILTIN_LEXICON, "<builtin lexicon>").expect("bundled lexicon parses");
        let suffixes = parse_table(BUILTIN_SUFFIXES, "<builtin suffixes>").expect("bundled suffixes parse");
        TaggerModel::from_parts(TaggerSource::Builtin, lexicon, suffixes)
    }

    pub fn from_parts(source: TaggerSource, lexicon: Vec<(String, PosTag)>, suffixes: Vec<(String, PosTag)>) -> Self {
        let mut map = HashMap::with_capacity(lexicon.len());
        for (word, tag) in lexicon {
            // first entry wins
            map.entry(word.to_lowercase()).or_insert(tag);
        }
        let mut suffixes: Vec<_> = suffixes.into_iter().map(|(s, t)| (s.to_lowercase(), t)).collect();
        suffixes.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        suffixes.dedup_by(|a, b| a.0 == b.0);
        TaggerModel {
            source,
            lexicon: map,
            suffixes,
        }
    }

    pub fn source(&self) -> &TaggerSource {
        &self.source
    }

    pub fn lexicon_len(&self) -> usize {
        self.lexicon.len()
    }

    pub fn tag_word(&self, word: &str) -> PosTag {
        if let Some(tag) = self.lexicon.get(word) {
            return *tag;
        }
        if word.chars().all(|c| c.is_numeric()) {
            return PosTag::Num;
        }
        self.suffixes
            .iter()
            .find(|(suffix, _)| word.len() > suffix.len() && word.ends_with(suffix.as_str()))
            .map(|(_, tag)| *tag)
            .unwrap_or(PosTag::Noun)
    }

    pub fn tag(&self, doc: &TokenizedDocument) -> TaggedDocument {
        TaggedDocument {
            id: doc.id.clone(),
            tagged: doc.tokens.iter().map(|w| (w.clone(), self.tag_word(w))).collect(),
            punct_tokens: doc.punct_tokens.clone(),
        }
    }
}

/// Tags every word token of `doc`.
pub fn tag(doc: &TokenizedDocument, model: &TaggerModel) -> TaggedDocument {
    model.tag(doc)
}

fn parse_table(content: &str, origin: &str) -> Result<Vec<(String, PosTag)>, TaggerError> {
    let mut rows = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let corrupt = |message: String| TaggerError::Corrupt {
            path: origin.to_string(),
            line: idx + 1,
            message,
        };
        let (word, tag) = line
            .split_once('\t')
            .ok_or_else(|| corrupt("expected word<TAB>TAG".to_string()))?;
        let word = word.trim();
        if word.is_empty() {
            return Err(corrupt("empty word".to_string()));
        }
        let tag = tag.trim().parse::<PosTag>().map_err(corrupt)?;
        rows.push((word.to_string(), tag));
    }
    Ok(rows)
}

fn read_table(path: &Path) -> Result<Vec<(String, PosTag)>, TaggerError> {
    let content = fs::read_to_string(path).map_err(|source| TaggerError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&content, &path.display().to_string())
}

/// Loads a tagger model.
///
/// `name` is either [`BUILTIN`], a lexicon file (no suffix rules), or a
/// directory holding `lexicon.tsv` and optionally `suffixes.tsv`.
pub fn load_tagger(name: &str) -> Result<TaggerModel, TaggerError> {
    match TaggerSource::from(name) {
        TaggerSource::Builtin => Ok(TaggerModel::builtin()),
        TaggerSource::Path(path) => {
            let (lexicon, suffixes) = if path.is_dir() {
                let lexicon = read_table(&path.join("lexicon.tsv"))?;
                let suffix_path = path.join("suffixes.tsv");
                let suffixes = if suffix_path.exists() {
                    read_table(&suffix_path)?
                } else {
                    Vec::new()
                };
                (lexicon, suffixes)
            } else {
                (read_table(&path)?, Vec::new())
            };
            Ok(TaggerModel::from_parts(TaggerSource::Path(path), lexicon, suffixes))
        }
    }
}
