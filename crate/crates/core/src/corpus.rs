//! Review corpora: loading, text normalization and train/test splitting.
//!
//! Two on-disk layouts are understood. Layout A is tab-separated,
//! `label<TAB>rating<TAB>title<TAB>body`, one review per line. Layout B is one
//! JSON object per line with keys `label`, `rating`, `title`, `text` and an
//! optional `id`. The layout is detected from the first non-whitespace
//! character of the file when not given explicitly.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Punctuation marks kept as pragmatic evidence.
pub const PRAGMATIC_MARKS: [char; 5] = ['!', '"', '\'', '?', '.'];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: unknown label {label:?} (expected ironic or regular)")]
    UnknownLabel { line: usize, label: String },
    #[error("document {id}: empty-after-preprocess")]
    EmptyAfterPreprocess { id: String },
    #[error("test fraction {0} is outside (0, 1)")]
    InvalidFraction(f64),
    #[error("document {id} has no gold label; stratified split needs labeled documents")]
    Unlabeled { id: String },
    #[error("no {0} documents; stratified split needs both classes")]
    MissingClass(ClassLabel),
}

/// Gold or predicted class of a review.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassLabel {
    Sarcastic,
    NonSarcastic,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 2] = [ClassLabel::Sarcastic, ClassLabel::NonSarcastic];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Sarcastic => "Sarcastic",
            ClassLabel::NonSarcastic => "NonSarcastic",
        }
    }

    pub fn other(self) -> ClassLabel {
        match self {
            ClassLabel::Sarcastic => ClassLabel::NonSarcastic,
            ClassLabel::NonSarcastic => ClassLabel::Sarcastic,
        }
    }

    /// Maps a corpus label (`ironic` / `regular`, case-insensitive).
    /// `-` and the empty string mean "unlabeled".
    pub fn parse_corpus_label(raw: &str) -> Result<Option<ClassLabel>, String> {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "-" {
            return Ok(None);
        }
        match trimmed.to_ascii_lowercase().as_str() {
            "ironic" => Ok(Some(ClassLabel::Sarcastic)),
            "regular" => Ok(Some(ClassLabel::NonSarcastic)),
            _ => Err(trimmed.to_string()),
        }
    }

    pub fn corpus_label(self) -> &'static str {
        match self {
            ClassLabel::Sarcastic => "ironic",
            ClassLabel::NonSarcastic => "regular",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One review.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub label: Option<ClassLabel>,
    /// Star rating in 1..=5.
    pub rating: Option<u8>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>, label: Option<ClassLabel>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
            label,
            rating: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    /// Tab-separated `label rating title body`.
    A,
    /// JSON object per line.
    B,
}

impl CorpusFormat {
    pub fn detect(content: &str) -> CorpusFormat {
        match content.trim_start().chars().next() {
            Some('{') => CorpusFormat::B,
            _ => CorpusFormat::A,
        }
    }
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(CorpusFormat::A),
            "b" => Ok(CorpusFormat::B),
            other => Err(format!("unknown corpus format {other:?} (expected a or b)")),
        }
    }
}

/// Reads a corpus file, failing on the first bad record.
///
/// Document ids are `<file stem>:<line>` unless a layout-B record carries its
/// own `id`.
pub fn load_corpus(path: &Path, format: Option<CorpusFormat>) -> Result<Vec<Document>, CorpusError> {
    read_records(path, format)?.into_iter().collect()
}

/// Reads a corpus file and returns one result per non-blank line, so callers
/// can skip bad records and keep going.
pub fn read_records(
    path: &Path,
    format: Option<CorpusFormat>,
) -> Result<Vec<Result<Document, CorpusError>>, CorpusError> {
    let content = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "doc".to_string());
    Ok(parse_records(&content, &stem, format))
}

/// Parses corpus text held in memory. `id_prefix` stands in for the file stem.
pub fn parse_corpus(
    content: &str,
    id_prefix: &str,
    format: Option<CorpusFormat>,
) -> Result<Vec<Document>, CorpusError> {
    parse_records(content, id_prefix, format).into_iter().collect()
}

fn parse_records(content: &str, id_prefix: &str, format: Option<CorpusFormat>) -> Vec<Result<Document, CorpusError>> {
    let format = format.unwrap_or_else(|| CorpusFormat::detect(content));
    content
        .lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(idx, line)| {
            let line_no = idx + 1;
            let line = line.strip_suffix('\r').unwrap_or(line);
            match format {
                CorpusFormat::A => parse_tsv_record(line, line_no, id_prefix),
                CorpusFormat::B => parse_json_record(line, line_no, id_prefix),
            }
        })
        .collect()
}

fn join_title_body(title: &str, body: &str) -> String {
    let title = title.trim();
    if title.is_empty() {
        body.to_string()
    } else {
        format!("{title}\n{body}")
    }
}

fn parse_rating(raw: &str, line: usize) -> Result<Option<u8>, CorpusError> {
    let raw = raw.trim();
    if raw.is_empty() || raw == "-" {
        return Ok(None);
    }
    match raw.parse::<u8>() {
        Ok(r) if (1..=5).contains(&r) => Ok(Some(r)),
        _ => Err(CorpusError::Malformed {
            line,
            message: format!("rating {raw:?} is not 1..5 or '-'"),
        }),
    }
}

fn parse_tsv_record(line: &str, line_no: usize, id_prefix: &str) -> Result<Document, CorpusError> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 4 {
        return Err(CorpusError::Malformed {
            line: line_no,
            message: format!("expected 4 tab-separated fields, found {}", fields.len()),
        });
    }
    let label = ClassLabel::parse_corpus_label(fields[0])
        .map_err(|label| CorpusError::UnknownLabel { line: line_no, label })?;
    let rating = parse_rating(fields[1], line_no)?;
    Ok(Document {
        id: format!("{id_prefix}:{line_no}"),
        text: join_title_body(fields[2], fields[3]),
        label,
        rating,
    })
}

#[derive(Deserialize)]
struct JsonRecord {
    id: Option<String>,
    label: Option<String>,
    rating: Option<serde_json::Value>,
    #[serde(default)]
    title: String,
    text: String,
}

fn parse_json_record(line: &str, line_no: usize, id_prefix: &str) -> Result<Document, CorpusError> {
    let record: JsonRecord = serde_json::from_str(line).map_err(|e| CorpusError::Malformed {
        line: line_no,
        message: e.to_string(),
    })?;
    let label = match record.label.as_deref() {
        None => None,
        Some(raw) => {
            ClassLabel::parse_corpus_label(raw).map_err(|label| CorpusError::UnknownLabel { line: line_no, label })?
        }
    };
    let rating = match record.rating {
        None | Some(serde_json::Value::Null) => None,
        Some(serde_json::Value::Number(n)) => parse_rating(&n.to_string(), line_no)?,
        Some(serde_json::Value::String(s)) => parse_rating(&s, line_no)?,
        Some(other) => {
            return Err(CorpusError::Malformed {
                line: line_no,
                message: format!("rating {other} is not 1..5 or '-'"),
            })
        }
    };
    Ok(Document {
        id: record.id.unwrap_or_else(|| format!("{id_prefix}:{line_no}")),
        text: join_title_body(&record.title, &record.text),
        label,
        rating,
    })
}

/// Normalized, tokenized review text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedDocument {
    pub id: String,
    /// Lowercased alphanumeric word tokens.
    pub tokens: Vec<String>,
    /// Pragmatic punctuation marks in order of appearance.
    pub punct_tokens: Vec<char>,
}

fn normalize_quote(c: char) -> char {
    match c {
        '\u{2018}' | '\u{2019}' | '\u{201B}' | '\u{2032}' => '\'',
        '\u{201C}' | '\u{201D}' | '\u{201E}' | '\u{201F}' | '\u{2033}' => '"',
        _ => c,
    }
}

/// Lowercases, drops special symbols and separates word tokens from the
/// pragmatic punctuation marks.
///
/// Any character that is neither alphanumeric, whitespace nor one of
/// [`PRAGMATIC_MARKS`] ends the current word and is dropped. An apostrophe
/// between two alphanumeric characters is recorded as a mark but does not split
/// the word, so `don't` becomes the word `dont` plus one `'`.
pub fn preprocess(doc: &Document) -> Result<TokenizedDocument, CorpusError> {
    let chars: Vec<char> = doc
        .text
        .chars()
        .map(normalize_quote)
        .collect::<String>()
        .to_lowercase()
        .chars()
        .collect();

    let mut tokens = Vec::new();
    let mut punct_tokens = Vec::new();
    let mut word = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            word.push(c);
            continue;
        }
        if PRAGMATIC_MARKS.contains(&c) {
            punct_tokens.push(c);
            let inner_apostrophe =
                c == '\'' && !word.is_empty() && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
            if inner_apostrophe {
                continue;
            }
        }
        if !word.is_empty() {
            tokens.push(std::mem::take(&mut word));
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }

    if tokens.is_empty() {
        return Err(CorpusError::EmptyAfterPreprocess { id: doc.id.clone() });
    }
    Ok(TokenizedDocument {
        id: doc.id.clone(),
        tokens,
        punct_tokens,
    })
}

/// Stratified random split into `(train, test)`.
///
/// Each class contributes `round(test_fraction * n_class)` documents to the
/// test side. Both sides keep the input order.
pub fn split(docs: &[Document], test_fraction: f64, seed: u64) -> Result<(Vec<Document>, Vec<Document>), CorpusError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(CorpusError::InvalidFraction(test_fraction));
    }
    let mut by_class: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (idx, doc) in docs.iter().enumerate() {
        match doc.label {
            Some(ClassLabel::Sarcastic) => by_class[0].push(idx),
            Some(ClassLabel::NonSarcastic) => by_class[1].push(idx),
            None => return Err(CorpusError::Unlabeled { id: doc.id.clone() }),
        }
    }
    for (members, class) in by_class.iter().zip(ClassLabel::ALL) {
        if members.is_empty() {
            return Err(CorpusError::MissingClass(class));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_idx = BTreeSet::new();
    for members in by_class.iter_mut() {
        let n_test = ((test_fraction * members.len() as f64).round() as usize).min(members.len());
        members.shuffle(&mut rng);
        test_idx.extend(members.iter().take(n_test).copied());
    }

    let mut train = Vec::with_capacity(docs.len() - test_idx.len());
    let mut test = Vec::with_capacity(test_idx.len());
    for (idx, doc) in docs.iter().enumerate() {
        if test_idx.contains(&idx) {
            test.push(doc.clone());
        } else {
            train.push(doc.clone());
        }
    }
    Ok((train, test))
}
