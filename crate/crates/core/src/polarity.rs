//! Per-class polarity scores of test documents.
//!
//! For class `c`, each test vertex contributes its class-restricted degree
//! times the summed weight of its class-restricted graphical edges; the
//! document score is the sum over its vertices. The larger score wins and
//! ties go to [`ClassLabel::NonSarcastic`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::ClassLabel;
use crate::semigraph::{GraphError, KnowledgeSemigraph, Role};

#[derive(Debug, Error)]
#[error("scoring failed for {} document(s): {}", .0.len(), summary(.0))]
pub struct BatchError(pub Vec<(String, GraphError)>);

fn summary(errors: &[(String, GraphError)]) -> String {
    errors
        .iter()
        .map(|(doc, e)| format!("{doc}: {e}"))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarityResult {
    pub doc: String,
    pub sarcastic_score: f64,
    pub non_sarcastic_score: f64,
    /// `s / (s + n)`, absent when both scores are zero.
    pub normalized: Option<f64>,
    pub decision: ClassLabel,
    pub evidence_edges: usize,
    /// No graphical edge reached the document, or it had no usable text.
    pub no_evidence: bool,
}

impl PolarityResult {
    fn from_scores(doc: &str, sarcastic: f64, non_sarcastic: f64, evidence_edges: usize) -> Self {
        let sum = sarcastic + non_sarcastic;
        PolarityResult {
            doc: doc.to_string(),
            sarcastic_score: sarcastic,
            non_sarcastic_score: non_sarcastic,
            normalized: (sum > 0.0).then(|| sarcastic / sum),
            decision: decide(sarcastic, non_sarcastic),
            evidence_edges,
            no_evidence: sum == 0.0,
        }
    }

    /// Result for a document that could not be turned into vertices.
    pub fn no_evidence(doc: &str) -> Self {
        PolarityResult::from_scores(doc, 0.0, 0.0, 0)
    }

    /// `doc<TAB>s<TAB>n<TAB>normalized<TAB>decision<TAB>evidence`, six
    /// significant digits, `NA` for an undefined normalized polarity.
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.doc,
            format_significant(self.sarcastic_score, 6),
            format_significant(self.non_sarcastic_score, 6),
            self.normalized
                .map_or_else(|| "NA".to_string(), |v| format_significant(v, 6)),
            self.decision,
            self.evidence_edges
        )
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

/// Strict comparison; ties are non-sarcastic.
pub fn decide(sarcastic: f64, non_sarcastic: f64) -> ClassLabel {
    if sarcastic > non_sarcastic {
        ClassLabel::Sarcastic
    } else {
        ClassLabel::NonSarcastic
    }
}

fn test_document(g: &KnowledgeSemigraph, doc: &str) -> Result<(), GraphError> {
    match g.document_role(doc) {
        None => Err(GraphError::UnknownDocument(doc.to_string())),
        Some(Role::Test) => Ok(()),
        Some(_) => Err(GraphError::NotATestDocument(doc.to_string())),
    }
}

fn score_unchecked(g: &KnowledgeSemigraph, doc: &str, class: ClassLabel) -> f64 {
    let role = Role::train(class);
    g.document_vertices(doc)
        .map(|v| {
            let (degree, weight_sum) = g
                .incident_edges(&v.id)
                .filter(|e| g.document_role(&e.train.doc) == Some(role))
                .fold((0usize, 0.0f64), |(d, s), e| (d + 1, s + e.weight));
            degree as f64 * weight_sum
        })
        .sum()
}

/// Polarity score of test document `doc` towards `class`.
pub fn class_score(g: &KnowledgeSemigraph, doc: &str, class: ClassLabel) -> Result<f64, GraphError> {
    test_document(g, doc)?;
    Ok(score_unchecked(g, doc, class))
}

pub fn score_document(g: &KnowledgeSemigraph, doc: &str) -> Result<PolarityResult, GraphError> {
    test_document(g, doc)?;
    let sarcastic = score_unchecked(g, doc, ClassLabel::Sarcastic);
    let non_sarcastic = score_unchecked(g, doc, ClassLabel::NonSarcastic);
    let evidence = g.document_vertices(doc).map(|v| g.incident_edges(&v.id).count()).sum();
    Ok(PolarityResult::from_scores(doc, sarcastic, non_sarcastic, evidence))
}

/// Scores many documents in parallel, keeping input order.
pub fn score_corpus<S: AsRef<str> + Sync>(
    g: &KnowledgeSemigraph,
    docs: &[S],
) -> Result<Vec<PolarityResult>, BatchError> {
    let results: Vec<_> = docs.par_iter().map(|d| score_document(g, d.as_ref())).collect();
    let mut ok = Vec::with_capacity(results.len());
    let mut failed = Vec::new();
    for (doc, r) in docs.iter().zip(results) {
        match r {
            Ok(r) => ok.push(r),
            Err(e) => failed.push((doc.as_ref().to_string(), e)),
        }
    }
    if failed.is_empty() {
        Ok(ok)
    } else {
        Err(BatchError(failed))
    }
}

/// `printf("%.*g")`-style formatting.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, value))
    }
}
