//! Precision, recall, F-measure and confusion matrices with the sarcastic
//! class as the positive class.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::ClassLabel;
use crate::polarity::PolarityResult;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("no gold label for document {0}")]
    MissingGold(String),
    #[error("confusion matrix is empty")]
    EmptyMatrix,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        ConfusionMatrix { tp, fp, fn_, tn }
    }

    pub fn record(&mut self, predicted: ClassLabel, gold: ClassLabel) {
        use ClassLabel::*;
        match (predicted, gold) {
            (Sarcastic, Sarcastic) => self.tp += 1,
            (Sarcastic, NonSarcastic) => self.fp += 1,
            (NonSarcastic, Sarcastic) => self.fn_ += 1,
            (NonSarcastic, NonSarcastic) => self.tn += 1,
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (ClassLabel, ClassLabel)>) -> Self {
        let mut m = ConfusionMatrix::default();
        for (predicted, gold) in pairs {
            m.record(predicted, gold);
        }
        m
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    /// The same matrix with the non-sarcastic class as positive.
    pub fn swapped(&self) -> Self {
        ConfusionMatrix::new(self.tn, self.fn_, self.fp, self.tp)
    }
}

/// Tallies decisions against gold labels.
pub fn confusion<'a>(
    results: impl IntoIterator<Item = &'a PolarityResult>,
    gold: &HashMap<String, ClassLabel>,
) -> Result<ConfusionMatrix, EvalError> {
    let mut m = ConfusionMatrix::default();
    for r in results {
        let label = gold.get(&r.doc).ok_or_else(|| EvalError::MissingGold(r.doc.clone()))?;
        m.record(r.decision, *label);
    }
    Ok(m)
}

/// Harmonic mean of precision and recall, 0 when both are 0.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    /// Nothing was predicted as this class.
    pub precision_undefined: bool,
    /// No gold documents of this class.
    pub recall_undefined: bool,
}

impl ClassMetrics {
    /// Metrics for the positive class of `m`.
    fn positive(m: &ConfusionMatrix) -> Self {
        let ratio = |num: u64, den: u64| {
            if den == 0 {
                (0.0, true)
            } else {
                (num as f64 / den as f64, false)
            }
        };
        let (precision, precision_undefined) = ratio(m.tp, m.tp + m.fp);
        let (recall, recall_undefined) = ratio(m.tp, m.tp + m.fn_);
        ClassMetrics {
            precision,
            recall,
            f_measure: f_measure(precision, recall),
            precision_undefined,
            recall_undefined,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerClass {
    pub sarcastic: ClassMetrics,
    pub non_sarcastic: ClassMetrics,
}

impl PerClass {
    pub fn get(&self, class: ClassLabel) -> &ClassMetrics {
        match class {
            ClassLabel::Sarcastic => &self.sarcastic,
            ClassLabel::NonSarcastic => &self.non_sarcastic,
        }
    }
}

/// Cell shares of the matrix in percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixPercentages {
    pub tp: f64,
    pub fp: f64,
    #[serde(rename = "fn")]
    pub fn_: f64,
    pub tn: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub matrix: ConfusionMatrix,
    pub matrix_pct: MatrixPercentages,
    pub per_class: PerClass,
    /// Sarcastic-class triple.
    pub headline: ClassMetrics,
}

pub fn metrics(m: &ConfusionMatrix) -> Result<MetricsReport, EvalError> {
    let total = m.total();
    if total == 0 {
        return Err(EvalError::EmptyMatrix);
    }
    let pct = |cell: u64| 100.0 * cell as f64 / total as f64;
    let sarcastic = ClassMetrics::positive(m);
    Ok(MetricsReport {
        matrix: *m,
        matrix_pct: MatrixPercentages {
            tp: pct(m.tp),
            fp: pct(m.fp),
            fn_: pct(m.fn_),
            tn: pct(m.tn),
        },
        per_class: PerClass {
            sarcastic,
            non_sarcastic: ClassMetrics::positive(&m.swapped()),
        },
        headline: sarcastic,
    })
}

pub const CSV_HEADER: &str =
    "run,tp,fp,fn,tn,precision,recall,f_measure,precision_non_sarcastic,recall_non_sarcastic,f_measure_non_sarcastic";

impl MetricsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn csv_row(&self, run: &str) -> String {
        let s = &self.per_class.sarcastic;
        let n = &self.per_class.non_sarcastic;
        format!(
            "{run},{},{},{},{},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}",
            self.matrix.tp,
            self.matrix.fp,
            self.matrix.fn_,
            self.matrix.tn,
            s.precision,
            s.recall,
            s.f_measure,
            n.precision,
            n.recall,
            n.f_measure
        )
    }

    /// Plain-text report: per-class table and the matrix in counts and percent.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let m = &self.matrix;
        let p = &self.matrix_pct;
        let _ = writeln!(
            out,
            "{:<14} {:>9} {:>9} {:>9}",
            "class", "precision", "recall", "f-measure"
        );
        for class in ClassLabel::ALL {
            let c = self.per_class.get(class);
            let flag = if c.precision_undefined || c.recall_undefined {
                " *"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "{:<14} {:>9.2} {:>9.2} {:>9.2}{flag}",
                class.as_str(),
                c.precision,
                c.recall,
                c.f_measure
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<20} {:>18} {:>18}",
            "actual \\ predicted", "Sarcastic", "NonSarcastic"
        );
        let _ = writeln!(
            out,
            "{:<20} {:>18} {:>18}",
            "Sarcastic",
            format!("{} ({:.2} %)", m.tp, p.tp),
            format!("{} ({:.2} %)", m.fn_, p.fn_)
        );
        let _ = writeln!(
            out,
            "{:<20} {:>18} {:>18}",
            "NonSarcastic",
            format!("{} ({:.2} %)", m.fp, p.fp),
            format!("{} ({:.2} %)", m.tn, p.tn)
        );
        if [self.per_class.sarcastic, self.per_class.non_sarcastic]
            .iter()
            .any(|c| c.precision_undefined || c.recall_undefined)
        {
            let _ = writeln!(out, "\n* zero denominator; reported as 0");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn result(doc: &str, decision: ClassLabel) -> PolarityResult {
        PolarityResult {
            doc: doc.into(),
            sarcastic_score: 0.0,
            non_sarcastic_score: 0.0,
            normalized: None,
            decision,
            evidence_edges: 0,
            no_evidence: true,
        }
    }

    #[test]
    fn perfect_predictions() {
        use ClassLabel::*;
        let results = [
            result("a", Sarcastic),
            result("b", Sarcastic),
            result("c", NonSarcastic),
            result("d", NonSarcastic),
        ];
        let gold: HashMap<_, _> = results.iter().map(|r| (r.doc.clone(), r.decision)).collect();
        assert_eq!(confusion(&results, &gold).unwrap(), ConfusionMatrix::new(2, 0, 0, 2));
    }

    #[test]
    fn all_missed() {
        let results: Vec<_> = ["a", "b", "c"]
            .iter()
            .map(|d| result(d, ClassLabel::NonSarcastic))
            .collect();
        let gold: HashMap<_, _> = results.iter().map(|r| (r.doc.clone(), ClassLabel::Sarcastic)).collect();
        assert_eq!(confusion(&results, &gold).unwrap().fn_, 3);
    }

    #[test]
    fn missing_gold_names_document() {
        let err = confusion([&result("x", ClassLabel::Sarcastic)], &HashMap::new()).unwrap_err();
        assert_eq!(err, EvalError::MissingGold("x".into()));
    }

    #[test]
    fn table_three_magnitudes() {
        let r = metrics(&ConfusionMatrix::new(79, 12, 21, 88)).unwrap();
        assert_eq!(r.headline.recall, 0.79);
        assert_eq!(r.headline.precision, 79.0 / 91.0);
        assert!((f_measure(0.87, 0.79) - 0.828072).abs() < 1e-6);
        assert_eq!(format!("{:.2}", f_measure(0.87, 0.79)), "0.83");
    }

    #[test]
    fn zero_denominators_are_flagged() {
        let r = metrics(&ConfusionMatrix::new(0, 0, 5, 5)).unwrap();
        assert_eq!(r.headline.precision, 0.0);
        assert!(r.headline.precision_undefined);
        assert!(!r.headline.recall_undefined);
        assert_eq!(r.headline.f_measure, 0.0);
        assert_eq!(metrics(&ConfusionMatrix::default()), Err(EvalError::EmptyMatrix));
    }

    #[test]
    fn report_formats() {
        let r = metrics(&ConfusionMatrix::new(3, 1, 1, 5)).unwrap();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["matrix", "matrix_pct", "per_class", "headline"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["matrix"]["fn"], 1);
        assert_eq!(r.csv_row("x"), "x,3,1,1,5,0.7500,0.7500,0.7500,0.8333,0.8333,0.8333");
        assert_eq!(CSV_HEADER.split(',').count(), r.csv_row("x").split(',').count());
        let table = r.render_table();
        assert!(table.contains("10.00 %"), "{table}");
        assert!(table.contains("Sarcastic"));
    }

    fn any_matrix() -> impl Strategy<Value = ConfusionMatrix> {
        (0u64..50, 0u64..50, 0u64..50, 0u64..50)
            .prop_filter("non-empty", |(a, b, c, d)| a + b + c + d > 0)
            .prop_map(|(a, b, c, d)| ConfusionMatrix::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn percentages_sum_to_100(m in any_matrix()) {
            let p = metrics(&m).unwrap().matrix_pct;
            prop_assert!((p.tp + p.fp + p.fn_ + p.tn - 100.0).abs() < 1e-9);
        }

        #[test]
        fn swapping_positive_class_swaps_metrics(m in any_matrix()) {
            let a = metrics(&m).unwrap();
            let b = metrics(&m.swapped()).unwrap();
            prop_assert_eq!(m.swapped().swapped(), m);
            prop_assert_eq!(a.per_class.sarcastic, b.per_class.non_sarcastic);
            prop_assert_eq!(a.per_class.non_sarcastic, b.per_class.sarcastic);
        }

        #[test]
        fn confusion_ignores_result_order(decisions in proptest::collection::vec((any::<bool>(), any::<bool>()), 1..40), seed in any::<u64>()) {
            let label = |b: bool| if b { ClassLabel::Sarcastic } else { ClassLabel::NonSarcastic };
            let results: Vec<_> = decisions.iter().enumerate().map(|(i, (p, _))| result(&i.to_string(), label(*p))).collect();
            let gold: HashMap<_, _> = decisions.iter().enumerate().map(|(i, (_, g))| (i.to_string(), label(*g))).collect();
            let mut shuffled = results.clone();
            use rand::{seq::SliceRandom, SeedableRng};
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(
                metrics(&confusion(&results, &gold).unwrap()).unwrap(),
                metrics(&confusion(&shuffled, &gold).unwrap()).unwrap()
            );
        }
    }
}
