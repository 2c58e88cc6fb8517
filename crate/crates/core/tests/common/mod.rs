//! Fixtures and a brute-force reference implementation used by the
//! integration tests. The oracle works on raw word/tag/mark sequences and never
//! calls the library's extraction, counting, graph or scoring code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semigraph_core::corpus::preprocess;
use semigraph_core::{ClassLabel, Document, PosTag, TaggedDocument, TaggerModel};

/// Kind index 0..7 plus items, so patterns of different kinds never compare
/// equal.
pub type OraclePattern = (usize, Vec<String>);

pub const KIND_CODES: [&str; 7] = ["F1", "F2", "F3", "F4", "F5", "F6", "F7"];

pub struct Fixture {
    pub name: &'static str,
    pub train: Vec<(TaggedDocument, ClassLabel)>,
    pub tests: Vec<TaggedDocument>,
}

fn tagged(id: &str, text: &str) -> TaggedDocument {
    let tagger = TaggerModel::builtin();
    tagger.tag(&preprocess(&Document::new(id, text, None)).expect("fixture text has words"))
}

fn fixture(name: &'static str, train: &[(&str, &str, ClassLabel)], tests: &[(&str, &str)]) -> Fixture {
    for (_, text, _) in train {
        assert!(text.split_whitespace().count() <= 20);
    }
    Fixture {
        name,
        train: train.iter().map(|(id, text, l)| (tagged(id, text), *l)).collect(),
        tests: tests.iter().map(|(id, text)| tagged(id, text)).collect(),
    }
}

/// Three toy corpora of at most ten documents with at most twenty tokens each.
pub fn fixtures() -> Vec<Fixture> {
    use ClassLabel::*;
    vec![
        fixture(
            "reviews",
            &[
                ("s1", "Oh great, another charger that breaks after one day!", Sarcastic),
                ("s2", "Wow. Really brilliant design, it melted in an hour!", Sarcastic),
                ("s3", "Yeah, totally worth the money... not!", Sarcastic),
                ("n1", "The charger works well and the cable is long.", NonSarcastic),
                ("n2", "Good quality cable, arrived quickly.", NonSarcastic),
                ("n3", "I love this book, the story is really good.", NonSarcastic),
            ],
            &[
                ("t1", "Oh wow, a really brilliant charger!"),
                ("t2", "The cable works well."),
                ("t3", "Qwerty zxcvb plonk"),
            ],
        ),
        fixture(
            "repetition",
            &[
                ("a1", "so good so good so good!!", Sarcastic),
                ("a2", "very happy very happy?", Sarcastic),
                ("b1", "good cable good cable good cable.", NonSarcastic),
                ("b2", "so good cable", NonSarcastic),
                ("b3", "happy cable \"happy\" day", NonSarcastic),
            ],
            &[
                ("q1", "so good cable!"),
                ("q2", "very happy day?"),
                ("q3", "good good good good"),
            ],
        ),
        fixture(
            "hyperbole",
            &[
                ("h1", "Oh wow! Wow! Absolutely amazing, truly perfect!!!", Sarcastic),
                ("h2", "Ugh, yeah, so useful. Thanks a lot?", Sarcastic),
                ("h3", "Hmm, oh well, it is extremely cheap.", Sarcastic),
                ("h4", "Oops, 'perfect' gift, very sturdy...", Sarcastic),
                ("r1", "Fits the phone and the case well.", NonSarcastic),
                ("r2", "Solid product, works as described.", NonSarcastic),
                ("r3", "My son loves it, very durable toy.", NonSarcastic),
                ("r4", "Battery lasts two days, quite good.", NonSarcastic),
            ],
            &[
                ("x1", "Wow, truly amazing, so perfect!!!"),
                ("x2", "The toy is very durable and works well."),
                ("x3", "Oh, thanks!"),
                ("x4", "Fits my phone, quite good?"),
            ],
        ),
    ]
}

const SYNTHETIC_WORDS: [&str; 36] = [
    "oh", "wow", "yeah", "ugh", "very", "really", "so", "totally", "great", "good", "bad", "perfect", "amazing",
    "useless", "cheap", "the", "a", "this", "it", "is", "was", "and", "but", "cable", "phone", "battery", "book",
    "works", "broke", "love", "hate", "fits", "day", "zorp", "quickly", "thanks",
];

/// Deterministic random corpus of `n` labeled documents.
pub fn synthetic_corpus(n: usize, seed: u64) -> Vec<(TaggedDocument, ClassLabel)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let marks = ['!', '?', '.', '"', '\''];
    (0..n)
        .map(|i| {
            let len = rng.gen_range(1..=15);
            let mut text = String::new();
            for _ in 0..len {
                text.push_str(SYNTHETIC_WORDS[rng.gen_range(0..SYNTHETIC_WORDS.len())]);
                if rng.gen_bool(0.2) {
                    text.push(marks[rng.gen_range(0..marks.len())]);
                }
                text.push(' ');
            }
            let label = if rng.gen_bool(0.4) {
                ClassLabel::Sarcastic
            } else {
                ClassLabel::NonSarcastic
            };
            (tagged(&format!("syn{i:04}"), &text), label)
        })
        .collect()
}

fn ngrams(items: &[String], n: usize, kind: usize) -> Vec<OraclePattern> {
    if items.len() < n {
        return Vec::new();
    }
    (0..=items.len() - n)
        .map(|i| (kind, items[i..i + n].to_vec()))
        .collect()
}

/// All pattern instances of a document, with multiplicity, for each kind.
pub fn occurrences(doc: &TaggedDocument) -> [Vec<OraclePattern>; 7] {
    let words: Vec<String> = doc.tagged.iter().map(|(w, _)| w.clone()).collect();
    let tags: Vec<String> = doc.tagged.iter().map(|(_, t)| t.to_string()).collect();
    let mut intensifiers = Vec::new();
    for i in 1..doc.tagged.len() {
        if doc.tagged[i - 1].1 == PosTag::Adv && doc.tagged[i].1 == PosTag::Adj {
            intensifiers.push((4, vec![doc.tagged[i - 1].0.clone(), doc.tagged[i].0.clone()]));
        }
    }
    let interjections = doc
        .tagged
        .iter()
        .filter(|(_, t)| t.to_string() == "INTJ")
        .map(|(w, _)| (5, vec![w.clone()]))
        .collect();
    let marks = doc.punct_tokens.iter().map(|c| (6, vec![c.to_string()])).collect();
    [
        ngrams(&words, 2, 0),
        ngrams(&words, 3, 1),
        ngrams(&tags, 2, 2),
        ngrams(&tags, 3, 3),
        intensifiers,
        interjections,
        marks,
    ]
}

pub fn distinct(doc: &TaggedDocument) -> [BTreeSet<OraclePattern>; 7] {
    occurrences(doc).map(|v| v.into_iter().collect())
}

/// `(doc id, kind index, class) -> weight` for every training document and
/// both classes, computed by direct enumeration. `total_scale` multiplies every
/// corpus total.
pub fn oracle_class_weights(
    train: &[(TaggedDocument, ClassLabel)],
    total_scale: u64,
) -> BTreeMap<(String, usize, ClassLabel), f64> {
    let mut totals = [0u64; 7];
    for (doc, _) in train {
        for (k, occ) in occurrences(doc).iter().enumerate() {
            totals[k] += occ.len() as u64;
        }
    }
    let mut out = BTreeMap::new();
    for (doc, _) in train {
        for (k, set) in distinct(doc).iter().enumerate() {
            for class in ClassLabel::ALL {
                let mut weight = 0.0;
                for p in set {
                    let a: u64 = train
                        .iter()
                        .filter(|(_, l)| *l == class)
                        .map(|(d, _)| occurrences(d)[k].iter().filter(|q| *q == p).count() as u64)
                        .sum();
                    if totals[k] > 0 {
                        weight += a as f64 / (totals[k] * total_scale) as f64;
                    }
                }
                out.insert((doc.id.clone(), k, class), weight);
            }
        }
    }
    out
}

/// Own-class weight of every training vertex, keyed by `(doc id, kind index)`.
pub fn oracle_weights(train: &[(TaggedDocument, ClassLabel)], total_scale: u64) -> BTreeMap<(String, usize), f64> {
    let all = oracle_class_weights(train, total_scale);
    let all = &all;
    train
        .iter()
        .flat_map(|(d, l)| (0..7).map(move |k| ((d.id.clone(), k), all[&(d.id.clone(), k, *l)])))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleEdge {
    pub test: (String, usize),
    pub train: (String, usize),
    pub matched: usize,
    pub weight: f64,
}

/// Joins every test vertex with every training vertex of any kind whose
/// pattern sets intersect.
pub fn oracle_edges(
    train: &[(TaggedDocument, ClassLabel)],
    tests: &[TaggedDocument],
    weights: &BTreeMap<(String, usize), f64>,
) -> Vec<OracleEdge> {
    let mut edges = Vec::new();
    for t in tests {
        let t_sets = distinct(t);
        for (ti, t_set) in t_sets.iter().enumerate() {
            for (d, _) in train {
                let d_sets = distinct(d);
                for (di, d_set) in d_sets.iter().enumerate() {
                    let m = t_set.intersection(d_set).count();
                    if m > 0 {
                        edges.push(OracleEdge {
                            test: (t.id.clone(), ti),
                            train: (d.id.clone(), di),
                            matched: m,
                            weight: weights[&(d.id.clone(), di)] * m as f64,
                        });
                    }
                }
            }
        }
    }
    edges
}

/// `(sarcastic, non-sarcastic)` score of a test document from an edge list.
pub fn oracle_scores(doc: &str, edges: &[OracleEdge], train: &[(TaggedDocument, ClassLabel)]) -> (f64, f64) {
    let label_of: BTreeMap<&str, ClassLabel> = train.iter().map(|(d, l)| (d.id.as_str(), *l)).collect();
    let mut scores = [0.0, 0.0];
    for (ci, class) in ClassLabel::ALL.iter().enumerate() {
        for k in 0..7 {
            let incident: Vec<&OracleEdge> = edges
                .iter()
                .filter(|e| e.test == (doc.to_string(), k) && label_of[e.train.0.as_str()] == *class)
                .collect();
            let sum: f64 = incident.iter().map(|e| e.weight).sum();
            scores[ci] += incident.len() as f64 * sum;
        }
    }
    (scores[0], scores[1])
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}
