//! Versioned JSON persistence for trained classifiers.
//!
//! Layout (version 1):
//!
//! ```json
//! {
//!   "format": "polarity-model",
//!   "version": 1,
//!   "kind": "nb",
//!   "nb": {
//!     "vocabulary": ["bad", "good"],
//!     "log_prior": [-0.69, -0.69],
//!     "log_likelihood": [[...], [...]],
//!     "class_token_totals": [10, 12]
//!   }
//! }
//! ```
//!
//! A word-score model uses `"kind": "knn"` and a `"knn"` object holding
//! `words`, `scores`, `fallback_enabled`, `similarity_threshold`,
//! `ngram_size` and `tie_break_class`. Class-indexed arrays are ordered
//! `[pos, neg]`. Floats are written in shortest round-trip form, so a
//! reloaded model predicts bit-identically.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::corpus::{Polarity, TokenizedDocument};
use crate::error::{Error, Result};
use crate::knn::{KnnOptions, WordScoreClassifier};
use crate::nb::NBModel;

pub const FORMAT_NAME: &str = "polarity-model";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum SavedModel {
    NaiveBayes(NBModel),
    WordScore(WordScoreClassifier),
}

/// Label and a single real-valued score, whichever model produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub label: Polarity,
    /// Log-odds for Naive Bayes, review score for the word-score model.
    pub score: f64,
}

impl SavedModel {
    pub fn kind(&self) -> &'static str {
        match self {
            SavedModel::NaiveBayes(_) => "nb",
            SavedModel::WordScore(_) => "knn",
        }
    }

    pub fn decide(&self, doc: &TokenizedDocument) -> Decision {
        match self {
            SavedModel::NaiveBayes(m) => {
                let p = m.classify(doc);
                Decision {
                    label: p.label,
                    score: p.log_odds(),
                }
            }
            SavedModel::WordScore(c) => {
                let p = c.classify(doc);
                Decision {
                    label: p.label,
                    score: p.review_score,
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NbBody {
    vocabulary: Vec<String>,
    log_prior: [f64; 2],
    log_likelihood: [Vec<f64>; 2],
    class_token_totals: [u64; 2],
}

#[derive(Serialize, Deserialize)]
struct KnnBody {
    words: Vec<String>,
    scores: Vec<f64>,
    fallback_enabled: bool,
    similarity_threshold: f64,
    ngram_size: usize,
    tie_break_class: Polarity,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format: String,
    version: u32,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    nb: Option<NbBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    knn: Option<KnnBody>,
}

pub fn to_json(model: &SavedModel) -> String {
    let mut env = Envelope {
        format: FORMAT_NAME.into(),
        version: FORMAT_VERSION,
        kind: model.kind().into(),
        nb: None,
        knn: None,
    };
    match model {
        SavedModel::NaiveBayes(m) => {
            env.nb = Some(NbBody {
                vocabulary: m.vocabulary().to_vec(),
                log_prior: m.log_priors(),
                log_likelihood: [
                    m.log_likelihoods(Polarity::Pos).to_vec(),
                    m.log_likelihoods(Polarity::Neg).to_vec(),
                ],
                class_token_totals: m.class_token_totals(),
            })
        }
        SavedModel::WordScore(c) => {
            let (words, scores) = c.entries().map(|(w, s)| (w.to_string(), s)).unzip();
            let opts = c.options();
            env.knn = Some(KnnBody {
                words,
                scores,
                fallback_enabled: opts.fallback_enabled,
                similarity_threshold: opts.similarity_threshold,
                ngram_size: opts.ngram_size,
                tie_break_class: c.tie_break_class(),
            })
        }
    }
    let mut s = serde_json::to_string(&env).expect("model serializes");
    s.push('\n');
    s
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(format!("model: {}", msg.into()))
}

pub fn from_json(text: &str) -> Result<SavedModel> {
    let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    if value.get("format").and_then(Value::as_str) != Some(FORMAT_NAME) {
        return Err(bad(format!("not a {FORMAT_NAME} file")));
    }
    let version = value
        .get("version")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing version"))?;
    if version > FORMAT_VERSION as u64 {
        return Err(Error::ModelVersion {
            found: version.min(u32::MAX as u64) as u32,
            supported: FORMAT_VERSION,
        });
    }
    if version == 0 {
        return Err(bad("version 0 is not valid"));
    }
    let env: Envelope = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
    match (env.kind.as_str(), env.nb, env.knn) {
        ("nb", Some(b), _) => Ok(SavedModel::NaiveBayes(NBModel::from_parts(
            b.vocabulary,
            b.log_prior,
            b.log_likelihood,
            b.class_token_totals,
        )?)),
        ("knn", _, Some(b)) => {
            if b.words.len() != b.scores.len() {
                return Err(bad("words and scores differ in length"));
            }
            let options = KnnOptions {
                fallback_enabled: b.fallback_enabled,
                similarity_threshold: b.similarity_threshold,
                ngram_size: b.ngram_size,
            };
            let entries = b.words.into_iter().zip(b.scores).collect();
            Ok(SavedModel::WordScore(WordScoreClassifier::from_entries(
                entries,
                options,
                b.tie_break_class,
            )?))
        }
        (kind, _, _) => Err(bad(format!("unknown or incomplete model kind '{kind}'"))),
    }
}

pub fn save(model: &SavedModel, path: &Path) -> Result<()> {
    fs::write(path, to_json(model)).map_err(|e| Error::io(path, e))
}

pub fn load(path: &Path) -> Result<SavedModel> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json(&text)
}
