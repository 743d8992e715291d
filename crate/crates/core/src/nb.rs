//! Multinomial Naive Bayes over a fixed vocabulary with add-one smoothing.
//!
//! All arithmetic is in natural-log space. The per-class likelihood
//! denominator only counts in-vocabulary tokens, so each class's smoothed
//! distribution sums to one over the vocabulary.

use std::collections::HashMap;

use crate::corpus::{Polarity, TokenizedDocument};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NBModel {
    /// Sorted, deduplicated.
    vocabulary: Vec<String>,
    index: HashMap<String, usize>,
    log_prior: [f64; 2],
    /// `log_likelihood[class][word index]`.
    log_likelihood: [Vec<f64>; 2],
    class_token_totals: [u64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbPrediction {
    pub label: Polarity,
    /// Unnormalized log posterior per class, indexed by [`Polarity::index`].
    pub scores: [f64; 2],
}

impl NbPrediction {
    pub fn score(&self, class: Polarity) -> f64 {
        self.scores[class.index()]
    }

    /// `score[pos] - score[neg]`.
    pub fn log_odds(&self) -> f64 {
        self.scores[0] - self.scores[1]
    }

    /// Posterior probabilities after renormalizing the exponentiated scores.
    pub fn posterior(&self) -> [f64; 2] {
        let m = self.scores[0].max(self.scores[1]);
        let e = [(self.scores[0] - m).exp(), (self.scores[1] - m).exp()];
        let z = e[0] + e[1];
        [e[0] / z, e[1] / z]
    }
}

/// Per-token evidence for `--explain` style output.
#[derive(Debug, Clone, PartialEq)]
pub struct NbTokenEvidence {
    pub token: String,
    pub in_vocabulary: bool,
    /// `log P(token|pos) - log P(token|neg)`, 0 when out of vocabulary.
    pub log_ratio: f64,
}

fn dedup_sorted(vocabulary: &[String]) -> Vec<String> {
    let mut v = vocabulary.to_vec();
    v.sort();
    v.dedup();
    v
}

fn build_index(vocabulary: &[String]) -> HashMap<String, usize> {
    vocabulary.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()
}

/// Trains on `train`, ignoring every token outside `vocabulary`.
pub fn train_nb(train: &[TokenizedDocument], vocabulary: &[String]) -> Result<NBModel> {
    if vocabulary.is_empty() {
        return Err(Error::Config("vocabulary is empty".into()));
    }
    if train.is_empty() {
        return Err(Error::Training("no training documents".into()));
    }
    let vocabulary = dedup_sorted(vocabulary);
    let index = build_index(&vocabulary);

    let mut doc_counts = [0u64; 2];
    let mut word_counts = [vec![0u64; vocabulary.len()], vec![0u64; vocabulary.len()]];
    let mut class_token_totals = [0u64; 2];
    for doc in train {
        let c = doc.label.index();
        doc_counts[c] += 1;
        for token in &doc.tokens {
            if let Some(&i) = index.get(token) {
                word_counts[c][i] += 1;
                class_token_totals[c] += 1;
            }
        }
    }
    for class in Polarity::ALL {
        if doc_counts[class.index()] == 0 {
            return Err(Error::Training(format!("no training documents for class {class}")));
        }
    }

    let total_docs = (doc_counts[0] + doc_counts[1]) as f64;
    let log_prior = [
        (doc_counts[0] as f64 / total_docs).ln(),
        (doc_counts[1] as f64 / total_docs).ln(),
    ];
    let v = vocabulary.len() as f64;
    let log_likelihood = [0, 1].map(|c| {
        let denom = (class_token_totals[c] as f64 + v).ln();
        word_counts[c]
            .iter()
            .map(|&n| ((n + 1) as f64).ln() - denom)
            .collect::<Vec<_>>()
    });

    Ok(NBModel {
        vocabulary,
        index,
        log_prior,
        log_likelihood,
        class_token_totals,
    })
}

impl NBModel {
    /// Reassembles a model from its parts, checking shapes.
    pub fn from_parts(
        vocabulary: Vec<String>,
        log_prior: [f64; 2],
        log_likelihood: [Vec<f64>; 2],
        class_token_totals: [u64; 2],
    ) -> Result<NBModel> {
        if vocabulary.is_empty() {
            return Err(Error::Config("vocabulary is empty".into()));
        }
        if vocabulary.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("vocabulary must be sorted and unique".into()));
        }
        if log_likelihood.iter().any(|l| l.len() != vocabulary.len()) {
            return Err(Error::Format("likelihood table does not match vocabulary size".into()));
        }
        let index = build_index(&vocabulary);
        Ok(NBModel {
            vocabulary,
            index,
            log_prior,
            log_likelihood,
            class_token_totals,
        })
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn log_prior(&self, class: Polarity) -> f64 {
        self.log_prior[class.index()]
    }

    pub fn log_priors(&self) -> [f64; 2] {
        self.log_prior
    }

    pub fn log_likelihood(&self, class: Polarity, word: &str) -> Option<f64> {
        self.index.get(word).map(|&i| self.log_likelihood[class.index()][i])
    }

    pub fn log_likelihoods(&self, class: Polarity) -> &[f64] {
        &self.log_likelihood[class.index()]
    }

    pub fn class_token_total(&self, class: Polarity) -> u64 {
        self.class_token_totals[class.index()]
    }

    pub fn class_token_totals(&self) -> [u64; 2] {
        self.class_token_totals
    }

    /// Log posterior scores and the argmax class (exact ties go to pos).
    ///
    /// In-vocabulary tokens are summed in vocabulary order, so any
    /// permutation of the tokens gives bit-identical scores.
    pub fn classify(&self, doc: &TokenizedDocument) -> NbPrediction {
        self.classify_tokens(&doc.tokens)
    }

    pub fn classify_text(&self, text: &str) -> NbPrediction {
        self.classify(&TokenizedDocument::from_text(text))
    }

    pub fn classify_tokens(&self, tokens: &[String]) -> NbPrediction {
        let mut hits: Vec<usize> = tokens.iter().filter_map(|t| self.index.get(t).copied()).collect();
        hits.sort_unstable();
        let mut scores = self.log_prior;
        for (c, score) in scores.iter_mut().enumerate() {
            for &i in &hits {
                *score += self.log_likelihood[c][i];
            }
        }
        let label = if scores[0] >= scores[1] { Polarity::Pos } else { Polarity::Neg };
        NbPrediction { label, scores }
    }

    pub fn explain(&self, doc: &TokenizedDocument) -> Vec<NbTokenEvidence> {
        doc.tokens
            .iter()
            .map(|t| match self.index.get(t) {
                Some(&i) => NbTokenEvidence {
                    token: t.clone(),
                    in_vocabulary: true,
                    log_ratio: self.log_likelihood[0][i] - self.log_likelihood[1][i],
                },
                None => NbTokenEvidence {
                    token: t.clone(),
                    in_vocabulary: false,
                    log_ratio: 0.0,
                },
            })
            .collect()
    }
}
