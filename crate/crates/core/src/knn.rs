//! Word-score classifier with nearest-word fallback.
//!
//! A review's score is the sum of the signed chi-squared scores of its
//! words. A word missing from the vocabulary borrows the score of the most
//! similar vocabulary word (character n-gram Jaccard similarity), provided
//! the similarity reaches the configured threshold. The "nearest neighbour"
//! here is a single nearest word, not a document-level vote.

use std::collections::{HashMap, HashSet};

use crate::corpus::{Polarity, TokenizedDocument};
use crate::error::{Error, Result};
use crate::featsel::WordScoreTable;

pub const DEFAULT_NGRAM_SIZE: usize = 2;
pub const DEFAULT_SIMILARITY_THRESHOLD: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnnOptions {
    pub fallback_enabled: bool,
    pub similarity_threshold: f64,
    pub ngram_size: usize,
}

impl Default for KnnOptions {
    fn default() -> Self {
        KnnOptions {
            fallback_enabled: true,
            similarity_threshold: DEFAULT_SIMILARITY_THRESHOLD,
            ngram_size: DEFAULT_NGRAM_SIZE,
        }
    }
}

impl KnnOptions {
    fn validate(&self) -> Result<()> {
        if self.ngram_size == 0 {
            return Err(Error::Config("ngram size must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.similarity_threshold) {
            return Err(Error::Config(format!(
                "similarity threshold {} outside [0, 1]",
                self.similarity_threshold
            )));
        }
        Ok(())
    }
}

/// Set of character n-grams of `word`; words shorter than `n` contribute
/// their single characters instead.
pub fn char_ngrams(word: &str, n: usize) -> HashSet<String> {
    let chars: Vec<char> = word.chars().collect();
    if chars.len() < n {
        chars.iter().map(|c| c.to_string()).collect()
    } else {
        chars.windows(n).map(|w| w.iter().collect()).collect()
    }
}

/// Jaccard index of the character n-gram sets of two words.
pub fn jaccard_similarity(word_a: &str, word_b: &str, ngram_size: usize) -> Result<f64> {
    if word_a.is_empty() || word_b.is_empty() {
        return Err(Error::Argument("jaccard_similarity of an empty word".into()));
    }
    if ngram_size == 0 {
        return Err(Error::Argument("ngram size must be positive".into()));
    }
    let a = char_ngrams(word_a, ngram_size);
    let b = char_ngrams(word_b, ngram_size);
    let inter = a.intersection(&b).count();
    let union = a.len() + b.len() - inter;
    Ok(inter as f64 / union as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TokenContribution {
    pub token: String,
    /// Vocabulary word whose score was used, if any.
    pub matched: Option<String>,
    /// 1.0 for exact hits, otherwise the best similarity found.
    pub similarity: f64,
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordScorePrediction {
    pub label: Polarity,
    pub review_score: f64,
    pub diagnostics: Vec<TokenContribution>,
}

#[derive(Debug, Clone)]
pub struct WordScoreClassifier {
    /// Sorted vocabulary and the matching signed scores.
    words: Vec<String>,
    scores: Vec<f64>,
    lookup: HashMap<String, usize>,
    options: KnnOptions,
    tie_break_class: Polarity,
    /// n-gram -> indices of vocabulary words containing it (ascending).
    gram_index: HashMap<String, Vec<u32>>,
    gram_counts: Vec<u32>,
}

impl PartialEq for WordScoreClassifier {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
            && self.scores == other.scores
            && self.options == other.options
            && self.tie_break_class == other.tie_break_class
    }
}

impl WordScoreClassifier {
    /// Keeps the words of `vocabulary` that appear in `table`. The tie-break
    /// class is the one with more training documents (pos on equality).
    pub fn new(table: &WordScoreTable, vocabulary: &[String], options: KnnOptions) -> Result<Self> {
        let mut entries: Vec<(String, f64)> = vocabulary
            .iter()
            .filter_map(|w| table.get(w).map(|s| (w.clone(), s.signed_score)))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        entries.dedup_by(|a, b| a.0 == b.0);
        let tie_break = if table.pos_doc_prior_count >= table.neg_doc_prior_count {
            Polarity::Pos
        } else {
            Polarity::Neg
        };
        Self::from_entries(entries, options, tie_break)
    }

    /// Builds from `(word, signed score)` pairs, which must be sorted and
    /// unique by word.
    pub fn from_entries(entries: Vec<(String, f64)>, options: KnnOptions, tie_break_class: Polarity) -> Result<Self> {
        options.validate()?;
        if entries.is_empty() {
            return Err(Error::Config("word-score vocabulary is empty".into()));
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Format("word-score entries must be sorted and unique".into()));
        }
        if entries.iter().any(|(w, _)| w.is_empty()) {
            return Err(Error::Format("empty word in word-score entries".into()));
        }
        let (words, scores): (Vec<String>, Vec<f64>) = entries.into_iter().unzip();
        let lookup = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

        let mut gram_index: HashMap<String, Vec<u32>> = HashMap::new();
        let mut gram_counts = Vec::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            let grams = char_ngrams(w, options.ngram_size);
            gram_counts.push(grams.len() as u32);
            for g in grams {
                gram_index.entry(g).or_default().push(i as u32);
            }
        }

        Ok(WordScoreClassifier {
            words,
            scores,
            lookup,
            options,
            tie_break_class,
            gram_index,
            gram_counts,
        })
    }

    pub fn options(&self) -> KnnOptions {
        self.options
    }

    pub fn tie_break_class(&self) -> Polarity {
        self.tie_break_class
    }

    /// `(word, signed score)` pairs in word order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, f64)> {
        self.words.iter().map(String::as_str).zip(self.scores.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn score_of(&self, word: &str) -> Option<f64> {
        self.lookup.get(word).map(|&i| self.scores[i])
    }

    /// Most similar vocabulary word to `token` and its similarity. Equal
    /// similarities resolve to the lexicographically smallest word.
    pub fn nearest(&self, token: &str) -> Option<(&str, f64)> {
        self.nearest_index(token).map(|(i, s)| (self.words[i].as_str(), s))
    }

    fn nearest_index(&self, token: &str) -> Option<(usize, f64)> {
        if token.is_empty() || self.words.is_empty() {
            return None;
        }
        let grams = char_ngrams(token, self.options.ngram_size);
        let mut shared: HashMap<u32, u32> = HashMap::new();
        for g in &grams {
            if let Some(ids) = self.gram_index.get(g) {
                for &i in ids {
                    *shared.entry(i).or_insert(0) += 1;
                }
            }
        }
        let q = grams.len() as u32;
        let mut best: Option<(usize, f64)> = None;
        for (&i, &inter) in &shared {
            let sim = inter as f64 / (q + self.gram_counts[i as usize] - inter) as f64;
            let i = i as usize;
            best = match best {
                Some((bi, bs)) if bs > sim || (bs == sim && bi < i) => Some((bi, bs)),
                _ => Some((i, sim)),
            };
        }
        // With no shared n-gram every word scores 0; the smallest word wins.
        Some(best.unwrap_or((0, 0.0)))
    }

    fn contribution(&self, token: &str) -> (TokenContribution, Option<usize>) {
        if let Some(&i) = self.lookup.get(token) {
            return (
                TokenContribution {
                    token: token.to_string(),
                    matched: Some(self.words[i].clone()),
                    similarity: 1.0,
                    contribution: self.scores[i],
                },
                Some(i),
            );
        }
        if self.options.fallback_enabled {
            if let Some((i, sim)) = self.nearest_index(token) {
                if sim >= self.options.similarity_threshold {
                    return (
                        TokenContribution {
                            token: token.to_string(),
                            matched: Some(self.words[i].clone()),
                            similarity: sim,
                            contribution: self.scores[i],
                        },
                        Some(i),
                    );
                }
                return (
                    TokenContribution {
                        token: token.to_string(),
                        matched: None,
                        similarity: sim,
                        contribution: 0.0,
                    },
                    None,
                );
            }
        }
        (
            TokenContribution {
                token: token.to_string(),
                matched: None,
                similarity: 0.0,
                contribution: 0.0,
            },
            None,
        )
    }

    /// Sums the (possibly borrowed) word scores of a document.
    ///
    /// Contributions are added in vocabulary order of the matched word, so
    /// the score does not depend on token order. Positive totals predict
    /// pos, negative totals neg, and an exact zero the tie-break class.
    pub fn classify(&self, doc: &TokenizedDocument) -> WordScorePrediction {
        self.classify_tokens(&doc.tokens)
    }

    pub fn classify_text(&self, text: &str) -> WordScorePrediction {
        self.classify(&TokenizedDocument::from_text(text))
    }

    pub fn classify_tokens(&self, tokens: &[String]) -> WordScorePrediction {
        let mut diagnostics = Vec::with_capacity(tokens.len());
        let mut matched = Vec::new();
        for token in tokens {
            let (diag, idx) = self.contribution(token);
            if let Some(i) = idx {
                matched.push(i);
            }
            diagnostics.push(diag);
        }
        matched.sort_unstable();
        let review_score = matched.iter().fold(0.0, |acc, &i| acc + self.scores[i]);
        let label = if review_score > 0.0 {
            Polarity::Pos
        } else if review_score < 0.0 {
            Polarity::Neg
        } else {
            self.tie_break_class
        };
        WordScorePrediction {
            label,
            review_score,
            diagnostics,
        }
    }
}
