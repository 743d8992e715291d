//! Word frequency tables, per-class chi-squared word scores and best-N
//! vocabulary selection.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use crate::corpus::{Polarity, TokenizedDocument};
use crate::error::{Error, Result};

/// Vocabulary size kept by default.
pub const DEFAULT_TOP_N: usize = 10_000;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    pub counts: HashMap<String, u64>,
    pub total: u64,
}

impl FrequencyTable {
    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConditionalFrequencyTable {
    /// Indexed by [`Polarity::index`].
    pub counts: [HashMap<String, u64>; 2],
    pub totals: [u64; 2],
    /// Training documents seen per class.
    pub doc_counts: [u64; 2],
}

impl ConditionalFrequencyTable {
    pub fn count(&self, class: Polarity, word: &str) -> u64 {
        self.counts[class.index()].get(word).copied().unwrap_or(0)
    }

    pub fn total(&self, class: Polarity) -> u64 {
        self.totals[class.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WordScore {
    pub chi2_pos: f64,
    pub chi2_neg: f64,
    pub total_score: f64,
    pub signed_score: f64,
    /// Occurrences of the word across both classes.
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct WordScoreTable {
    pub entries: BTreeMap<String, WordScore>,
    pub pos_doc_prior_count: u64,
    pub neg_doc_prior_count: u64,
}

impl WordScoreTable {
    pub fn get(&self, word: &str) -> Option<&WordScore> {
        self.entries.get(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Copy of the table keeping only the listed words.
    pub fn restrict(&self, vocabulary: &[String]) -> WordScoreTable {
        let keep: HashSet<&str> = vocabulary.iter().map(String::as_str).collect();
        WordScoreTable {
            entries: self
                .entries
                .iter()
                .filter(|(w, _)| keep.contains(w.as_str()))
                .map(|(w, s)| (w.clone(), *s))
                .collect(),
            pos_doc_prior_count: self.pos_doc_prior_count,
            neg_doc_prior_count: self.neg_doc_prior_count,
        }
    }

    /// Build, score and return the table for a training set in one call.
    pub fn from_training(train: &[TokenizedDocument]) -> Result<WordScoreTable> {
        let (ft, cft) = build_frequency_tables(train);
        score_vocabulary(&cft, &ft)
    }
}

/// Counts token occurrences (with multiplicity) globally and per class.
pub fn build_frequency_tables(train: &[TokenizedDocument]) -> (FrequencyTable, ConditionalFrequencyTable) {
    let mut ft = FrequencyTable::default();
    let mut cft = ConditionalFrequencyTable::default();
    for doc in train {
        let c = doc.label.index();
        cft.doc_counts[c] += 1;
        for token in &doc.tokens {
            *ft.counts.entry(token.clone()).or_insert(0) += 1;
            *cft.counts[c].entry(token.clone()).or_insert(0) += 1;
        }
        ft.total += doc.tokens.len() as u64;
        cft.totals[c] += doc.tokens.len() as u64;
    }
    (ft, cft)
}

/// One-degree-of-freedom chi-squared statistic of a 2×2 word/class
/// contingency table.
///
/// Arguments follow the usual marginal naming: `n_ii` word-in-class count,
/// `n_ix` word count, `n_xi` class size, `n_xx` corpus size. Degenerate
/// tables (a zero marginal) score 0.
pub fn chi_squared(n_ii: u64, n_ix: u64, n_xi: u64, n_xx: u64) -> Result<f64> {
    let checks = [
        (n_ii <= n_ix, "n_ii <= n_ix"),
        (n_ii <= n_xi, "n_ii <= n_xi"),
        (n_ix <= n_xx, "n_ix <= n_xx"),
        (n_xi <= n_xx, "n_xi <= n_xx"),
        (
            n_ix as u128 + n_xi as u128 <= n_xx as u128 + n_ii as u128,
            "n_ix + n_xi - n_ii <= n_xx",
        ),
    ];
    for (ok, what) in checks {
        if !ok {
            return Err(Error::Argument(format!(
                "chi_squared({n_ii}, {n_ix}, {n_xi}, {n_xx}) violates {what}"
            )));
        }
    }

    let n_io = n_ix - n_ii;
    let n_oi = n_xi - n_ii;
    let n_oo = n_xx - n_ix - n_oi;
    if n_ix == 0 || n_xi == 0 || n_ix == n_xx || n_xi == n_xx {
        return Ok(0.0);
    }

    let diff = n_ii as i128 * n_oo as i128 - n_io as i128 * n_oi as i128;
    if diff == 0 {
        return Ok(0.0);
    }
    let diff = diff.unsigned_abs() as f64;
    // Grouped so that swapping n_ix and n_xi gives the same rounding.
    let den = (n_ix as f64 * n_xi as f64) * ((n_xx - n_ix) as f64 * (n_xx - n_xi) as f64);
    Ok(n_xx as f64 * diff * diff / den)
}

// count_pos / total_pos >= count_neg / total_neg, with 0/0 read as 0.
fn pos_relatively_frequent(count_pos: u64, total_pos: u64, count_neg: u64, total_neg: u64) -> bool {
    match (total_pos, total_neg) {
        (0, 0) => true,
        (0, _) => count_neg == 0,
        (_, 0) => true,
        _ => count_pos as u128 * total_neg as u128 >= count_neg as u128 * total_pos as u128,
    }
}

/// Scores every word in `ft` against both classes; the sign says which
/// class the word is relatively more frequent in (ties count as positive).
pub fn score_vocabulary(cft: &ConditionalFrequencyTable, ft: &FrequencyTable) -> Result<WordScoreTable> {
    let n_pos = cft.total(Polarity::Pos);
    let n_neg = cft.total(Polarity::Neg);
    let n = ft.total;
    if n_pos + n_neg != n {
        return Err(Error::Consistency(format!(
            "class totals {n_pos} + {n_neg} != corpus total {n}"
        )));
    }

    let mut entries = BTreeMap::new();
    for (word, &count) in &ft.counts {
        let c_pos = cft.count(Polarity::Pos, word);
        let c_neg = cft.count(Polarity::Neg, word);
        if c_pos + c_neg != count {
            return Err(Error::Consistency(format!(
                "word '{word}': class counts {c_pos} + {c_neg} != {count}"
            )));
        }
        let chi2_pos = chi_squared(c_pos, count, n_pos, n)?;
        let chi2_neg = chi_squared(c_neg, count, n_neg, n)?;
        let total_score = chi2_pos + chi2_neg;
        let signed_score = if pos_relatively_frequent(c_pos, n_pos, c_neg, n_neg) {
            total_score
        } else {
            -total_score
        };
        entries.insert(
            word.clone(),
            WordScore {
                chi2_pos,
                chi2_neg,
                total_score,
                signed_score,
                count,
            },
        );
    }

    Ok(WordScoreTable {
        entries,
        pos_doc_prior_count: cft.doc_counts[Polarity::Pos.index()],
        neg_doc_prior_count: cft.doc_counts[Polarity::Neg.index()],
    })
}

fn rank_order(a: (&String, &WordScore), b: (&String, &WordScore)) -> Ordering {
    b.1.total_score
        .total_cmp(&a.1.total_score)
        .then_with(|| b.1.count.cmp(&a.1.count))
        .then_with(|| a.0.cmp(b.0))
}

/// Every word with its score, best first.
pub fn ranked(table: &WordScoreTable) -> Vec<(&String, &WordScore)> {
    let mut all: Vec<_> = table.entries.iter().collect();
    all.sort_by(|a, b| rank_order(*a, *b));
    all
}

/// The `n` best words by total score; ties go to the more frequent word,
/// then to code-point order.
pub fn select_top_n(table: &WordScoreTable, n: usize) -> Vec<String> {
    ranked(table).into_iter().take(n).map(|(w, _)| w.clone()).collect()
}
