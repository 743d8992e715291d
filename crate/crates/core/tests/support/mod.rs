//! Independent oracles and invariant checks shared by the property and
//! acceptance test targets. Nothing here calls into the code path it is
//! used to check: Naive Bayes is recomputed with exact rationals,
//! chi-squared from expected cell counts, Jaccard from explicit n-gram sets.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::fs;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use polarity::corpus::{load_polarity_files, split_train_test, tokenize, LabeledDocument, Polarity, TokenizedDocument};
use polarity::experiment::{
    prepare_size, run_on_split, subsample_training, ClassifierKind, ExperimentConfig,
};
use polarity::featsel::{chi_squared, select_top_n, WordScoreTable};
use polarity::knn::{KnnOptions, WordScoreClassifier};
use polarity::metrics::{compute_confusion, metrics_report, ConfusionMatrix};
use polarity::nb::train_nb;

// ---------------------------------------------------------------- oracles

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_u64().expect("fits in 64 bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(r: &BigRational) -> f64 {
    assert!(r.is_positive());
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `ln(P(C) · ∏ P(x_i|C))` for both classes, multiplied out exactly.
pub fn nb_oracle_log_scores(train: &[TokenizedDocument], vocabulary: &[String], doc: &[String]) -> [f64; 2] {
    let vocab: BTreeSet<&str> = vocabulary.iter().map(String::as_str).collect();
    let mut out = [0.0; 2];
    for class in Polarity::ALL {
        let class_docs: Vec<&TokenizedDocument> = train.iter().filter(|d| d.label == class).collect();
        let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
        let mut in_vocab_total = 0u64;
        for d in &class_docs {
            for t in &d.tokens {
                if vocab.contains(t.as_str()) {
                    *counts.entry(t.as_str()).or_default() += 1;
                    in_vocab_total += 1;
                }
            }
        }
        let mut product = ratio(class_docs.len() as u64, train.len() as u64);
        for t in doc {
            if vocab.contains(t.as_str()) {
                let c = counts.get(t.as_str()).copied().unwrap_or(0);
                product *= ratio(c + 1, in_vocab_total + vocab.len() as u64);
            }
        }
        out[class.index()] = ln_rational(&product);
    }
    out
}

/// Σ (O − E)² / E over the four cells, in exact arithmetic. A zero
/// marginal makes some E zero; those tables score 0.
pub fn chi_squared_oracle(n_ii: u64, n_ix: u64, n_xi: u64, n_xx: u64) -> f64 {
    let observed = [
        (n_ii, n_ix, n_xi),
        (n_ix - n_ii, n_ix, n_xx - n_xi),
        (n_xi - n_ii, n_xx - n_ix, n_xi),
        (n_xx + n_ii - n_ix - n_xi, n_xx - n_ix, n_xx - n_xi),
    ];
    let total = BigRational::from_integer(BigInt::from(n_xx));
    let mut sum = BigRational::zero();
    for (o, row, col) in observed {
        let expected = BigRational::from_integer(BigInt::from(row)) * BigRational::from_integer(BigInt::from(col))
            / total.clone();
        if expected.is_zero() {
            return 0.0;
        }
        let diff = BigRational::from_integer(BigInt::from(o)) - expected.clone();
        sum += diff.clone() * diff / expected;
    }
    sum.to_f64().expect("finite")
}

pub fn ngram_set(word: &str, n: usize) -> BTreeSet<String> {
    let chars: Vec<char> = word.chars().collect();
    let mut set = BTreeSet::new();
    if chars.len() < n {
        for c in chars {
            set.insert(c.to_string());
        }
    } else {
        for i in 0..=chars.len() - n {
            set.insert(chars[i..i + n].iter().collect());
        }
    }
    set
}

pub fn jaccard_oracle(a: &str, b: &str, n: usize) -> f64 {
    let (sa, sb) = (ngram_set(a, n), ngram_set(b, n));
    let inter = sa.intersection(&sb).count();
    let union = sa.union(&sb).count();
    inter as f64 / union as f64
}

/// Per-token scan: exact hit, else the most similar word (smallest on
/// ties) if it clears the threshold. Contributions are summed in word order.
pub fn wordscore_oracle(entries: &BTreeMap<String, f64>, options: KnnOptions, tokens: &[String]) -> f64 {
    let mut used: Vec<(&str, f64)> = Vec::new();
    for t in tokens {
        if let Some((w, s)) = entries.get_key_value(t) {
            used.push((w, *s));
            continue;
        }
        if !options.fallback_enabled {
            continue;
        }
        let mut best: Option<(&str, f64, f64)> = None;
        for (w, s) in entries {
            let sim = jaccard_oracle(t, w, options.ngram_size);
            if best.is_none_or(|(_, bs, _)| sim > bs) {
                best = Some((w, sim, *s));
            }
        }
        if let Some((w, sim, s)) = best {
            if sim >= options.similarity_threshold {
                used.push((w, s));
            }
        }
    }
    used.sort_by(|a, b| a.0.cmp(b.0));
    used.iter().fold(0.0, |acc, (_, s)| acc + s)
}

// ------------------------------------------------------------- strategies

pub const WORDS: [&str; 16] = [
    "good", "goods", "bad", "badly", "movie", "film", "plot", "boring", "bore", "fun", "dull", "great", "grate",
    "nice", "it's", "ok",
];

pub fn word() -> impl Strategy<Value = String> {
    prop::sample::select(WORDS.to_vec()).prop_map(String::from)
}

pub fn polarity() -> impl Strategy<Value = Polarity> {
    prop::bool::ANY.prop_map(|b| if b { Polarity::Pos } else { Polarity::Neg })
}

pub fn tdoc(tokens: Vec<String>, label: Polarity, id: usize) -> TokenizedDocument {
    TokenizedDocument {
        tokens,
        label,
        source_id: format!("doc:{id}"),
    }
}

/// 2..=8 documents of 1..=8 tokens, both classes present.
pub fn small_corpus() -> impl Strategy<Value = Vec<TokenizedDocument>> {
    prop::collection::vec((prop::collection::vec(word(), 1..=8), polarity()), 2..=8).prop_map(|docs| {
        let n = docs.len();
        docs.into_iter()
            .enumerate()
            .map(|(i, (tokens, label))| {
                // force both classes
                let label = match i {
                    0 => Polarity::Pos,
                    _ if i == n - 1 => Polarity::Neg,
                    _ => label,
                };
                tdoc(tokens, label, i)
            })
            .collect()
    })
}

/// Test tokens mixing known words with misspellings.
pub fn test_tokens(max: usize) -> impl Strategy<Value = Vec<String>> {
    let oov = prop::sample::select(vec!["goood", "baad", "moviee", "flim", "xyz", "q", "borring", "grat", "fnu"])
        .prop_map(String::from);
    prop::collection::vec(prop_oneof![word(), oov], 0..=max)
}

pub fn knn_options() -> impl Strategy<Value = KnnOptions> {
    (prop::bool::ANY, prop::sample::select(vec![0.0, 0.2, 0.5, 1.0]), 1usize..=3).prop_map(|(f, t, n)| KnnOptions {
        fallback_enabled: f,
        similarity_threshold: t,
        ngram_size: n,
    })
}

// ------------------------------------------------------------- invariants

pub type Check = fn(u32) -> Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn labeled_corpus() -> impl Strategy<Value = Vec<LabeledDocument>> {
    (1usize..40, 1usize..40).prop_map(|(np, nn)| {
        let mut docs = Vec::new();
        for i in 0..np {
            docs.push(LabeledDocument {
                text: format!("good film number {i}"),
                label: Polarity::Pos,
                source_id: format!("pos.txt:{}", i + 1),
            });
        }
        for i in 0..nn {
            docs.push(LabeledDocument {
                text: format!("bad film number {i}"),
                label: Polarity::Neg,
                source_id: format!("neg.txt:{}", i + 1),
            });
        }
        docs
    })
}

pub fn corpus_split_determinism(cases: u32) -> Result<(), String> {
    run(cases, (labeled_corpus(), any::<u64>()), |(docs, seed)| {
        let a = split_train_test(&docs, seed).unwrap();
        let b = split_train_test(&docs, seed).unwrap();
        prop_assert_eq!(a, b);
        Ok(())
    })
}

pub fn corpus_stratification(cases: u32) -> Result<(), String> {
    run(cases, (labeled_corpus(), any::<u64>()), |(docs, seed)| {
        let s = split_train_test(&docs, seed).unwrap();
        for class in Polarity::ALL {
            let n = docs.iter().filter(|d| d.label == class).count();
            let t = s.train.iter().filter(|d| d.label == class).count();
            prop_assert_eq!(t, 3 * n / 4);
        }
        let mut ids: Vec<&str> = s.train.iter().chain(&s.test).map(|d| d.source_id.as_str()).collect();
        ids.sort();
        let mut all: Vec<&str> = docs.iter().map(|d| d.source_id.as_str()).collect();
        all.sort();
        prop_assert_eq!(ids, all);
        Ok(())
    })
}

pub fn corpus_tokenizer_idempotence(cases: u32) -> Result<(), String> {
    let text = prop_oneof![
        any::<String>(),
        "[A-Za-z' .,!?\u{2019}0-9ÄÖÜßéİ]{0,40}",
    ];
    run(cases, text, |t| {
        let once = tokenize(&t);
        for tok in &once {
            prop_assert!(!tok.is_empty() && !tok.chars().any(char::is_whitespace));
            prop_assert_eq!(tok, &tok.to_lowercase());
        }
        prop_assert_eq!(tokenize(&once.join(" ")), once);
        Ok(())
    })
}

pub fn corpus_load_conservation(cases: u32) -> Result<(), String> {
    let line = prop_oneof![
        Just(String::new()),
        Just("   ".to_string()),
        "[a-z ]{1,12}",
    ];
    let lines = prop::collection::vec(line, 0..12);
    run(cases, (lines.clone(), lines), |(pos, neg)| {
        let dir = tempfile::tempdir().unwrap();
        let (pp, np) = (dir.path().join("pos.txt"), dir.path().join("neg.txt"));
        fs::write(&pp, pos.join("\n")).unwrap();
        fs::write(&np, neg.join("\r\n")).unwrap();
        let expected = pos.iter().chain(&neg).filter(|l| !l.trim().is_empty()).count();
        match load_polarity_files(&pp, &np) {
            Ok(docs) => prop_assert_eq!(docs.len(), expected),
            Err(_) => prop_assert_eq!(expected, 0),
        }
        Ok(())
    })
}

fn valid_quadruple(max: u64) -> impl Strategy<Value = (u64, u64, u64, u64)> {
    (1..=max)
        .prop_flat_map(|n_xx| (Just(n_xx), 0..=n_xx, 0..=n_xx))
        .prop_flat_map(|(n_xx, n_ix, n_xi)| {
            let lo = (n_ix + n_xi).saturating_sub(n_xx);
            let hi = n_ix.min(n_xi);
            (lo..=hi, Just(n_ix), Just(n_xi), Just(n_xx))
        })
}

/// Tables whose cells factor as outer products are exactly independent.
fn independent_quadruple() -> impl Strategy<Value = (u64, u64, u64, u64)> {
    (0u64..200, 0u64..200, 0u64..200, 0u64..200).prop_filter_map("non-empty", |(x, w, y, z)| {
        let (ii, io, oi, oo) = (x * y, x * z, w * y, w * z);
        let n = ii + io + oi + oo;
        (n > 0).then_some((ii, ii + io, ii + oi, n))
    })
}

pub fn featsel_chi_symmetry(cases: u32) -> Result<(), String> {
    run(cases, valid_quadruple(100_000), |(a, b, c, d)| {
        prop_assert_eq!(chi_squared(a, b, c, d).unwrap(), chi_squared(a, c, b, d).unwrap());
        Ok(())
    })
}

pub fn featsel_chi_nonnegative_and_independent(cases: u32) -> Result<(), String> {
    run(cases, valid_quadruple(100_000), |(a, b, c, d)| {
        let v = chi_squared(a, b, c, d).unwrap();
        prop_assert!(v >= 0.0 && v.is_finite());
        if a as u128 * d as u128 == b as u128 * c as u128 {
            prop_assert_eq!(v, 0.0);
        }
        Ok(())
    })?;
    run(cases, independent_quadruple(), |(a, b, c, d)| {
        prop_assert_eq!(chi_squared(a, b, c, d).unwrap(), 0.0);
        Ok(())
    })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

pub fn featsel_chi_oracle(cases: u32) -> Result<(), String> {
    run(cases, valid_quadruple(1_000_000), |(a, b, c, d)| {
        let got = chi_squared(a, b, c, d).unwrap();
        let want = chi_squared_oracle(a, b, c, d);
        prop_assert!(rel_close(got, want, 1e-9), "chi2({a},{b},{c},{d}) = {got}, oracle {want}");
        Ok(())
    })?;
    run(cases, independent_quadruple(), |(a, b, c, d)| {
        prop_assert_eq!(chi_squared(a, b, c, d).unwrap(), 0.0);
        prop_assert_eq!(chi_squared_oracle(a, b, c, d), 0.0);
        Ok(())
    })
}

pub fn featsel_top_n_prefix(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), 0usize..20), |(train, n)| {
        let table = WordScoreTable::from_training(&train).unwrap();
        let shorter = select_top_n(&table, n);
        let longer = select_top_n(&table, n + 1);
        prop_assert!(longer.starts_with(&shorter));
        prop_assert_eq!(shorter.len(), n.min(table.len()));
        Ok(())
    })
}

pub fn featsel_sign_consistency(cases: u32) -> Result<(), String> {
    run(cases, small_corpus(), |train| {
        let table = WordScoreTable::from_training(&train).unwrap();
        let total = |c: Polarity| train.iter().filter(|d| d.label == c).map(|d| d.tokens.len()).sum::<usize>();
        let count = |c: Polarity, w: &str| {
            train
                .iter()
                .filter(|d| d.label == c)
                .flat_map(|d| &d.tokens)
                .filter(|t| t.as_str() == w)
                .count()
        };
        let (np, nn) = (total(Polarity::Pos), total(Polarity::Neg));
        for (w, s) in &table.entries {
            prop_assert_eq!(s.total_score, s.chi2_pos + s.chi2_neg);
            prop_assert_eq!(s.signed_score.abs(), s.total_score);
            let (cp, cn) = (count(Polarity::Pos, w), count(Polarity::Neg, w));
            let fp = if np == 0 { 0.0 } else { cp as f64 / np as f64 };
            let fneg = if nn == 0 { 0.0 } else { cn as f64 / nn as f64 };
            if s.signed_score > 0.0 {
                prop_assert!(cp * nn >= cn * np || fp >= fneg, "{w}");
            }
            if s.signed_score < 0.0 {
                prop_assert!(fp < fneg, "{w}");
            }
        }
        Ok(())
    })
}

fn full_vocab(train: &[TokenizedDocument]) -> Vec<String> {
    let set: BTreeSet<&String> = train.iter().flat_map(|d| &d.tokens).collect();
    set.into_iter().cloned().collect()
}

pub fn nb_order_invariance(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), test_tokens(10), any::<u64>()), |(train, doc, seed)| {
        let model = train_nb(&train, &full_vocab(&train)).unwrap();
        let mut shuffled = doc.clone();
        polarity::corpus::shuffle_seeded(&mut shuffled, seed);
        prop_assert_eq!(model.classify_tokens(&doc), model.classify_tokens(&shuffled));
        Ok(())
    })
}

pub fn nb_oov_invariance(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), test_tokens(10)), |(train, doc)| {
        let model = train_nb(&train, &full_vocab(&train)).unwrap();
        let mut longer = doc.clone();
        longer.push("zzzunseen".into());
        prop_assert_eq!(model.classify_tokens(&doc), model.classify_tokens(&longer));
        Ok(())
    })
}

pub fn nb_monotone_evidence(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), test_tokens(10), word()), |(train, doc, w)| {
        let model = train_nb(&train, &full_vocab(&train)).unwrap();
        let (Some(lp), Some(ln)) = (
            model.log_likelihood(Polarity::Pos, &w),
            model.log_likelihood(Polarity::Neg, &w),
        ) else {
            return Ok(());
        };
        if lp <= ln + 1e-12 {
            return Ok(());
        }
        let before = model.classify_tokens(&doc).log_odds();
        let mut more = doc.clone();
        more.push(w);
        let after = model.classify_tokens(&more).log_odds();
        prop_assert!(after >= before, "{after} < {before}");
        Ok(())
    })
}

/// NB log scores against the exact product, for corpora of ≤ 8 documents
/// and vocabularies of ≤ 12 words.
pub fn nb_oracle(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), test_tokens(12), 1usize..=12), |(train, doc, vsize)| {
        let vocab: Vec<String> = full_vocab(&train).into_iter().take(vsize).collect();
        let model = train_nb(&train, &vocab).unwrap();
        let got = model.classify_tokens(&doc).scores;
        let want = nb_oracle_log_scores(&train, &vocab, &doc);
        for c in 0..2 {
            prop_assert!((got[c] - want[c]).abs() <= 1e-9, "class {c}: {} vs {}", got[c], want[c]);
        }
        Ok(())
    })
}

pub fn nb_normalization(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), test_tokens(12)), |(train, doc)| {
        let vocab = full_vocab(&train);
        let model = train_nb(&train, &vocab).unwrap();
        let prior_sum: f64 = model.log_priors().iter().map(|l| l.exp()).sum();
        prop_assert!((prior_sum - 1.0).abs() <= 1e-12);
        for class in Polarity::ALL {
            let s: f64 = model.log_likelihoods(class).iter().map(|l| l.exp()).sum();
            prop_assert!((s - 1.0).abs() <= 1e-9);
        }
        let post = model.classify_tokens(&doc).posterior();
        prop_assert!((post[0] + post[1] - 1.0).abs() <= 1e-9);
        Ok(())
    })
}

fn classifier_from(train: &[TokenizedDocument], options: KnnOptions) -> (WordScoreClassifier, BTreeMap<String, f64>) {
    let table = WordScoreTable::from_training(train).unwrap();
    let vocab = select_top_n(&table, usize::MAX);
    let clf = WordScoreClassifier::new(&table, &vocab, options).unwrap();
    let entries = table.entries.iter().map(|(w, s)| (w.clone(), s.signed_score)).collect();
    (clf, entries)
}

pub fn knn_order_invariance(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), test_tokens(8), knn_options(), any::<u64>()), |(train, doc, opts, seed)| {
        let (clf, _) = classifier_from(&train, opts);
        let mut shuffled = doc.clone();
        polarity::corpus::shuffle_seeded(&mut shuffled, seed);
        let (a, b) = (clf.classify_tokens(&doc), clf.classify_tokens(&shuffled));
        prop_assert_eq!(a.review_score.to_bits(), b.review_score.to_bits());
        prop_assert_eq!(a.label, b.label);
        Ok(())
    })
}

pub fn knn_exact_match_dominance(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), knn_options(), knn_options(), any::<u64>()), |(train, o1, o2, seed)| {
        let (c1, _) = classifier_from(&train, o1);
        let (c2, _) = classifier_from(&train, KnnOptions { ngram_size: o1.ngram_size, ..o2 });
        let mut doc: Vec<String> = train.iter().flat_map(|d| d.tokens.clone()).collect();
        polarity::corpus::shuffle_seeded(&mut doc, seed);
        doc.truncate(6);
        let (a, b) = (c1.classify_tokens(&doc), c2.classify_tokens(&doc));
        prop_assert_eq!(a.review_score, b.review_score);
        if a.review_score != 0.0 {
            prop_assert_eq!(a.label, b.label);
        }
        Ok(())
    })
}

pub fn knn_fallback_consistency(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), test_tokens(8), 1usize..=3), |(train, doc, n)| {
        let on = KnnOptions {
            fallback_enabled: true,
            similarity_threshold: 1.0,
            ngram_size: n,
        };
        let (c_on, entries) = classifier_from(&train, on);
        let (c_off, _) = classifier_from(&train, KnnOptions { fallback_enabled: false, ..on });
        let eligible = doc
            .iter()
            .filter(|t| !entries.contains_key(*t))
            .all(|t| entries.keys().all(|w| jaccard_oracle(t, w, n) < 1.0));
        if eligible {
            let (a, b) = (c_on.classify_tokens(&doc), c_off.classify_tokens(&doc));
            prop_assert_eq!(a.review_score, b.review_score);
            prop_assert_eq!(a.label, b.label);
        }
        Ok(())
    })
}

pub fn knn_sign_coherence(cases: u32) -> Result<(), String> {
    let entries = prop::collection::btree_map(word(), -5.0f64..5.0, 1..12);
    run(cases, (entries, knn_options(), any::<u64>()), |(entries, opts, seed)| {
        let clf = WordScoreClassifier::from_entries(entries.clone().into_iter().collect(), opts, Polarity::Neg).unwrap();
        for sign in [1.0, -1.0] {
            let mut doc: Vec<String> = entries
                .iter()
                .filter(|(_, s)| **s * sign > 0.0)
                .map(|(w, _)| w.clone())
                .collect();
            if doc.is_empty() {
                continue;
            }
            polarity::corpus::shuffle_seeded(&mut doc, seed);
            let want = if sign > 0.0 { Polarity::Pos } else { Polarity::Neg };
            prop_assert_eq!(clf.classify_tokens(&doc).label, want);
        }
        Ok(())
    })
}

/// review_score against the explicit per-token scan, bit for bit, with
/// fallback on and off.
pub fn knn_bruteforce(cases: u32) -> Result<(), String> {
    run(cases, (small_corpus(), test_tokens(6), knn_options()), |(train, doc, opts)| {
        for fallback in [true, false] {
            let opts = KnnOptions {
                fallback_enabled: fallback,
                ..opts
            };
            let (clf, entries) = classifier_from(&train, opts);
            let got = clf.classify_tokens(&doc).review_score;
            let want = wordscore_oracle(&entries, opts, &doc);
            prop_assert_eq!(got.to_bits(), want.to_bits(), "{} vs {}", got, want);
        }
        Ok(())
    })
}

fn label_streams() -> impl Strategy<Value = (Vec<Polarity>, Vec<Polarity>)> {
    (1usize..=10).prop_flat_map(|n| (prop::collection::vec(polarity(), n), prop::collection::vec(polarity(), n)))
}

pub fn metrics_identity(cases: u32) -> Result<(), String> {
    run(cases, (0u64..1000, 0u64..1000, 0u64..1000, 0u64..1000), |(a, b, c, d)| {
        let m = ConfusionMatrix { a, b, c, d };
        let Ok(r) = metrics_report(&m) else {
            prop_assert_eq!(m.total(), 0);
            return Ok(());
        };
        let acc = r.accuracy.unwrap();
        prop_assert!((acc * m.total() as f64 - (a + d) as f64).abs() < 1e-9);
        prop_assert_eq!((acc * m.total() as f64).round() as u64, a + d);
        for v in [r.accuracy, r.precision_pos, r.precision_neg, r.recall_pos, r.recall_neg].into_iter().flatten() {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        Ok(())
    })
}

pub fn metrics_decomposition(cases: u32) -> Result<(), String> {
    run(cases, (0u64..1000, 0u64..1000, 0u64..1000, 0u64..1000), |(a, b, c, d)| {
        let Ok(r) = metrics_report(&ConfusionMatrix { a, b, c, d }) else {
            return Ok(());
        };
        if let (Some(rp), Some(rn)) = (r.recall_pos, r.recall_neg) {
            let lhs = (a + d) as f64;
            let rhs = rp * (a + c) as f64 + rn * (b + d) as f64;
            prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.max(1.0));
        }
        Ok(())
    })
}

pub fn metrics_symmetry(cases: u32) -> Result<(), String> {
    run(cases, label_streams(), |(pred, gold)| {
        let flip = |v: &[Polarity]| v.iter().map(|p| p.opposite()).collect::<Vec<_>>();
        let m = compute_confusion(&pred, &gold).unwrap();
        let f = compute_confusion(&flip(&pred), &flip(&gold)).unwrap();
        prop_assert_eq!(f, ConfusionMatrix { a: m.d, b: m.c, c: m.b, d: m.a });
        let (r, s) = (metrics_report(&m).unwrap(), metrics_report(&f).unwrap());
        prop_assert_eq!(r.accuracy, s.accuracy);
        prop_assert_eq!(r.precision_pos, s.precision_neg);
        prop_assert_eq!(r.precision_neg, s.precision_pos);
        prop_assert_eq!(r.recall_pos, s.recall_neg);
        prop_assert_eq!(r.recall_neg, s.recall_pos);
        Ok(())
    })
}

pub fn metrics_bruteforce(cases: u32) -> Result<(), String> {
    run(cases, label_streams(), |(pred, gold)| {
        let r = metrics_report(&compute_confusion(&pred, &gold).unwrap()).unwrap();
        let n = pred.len();
        let pairs: Vec<(Polarity, Polarity)> = pred.iter().copied().zip(gold.iter().copied()).collect();
        let count = |f: &dyn Fn(&(Polarity, Polarity)) -> bool| pairs.iter().filter(|p| f(p)).count();
        let correct = count(&|(p, g)| p == g);
        let frac = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
        prop_assert_eq!(r.accuracy, frac(correct, n));
        let tp = count(&|(p, g)| *p == Polarity::Pos && *g == Polarity::Pos);
        let tn = count(&|(p, g)| *p == Polarity::Neg && *g == Polarity::Neg);
        prop_assert_eq!(r.precision_pos, frac(tp, count(&|(p, _)| *p == Polarity::Pos)));
        prop_assert_eq!(r.precision_neg, frac(tn, count(&|(p, _)| *p == Polarity::Neg)));
        prop_assert_eq!(r.recall_pos, frac(tp, count(&|(_, g)| *g == Polarity::Pos)));
        prop_assert_eq!(r.recall_neg, frac(tn, count(&|(_, g)| *g == Polarity::Neg)));
        Ok(())
    })
}

/// Split of a synthetic corpus whose documents each carry a unique marker
/// word, so leakage from unsampled documents is detectable.
fn marked_split(n_per_class: usize, seed: u64) -> polarity::corpus::CorpusSplit {
    let mut docs = Vec::new();
    let pos = ["great", "fun", "lovely", "movie", "plot"];
    let neg = ["dull", "bad", "boring", "movie", "plot"];
    for i in 0..n_per_class {
        for (label, words) in [(Polarity::Pos, &pos), (Polarity::Neg, &neg)] {
            docs.push(LabeledDocument {
                text: format!("{} {} marker{label}{i}", words[i % 5], words[(i * 3 + 1) % 5]),
                label,
                source_id: format!("{label}:{i}"),
            });
        }
    }
    split_train_test(&docs, seed).unwrap()
}

fn curve_config(sizes: Vec<usize>) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(vec![]);
    cfg.training_sizes = sizes;
    cfg
}

fn sizes_for(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(2..=max, 1..4).prop_map(|s| s.into_iter().collect())
}

pub fn experiment_determinism(cases: u32) -> Result<(), String> {
    run(cases, (4usize..16, any::<u64>()), |(n, seed)| {
        let split = marked_split(n, seed);
        let max = split.train.len();
        let cfg = curve_config(vec![1.max(max / 3), max]);
        let a = run_on_split(&cfg, "d", &split).unwrap();
        let b = run_on_split(&cfg, "d", &marked_split(n, seed)).unwrap();
        prop_assert_eq!(polarity::experiment::rows_to_csv(&a), polarity::experiment::rows_to_csv(&b));
        for m in polarity::experiment::MetricSelector::ALL {
            let (x, y) = (
                polarity::experiment::render_svg_chart(&a, m),
                polarity::experiment::render_svg_chart(&b, m),
            );
            prop_assert_eq!(x.ok(), y.ok());
        }
        Ok(())
    })
}

pub fn experiment_test_fixedness(cases: u32) -> Result<(), String> {
    run(cases, (4usize..16, any::<u64>()), |(n, seed)| {
        let split = marked_split(n, seed);
        let sizes: Vec<usize> = (2..=split.train.len()).step_by(3).collect();
        let rows = run_on_split(&curve_config(sizes), "d", &split).unwrap();
        let pos_test = split.test.iter().filter(|d| d.label == Polarity::Pos).count() as u64;
        for r in &rows {
            prop_assert_eq!(r.cells.total(), split.test.len() as u64);
            prop_assert_eq!(r.cells.a + r.cells.c, pos_test);
        }
        Ok(())
    })
}

pub fn experiment_feature_hygiene(cases: u32) -> Result<(), String> {
    run(cases, (4usize..16, any::<u64>(), 1usize..20), |(n, seed, size)| {
        let split = marked_split(n, seed);
        let size = size.min(split.train.len());
        let (sample, table) = prepare_size(&split.train, size, split.seed).unwrap();
        let sampled: BTreeSet<&str> = sample.iter().map(|d| d.source_id.as_str()).collect();
        let sample_words: BTreeSet<&String> = sample.iter().flat_map(|d| &d.tokens).collect();
        for w in table.entries.keys() {
            prop_assert!(sample_words.contains(w), "{w} not in sample");
        }
        for d in split.train.iter().filter(|d| !sampled.contains(d.source_id.as_str())).chain(&split.test) {
            let marker = d.tokens.last().unwrap();
            prop_assert!(!table.entries.contains_key(marker), "{marker} leaked");
        }
        let sub = subsample_training(&split.train, size, split.seed).unwrap();
        prop_assert_eq!(sub, sample);
        Ok(())
    })
}

pub fn experiment_row_completeness(cases: u32) -> Result<(), String> {
    let classifiers = prop::sample::select(vec![
        vec![ClassifierKind::Nb],
        vec![ClassifierKind::Knn],
        vec![ClassifierKind::Knn, ClassifierKind::Nb],
    ]);
    run(cases, (4usize..12, sizes_for(6), classifiers), |(n, sizes, classifiers)| {
        let split = marked_split(n, 1);
        let mut cfg = curve_config(sizes.clone());
        cfg.classifiers = classifiers.clone();
        let rows = run_on_split(&cfg, "d", &split).unwrap();
        prop_assert_eq!(rows.len(), sizes.len() * classifiers.len());
        let mut expected = Vec::new();
        let mut kinds = classifiers.clone();
        kinds.sort();
        for k in kinds {
            for &s in &sizes {
                expected.push((k, s));
            }
        }
        let got: Vec<_> = rows.iter().map(|r| (r.classifier, r.training_size)).collect();
        prop_assert_eq!(got, expected);
        Ok(())
    })
}

/// Every module invariant, by name.
pub fn invariant_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("corpus: split determinism", corpus_split_determinism),
        ("corpus: stratification exactness", corpus_stratification),
        ("corpus: tokenizer idempotence", corpus_tokenizer_idempotence),
        ("corpus: load/count conservation", corpus_load_conservation),
        ("featsel: chi-squared symmetry", featsel_chi_symmetry),
        ("featsel: chi-squared nonnegativity and independence", featsel_chi_nonnegative_and_independent),
        ("featsel: chi-squared oracle equivalence", featsel_chi_oracle),
        ("featsel: top-n prefix monotonicity", featsel_top_n_prefix),
        ("featsel: sign consistency", featsel_sign_consistency),
        ("nb: order invariance", nb_order_invariance),
        ("nb: out-of-vocabulary invariance", nb_oov_invariance),
        ("nb: monotone evidence", nb_monotone_evidence),
        ("nb: oracle equivalence", nb_oracle),
        ("nb: normalization", nb_normalization),
        ("knn: order invariance", knn_order_invariance),
        ("knn: exact-match dominance", knn_exact_match_dominance),
        ("knn: fallback consistency", knn_fallback_consistency),
        ("knn: sign coherence", knn_sign_coherence),
        ("knn: brute-force equivalence", knn_bruteforce),
        ("metrics: accuracy identity", metrics_identity),
        ("metrics: recall decomposition", metrics_decomposition),
        ("metrics: pos/neg symmetry", metrics_symmetry),
        ("metrics: brute-force equivalence", metrics_bruteforce),
        ("experiment: determinism", experiment_determinism),
        ("experiment: test-set fixedness", experiment_test_fixedness),
        ("experiment: feature-selection hygiene", experiment_feature_hygiene),
        ("experiment: row completeness", experiment_row_completeness),
    ]
}
