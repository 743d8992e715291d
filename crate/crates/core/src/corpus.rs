//! Labeled review ingestion, tokenization and the stratified ¾/¼ split.
//!
//! Two on-disk formats are accepted:
//!
//! * a pair of line files (`pos.txt`, `neg.txt`), one review per line,
//!   LF or CRLF endings, blank lines ignored;
//! * a CSV file with header `label,text` and standard quoting.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sentiment label of a review.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub const ALL: [Polarity; 2] = [Polarity::Pos, Polarity::Neg];

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Pos => "pos",
            Polarity::Neg => "neg",
        }
    }

    pub fn opposite(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }

    /// Dense index, `Pos = 0`, `Neg = 1`.
    pub fn index(self) -> usize {
        match self {
            Polarity::Pos => 0,
            Polarity::Neg => 1,
        }
    }

    // Stream constants mixed into the user seed so the two classes never
    // share a shuffle stream.
    fn stream(self) -> u64 {
        match self {
            Polarity::Pos => 0x9E37_79B9_7F4A_7C15,
            Polarity::Neg => 0xC2B2_AE3D_27D4_EB4F,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos" => Ok(Polarity::Pos),
            "neg" => Ok(Polarity::Neg),
            other => Err(Error::Format(format!("unknown label '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDocument {
    pub text: String,
    pub label: Polarity,
    pub source_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDocument {
    pub tokens: Vec<String>,
    pub label: Polarity,
    pub source_id: String,
}

impl TokenizedDocument {
    pub fn from_labeled(doc: &LabeledDocument) -> Self {
        TokenizedDocument {
            tokens: tokenize(&doc.text),
            label: doc.label,
            source_id: doc.source_id.clone(),
        }
    }

    /// Unlabeled input for classification. The label is a placeholder and is
    /// never read by the classifiers.
    pub fn from_text(text: &str) -> Self {
        TokenizedDocument {
            tokens: tokenize(text),
            label: Polarity::Pos,
            source_id: String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSplit {
    pub train: Vec<TokenizedDocument>,
    pub test: Vec<TokenizedDocument>,
    pub seed: u64,
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn read_lines(path: &Path, label: Polarity, out: &mut Vec<LabeledDocument>) -> Result<()> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let name = file_label(path);
    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = std::str::from_utf8(raw).map_err(|_| Error::Decode {
            path: path.to_path_buf(),
            line: line_no,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(LabeledDocument {
            text: line.to_string(),
            label,
            source_id: format!("{name}:{line_no}"),
        });
    }
    Ok(())
}

/// Loads one review per non-blank line, positive file first.
pub fn load_polarity_files(pos_path: &Path, neg_path: &Path) -> Result<Vec<LabeledDocument>> {
    let mut docs = Vec::new();
    read_lines(pos_path, Polarity::Pos, &mut docs)?;
    read_lines(neg_path, Polarity::Neg, &mut docs)?;
    if docs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(docs)
}

/// Loads a `label,text` CSV. Row numbers count the header as row 1.
pub fn load_labeled_csv(path: &Path) -> Result<Vec<LabeledDocument>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_labeled_csv(file, &file_label(path))
}

pub(crate) fn read_labeled_csv<R: std::io::Read>(reader: R, name: &str) -> Result<Vec<LabeledDocument>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();

    let header = match records.next() {
        Some(rec) => rec.map_err(|e| csv_error(name, e))?,
        None => return Err(Error::Format(format!("{name}: missing header `label,text`"))),
    };
    if header.len() != 2 || &header[0] != "label" || &header[1] != "text" {
        return Err(Error::Format(format!("{name}: missing header `label,text`")));
    }

    let mut docs = Vec::new();
    for (idx, rec) in records.enumerate() {
        let row = idx + 2;
        let rec = rec.map_err(|e| csv_error(name, e))?;
        if rec.len() != 2 {
            return Err(Error::Format(format!(
                "expected 2 fields, found {} at row {row}",
                rec.len()
            )));
        }
        let label = match &rec[0] {
            "pos" => Polarity::Pos,
            "neg" => Polarity::Neg,
            other => return Err(Error::Format(format!("unknown label '{other}' at row {row}"))),
        };
        let text = &rec[1];
        if text.trim().is_empty() {
            return Err(Error::Format(format!("empty text at row {row}")));
        }
        docs.push(LabeledDocument {
            text: text.to_string(),
            label,
            source_id: format!("{name}:{row}"),
        });
    }
    Ok(docs)
}

fn csv_error(name: &str, e: csv::Error) -> Error {
    if let csv::ErrorKind::Utf8 { pos, .. } = e.kind() {
        let line = pos.as_ref().map(|p| p.line()).unwrap_or(0);
        return Error::Format(format!("{name}: invalid UTF-8 at line {line}"));
    }
    Error::Format(format!("{name}: {e}"))
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Splits text into lowercase word tokens.
///
/// A token is a maximal run of Unicode letters, digits and apostrophes with
/// leading and trailing apostrophes removed, so `It's` survives as `it's`
/// while `'quoted'` becomes `quoted`. Typographic apostrophes (U+2019) are
/// folded to ASCII.
pub fn tokenize(text: &str) -> Vec<String> {
    let lowered = text.to_lowercase();
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut flush = |current: &mut String| {
        let trimmed = current.trim_matches('\'');
        if !trimmed.is_empty() {
            tokens.push(trimmed.to_string());
        }
        current.clear();
    };
    for c in lowered.chars() {
        if c.is_alphanumeric() {
            current.push(c);
        } else if is_apostrophe(c) {
            current.push('\'');
        } else {
            flush(&mut current);
        }
    }
    flush(&mut current);
    tokens
}

fn bounded(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    // Largest multiple of `bound` representable in 64 bits; rejecting above it
    // keeps the draw unbiased.
    let zone = ((1u128 << 64) / bound as u128) * bound as u128;
    loop {
        let x = rng.next_u64() as u128;
        if x < zone {
            return (x % bound as u128) as u64;
        }
    }
}

/// Deterministic Fisher-Yates shuffle driven by ChaCha8 seeded with `seed`.
///
/// The generator stream is value-stable across platforms and crate
/// versions, so the same seed always produces the same permutation.
pub fn shuffle_seeded<T>(items: &mut [T], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..items.len()).rev() {
        let j = bounded(&mut rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

pub(crate) fn class_seed(seed: u64, class: Polarity) -> u64 {
    seed ^ class.stream()
}

/// Number of documents of a class of size `n` that go to training.
pub fn train_quota(n: usize) -> usize {
    3 * n / 4
}

/// Stratified split: per class, shuffle with `seed ^ class constant` and
/// send the first `floor(3n/4)` documents to training.
pub fn split_train_test(docs: &[LabeledDocument], seed: u64) -> Result<CorpusSplit> {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in Polarity::ALL {
        let mut members: Vec<&LabeledDocument> = docs.iter().filter(|d| d.label == class).collect();
        if members.is_empty() {
            return Err(Error::Stratification(class));
        }
        shuffle_seeded(&mut members, class_seed(seed, class));
        let quota = train_quota(members.len());
        for (i, doc) in members.into_iter().enumerate() {
            let tokenized = TokenizedDocument::from_labeled(doc);
            if i < quota {
                train.push(tokenized);
            } else {
                test.push(tokenized);
            }
        }
    }
    Ok(CorpusSplit { train, test, seed })
}
