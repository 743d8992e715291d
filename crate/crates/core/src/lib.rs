//! Sentiment polarity classification of short reviews.
//!
//! Two supervised classifiers share one feature pipeline:
//!
//! * [`corpus`] loads `pos`/`neg` labeled reviews, tokenizes them and makes a
//!   seeded, stratified ¾/¼ train/test split;
//! * [`featsel`] counts words per class, scores each with a chi-squared
//!   statistic (signed by the class it leans to) and keeps the best N;
//! * [`nb`] is multinomial Naive Bayes with add-one smoothing;
//! * [`knn`] sums signed word scores, borrowing the score of the nearest
//!   vocabulary word (character n-gram Jaccard) for unknown words;
//! * [`metrics`] holds the confusion matrix and accuracy / precision / recall;
//! * [`experiment`] runs learning curves over training sizes and writes CSV
//!   and SVG charts;
//! * [`model`] saves and loads trained classifiers;
//! * [`cli`] is the `polarity` command-line tool.
//!
//! ```
//! use polarity::corpus::{Polarity, TokenizedDocument};
//! use polarity::featsel::{select_top_n, WordScoreTable};
//! use polarity::nb::train_nb;
//!
//! let train: Vec<TokenizedDocument> = [
//!     ("a lovely, moving film", Polarity::Pos),
//!     ("dull and far too long", Polarity::Neg),
//! ]
//! .iter()
//! .map(|(t, l)| TokenizedDocument { label: *l, ..TokenizedDocument::from_text(t) })
//! .collect();
//!
//! let table = WordScoreTable::from_training(&train).unwrap();
//! let model = train_nb(&train, &select_top_n(&table, 10_000)).unwrap();
//! assert_eq!(model.classify_text("what a lovely film").label, Polarity::Pos);
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod experiment;
pub mod featsel;
pub mod knn;
pub mod metrics;
pub mod model;
pub mod nb;

pub use corpus::{LabeledDocument, Polarity, TokenizedDocument};
pub use error::{Error, Result};
