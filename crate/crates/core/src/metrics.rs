//! Confusion matrix and the accuracy / precision / recall formulas.
//!
//! Cell naming follows the usual 2×2 table with predictions as rows:
//!
//! |               | true pos | true neg |
//! |---------------|----------|----------|
//! | predicted pos | a        | b        |
//! | predicted neg | c        | d        |

use std::fmt;

use crate::corpus::Polarity;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }

    pub fn record(&mut self, predicted: Polarity, gold: Polarity) {
        match (predicted, gold) {
            (Polarity::Pos, Polarity::Pos) => self.a += 1,
            (Polarity::Pos, Polarity::Neg) => self.b += 1,
            (Polarity::Neg, Polarity::Pos) => self.c += 1,
            (Polarity::Neg, Polarity::Neg) => self.d += 1,
        }
    }
}

pub fn compute_confusion(predictions: &[Polarity], gold: &[Polarity]) -> Result<ConfusionMatrix> {
    if predictions.len() != gold.len() {
        return Err(Error::Argument(format!(
            "{} predictions for {} gold labels",
            predictions.len(),
            gold.len()
        )));
    }
    if predictions.is_empty() {
        return Err(Error::Argument("no predictions to evaluate".into()));
    }
    let mut m = ConfusionMatrix::default();
    for (&p, &g) in predictions.iter().zip(gold) {
        m.record(p, g);
    }
    Ok(m)
}

/// A ratio that is `None` when its denominator is zero.
pub type Metric = Option<f64>;

fn ratio(num: u64, den: u64) -> Metric {
    (den != 0).then(|| num as f64 / den as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub accuracy: Metric,
    pub precision_pos: Metric,
    pub precision_neg: Metric,
    pub recall_pos: Metric,
    pub recall_neg: Metric,
    pub cells: ConfusionMatrix,
}

pub fn metrics_report(m: &ConfusionMatrix) -> Result<MetricsReport> {
    if m.total() == 0 {
        return Err(Error::Argument("confusion matrix is empty".into()));
    }
    let ConfusionMatrix { a, b, c, d } = *m;
    Ok(MetricsReport {
        accuracy: ratio(a + d, a + b + c + d),
        precision_pos: ratio(a, a + b),
        precision_neg: ratio(d, c + d),
        recall_pos: ratio(a, a + c),
        recall_neg: ratio(d, b + d),
        cells: *m,
    })
}

/// Renders a fraction as a percentage with two decimals, `NA` if undefined.
pub fn format_percent(m: Metric) -> String {
    match m {
        Some(v) => format!("{:.2}", v * 100.0),
        None => "NA".to_string(),
    }
}

fn format_fraction(m: Metric) -> String {
    match m {
        Some(v) => format!("{v}"),
        None => "NA".to_string(),
    }
}

impl MetricsReport {
    pub const HEADER: &'static str = "a,b,c,d,accuracy,precision_pos,precision_neg,recall_pos,recall_neg";

    /// Data line matching [`MetricsReport::HEADER`], metrics as fractions.
    pub fn to_record(&self) -> String {
        let ConfusionMatrix { a, b, c, d } = self.cells;
        format!(
            "{a},{b},{c},{d},{},{},{},{},{}",
            format_fraction(self.accuracy),
            format_fraction(self.precision_pos),
            format_fraction(self.precision_neg),
            format_fraction(self.recall_pos),
            format_fraction(self.recall_neg),
        )
    }
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", Self::HEADER)?;
        writeln!(f, "{}", self.to_record())
    }
}
