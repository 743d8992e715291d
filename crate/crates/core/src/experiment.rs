//! Learning-curve experiment: train both classifiers on nested, stratified
//! subsamples of one fixed training partition and score them on the fixed
//! test partition, then write the results as CSV and SVG line charts.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::corpus::{
    class_seed, load_labeled_csv, load_polarity_files, shuffle_seeded, split_train_test, CorpusSplit,
    LabeledDocument, Polarity, TokenizedDocument,
};
use crate::error::{Error, Result};
use crate::featsel::{select_top_n, WordScoreTable, DEFAULT_TOP_N};
use crate::knn::{KnnOptions, WordScoreClassifier};
use crate::metrics::{format_percent, metrics_report, ConfusionMatrix, Metric, MetricsReport};
use crate::nb::train_nb;

pub const DEFAULT_TRAINING_SIZES: [usize; 10] = [100, 200, 500, 1000, 1500, 2000, 2500, 3000, 4000, 4500];

// Keeps subsample shuffles independent of the train/test shuffle.
const SUBSAMPLE_SALT: u64 = 0x5355_4253;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassifierKind {
    Nb,
    Knn,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 2] = [ClassifierKind::Nb, ClassifierKind::Knn];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassifierKind::Nb => "nb",
            ClassifierKind::Knn => "knn",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nb" => Ok(ClassifierKind::Nb),
            "knn" => Ok(ClassifierKind::Knn),
            other => Err(Error::Config(format!("unknown classifier '{other}' (expected nb or knn)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSource {
    PolarityFiles { pos: PathBuf, neg: PathBuf },
    Csv(PathBuf),
    Documents(Vec<LabeledDocument>),
}

impl DatasetSource {
    pub fn load(&self) -> Result<Vec<LabeledDocument>> {
        match self {
            DatasetSource::PolarityFiles { pos, neg } => load_polarity_files(pos, neg),
            DatasetSource::Csv(path) => load_labeled_csv(path),
            DatasetSource::Documents(docs) => Ok(docs.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub source: DatasetSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub datasets: Vec<Dataset>,
    pub seed: u64,
    pub training_sizes: Vec<usize>,
    pub top_n: usize,
    pub classifiers: Vec<ClassifierKind>,
    pub knn: KnnOptions,
}

impl ExperimentConfig {
    /// Default sizes, seed and classifiers for the given datasets.
    pub fn new(datasets: Vec<Dataset>) -> Self {
        ExperimentConfig {
            datasets,
            seed: 0,
            training_sizes: DEFAULT_TRAINING_SIZES.to_vec(),
            top_n: DEFAULT_TOP_N,
            classifiers: ClassifierKind::ALL.to_vec(),
            knn: KnnOptions::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.training_sizes.is_empty() {
            return Err(Error::Config("no training sizes".into()));
        }
        if self.training_sizes[0] == 0 {
            return Err(Error::Config("training sizes must be positive".into()));
        }
        if self.training_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("training sizes must be strictly ascending".into()));
        }
        if self.top_n == 0 {
            return Err(Error::Config("top-n must be positive".into()));
        }
        if self.classifiers.is_empty() {
            return Err(Error::Config("no classifiers selected".into()));
        }
        Ok(())
    }

    fn classifiers_sorted(&self) -> Vec<ClassifierKind> {
        let mut c = self.classifiers.clone();
        c.sort();
        c.dedup();
        c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearningCurveRow {
    pub dataset: String,
    pub classifier: ClassifierKind,
    pub training_size: usize,
    pub accuracy: Metric,
    pub precision_pos: Metric,
    pub precision_neg: Metric,
    pub recall_pos: Metric,
    pub recall_neg: Metric,
    pub cells: ConfusionMatrix,
}

impl LearningCurveRow {
    fn from_report(dataset: &str, classifier: ClassifierKind, training_size: usize, r: &MetricsReport) -> Self {
        LearningCurveRow {
            dataset: dataset.to_string(),
            classifier,
            training_size,
            accuracy: r.accuracy,
            precision_pos: r.precision_pos,
            precision_neg: r.precision_neg,
            recall_pos: r.recall_pos,
            recall_neg: r.recall_neg,
            cells: r.cells,
        }
    }

    pub fn metric(&self, m: MetricSelector) -> Metric {
        match m {
            MetricSelector::Accuracy => self.accuracy,
            MetricSelector::PrecisionPos => self.precision_pos,
            MetricSelector::PrecisionNeg => self.precision_neg,
            MetricSelector::RecallPos => self.recall_pos,
            MetricSelector::RecallNeg => self.recall_neg,
        }
    }
}

/// Stratified, nested subsample of a training partition.
///
/// Each class is shuffled once with a seed-derived stream; slots are then
/// dealt pos, neg, pos, ... (skipping an exhausted class) and filled from
/// the front of the shuffled lists. A smaller size is therefore always a
/// subset of a larger one under the same seed.
pub fn subsample_training(train: &[TokenizedDocument], size: usize, seed: u64) -> Result<Vec<TokenizedDocument>> {
    if size == 0 {
        return Err(Error::Argument("subsample size must be positive".into()));
    }
    if size > train.len() {
        return Err(Error::Argument(format!(
            "subsample size {size} exceeds training partition of {}",
            train.len()
        )));
    }
    let mut pools: [Vec<&TokenizedDocument>; 2] = [Vec::new(), Vec::new()];
    for doc in train {
        pools[doc.label.index()].push(doc);
    }
    for class in Polarity::ALL {
        shuffle_seeded(&mut pools[class.index()], class_seed(seed ^ SUBSAMPLE_SALT, class));
    }

    let mut taken = [0usize; 2];
    let mut out = Vec::with_capacity(size);
    let mut turn = 0usize;
    while out.len() < size {
        let c = turn % 2;
        turn += 1;
        if taken[c] < pools[c].len() {
            out.push(pools[c][taken[c]].clone());
            taken[c] += 1;
        }
    }
    Ok(out)
}

/// The subsample for one training size and the word-score table computed
/// from that subsample alone.
pub fn prepare_size(
    train: &[TokenizedDocument],
    size: usize,
    seed: u64,
) -> Result<(Vec<TokenizedDocument>, WordScoreTable)> {
    let sample = subsample_training(train, size, seed)?;
    let table = WordScoreTable::from_training(&sample)?;
    Ok((sample, table))
}

fn evaluate(
    dataset: &str,
    classifier: ClassifierKind,
    size: usize,
    gold: &[Polarity],
    predictions: Vec<Polarity>,
) -> Result<LearningCurveRow> {
    let mut m = ConfusionMatrix::default();
    for (p, g) in predictions.into_iter().zip(gold) {
        m.record(p, *g);
    }
    let report = metrics_report(&m)?;
    Ok(LearningCurveRow::from_report(dataset, classifier, size, &report))
}

fn run_size(config: &ExperimentConfig, name: &str, split: &CorpusSplit, size: usize) -> Result<Vec<LearningCurveRow>> {
    let context = |classifier: &str, e: Error| Error::Experiment {
        dataset: name.to_string(),
        size,
        classifier: classifier.to_string(),
        source: Box::new(e),
    };

    let (sample, table) = prepare_size(&split.train, size, split.seed).map_err(|e| context("-", e))?;
    let vocabulary = select_top_n(&table, config.top_n);
    let gold: Vec<Polarity> = split.test.iter().map(|d| d.label).collect();

    let mut rows = Vec::new();
    for kind in config.classifiers_sorted() {
        let row = match kind {
            ClassifierKind::Nb => train_nb(&sample, &vocabulary).and_then(|model| {
                let preds = split.test.iter().map(|d| model.classify(d).label).collect();
                evaluate(name, kind, size, &gold, preds)
            }),
            ClassifierKind::Knn => WordScoreClassifier::new(&table, &vocabulary, config.knn).and_then(|clf| {
                let preds = split.test.iter().map(|d| clf.classify(d).label).collect();
                evaluate(name, kind, size, &gold, preds)
            }),
        }
        .map_err(|e| context(kind.as_str(), e))?;
        rows.push(row);
    }
    Ok(rows)
}

/// Runs every configured size against an already prepared split.
pub fn run_on_split(config: &ExperimentConfig, name: &str, split: &CorpusSplit) -> Result<Vec<LearningCurveRow>> {
    config.validate()?;
    let largest = *config.training_sizes.last().expect("validated non-empty");
    if largest > split.train.len() {
        return Err(Error::Config(format!(
            "dataset {name}: training size {largest} exceeds training partition of {}",
            split.train.len()
        )));
    }
    let per_size: Vec<Vec<LearningCurveRow>> = config
        .training_sizes
        .par_iter()
        .map(|&size| run_size(config, name, split, size))
        .collect::<Result<_>>()?;

    let mut rows: Vec<LearningCurveRow> = per_size.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        a.classifier
            .cmp(&b.classifier)
            .then(a.training_size.cmp(&b.training_size))
    });
    Ok(rows)
}

/// Loads and splits every dataset once, then produces one row per
/// (dataset, classifier, training size), ordered in that nesting.
pub fn run_learning_curve(config: &ExperimentConfig) -> Result<Vec<LearningCurveRow>> {
    config.validate()?;
    if config.datasets.is_empty() {
        return Err(Error::Config("no datasets configured".into()));
    }
    let mut rows = Vec::new();
    for dataset in &config.datasets {
        let docs = dataset.source.load()?;
        let split = split_train_test(&docs, config.seed)?;
        rows.extend(run_on_split(config, &dataset.name, &split)?);
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "dataset,classifier,training_size,accuracy,precision_pos,precision_neg,recall_pos,recall_neg";

/// Learning-curve rows as CSV text: percentages with two decimals, `NA`
/// for undefined metrics, LF line endings.
pub fn rows_to_csv(rows: &[LearningCurveRow]) -> String {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    wtr.write_record(CSV_HEADER.split(',')).expect("in-memory write");
    for r in rows {
        wtr.write_record([
            r.dataset.clone(),
            r.classifier.to_string(),
            r.training_size.to_string(),
            format_percent(r.accuracy),
            format_percent(r.precision_pos),
            format_percent(r.precision_neg),
            format_percent(r.recall_pos),
            format_percent(r.recall_neg),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn emit_csv(rows: &[LearningCurveRow], path: &Path) -> Result<()> {
    fs::write(path, rows_to_csv(rows)).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricSelector {
    Accuracy,
    PrecisionPos,
    PrecisionNeg,
    RecallPos,
    RecallNeg,
}

impl MetricSelector {
    pub const ALL: [MetricSelector; 5] = [
        MetricSelector::Accuracy,
        MetricSelector::PrecisionPos,
        MetricSelector::PrecisionNeg,
        MetricSelector::RecallPos,
        MetricSelector::RecallNeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricSelector::Accuracy => "accuracy",
            MetricSelector::PrecisionPos => "precision_pos",
            MetricSelector::PrecisionNeg => "precision_neg",
            MetricSelector::RecallPos => "recall_pos",
            MetricSelector::RecallNeg => "recall_neg",
        }
    }

    fn title(self) -> &'static str {
        match self {
            MetricSelector::Accuracy => "Accuracy",
            MetricSelector::PrecisionPos => "Precision (positive)",
            MetricSelector::PrecisionNeg => "Precision (negative)",
            MetricSelector::RecallPos => "Recall (positive)",
            MetricSelector::RecallNeg => "Recall (negative)",
        }
    }
}

impl FromStr for MetricSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricSelector::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown metric '{s}'")))
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

struct Series<'a> {
    dataset: &'a str,
    classifier: ClassifierKind,
    points: Vec<(usize, f64)>,
}

/// Renders a standalone SVG line chart of one metric against training
/// size, one polyline per (dataset, classifier) series.
pub fn render_svg_chart(rows: &[LearningCurveRow], metric: MetricSelector) -> Result<String> {
    let mut series: Vec<Series> = Vec::new();
    for r in rows {
        let Some(v) = r.metric(metric) else { continue };
        match series
            .iter_mut()
            .find(|s| s.dataset == r.dataset && s.classifier == r.classifier)
        {
            Some(s) => s.points.push((r.training_size, v * 100.0)),
            None => series.push(Series {
                dataset: &r.dataset,
                classifier: r.classifier,
                points: vec![(r.training_size, v * 100.0)],
            }),
        }
    }
    if series.is_empty() {
        return Err(Error::Argument(format!("no data for metric {}", metric.name())));
    }
    for s in &mut series {
        s.points.sort_by_key(|p| p.0);
    }

    let x_min = series.iter().flat_map(|s| &s.points).map(|p| p.0).min().unwrap_or(0) as f64;
    let x_max = series.iter().flat_map(|s| &s.points).map(|p| p.0).max().unwrap_or(0) as f64;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| {
        if x_max > x_min {
            LEFT + (x - x_min) / (x_max - x_min) * plot_w
        } else {
            LEFT + plot_w / 2.0
        }
    };
    let sy = |y: f64| TOP + (100.0 - y) / 100.0 * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="15">{} by training size</text>"#,
        LEFT + plot_w / 2.0,
        metric.title()
    );

    // y grid and ticks every 20%
    for tick in (0..=100).step_by(20) {
        let y = sy(tick as f64);
        let _ = writeln!(
            w,
            r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{tick}</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
    }

    // x ticks at the measured sizes, skipping labels that would collide
    let mut sizes: Vec<usize> = series.iter().flat_map(|s| s.points.iter().map(|p| p.0)).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut last_label: Option<f64> = None;
    for size in sizes {
        let x = sx(size as f64);
        let _ = writeln!(
            w,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333333"/>"##,
            TOP + plot_h,
            TOP + plot_h + 5.0
        );
        if last_label.is_none_or(|l| x - l >= 36.0) {
            let _ = writeln!(
                w,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{size}</text>"#,
                TOP + plot_h + 18.0
            );
            last_label = Some(x);
        }
    }

    let _ = writeln!(
        w,
        r##"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#333333"/>"##
    );
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Training size (reviews)</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 18.0
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{} (%)</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        metric.title()
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let label = escape_xml(&format!("{} / {}", s.dataset, s.classifier));
        let points: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x as f64), sy(y)))
            .collect();
        let _ = writeln!(
            w,
            r#"<polyline data-series="{label}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            points.join(" ")
        );
        for &(x, y) in &s.points {
            let _ = writeln!(
                w,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="{color}"/>"#,
                sx(x as f64),
                sy(y)
            );
        }
        let ly = TOP + 10.0 + i as f64 * 20.0;
        let lx = WIDTH - RIGHT + 16.0;
        let _ = writeln!(
            w,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}">{label}</text>"#,
            lx + 30.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_svg_chart(rows: &[LearningCurveRow], metric: MetricSelector, path: &Path) -> Result<()> {
    let svg = render_svg_chart(rows, metric)?;
    fs::write(path, svg).map_err(|e| Error::io(path, e))
}

/// Fixed-width text table of the rows, one line per row.
pub fn summary_table(rows: &[LearningCurveRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<12} {:<4} {:>6} {:>9} {:>9} {:>9} {:>9} {:>9} {:>8} {:>9}",
        "dataset", "clf", "size", "accuracy", "prec_pos", "prec_neg", "rec_pos", "rec_neg", "correct", "incorrect"
    );
    for r in rows {
        let correct = r.cells.a + r.cells.d;
        let incorrect = r.cells.b + r.cells.c;
        let _ = writeln!(
            out,
            "{:<12} {:<4} {:>6} {:>9} {:>9} {:>9} {:>9} {:>9} {:>8} {:>9}",
            r.dataset,
            r.classifier.as_str(),
            r.training_size,
            format_percent(r.accuracy),
            format_percent(r.precision_pos),
            format_percent(r.precision_neg),
            format_percent(r.recall_pos),
            format_percent(r.recall_neg),
            correct,
            incorrect
        );
    }
    out
}
