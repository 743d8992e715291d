//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O, 3 data or format, 4 internal
//! invariant. Results go to standard output, diagnostics to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{load_labeled_csv, load_polarity_files, split_train_test, LabeledDocument, TokenizedDocument};
use crate::error::{Error, Result};
use crate::experiment::{
    emit_csv, emit_svg_chart, run_learning_curve, summary_table, ClassifierKind, Dataset, DatasetSource,
    ExperimentConfig, MetricSelector, DEFAULT_TRAINING_SIZES,
};
use crate::featsel::{build_frequency_tables, ranked, score_vocabulary, select_top_n, DEFAULT_TOP_N};
use crate::knn::{KnnOptions, WordScoreClassifier, DEFAULT_NGRAM_SIZE, DEFAULT_SIMILARITY_THRESHOLD};
use crate::metrics::{metrics_report, ConfusionMatrix, MetricsReport};
use crate::model::{self, SavedModel};
use crate::nb::train_nb;

pub const EXIT_USAGE: i32 = 1;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "POLARITY_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "polarity", version, about = "Sentiment polarity classification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stratified 3/4 train, 1/4 test split written as train.csv and test.csv
    Split(SplitArgs),
    /// Chi-squared word scores as CSV, best first
    ScoreWords(ScoreWordsArgs),
    /// Train a model and save it as JSON
    Train(TrainArgs),
    /// Label documents with a saved model
    Classify(ClassifyArgs),
    /// Confusion matrix and metrics of a saved model on labeled data
    Evaluate(EvaluateArgs),
    /// Learning-curve experiment: curve.csv plus one SVG chart per metric
    Curve(CurveArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Positive reviews, one per line
    #[arg(long, value_name = "FILE")]
    pos: Option<PathBuf>,
    /// Negative reviews, one per line
    #[arg(long, value_name = "FILE")]
    neg: Option<PathBuf>,
    /// Labeled CSV with header `label,text`
    #[arg(long, value_name = "FILE", conflicts_with_all = ["pos", "neg"])]
    csv: Option<PathBuf>,
}

enum Input {
    Files { pos: PathBuf, neg: PathBuf },
    Csv(PathBuf),
}

impl InputArgs {
    fn resolve(&self) -> std::result::Result<Input, String> {
        match (&self.csv, &self.pos, &self.neg) {
            (Some(csv), _, _) => Ok(Input::Csv(csv.clone())),
            (None, Some(pos), Some(neg)) => Ok(Input::Files {
                pos: pos.clone(),
                neg: neg.clone(),
            }),
            (None, Some(_), None) => Err("--neg is required with --pos".into()),
            (None, None, Some(_)) => Err("--pos is required with --neg".into()),
            (None, None, None) => Err("either --pos FILE --neg FILE or --csv FILE is required".into()),
        }
    }
}

impl Input {
    fn load(&self) -> Result<Vec<LabeledDocument>> {
        match self {
            Input::Files { pos, neg } => load_polarity_files(pos, neg),
            Input::Csv(path) => load_labeled_csv(path),
        }
    }

    fn default_name(&self) -> String {
        let path = match self {
            Input::Files { pos, .. } => pos.parent().and_then(Path::file_name),
            Input::Csv(p) => p.file_stem(),
        };
        path.map(|n| n.to_string_lossy().into_owned())
            .filter(|n| !n.is_empty())
            .unwrap_or_else(|| "corpus".into())
    }
}

#[derive(Debug, Args)]
struct KnnArgs {
    /// Minimum Jaccard similarity for the nearest-word fallback
    #[arg(long, default_value_t = DEFAULT_SIMILARITY_THRESHOLD)]
    threshold: f64,
    /// Character n-gram size for the Jaccard similarity
    #[arg(long, default_value_t = DEFAULT_NGRAM_SIZE)]
    ngram: usize,
    /// Disable the nearest-word fallback for unknown words
    #[arg(long)]
    no_fallback: bool,
}

impl KnnArgs {
    fn options(&self) -> KnnOptions {
        KnnOptions {
            fallback_enabled: !self.no_fallback,
            similarity_threshold: self.threshold,
            ngram_size: self.ngram,
        }
    }
}

#[derive(Debug, Args)]
struct SplitArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory
    #[arg(long, env = OUT_DIR_ENV, default_value = "out")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ScoreWordsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_TOP_N)]
    top_n: usize,
    /// Output file (standard output if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassifierArg {
    Nb,
    Knn,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "nb")]
    classifier: ClassifierArg,
    #[arg(long, default_value_t = DEFAULT_TOP_N)]
    top_n: usize,
    #[command(flatten)]
    knn: KnnArgs,
    /// Model file to write
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    /// Classify this text instead of reading documents
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    /// One document per line (standard input if neither this nor --text)
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Print per-token contributions after each line
    #[arg(long)]
    explain: bool,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    #[command(flatten)]
    input: InputArgs,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Dataset name used in the CSV and chart file names
    #[arg(long)]
    name: Option<String>,
    /// Comma-separated, strictly ascending training sizes
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOP_N)]
    top_n: usize,
    /// Comma-separated subset of nb,knn
    #[arg(long, value_delimiter = ',', default_values = ["nb", "knn"])]
    classifiers: Vec<String>,
    #[command(flatten)]
    knn: KnnArgs,
    /// Output directory
    #[arg(long, env = OUT_DIR_ENV, default_value = "out")]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Runs the CLI with explicit streams and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    let result = match cli.command {
        Command::Split(a) => cmd_split(a, stdout),
        Command::ScoreWords(a) => cmd_score_words(a, stdout),
        Command::Train(a) => cmd_train(a, stdout),
        Command::Classify(a) => cmd_classify(a, stdin, stdout),
        Command::Evaluate(a) => cmd_evaluate(a, stdout),
        Command::Curve(a) => cmd_curve(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            let _ = writeln!(stderr, "run with --help for usage");
            EXIT_USAGE
        }
        Err(Failure::Run(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn resolve(input: &InputArgs) -> std::result::Result<Input, Failure> {
    input.resolve().map_err(Failure::Usage)
}

fn out_io(stdout_err: std::io::Error) -> Failure {
    Failure::Run(Error::io("<stdout>", stdout_err))
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn tokenized_csv(docs: &[TokenizedDocument]) -> String {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    wtr.write_record(["label", "text"]).expect("in-memory write");
    for d in docs {
        wtr.write_record([d.label.as_str(), &d.tokens.join(" ")])
            .expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn cmd_split(args: SplitArgs, stdout: &mut dyn Write) -> CmdResult {
    let input = resolve(&args.input)?;
    let docs = input.load()?;
    let split = split_train_test(&docs, args.seed)?;
    create_dir(&args.out)?;
    // Documents with no tokens cannot be re-read from CSV; keep them out.
    let keep = |v: &[TokenizedDocument]| v.iter().filter(|d| !d.tokens.is_empty()).cloned().collect::<Vec<_>>();
    for (name, part) in [("train.csv", keep(&split.train)), ("test.csv", keep(&split.test))] {
        let path = args.out.join(name);
        fs::write(&path, tokenized_csv(&part)).map_err(|e| Error::io(&path, e))?;
    }
    writeln!(
        stdout,
        "train {} documents, test {} documents (seed {}) -> {}",
        split.train.len(),
        split.test.len(),
        split.seed,
        args.out.display()
    )
    .map_err(out_io)
}

fn cmd_score_words(args: ScoreWordsArgs, stdout: &mut dyn Write) -> CmdResult {
    let input = resolve(&args.input)?;
    let docs: Vec<TokenizedDocument> = input.load()?.iter().map(TokenizedDocument::from_labeled).collect();
    let (ft, cft) = build_frequency_tables(&docs);
    let table = score_vocabulary(&cft, &ft)?;

    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    wtr.write_record(["word", "chi2_pos", "chi2_neg", "total_score", "signed_score", "count"])
        .expect("in-memory write");
    for (word, s) in ranked(&table).into_iter().take(args.top_n) {
        wtr.write_record([
            word.clone(),
            s.chi2_pos.to_string(),
            s.chi2_neg.to_string(),
            s.total_score.to_string(),
            s.signed_score.to_string(),
            s.count.to_string(),
        ])
        .expect("in-memory write");
    }
    let body = wtr.into_inner().expect("in-memory flush");
    match args.out {
        Some(path) => fs::write(&path, body).map_err(|e| Error::io(&path, e))?,
        None => stdout.write_all(&body).map_err(out_io)?,
    }
    Ok(())
}

fn cmd_train(args: TrainArgs, stdout: &mut dyn Write) -> CmdResult {
    let input = resolve(&args.input)?;
    if args.top_n == 0 {
        return Err(Failure::Usage("--top-n must be positive".into()));
    }
    let docs: Vec<TokenizedDocument> = input.load()?.iter().map(TokenizedDocument::from_labeled).collect();
    let (ft, cft) = build_frequency_tables(&docs);
    let table = score_vocabulary(&cft, &ft)?;
    let vocabulary = select_top_n(&table, args.top_n);
    let saved = match args.classifier {
        ClassifierArg::Nb => SavedModel::NaiveBayes(train_nb(&docs, &vocabulary)?),
        ClassifierArg::Knn => SavedModel::WordScore(WordScoreClassifier::new(&table, &vocabulary, args.knn.options())?),
    };
    model::save(&saved, &args.out)?;
    writeln!(
        stdout,
        "trained {} model on {} documents, vocabulary {} -> {}",
        saved.kind(),
        docs.len(),
        vocabulary.len(),
        args.out.display()
    )
    .map_err(out_io)
}

fn write_explanation(saved: &SavedModel, doc: &TokenizedDocument, stdout: &mut dyn Write) -> std::io::Result<()> {
    match saved {
        SavedModel::WordScore(clf) => {
            let p = clf.classify(doc);
            for d in &p.diagnostics {
                writeln!(
                    stdout,
                    "{}\t{}\t{}\t{}",
                    d.token,
                    d.matched.as_deref().unwrap_or("-"),
                    d.similarity,
                    d.contribution
                )?;
            }
            writeln!(stdout, "score\t{}", p.review_score)?;
            writeln!(stdout, "label\t{}", p.label)
        }
        SavedModel::NaiveBayes(m) => {
            for e in m.explain(doc) {
                let (matched, sim) = if e.in_vocabulary { (e.token.as_str(), 1.0) } else { ("-", 0.0) };
                writeln!(stdout, "{}\t{}\t{}\t{}", e.token, matched, sim, e.log_ratio)?;
            }
            let p = m.classify(doc);
            writeln!(stdout, "score\t{}", p.log_odds())?;
            writeln!(stdout, "label\t{}", p.label)
        }
    }
}

fn classify_line(saved: &SavedModel, text: &str, explain: bool, stdout: &mut dyn Write) -> std::io::Result<()> {
    let doc = TokenizedDocument::from_text(text);
    let decision = saved.decide(&doc);
    writeln!(stdout, "{}\t{}", decision.label, decision.score)?;
    if explain {
        write_explanation(saved, &doc, stdout)?;
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> CmdResult {
    let saved = model::load(&args.model)?;
    if let Some(text) = &args.text {
        return classify_line(&saved, text, args.explain, stdout).map_err(out_io);
    }
    let mut owned;
    let reader: &mut dyn BufRead = match &args.input {
        Some(path) => {
            let f = fs::File::open(path).map_err(|e| Error::io(path, e))?;
            owned = std::io::BufReader::new(f);
            &mut owned
        }
        None => stdin,
    };
    let source = args
        .input
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "<stdin>".into());
    for (i, line) in reader.split(b'\n').enumerate() {
        let line = line.map_err(|e| Error::io(&source, e))?;
        let line = line.strip_suffix(b"\r").unwrap_or(&line);
        let text = std::str::from_utf8(line).map_err(|_| Error::Decode {
            path: PathBuf::from(&source),
            line: i + 1,
        })?;
        classify_line(&saved, text, args.explain, stdout).map_err(out_io)?;
    }
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs, stdout: &mut dyn Write) -> CmdResult {
    let saved = model::load(&args.model)?;
    let input = resolve(&args.input)?;
    let docs = input.load()?;
    if docs.is_empty() {
        return Err(Error::EmptyCorpus.into());
    }
    let mut m = ConfusionMatrix::default();
    for doc in &docs {
        let t = TokenizedDocument::from_labeled(doc);
        m.record(saved.decide(&t).label, doc.label);
    }
    let report: MetricsReport = metrics_report(&m)?;
    let text = report.to_string();
    if let Some(path) = &args.out {
        fs::write(path, &text).map_err(|e| Error::io(path, e))?;
    }
    stdout.write_all(text.as_bytes()).map_err(out_io)
}

fn cmd_curve(args: CurveArgs, stdout: &mut dyn Write) -> CmdResult {
    let input = resolve(&args.input)?;
    let mut classifiers = Vec::new();
    for c in &args.classifiers {
        classifiers.push(c.parse::<ClassifierKind>().map_err(|e| Failure::Usage(e.to_string()))?);
    }
    let name = args.name.clone().unwrap_or_else(|| input.default_name());
    if name.is_empty() || name.contains(['/', '\\']) {
        return Err(Failure::Usage(format!("invalid dataset name '{name}'")));
    }
    let source = match &input {
        Input::Files { pos, neg } => DatasetSource::PolarityFiles {
            pos: pos.clone(),
            neg: neg.clone(),
        },
        Input::Csv(p) => DatasetSource::Csv(p.clone()),
    };
    let config = ExperimentConfig {
        datasets: vec![Dataset {
            name: name.clone(),
            source,
        }],
        seed: args.seed,
        training_sizes: args.sizes.clone().unwrap_or_else(|| DEFAULT_TRAINING_SIZES.to_vec()),
        top_n: args.top_n,
        classifiers,
        knn: args.knn.options(),
    };
    let rows = run_learning_curve(&config)?;

    create_dir(&args.out)?;
    let mut written: Vec<PathBuf> = Vec::new();
    let outcome = (|| -> Result<()> {
        let csv_path = args.out.join("curve.csv");
        written.push(csv_path.clone());
        emit_csv(&rows, &csv_path)?;
        for metric in MetricSelector::ALL {
            let path = args.out.join(format!("{name}_{}.svg", metric.name()));
            written.push(path.clone());
            emit_svg_chart(&rows, metric, &path)?;
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        for path in &written {
            let _ = fs::remove_file(path);
        }
        return Err(e.into());
    }

    stdout.write_all(summary_table(&rows).as_bytes()).map_err(out_io)?;
    writeln!(stdout, "wrote {} files to {}", written.len(), args.out.display()).map_err(out_io)
}
