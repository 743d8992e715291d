//! Save a trained model to JSON, load it back and classify with it.

use polarity::corpus::{Polarity, TokenizedDocument};
use polarity::featsel::{select_top_n, WordScoreTable};
use polarity::model::{from_json, to_json, SavedModel};
use polarity::nb::train_nb;

fn main() -> polarity::Result<()> {
    let docs: Vec<TokenizedDocument> = [
        ("great fun", Polarity::Pos),
        ("loved it", Polarity::Pos),
        ("awful mess", Polarity::Neg),
    ]
    .iter()
    .map(|(t, l)| TokenizedDocument { label: *l, ..TokenizedDocument::from_text(t) })
    .collect();
    let vocab = select_top_n(&WordScoreTable::from_training(&docs)?, 100);
    let model = SavedModel::NaiveBayes(train_nb(&docs, &vocab)?);

    let json = to_json(&model);
    println!("{json}");
    let back = from_json(&json)?;
    assert_eq!(back, model);
    let d = back.decide(&TokenizedDocument::from_text("what fun"));
    println!("{} model says {} ({:.4})", back.kind(), d.label, d.score);
    Ok(())
}
