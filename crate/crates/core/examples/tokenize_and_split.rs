//! Tokenize a few reviews and make a seeded, stratified train/test split.

use polarity::corpus::{split_train_test, tokenize, LabeledDocument, Polarity};

fn main() -> polarity::Result<()> {
    println!("{:?}", tokenize("It\u{2019}s a GOOD movie... 'Nice' story!"));

    let docs: Vec<LabeledDocument> = (0..8)
        .map(|i| LabeledDocument {
            text: format!("review number {i}"),
            label: if i % 2 == 0 { Polarity::Pos } else { Polarity::Neg },
            source_id: format!("demo:{i}"),
        })
        .collect();
    let split = split_train_test(&docs, 42)?;
    println!("train ({}):", split.train.len());
    for d in &split.train {
        println!("  {} {}", d.label, d.source_id);
    }
    println!("test ({}):", split.test.len());
    for d in &split.test {
        println!("  {} {}", d.label, d.source_id);
    }
    Ok(())
}
