//! Score a small vocabulary with class-wise chi-squared and rank it.

use polarity::corpus::{Polarity, TokenizedDocument};
use polarity::featsel::{chi_squared, ranked, select_top_n, WordScoreTable};

fn main() -> polarity::Result<()> {
    // word appears 30 times in 100 class tokens, 40 times in 1000 overall
    println!("chi2(30, 40, 100, 1000) = {:.4}", chi_squared(30, 40, 100, 1000)?);

    let docs = [
        ("loved it great acting", Polarity::Pos),
        ("great fun loved the songs", Polarity::Pos),
        ("dull plot awful acting", Polarity::Neg),
        ("awful and dull", Polarity::Neg),
    ];
    let docs: Vec<TokenizedDocument> = docs
        .iter()
        .map(|(t, l)| TokenizedDocument { label: *l, ..TokenizedDocument::from_text(t) })
        .collect();
    let table = WordScoreTable::from_training(&docs)?;
    println!("{:<8} {:>9} {:>9}", "word", "total", "signed");
    for (word, s) in ranked(&table) {
        println!("{word:<8} {:>9.4} {:>9.4}", s.total_score, s.signed_score);
    }
    println!("top 3: {:?}", select_top_n(&table, 3));
    Ok(())
}
