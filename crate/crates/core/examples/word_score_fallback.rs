//! Word-score classification with nearest-word fallback for unseen tokens.

use polarity::corpus::{Polarity, TokenizedDocument};
use polarity::featsel::{select_top_n, WordScoreTable};
use polarity::knn::{jaccard_similarity, KnnOptions, WordScoreClassifier};

fn main() -> polarity::Result<()> {
    let train = [
        ("a wonderful, moving film", Polarity::Pos),
        ("wonderful cast and a lovely score", Polarity::Pos),
        ("a boring, tedious film", Polarity::Neg),
        ("tedious plot and boring dialogue", Polarity::Neg),
    ];
    let docs: Vec<TokenizedDocument> = train
        .iter()
        .map(|(t, l)| TokenizedDocument { label: *l, ..TokenizedDocument::from_text(t) })
        .collect();
    let table = WordScoreTable::from_training(&docs)?;
    let vocab = select_top_n(&table, usize::MAX);

    println!("jaccard(borring, boring) = {:.4}", jaccard_similarity("borring", "boring", 2)?);

    for fallback_enabled in [true, false] {
        let opts = KnnOptions { fallback_enabled, ..KnnOptions::default() };
        let clf = WordScoreClassifier::new(&table, &vocab, opts)?;
        let p = clf.classify_text("wonderfull but borring and tedius");
        println!("fallback {fallback_enabled}: {} (score {:.4})", p.label, p.review_score);
        for c in &p.diagnostics {
            let m = c.matched.as_deref().unwrap_or("-");
            println!("  {:<10} -> {:<10} sim {:.3}  {:+.4}", c.token, m, c.similarity, c.contribution);
        }
    }
    Ok(())
}
