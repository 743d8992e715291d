//! Train Naive Bayes on four short reviews and explain one prediction.

use polarity::corpus::{Polarity, TokenizedDocument};
use polarity::featsel::{select_top_n, WordScoreTable};
use polarity::nb::train_nb;

fn main() -> polarity::Result<()> {
    let train = [
        ("I liked the movie", Polarity::Pos),
        ("It's a good movie. Nice story.", Polarity::Pos),
        ("Hero's acting is bad but heroine looks good. Overall nice movie.", Polarity::Pos),
        ("Nice songs. But sadly boring ending.", Polarity::Neg),
    ];
    let docs: Vec<TokenizedDocument> = train
        .iter()
        .map(|(t, l)| TokenizedDocument { label: *l, ..TokenizedDocument::from_text(t) })
        .collect();
    let vocab = select_top_n(&WordScoreTable::from_training(&docs)?, usize::MAX);
    let model = train_nb(&docs, &vocab)?;

    let text = "I like the direction. But boring locations. Overall good movie";
    let p = model.classify_text(text);
    println!("{text}");
    println!("label {}  ln P(pos) {:.4}  ln P(neg) {:.4}", p.label, p.score(Polarity::Pos), p.score(Polarity::Neg));
    println!("posterior(pos) = {:.4}", p.posterior()[Polarity::Pos.index()]);
    for e in model.explain(&TokenizedDocument::from_text(text)) {
        if e.in_vocabulary {
            println!("  {:<10} {:+.4}", e.token, e.log_ratio);
        } else {
            println!("  {:<10} (unseen)", e.token);
        }
    }
    Ok(())
}
