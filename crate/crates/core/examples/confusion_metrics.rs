//! Build a confusion matrix from predictions and print the report.

use polarity::corpus::Polarity::{Neg, Pos};
use polarity::metrics::{compute_confusion, format_percent, metrics_report};

fn main() -> polarity::Result<()> {
    let predicted = [Pos, Pos, Neg, Pos, Neg, Neg, Pos, Neg];
    let gold = [Pos, Neg, Neg, Pos, Pos, Neg, Pos, Neg];
    let m = compute_confusion(&predicted, &gold)?;
    let r = metrics_report(&m)?;
    print!("{r}");
    println!("accuracy {}%", format_percent(r.accuracy));
    println!("recall(pos) {}%", format_percent(r.recall_pos));
    Ok(())
}
