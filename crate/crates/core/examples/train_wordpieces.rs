//! Train a unigram word-piece model on a small corpus; show the most
//! probable pieces and how they segment unseen words.
//!
//!     cargo run --example train_wordpieces

use ainukit::wordpiece::{self, split_symbols, TrainConfig};

fn main() -> ainukit::Result<()> {
    let corpus = [
        "nen poka apkas an mak an kusu",
        "apkas an wa isam an",
        "nen poka nen poka kusu",
        "mak an kusu apkas",
        "isam an wa nen an",
    ];
    let config = TrainConfig { target_size: 50, ..TrainConfig::default() };
    let (model, report) = wordpiece::train(&corpus, &config)?;
    println!(
        "{} pieces after {} rounds, log-likelihood {:.4}\n",
        model.len(),
        report.rounds,
        report.final_log_likelihood
    );

    let mut pieces: Vec<(&str, f64)> = model.iter().collect();
    pieces.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(b.0)));
    println!("top pieces:");
    for (piece, lp) in pieces.iter().take(10) {
        println!("  {piece:<10} {lp:.4}");
    }

    println!("\nsegmentations:");
    for word in ["apkas", "makan", "pokankusu"] {
        let symbols = split_symbols(word);
        println!("  {word:<10} -> {}", model.viterbi_segment(&symbols)?.join(" "));
    }
    Ok(())
}
