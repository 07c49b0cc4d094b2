//! Tokenize one sentence under all four modeling units and detokenize back.
//!
//!     cargo run --example tokenize_units

use ainukit::units::{build_word_vocab, detokenize, tokenize, UnitScheme};
use ainukit::wordpiece::{self, TrainConfig};

fn main() -> ainukit::Result<()> {
    let sentence = "a=saha i=kokopan wa";
    // A tiny corpus deliberately missing "kokopan" so the word scheme shows
    // its <unk> fallback.
    let corpus = ["a=saha i=saha wa", "saha wa a", "i wa a=saha"];
    // The piece model trains on a little more text so it covers the letters
    // of the unseen word.
    let wp_corpus = ["a=saha i=saha wa", "saha wa a", "i wa a=saha", "pon kane okari nukar"];

    let vocab = build_word_vocab(&corpus, 1);
    let config = TrainConfig { target_size: 40, ..TrainConfig::default() };
    let (model, _) = wordpiece::train(&wp_corpus, &config)?;

    let schemes: [(&str, UnitScheme); 4] = [
        ("phone", UnitScheme::Phone),
        ("syllable", UnitScheme::Syllable),
        ("word piece", UnitScheme::Wordpiece(&model)),
        ("word", UnitScheme::Word(&vocab)),
    ];
    println!("original    {sentence}");
    for (name, scheme) in schemes {
        let seq = tokenize(sentence, scheme)?;
        println!("{name:<11} {}", seq.to_line());
        if name != "word" {
            assert_eq!(detokenize(&seq)?, sentence);
        }
    }
    Ok(())
}
