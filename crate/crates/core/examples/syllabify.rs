//! Rule-based syllabification: every output syllable has one of the shapes
//! V, CV, VC, or CVC, and concatenating them restores the word.
//!
//!     cargo run --example syllabify [words...]

use std::env;

use ainukit::units::syllabify_word;

fn main() -> ainukit::Result<()> {
    let mut words: Vec<String> = env::args().skip(1).collect();
    if words.is_empty() {
        words = ["isermakus", "kokopan", "apkas", "uymam", "a", "pirka"]
            .map(String::from)
            .to_vec();
    }
    for word in &words {
        println!("{word:<12} -> {}", syllabify_word(word)?.join(" "));
    }
    Ok(())
}
