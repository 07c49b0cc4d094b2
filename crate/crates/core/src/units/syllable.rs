//! Rule-based syllabifier. Ainu syllables take the shape V, CV, VC, or CVC;
//! every word is divided by four ordered rules:
//!
//! 1. a single-letter word is unchanged;
//! 2. adjacent same-class pairs (CC or VV) get a boundary between them,
//!    scanning left to right;
//! 3. a segment-initial vowel followed by at least two phones gets a
//!    boundary after it;
//! 4. boundaries are placed after CV repeatedly from the left until only
//!    CV or CVC remains.
//!
//! The procedure is not always morphologically right ("isermakus" comes out
//! i-ser-ma-kus rather than i-ser-mak-us) and that is accepted. On letter
//! clusters Ainu phonotactics never produce (three consonants in a row, a
//! word-initial CC), rule 2 can leave a bare single consonant; it is emitted
//! as its own segment rather than rejected.

use crate::alphabet::{is_consonant, is_letter, is_vowel};
use crate::error::{Error, Result};

/// Divides a letters-only word into syllables. Concatenating the output
/// reproduces the input exactly.
pub fn syllabify_word(word: &str) -> Result<Vec<String>> {
    if word.is_empty() {
        return Err(Error::InvalidTokenSequence("empty word".into()));
    }
    for (pos, ch) in word.chars().enumerate() {
        if !is_letter(ch) {
            return Err(Error::InvalidCharacter { ch, pos });
        }
    }
    let letters: Vec<char> = word.chars().collect();
    // Rule 1.
    if letters.len() == 1 {
        return Ok(vec![word.to_string()]);
    }
    // Rule 2: split between every CC and VV adjacency.
    let mut segments: Vec<Vec<char>> = Vec::new();
    let mut current = vec![letters[0]];
    for pair in letters.windows(2) {
        let same_class = is_vowel(pair[0]) == is_vowel(pair[1]);
        if same_class {
            segments.push(std::mem::take(&mut current));
        }
        current.push(pair[1]);
    }
    segments.push(current);

    let mut syllables = Vec::new();
    for segment in segments {
        split_segment(&segment, &mut syllables);
    }
    Ok(syllables)
}

/// Rules 3 and 4 on one alternating segment.
fn split_segment(segment: &[char], out: &mut Vec<String>) {
    let mut rest = segment;
    // Rule 3: segment-initial V followed by at least two phones.
    if rest.len() >= 3 && is_vowel(rest[0]) {
        out.push(rest[0].to_string());
        rest = &rest[1..];
    }
    // Rule 4: peel CV from the left until only CV or CVC is left.
    while rest.len() > 3 && is_consonant(rest[0]) {
        out.push(rest[..2].iter().collect());
        rest = &rest[2..];
    }
    if !rest.is_empty() {
        out.push(rest.iter().collect());
    }
}

/// True when `syllable` has one of the shapes V, CV, VC, CVC.
pub fn is_valid_syllable(syllable: &str) -> bool {
    let chars: Vec<char> = syllable.chars().collect();
    match chars.as_slice() {
        [v] => is_vowel(*v),
        [c, v] => (is_consonant(*c) && is_vowel(*v)) || (is_vowel(*c) && is_consonant(*v)),
        [c1, v, c2] => is_consonant(*c1) && is_vowel(*v) && is_consonant(*c2),
        _ => false,
    }
}
