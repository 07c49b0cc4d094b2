//! The transcription alphabet: sixteen native Roman letters, four extra
//! consonants for Japanese borrowings, and the structural symbols shared by
//! every modeling unit.

/// The sixteen native letters plus `{b, d, g, z}`.
pub const LETTERS: [char; 20] = [
    'a', 'c', 'e', 'h', 'i', 'k', 'm', 'n', 'o', 'p', 'r', 's', 't', 'u', 'w', 'y', 'b', 'd', 'g',
    'z',
];

pub const VOWELS: [char; 5] = ['a', 'e', 'i', 'o', 'u'];

/// Word-boundary marker inserted by the phone and syllable tokenizers and
/// glued as a prefix onto word-initial word pieces.
pub const WB: &str = "<wb>";
/// Replacement for out-of-vocabulary words in the word scheme.
pub const UNK: &str = "<unk>";
pub const SOS: &str = "<sos>";
pub const EOS: &str = "<eos>";
/// Connects a verb and a personal affix; kept in text, soundless.
pub const EQ: char = '=';

pub fn is_letter(c: char) -> bool {
    LETTERS.contains(&c)
}

pub fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c)
}

pub fn is_consonant(c: char) -> bool {
    is_letter(c) && !is_vowel(c)
}
