//! The four modeling units: phone, syllable, word piece, and word.
//!
//! Every tokenizer consumes normalized text (see [`crate::corpus`]) and every
//! unit can be rewritten back into word-level surface text with
//! [`detokenize`], which is how unit-level hypotheses are scored for WER.

mod syllable;

pub use syllable::{is_valid_syllable, syllabify_word};

use std::collections::BTreeMap;

use crate::alphabet::{self, EQ, UNK, WB};
use crate::error::{Error, Result};
use crate::wordpiece::UnigramModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Phone,
    Syllable,
    Wordpiece,
    Word,
}

/// A unit scheme plus the resources it needs to tokenize.
#[derive(Debug, Clone, Copy)]
pub enum UnitScheme<'a> {
    Phone,
    Syllable,
    Wordpiece(&'a UnigramModel),
    Word(&'a WordVocabulary),
}

impl UnitScheme<'_> {
    pub fn scheme(&self) -> Scheme {
        match self {
            UnitScheme::Phone => Scheme::Phone,
            UnitScheme::Syllable => Scheme::Syllable,
            UnitScheme::Wordpiece(_) => Scheme::Wordpiece,
            UnitScheme::Word(_) => Scheme::Word,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    pub scheme: Scheme,
    pub tokens: Vec<String>,
}

impl TokenSequence {
    /// Space-separated token line, structural symbols spelled literally.
    pub fn to_line(&self) -> String {
        self.tokens.join(" ")
    }

    pub fn from_line(scheme: Scheme, line: &str) -> Self {
        TokenSequence {
            scheme,
            tokens: line.split_whitespace().map(str::to_string).collect(),
        }
    }
}

/// One space-delimited word decomposed into letter runs and `=` connectors.
fn word_elements(word: &str) -> Vec<&str> {
    let mut elements = Vec::new();
    let mut start = 0;
    for (i, ch) in word.char_indices() {
        if ch == EQ {
            if i > start {
                elements.push(&word[start..i]);
            }
            elements.push(&word[i..i + 1]);
            start = i + 1;
        }
    }
    if start < word.len() {
        elements.push(&word[start..]);
    }
    elements
}

fn check_normalized(text: &str) -> Result<()> {
    for (pos, ch) in text.chars().enumerate() {
        if !(alphabet::is_letter(ch) || ch == EQ || ch == ' ') {
            return Err(Error::InvalidCharacter { ch, pos });
        }
    }
    Ok(())
}

pub fn tokenize(text: &str, scheme: UnitScheme<'_>) -> Result<TokenSequence> {
    match scheme {
        UnitScheme::Phone => tokenize_phone(text),
        UnitScheme::Syllable => tokenize_syllable(text),
        UnitScheme::Wordpiece(model) => tokenize_wordpiece(text, model),
        UnitScheme::Word(vocab) => Ok(tokenize_word(text, vocab)),
    }
}

/// Single letters as tokens, `=` standalone, `<wb>` between words.
pub fn tokenize_phone(text: &str) -> Result<TokenSequence> {
    check_normalized(text)?;
    let mut tokens = Vec::new();
    for (wi, word) in text.split_whitespace().enumerate() {
        if wi > 0 {
            tokens.push(WB.to_string());
        }
        for element in word_elements(word) {
            if element == "=" {
                tokens.push("=".to_string());
            } else {
                tokens.extend(element.chars().map(|c| c.to_string()));
            }
        }
    }
    Ok(TokenSequence { scheme: Scheme::Phone, tokens })
}

/// Syllables as tokens, `=` standalone, `<wb>` between words.
pub fn tokenize_syllable(text: &str) -> Result<TokenSequence> {
    check_normalized(text)?;
    let mut tokens = Vec::new();
    for (wi, word) in text.split_whitespace().enumerate() {
        if wi > 0 {
            tokens.push(WB.to_string());
        }
        for element in word_elements(word) {
            if element == "=" {
                tokens.push("=".to_string());
            } else {
                tokens.extend(syllabify_word(element)?);
            }
        }
    }
    Ok(TokenSequence { scheme: Scheme::Syllable, tokens })
}

/// Word-piece tokens; `<wb>` is glued as a prefix onto word-initial pieces,
/// every space-delimited word included (also the first).
pub fn tokenize_wordpiece(text: &str, model: &UnigramModel) -> Result<TokenSequence> {
    check_normalized(text)?;
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        let mut symbols = vec![WB.to_string()];
        symbols.extend(word.chars().map(|c| c.to_string()));
        tokens.extend(model.viterbi_segment(&symbols)?);
    }
    Ok(TokenSequence { scheme: Scheme::Wordpiece, tokens })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordVocabulary {
    /// Retained word → training-text count. `=` and `<unk>` are always present.
    pub counts: BTreeMap<String, u64>,
    pub min_count: u64,
}

impl WordVocabulary {
    pub fn contains(&self, word: &str) -> bool {
        self.counts.contains_key(word)
    }

    /// One `word<TAB>count` line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (word, count) in &self.counts {
            out.push_str(word);
            out.push('\t');
            out.push_str(&count.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let (word, count) = line.split_once('\t').ok_or(Error::MalformedFile {
                what: "vocabulary",
                line: i + 1,
                detail: "expected word<TAB>count".into(),
            })?;
            let count: u64 = count.parse().map_err(|e| Error::MalformedFile {
                what: "vocabulary",
                line: i + 1,
                detail: format!("bad count: {e}"),
            })?;
            counts.insert(word.to_string(), count);
        }
        counts.entry(EQ.to_string()).or_insert(0);
        counts.entry(UNK.to_string()).or_insert(0);
        Ok(WordVocabulary { counts, min_count: 0 })
    }
}

/// Counts words (with `=` split out as its own word) over normalized lines
/// and keeps those occurring at least `min_count` times.
pub fn build_word_vocab<S: AsRef<str>>(corpus_text: &[S], min_count: u64) -> WordVocabulary {
    let mut raw: BTreeMap<String, u64> = BTreeMap::new();
    for line in corpus_text {
        for word in line.as_ref().split_whitespace() {
            for element in word_elements(word) {
                *raw.entry(element.to_string()).or_insert(0) += 1;
            }
        }
    }
    let mut counts: BTreeMap<String, u64> = raw
        .into_iter()
        .filter(|(word, count)| *count >= min_count || word == "=")
        .collect();
    counts.entry(EQ.to_string()).or_insert(0);
    counts.entry(UNK.to_string()).or_insert(0);
    WordVocabulary { counts, min_count }
}

/// Words as tokens; `=` split out, out-of-vocabulary words become `<unk>`,
/// no `<wb>` markers (spaces are recoverable from the tokens themselves).
pub fn tokenize_word(text: &str, vocab: &WordVocabulary) -> TokenSequence {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        for element in word_elements(word) {
            if element == "=" || vocab.contains(element) {
                tokens.push(element.to_string());
            } else {
                tokens.push(UNK.to_string());
            }
        }
    }
    TokenSequence { scheme: Scheme::Word, tokens }
}

/// Rewrites a token sequence back into word-level surface text. Inverse of
/// the tokenizers for phone/syllable/wordpiece; for the word scheme, inverse
/// whenever nothing was mapped to `<unk>`.
pub fn detokenize(seq: &TokenSequence) -> Result<String> {
    match seq.scheme {
        Scheme::Phone | Scheme::Syllable => detokenize_boundary_marked(&seq.tokens),
        Scheme::Wordpiece => detokenize_wordpiece(&seq.tokens),
        Scheme::Word => Ok(detokenize_word(&seq.tokens)),
    }
}

fn detokenize_boundary_marked(tokens: &[String]) -> Result<String> {
    let mut out = String::new();
    let mut prev_wb = false;
    for (i, tok) in tokens.iter().enumerate() {
        if tok == WB {
            if i == 0 || i == tokens.len() - 1 || prev_wb {
                return Err(Error::InvalidTokenSequence(format!(
                    "misplaced {WB} at token {i}"
                )));
            }
            out.push(' ');
            prev_wb = true;
        } else {
            out.push_str(tok);
            prev_wb = false;
        }
    }
    Ok(out)
}

fn detokenize_wordpiece(tokens: &[String]) -> Result<String> {
    let mut out = String::new();
    for (i, tok) in tokens.iter().enumerate() {
        if let Some(rest) = tok.strip_prefix(WB) {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(rest);
        } else {
            if i == 0 {
                return Err(Error::InvalidTokenSequence(format!(
                    "word-piece sequence must start with a {WB}-prefixed piece, got '{tok}'"
                )));
            }
            out.push_str(tok);
        }
    }
    Ok(out)
}

fn detokenize_word(tokens: &[String]) -> String {
    let mut out = String::new();
    for tok in tokens {
        if tok == "=" {
            out.push(EQ);
        } else {
            if !out.is_empty() && !out.ends_with(EQ) {
                out.push(' ');
            }
            out.push_str(tok);
        }
    }
    out
}
