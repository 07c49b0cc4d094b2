//! Edit-distance alignment and the WER/PER scoring protocol.
//!
//! WER treats whitespace-delimited surface tokens as words, with `=` kept
//! attached ("a=saha" is one word). PER expands both texts to bare phone
//! sequences: spaces, `=`, and `<wb>` carry no sound and `<unk>` expands to
//! zero phones. Unit-level hypotheses are first rewritten to surface words
//! via [`rewrite_units_to_words`]. Averages across speakers are weighted by
//! reference token counts.

mod report;

pub use report::{aggregate, ScoreReport, SpeakerScore};

use crate::alphabet::{self, UNK, WB};
use crate::error::{Error, Result};
use crate::units::{detokenize, TokenSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignOp {
    Hit,
    Substitution,
    Deletion,
    Insertion,
}

#[derive(Debug, Clone)]
pub struct AlignmentResult {
    pub hits: usize,
    pub substitutions: usize,
    pub deletions: usize,
    pub insertions: usize,
    /// Backtraced alignment: (op, ref token, hyp token).
    pub pairs: Vec<(AlignOp, Option<String>, Option<String>)>,
}

impl AlignmentResult {
    pub fn errors(&self) -> usize {
        self.substitutions + self.deletions + self.insertions
    }
}

/// Minimal-cost alignment with unit costs. Backtrace ties prefer
/// hit > substitution > deletion > insertion.
pub fn edit_alignment<S: AsRef<str>>(reference: &[S], hypothesis: &[S]) -> AlignmentResult {
    let n = reference.len();
    let m = hypothesis.len();
    let mut dist = vec![vec![0usize; m + 1]; n + 1];
    for (i, row) in dist.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=m {
        dist[0][j] = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            let sub_cost = usize::from(reference[i - 1].as_ref() != hypothesis[j - 1].as_ref());
            dist[i][j] = (dist[i - 1][j - 1] + sub_cost)
                .min(dist[i - 1][j] + 1)
                .min(dist[i][j - 1] + 1);
        }
    }

    let mut pairs = Vec::new();
    let (mut i, mut j) = (n, m);
    let mut counts = [0usize; 4]; // hit, sub, del, ins
    while i > 0 || j > 0 {
        let diag_ok = i > 0 && j > 0;
        let matches = diag_ok && reference[i - 1].as_ref() == hypothesis[j - 1].as_ref();
        if diag_ok && matches && dist[i][j] == dist[i - 1][j - 1] {
            pairs.push((
                AlignOp::Hit,
                Some(reference[i - 1].as_ref().to_string()),
                Some(hypothesis[j - 1].as_ref().to_string()),
            ));
            counts[0] += 1;
            i -= 1;
            j -= 1;
        } else if diag_ok && !matches && dist[i][j] == dist[i - 1][j - 1] + 1 {
            pairs.push((
                AlignOp::Substitution,
                Some(reference[i - 1].as_ref().to_string()),
                Some(hypothesis[j - 1].as_ref().to_string()),
            ));
            counts[1] += 1;
            i -= 1;
            j -= 1;
        } else if i > 0 && dist[i][j] == dist[i - 1][j] + 1 {
            pairs.push((AlignOp::Deletion, Some(reference[i - 1].as_ref().to_string()), None));
            counts[2] += 1;
            i -= 1;
        } else {
            pairs.push((AlignOp::Insertion, None, Some(hypothesis[j - 1].as_ref().to_string())));
            counts[3] += 1;
            j -= 1;
        }
    }
    pairs.reverse();
    AlignmentResult {
        hits: counts[0],
        substitutions: counts[1],
        deletions: counts[2],
        insertions: counts[3],
        pairs,
    }
}

fn words(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

/// Word error rate in percent over surface texts.
pub fn wer(ref_text: &str, hyp_text: &str) -> Result<f64> {
    let r = words(ref_text);
    if r.is_empty() {
        return Err(Error::EmptyReference);
    }
    let h = words(hyp_text);
    let alignment = edit_alignment(&r, &h);
    Ok(100.0 * alignment.errors() as f64 / r.len() as f64)
}

/// Expands surface text to its phone sequence: letters only. `=`, spaces,
/// and `<wb>` are soundless; `<unk>` expands to zero phones.
pub fn phones(text: &str) -> Vec<char> {
    let cleaned = text.replace(UNK, "").replace(WB, "");
    cleaned.chars().filter(|&c| alphabet::is_letter(c)).collect()
}

/// Phone error rate in percent over surface texts.
pub fn per(ref_text: &str, hyp_text: &str) -> Result<f64> {
    let r: Vec<String> = phones(ref_text).iter().map(|c| c.to_string()).collect();
    if r.is_empty() {
        return Err(Error::EmptyReference);
    }
    let h: Vec<String> = phones(hyp_text).iter().map(|c| c.to_string()).collect();
    let alignment = edit_alignment(&r, &h);
    Ok(100.0 * alignment.errors() as f64 / r.len() as f64)
}

/// Rewrites a unit-level hypothesis into surface words. All WER inputs pass
/// through this one path.
pub fn rewrite_units_to_words(seq: &TokenSequence) -> Result<String> {
    detokenize(seq)
}
