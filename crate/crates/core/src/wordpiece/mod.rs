//! Unigram-language-model word pieces.
//!
//! A model is a finite inventory of pieces with log-probabilities. Words are
//! symbol sequences (letters, `=`, and the `<wb>` word-boundary marker as a
//! single symbol); a piece spells a run of symbols and segmentation picks the
//! piece sequence maximizing the summed log-probability. Training alternates
//! EM over the full segmentation lattice with utility-based pruning down to a
//! target vocabulary size; see [`train`].

mod trainer;

pub use trainer::{
    corpus_words, em_step, em_step_on_words, prune, seed_vocabulary, train, TrainConfig,
    TrainReport,
};

use std::collections::BTreeMap;

use crate::alphabet::WB;
use crate::error::{Error, Result};
use crate::logmath::LOG_ZERO;

#[derive(Debug, Clone, PartialEq)]
pub struct UnigramModel {
    /// piece → log-probability; keys ordered for deterministic iteration.
    pieces: BTreeMap<String, f64>,
    pub target_size: usize,
    /// Longest piece in symbols, maintained on every mutation.
    max_symbols: usize,
}

/// Splits a piece or word string into symbols: `<wb>` counts as one symbol,
/// every other character is its own symbol.
pub fn split_symbols(s: &str) -> Vec<String> {
    let mut symbols = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        if let Some(tail) = rest.strip_prefix(WB) {
            symbols.push(WB.to_string());
            rest = tail;
        } else {
            let ch = rest.chars().next().unwrap();
            symbols.push(ch.to_string());
            rest = &rest[ch.len_utf8()..];
        }
    }
    symbols
}

/// Reserved pieces (single symbols, including `<wb>` and `=`) are never
/// pruned; they guarantee that every word stays segmentable.
pub fn is_reserved(piece: &str) -> bool {
    split_symbols(piece).len() == 1
}

impl UnigramModel {
    pub fn from_log_probs(pieces: BTreeMap<String, f64>, target_size: usize) -> Self {
        let max_symbols = pieces.keys().map(|p| split_symbols(p).len()).max().unwrap_or(0);
        UnigramModel { pieces, target_size, max_symbols }
    }

    /// Builds a model from unnormalized counts.
    pub fn from_counts(counts: &BTreeMap<String, f64>, target_size: usize) -> Self {
        let total: f64 = counts.values().sum();
        let log_total = total.ln();
        let pieces = counts
            .iter()
            .map(|(p, c)| (p.clone(), c.ln() - log_total))
            .collect();
        Self::from_log_probs(pieces, target_size)
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn log_prob(&self, piece: &str) -> Option<f64> {
        self.pieces.get(piece).copied()
    }

    pub fn contains(&self, piece: &str) -> bool {
        self.pieces.contains_key(piece)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.pieces.iter().map(|(p, &lp)| (p.as_str(), lp))
    }

    pub fn max_symbols(&self) -> usize {
        self.max_symbols
    }

    /// Total probability mass; 1 for a normalized model.
    pub fn prob_sum(&self) -> f64 {
        self.pieces.values().map(|lp| lp.exp()).sum()
    }

    /// Highest-likelihood segmentation of a symbol sequence. Ties break to
    /// fewer pieces, then to the lexicographically smallest piece sequence.
    pub fn viterbi_segment(&self, symbols: &[String]) -> Result<Vec<String>> {
        self.viterbi_segment_excluding(symbols, None)
    }

    /// Viterbi log-likelihood of a symbol sequence.
    pub fn viterbi_score(&self, symbols: &[String]) -> Result<f64> {
        let pieces = self.viterbi_segment(symbols)?;
        Ok(pieces.iter().map(|p| self.pieces[p]).sum())
    }

    pub(crate) fn viterbi_segment_excluding(
        &self,
        symbols: &[String],
        excluded: Option<&str>,
    ) -> Result<Vec<String>> {
        if symbols.is_empty() {
            return Ok(Vec::new());
        }
        let n = symbols.len();
        // (log-likelihood, piece count, pieces) per prefix length.
        let mut best: Vec<Option<(f64, usize, Vec<String>)>> = vec![None; n + 1];
        best[0] = Some((0.0, 0, Vec::new()));
        for end in 1..=n {
            let lo = end.saturating_sub(self.max_symbols);
            for start in lo..end {
                let Some((prev_lp, prev_n, prev_seq)) = best[start].clone() else {
                    continue;
                };
                let piece = symbols[start..end].concat();
                if excluded == Some(piece.as_str()) {
                    continue;
                }
                let Some(&lp) = self.pieces.get(&piece) else {
                    continue;
                };
                let cand_lp = prev_lp + lp;
                let better = match &best[end] {
                    None => true,
                    Some((cur_lp, cur_n, cur_seq)) => {
                        cand_lp > *cur_lp
                            || (cand_lp == *cur_lp
                                && (prev_n + 1 < *cur_n
                                    || (prev_n + 1 == *cur_n && {
                                        let mut cand_seq = prev_seq.clone();
                                        cand_seq.push(piece.clone());
                                        cand_seq < *cur_seq
                                    })))
                    }
                };
                if better {
                    let mut seq = prev_seq;
                    seq.push(piece);
                    best[end] = Some((cand_lp, seq.len(), seq));
                }
            }
        }
        best[n]
            .take()
            .map(|(_, _, seq)| seq)
            .ok_or_else(|| Error::Unsegmentable { word: symbols.concat() })
    }

    /// Forward log-sums over the segmentation lattice; `fwd[j]` is the
    /// log-probability of all segmentations of `symbols[..j]`.
    pub(crate) fn forward(&self, symbols: &[String]) -> Vec<f64> {
        let n = symbols.len();
        let mut fwd = vec![LOG_ZERO; n + 1];
        fwd[0] = 0.0;
        for end in 1..=n {
            let lo = end.saturating_sub(self.max_symbols);
            for start in lo..end {
                if fwd[start] == LOG_ZERO {
                    continue;
                }
                let piece = symbols[start..end].concat();
                if let Some(&lp) = self.pieces.get(&piece) {
                    fwd[end] = crate::logmath::log_add(fwd[end], fwd[start] + lp);
                }
            }
        }
        fwd
    }

    pub(crate) fn backward(&self, symbols: &[String]) -> Vec<f64> {
        let n = symbols.len();
        let mut bwd = vec![LOG_ZERO; n + 1];
        bwd[n] = 0.0;
        for start in (0..n).rev() {
            let hi = (start + self.max_symbols).min(n);
            for end in start + 1..=hi {
                if bwd[end] == LOG_ZERO {
                    continue;
                }
                let piece = symbols[start..end].concat();
                if let Some(&lp) = self.pieces.get(&piece) {
                    bwd[start] = crate::logmath::log_add(bwd[start], bwd[end] + lp);
                }
            }
        }
        bwd
    }

    pub(crate) fn remove(&mut self, piece: &str) {
        self.pieces.remove(piece);
        self.max_symbols = self.pieces.keys().map(|p| split_symbols(p).len()).max().unwrap_or(0);
    }

    pub(crate) fn renormalize(&mut self) {
        let log_total = crate::logmath::log_sum_exp(&self.pieces.values().copied().collect::<Vec<_>>());
        for lp in self.pieces.values_mut() {
            *lp -= log_total;
        }
    }

    /// Text serialization: a piece-count header, then `piece<TAB>log_prob`
    /// lines in key order. Round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.pieces.len());
        for (piece, lp) in &self.pieces {
            out.push_str(piece);
            out.push('\t');
            out.push_str(&format!("{lp}"));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::MalformedFile {
            what: "word-piece model",
            line: 1,
            detail: "missing header".into(),
        })?;
        let count: usize = header.trim().parse().map_err(|e| Error::MalformedFile {
            what: "word-piece model",
            line: 1,
            detail: format!("bad piece count: {e}"),
        })?;
        let mut pieces = BTreeMap::new();
        for (i, line) in lines {
            let (piece, lp) = line.split_once('\t').ok_or(Error::MalformedFile {
                what: "word-piece model",
                line: i + 1,
                detail: "expected piece<TAB>log_prob".into(),
            })?;
            let lp: f64 = lp.parse().map_err(|e| Error::MalformedFile {
                what: "word-piece model",
                line: i + 1,
                detail: format!("bad log_prob: {e}"),
            })?;
            pieces.insert(piece.to_string(), lp);
        }
        if pieces.len() != count {
            return Err(Error::MalformedFile {
                what: "word-piece model",
                line: 1,
                detail: format!("header says {count} pieces, found {}", pieces.len()),
            });
        }
        Ok(Self::from_log_probs(pieces, count))
    }
}
