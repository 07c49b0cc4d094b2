//! Word-piece training: substring seeding, EM over the segmentation
//! lattice, and utility-based pruning toward a target vocabulary size.

use std::collections::BTreeMap;

use super::{is_reserved, split_symbols, UnigramModel};
use crate::alphabet::{EQ, WB};
use crate::error::Result;
use crate::logmath::LOG_ZERO;

#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub target_size: usize,
    /// Longest seed piece, in symbols.
    pub max_piece_len: usize,
    /// Seed inventory cap as a multiple of `target_size`.
    pub max_seed_factor: usize,
    pub em_iters_per_round: usize,
    pub keep_fraction: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            target_size: 500,
            max_piece_len: 8,
            max_seed_factor: 8,
            em_iters_per_round: 2,
            keep_fraction: 0.75,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrainReport {
    pub rounds: usize,
    pub final_log_likelihood: f64,
    /// False when the corpus could not support `target_size` pieces.
    pub reached_target: bool,
}

/// Words of a normalized corpus as `<wb>`-prefixed symbol sequences with
/// occurrence counts.
pub fn corpus_words<S: AsRef<str>>(corpus_text: &[S]) -> BTreeMap<Vec<String>, u64> {
    let mut words: BTreeMap<Vec<String>, u64> = BTreeMap::new();
    for line in corpus_text {
        for word in line.as_ref().split_whitespace() {
            let mut symbols = vec![WB.to_string()];
            symbols.extend(split_symbols(word));
            *words.entry(symbols).or_insert(0) += 1;
        }
    }
    words
}

/// Seeds the piece inventory with all substrings of `<wb>`-prefixed words up
/// to `max_piece_len` symbols, ranked by count·length and truncated to
/// `max_seed_size`. Single symbols (plus `<wb>` and `=`) are always kept.
pub fn seed_vocabulary<S: AsRef<str>>(
    corpus_text: &[S],
    max_piece_len: usize,
    max_seed_size: usize,
) -> UnigramModel {
    seed_from_words(&corpus_words(corpus_text), max_piece_len, max_seed_size, max_seed_size)
}

fn seed_from_words(
    words: &BTreeMap<Vec<String>, u64>,
    max_piece_len: usize,
    max_seed_size: usize,
    target_size: usize,
) -> UnigramModel {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for (symbols, &count) in words {
        for len in 1..=max_piece_len.min(symbols.len()) {
            for start in 0..=symbols.len() - len {
                let piece = symbols[start..start + len].concat();
                *counts.entry(piece).or_insert(0) += count;
            }
        }
    }
    counts.entry(WB.to_string()).or_insert(1);
    counts.entry(EQ.to_string()).or_insert(1);

    let mut multi: Vec<(&String, &u64)> =
        counts.iter().filter(|(p, _)| !is_reserved(p)).collect();
    multi.sort_by(|a, b| {
        let score_a = a.1 * split_symbols(a.0).len() as u64;
        let score_b = b.1 * split_symbols(b.0).len() as u64;
        score_b.cmp(&score_a).then(a.0.cmp(b.0))
    });
    let singles: Vec<(&String, &u64)> =
        counts.iter().filter(|(p, _)| is_reserved(p)).collect();
    let room = max_seed_size.saturating_sub(singles.len());
    let mut seed: BTreeMap<String, f64> = BTreeMap::new();
    for (p, &c) in singles.into_iter().chain(multi.into_iter().take(room)) {
        seed.insert(p.clone(), c as f64);
    }
    UnigramModel::from_counts(&seed, target_size)
}

/// One EM iteration over raw corpus lines. Returns the updated model and the
/// pre-update corpus log-likelihood.
pub fn em_step<S: AsRef<str>>(model: &UnigramModel, corpus_text: &[S]) -> Result<(UnigramModel, f64)> {
    em_step_on_words(model, &corpus_words(corpus_text))
}

/// One EM iteration over counted words. The E-step accumulates expected
/// piece counts with forward–backward over each word's segmentation lattice;
/// the M-step renormalizes the expectations into new log-probabilities.
pub fn em_step_on_words(
    model: &UnigramModel,
    words: &BTreeMap<Vec<String>, u64>,
) -> Result<(UnigramModel, f64)> {
    let mut expected: BTreeMap<String, f64> = model.iter().map(|(p, _)| (p.to_string(), 0.0)).collect();
    let mut log_likelihood = 0.0;
    for (symbols, &count) in words {
        let n = symbols.len();
        let fwd = model.forward(symbols);
        if fwd[n] == LOG_ZERO {
            return Err(crate::error::Error::Unsegmentable { word: symbols.concat() });
        }
        let bwd = model.backward(symbols);
        log_likelihood += count as f64 * fwd[n];
        let max_len = model.max_symbols();
        for start in 0..n {
            if fwd[start] == LOG_ZERO {
                continue;
            }
            let hi = (start + max_len).min(n);
            for end in start + 1..=hi {
                if bwd[end] == LOG_ZERO {
                    continue;
                }
                let piece = symbols[start..end].concat();
                if let Some(lp) = model.log_prob(&piece) {
                    let posterior = (fwd[start] + lp + bwd[end] - fwd[n]).exp();
                    *expected.get_mut(&piece).unwrap() += count as f64 * posterior;
                }
            }
        }
    }
    // Floor keeps log-probs finite for pieces the lattice never used.
    const FLOOR: f64 = 1e-10;
    for c in expected.values_mut() {
        if *c < FLOOR {
            *c = FLOOR;
        }
    }
    let updated = UnigramModel::from_counts(&expected, model.target_size);
    Ok((updated, log_likelihood))
}

/// Removes the lowest-utility non-reserved pieces, keeping `keep_fraction`
/// of them but never dropping below the model's target size. Utility is the
/// Viterbi-count-weighted likelihood loss of re-segmenting the piece without
/// itself.
pub fn prune(
    model: &UnigramModel,
    keep_fraction: f64,
    words: &BTreeMap<Vec<String>, u64>,
) -> Result<UnigramModel> {
    assert!(keep_fraction > 0.0 && keep_fraction < 1.0, "keep_fraction must be in (0, 1)");
    let mut viterbi_counts: BTreeMap<String, u64> = BTreeMap::new();
    for (symbols, &count) in words {
        for piece in model.viterbi_segment(symbols)? {
            *viterbi_counts.entry(piece).or_insert(0) += count;
        }
    }
    let prunable: Vec<String> = model
        .iter()
        .filter(|(p, _)| !is_reserved(p))
        .map(|(p, _)| p.to_string())
        .collect();
    let reserved = model.len() - prunable.len();

    let mut utilities: Vec<(f64, String)> = prunable
        .iter()
        .map(|piece| {
            let count = viterbi_counts.get(piece).copied().unwrap_or(0);
            if count == 0 {
                return (0.0, piece.clone());
            }
            let lp = model.log_prob(piece).unwrap();
            let symbols = split_symbols(piece);
            // Best alternative spelling of the piece without itself; single
            // symbols are reserved, so one always exists.
            let alt: f64 = model
                .viterbi_segment_excluding(&symbols, Some(piece))
                .map(|seq| seq.iter().map(|p| model.log_prob(p).unwrap()).sum())
                .unwrap_or(LOG_ZERO);
            (count as f64 * (lp - alt), piece.clone())
        })
        .collect();
    utilities.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));

    let keep = ((prunable.len() as f64 * keep_fraction).round() as usize)
        .max(model.target_size.saturating_sub(reserved))
        .min(prunable.len());
    let drop = prunable.len() - keep;

    let mut pruned = model.clone();
    for (_, piece) in utilities.into_iter().take(drop) {
        pruned.remove(&piece);
    }
    pruned.renormalize();
    Ok(pruned)
}

/// Trains a unigram word-piece model: seed, then alternate EM rounds with
/// pruning until the inventory fits `config.target_size`, then one final EM
/// round. Deterministic for identical inputs and parameters.
pub fn train<S: AsRef<str>>(
    corpus_text: &[S],
    config: &TrainConfig,
) -> Result<(UnigramModel, TrainReport)> {
    let words = corpus_words(corpus_text);
    let max_seed = config.max_seed_factor * config.target_size;
    let mut model = seed_from_words(&words, config.max_piece_len, max_seed, config.target_size);
    let reached_target = model.len() >= config.target_size;

    let mut rounds = 0;
    let mut log_likelihood = LOG_ZERO;
    loop {
        for _ in 0..config.em_iters_per_round {
            let (updated, ll) = em_step_on_words(&model, &words)?;
            model = updated;
            log_likelihood = ll;
        }
        rounds += 1;
        if model.len() <= config.target_size {
            break;
        }
        model = prune(&model, config.keep_fraction, &words)?;
    }
    // Final pass so the probabilities reflect the pruned inventory.
    let (updated, ll) = em_step_on_words(&model, &words)?;
    model = updated;
    log_likelihood = log_likelihood.max(ll);

    Ok((model, TrainReport { rounds, final_log_likelihood: log_likelihood, reached_target }))
}
