//! Best-path and prefix beam search decoding over CTC outputs.

use std::collections::HashMap;

use super::ctc::{collapse, CtcInput};
use crate::logmath::{log_add, LOG_ZERO};

/// Collapse of the per-frame argmax (best-path decoding). Ties go to the
/// lowest symbol index.
pub fn greedy_decode(input: &CtcInput) -> Vec<usize> {
    let blank = input.blank_index();
    let path: Vec<Option<usize>> = input
        .log_posteriors
        .iter()
        .map(|row| {
            let mut best = 0;
            for (k, &lp) in row.iter().enumerate() {
                if lp > row[best] {
                    best = k;
                }
            }
            if best == blank {
                None
            } else {
                Some(best)
            }
        })
        .collect();
    collapse(&path)
}

/// Probability mass of one prefix, split by whether the last frame emitted
/// a blank (`p_blank`) or the prefix's final symbol (`p_label`).
#[derive(Clone, Copy)]
struct PrefixMass {
    p_blank: f64,
    p_label: f64,
}

impl PrefixMass {
    fn total(&self) -> f64 {
        log_add(self.p_blank, self.p_label)
    }
}

/// Prefix beam search with exact mass merging of identical prefixes. With a
/// beam at least as wide as the number of reachable prefixes, the result is
/// the exact argmax over all label sequences.
pub fn prefix_beam_decode(input: &CtcInput, beam_width: usize) -> Vec<usize> {
    assert!(beam_width >= 1, "beam_width must be at least 1");
    let blank = input.blank_index();
    let v = input.num_symbols();
    let mut beams: HashMap<Vec<usize>, PrefixMass> = HashMap::new();
    beams.insert(Vec::new(), PrefixMass { p_blank: 0.0, p_label: LOG_ZERO });

    for row in &input.log_posteriors {
        let mut next: HashMap<Vec<usize>, PrefixMass> = HashMap::new();
        for (prefix, mass) in &beams {
            // Blank keeps the prefix as is.
            {
                let entry = next
                    .entry(prefix.clone())
                    .or_insert(PrefixMass { p_blank: LOG_ZERO, p_label: LOG_ZERO });
                entry.p_blank = log_add(entry.p_blank, mass.total() + row[blank]);
            }
            // Repeating the final symbol without a blank also keeps it.
            if let Some(&last) = prefix.last() {
                let entry = next
                    .entry(prefix.clone())
                    .or_insert(PrefixMass { p_blank: LOG_ZERO, p_label: LOG_ZERO });
                entry.p_label = log_add(entry.p_label, mass.p_label + row[last]);
            }
            // Extend by each symbol.
            for k in 0..v {
                let from = if Some(&k) == prefix.last() {
                    mass.p_blank
                } else {
                    mass.total()
                };
                if from == LOG_ZERO {
                    continue;
                }
                let mut extended = prefix.clone();
                extended.push(k);
                let entry = next
                    .entry(extended)
                    .or_insert(PrefixMass { p_blank: LOG_ZERO, p_label: LOG_ZERO });
                entry.p_label = log_add(entry.p_label, from + row[k]);
            }
        }
        let mut ranked: Vec<(Vec<usize>, PrefixMass)> = next.into_iter().collect();
        ranked.sort_by(|a, b| {
            b.1.total()
                .partial_cmp(&a.1.total())
                .unwrap()
                .then_with(|| a.0.cmp(&b.0))
        });
        ranked.truncate(beam_width);
        beams = ranked.into_iter().collect();
    }

    let mut ranked: Vec<(Vec<usize>, PrefixMass)> = beams.into_iter().collect();
    ranked.sort_by(|a, b| {
        b.1.total()
            .partial_cmp(&a.1.total())
            .unwrap()
            .then_with(|| a.0.cmp(&b.0))
    });
    ranked.into_iter().next().map(|(p, _)| p).unwrap_or_default()
}
