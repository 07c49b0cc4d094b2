//! CTC: the collapse contraction, the label-sequence log-probability via the
//! forward recursion over blank-interleaved states, and its gradient via
//! forward–backward. All accumulation is in log space; impossible outcomes
//! are `-inf`, never errors.

use crate::error::{Error, Result};
use crate::logmath::{log_add, log_sum_exp, LOG_ZERO};

/// One frame-level output: a real symbol index, or `None` for the blank.
pub type PathSymbol = Option<usize>;

/// Per-frame log-posteriors over `V` symbols plus the blank in the last
/// column, shape `T x (V+1)`.
#[derive(Debug, Clone)]
pub struct CtcInput {
    pub log_posteriors: Vec<Vec<f64>>,
    pub symbol_table: Vec<String>,
}

impl CtcInput {
    pub fn num_frames(&self) -> usize {
        self.log_posteriors.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.symbol_table.len()
    }

    pub fn blank_index(&self) -> usize {
        self.symbol_table.len()
    }

    /// Checks row widths and that each row log-sum-exps to 0 (±1e-9).
    pub fn validate(&self) -> Result<()> {
        let width = self.num_symbols() + 1;
        for (t, row) in self.log_posteriors.iter().enumerate() {
            if row.len() != width {
                return Err(Error::DimensionMismatch(format!(
                    "frame {t} has {} entries, expected {width}",
                    row.len()
                )));
            }
            let lse = log_sum_exp(row);
            if lse.abs() > 1e-9 {
                return Err(Error::DimensionMismatch(format!(
                    "frame {t} is not a normalized distribution (log-sum {lse:.3e})"
                )));
            }
        }
        Ok(())
    }

    fn check_labels(&self, labels: &[usize]) -> Result<()> {
        for &l in labels {
            if l >= self.num_symbols() {
                return Err(Error::LabelOutOfRange { index: l, vocab: self.num_symbols() });
            }
        }
        Ok(())
    }
}

/// Merges adjacent duplicates, then removes blanks: aab-bbccc → abbc.
pub fn collapse(path: &[PathSymbol]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut prev: Option<PathSymbol> = None;
    for &sym in path {
        if prev != Some(sym) {
            if let Some(s) = sym {
                out.push(s);
            }
        }
        prev = Some(sym);
    }
    out
}

/// Brute-force enumeration of every length-`t` path collapsing to `labels`.
/// Oracle-sized inputs only: `t <= 8`, `v <= 3`.
pub fn inverse_collapse(labels: &[usize], t: usize, v: usize) -> Result<Vec<Vec<PathSymbol>>> {
    if t > 8 || v > 3 {
        return Err(Error::OracleLimit(format!("inverse_collapse needs T <= 8, V <= 3, got T={t}, V={v}")));
    }
    let alphabet: Vec<PathSymbol> = (0..v).map(Some).chain([None]).collect();
    let mut paths = Vec::new();
    let mut path: Vec<PathSymbol> = Vec::with_capacity(t);
    enumerate(&alphabet, t, labels, &mut path, &mut paths);
    Ok(paths)
}

fn enumerate(
    alphabet: &[PathSymbol],
    t: usize,
    labels: &[usize],
    path: &mut Vec<PathSymbol>,
    out: &mut Vec<Vec<PathSymbol>>,
) {
    if path.len() == t {
        if collapse(path) == labels {
            out.push(path.clone());
        }
        return;
    }
    for &sym in alphabet {
        path.push(sym);
        enumerate(alphabet, t, labels, path, out);
        path.pop();
    }
}

/// Blank-interleaved state sequence: blank, l1, blank, l2, ..., blank.
/// Even states are blanks, odd state `s` carries label `(s-1)/2`.
fn state_symbol(labels: &[usize], s: usize, blank: usize) -> usize {
    if s % 2 == 0 {
        blank
    } else {
        labels[(s - 1) / 2]
    }
}

fn forward(input: &CtcInput, labels: &[usize]) -> Vec<Vec<f64>> {
    let t_len = input.num_frames();
    let blank = input.blank_index();
    let states = 2 * labels.len() + 1;
    let lp = &input.log_posteriors;
    let mut alpha = vec![vec![LOG_ZERO; states]; t_len];
    alpha[0][0] = lp[0][blank];
    if states > 1 {
        alpha[0][1] = lp[0][state_symbol(labels, 1, blank)];
    }
    for t in 1..t_len {
        for s in 0..states {
            let mut acc = alpha[t - 1][s];
            if s >= 1 {
                acc = log_add(acc, alpha[t - 1][s - 1]);
            }
            // Skip over a blank only between distinct labels.
            if s >= 2
                && s % 2 == 1
                && state_symbol(labels, s, blank) != state_symbol(labels, s - 2, blank)
            {
                acc = log_add(acc, alpha[t - 1][s - 2]);
            }
            alpha[t][s] = acc + lp[t][state_symbol(labels, s, blank)];
        }
    }
    alpha
}

fn backward(input: &CtcInput, labels: &[usize]) -> Vec<Vec<f64>> {
    let t_len = input.num_frames();
    let blank = input.blank_index();
    let states = 2 * labels.len() + 1;
    let lp = &input.log_posteriors;
    let mut beta = vec![vec![LOG_ZERO; states]; t_len];
    beta[t_len - 1][states - 1] = lp[t_len - 1][state_symbol(labels, states - 1, blank)];
    if states > 1 {
        beta[t_len - 1][states - 2] = lp[t_len - 1][state_symbol(labels, states - 2, blank)];
    }
    for t in (0..t_len - 1).rev() {
        for s in 0..states {
            let mut acc = beta[t + 1][s];
            if s + 1 < states {
                acc = log_add(acc, beta[t + 1][s + 1]);
            }
            if s + 2 < states
                && s % 2 == 1
                && state_symbol(labels, s, blank) != state_symbol(labels, s + 2, blank)
            {
                acc = log_add(acc, beta[t + 1][s + 2]);
            }
            beta[t][s] = acc + lp[t][state_symbol(labels, s, blank)];
        }
    }
    beta
}

/// log p(L|X): the log of the summed probability of every frame path that
/// collapses to `labels`. `-inf` when no such path exists.
pub fn ctc_log_prob(input: &CtcInput, labels: &[usize]) -> Result<f64> {
    input.check_labels(labels)?;
    if input.num_frames() == 0 {
        return Ok(if labels.is_empty() { 0.0 } else { LOG_ZERO });
    }
    let alpha = forward(input, labels);
    let last = &alpha[input.num_frames() - 1];
    let states = last.len();
    let mut total = last[states - 1];
    if states > 1 {
        total = log_add(total, last[states - 2]);
    }
    Ok(total)
}

/// ∂ log p(L|X) / ∂ log_posteriors[t][k], treating the matrix entries as
/// free parameters. Matches central finite differences.
pub fn ctc_grad(input: &CtcInput, labels: &[usize]) -> Result<Vec<Vec<f64>>> {
    input.check_labels(labels)?;
    let t_len = input.num_frames();
    let width = input.num_symbols() + 1;
    let blank = input.blank_index();
    if t_len == 0 {
        return Ok(Vec::new());
    }
    let log_p = ctc_log_prob(input, labels)?;
    if log_p == LOG_ZERO {
        return Err(Error::InfiniteObjective);
    }
    let alpha = forward(input, labels);
    let beta = backward(input, labels);
    let states = 2 * labels.len() + 1;
    let mut grad = vec![vec![0.0; width]; t_len];
    for t in 0..t_len {
        for s in 0..states {
            let k = state_symbol(labels, s, blank);
            // alpha and beta both include the emission at t; divide it out once.
            let through = alpha[t][s] + beta[t][s] - input.log_posteriors[t][k];
            grad[t][k] += (through - log_p).exp();
        }
    }
    Ok(grad)
}
