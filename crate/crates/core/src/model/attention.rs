//! Attention weight normalization, context aggregation, and the joint
//! CTC+attention loss.

use crate::error::{Error, Result};

/// Softmax over raw attention scores, max-shifted for stability.
pub fn attention_weights(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scores.iter().map(|e| (e - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.iter().map(|e| e / sum).collect()
}

/// Context vector: the weight-averaged sum of encoder outputs.
pub fn attention_context(encoder_outputs: &[Vec<f64>], weights: &[f64]) -> Result<Vec<f64>> {
    if encoder_outputs.len() != weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} encoder frames vs {} weights",
            encoder_outputs.len(),
            weights.len()
        )));
    }
    let Some(first) = encoder_outputs.first() else {
        return Ok(Vec::new());
    };
    let d = first.len();
    let mut context = vec![0.0; d];
    for (h, &w) in encoder_outputs.iter().zip(weights) {
        if h.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "encoder frame width {} vs {d}",
                h.len()
            )));
        }
        for (c, &x) in context.iter_mut().zip(h) {
            *c += w * x;
        }
    }
    Ok(context)
}

/// Gradient of `context · v` with respect to the raw scores, composing the
/// weighted sum with the softmax: g_t = α_t (h_t·v − c·v).
pub fn context_dot_grad(encoder_outputs: &[Vec<f64>], scores: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let weights = attention_weights(scores);
    let context = attention_context(encoder_outputs, &weights)?;
    let c_dot: f64 = context.iter().zip(v).map(|(c, x)| c * x).sum();
    Ok(encoder_outputs
        .iter()
        .zip(&weights)
        .map(|(h, &w)| {
            let h_dot: f64 = h.iter().zip(v).map(|(a, b)| a * b).sum();
            w * (h_dot - c_dot)
        })
        .collect())
}

/// λ·l_attn + (1−λ)·l_ctc.
pub fn joint_loss(l_attn: f64, l_ctc: f64, lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    Ok(lambda * l_attn + (1.0 - lambda) * l_ctc)
}

pub const DEFAULT_LAMBDA: f64 = 0.5;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_scores_uniform_weights() {
        let w = attention_weights(&[0.0, 0.0, 0.0]);
        for x in &w {
            assert!((x - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn large_scores_do_not_overflow() {
        let w = attention_weights(&[1000.0, 0.0]);
        assert!(w[0] > 0.999999);
        assert!(w.iter().all(|x| x.is_finite()));
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shift_invariance() {
        let e = [0.3, -1.2, 2.5, 0.0];
        let shifted: Vec<f64> = e.iter().map(|x| x + 17.5).collect();
        let a = attention_weights(&e);
        let b = attention_weights(&shifted);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn one_hot_selects_frame() {
        let h = vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]];
        let c = attention_context(&h, &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(c, vec![5.0, 6.0]);
    }

    #[test]
    fn uniform_weights_average() {
        let h = vec![vec![0.0, 0.0], vec![2.0, 4.0]];
        let c = attention_context(&h, &[0.5, 0.5]).unwrap();
        assert_eq!(c, vec![1.0, 2.0]);
    }

    #[test]
    fn context_within_coordinate_bounds() {
        let h = vec![vec![-1.0, 3.0], vec![2.0, 0.5], vec![0.0, 1.0]];
        let w = attention_weights(&[0.2, -0.4, 1.1]);
        let c = attention_context(&h, &w).unwrap();
        for j in 0..2 {
            let lo = h.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min);
            let hi = h.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max);
            assert!(lo <= c[j] && c[j] <= hi);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let h = vec![vec![1.0], vec![2.0]];
        assert!(attention_context(&h, &[1.0]).is_err());
        let ragged = vec![vec![1.0, 2.0], vec![3.0]];
        assert!(attention_context(&ragged, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn score_gradient_matches_finite_differences() {
        let h = vec![vec![0.7, -0.3, 1.1], vec![-0.2, 0.9, 0.4], vec![1.5, 0.0, -0.6]];
        let scores = [0.1, -0.8, 0.5];
        let v = [0.3, -1.0, 0.7];
        let grad = context_dot_grad(&h, &scores, &v).unwrap();
        let step = 1e-6;
        for t in 0..scores.len() {
            let mut plus = scores;
            plus[t] += step;
            let mut minus = scores;
            minus[t] -= step;
            let f = |s: &[f64]| {
                let c = attention_context(&h, &attention_weights(s)).unwrap();
                c.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>()
            };
            let fd = (f(&plus) - f(&minus)) / (2.0 * step);
            let denom = grad[t].abs().max(1.0);
            assert!(((grad[t] - fd) / denom).abs() < 1e-5, "grad[{t}] {} vs fd {fd}", grad[t]);
        }
    }

    #[test]
    fn joint_loss_midpoint() {
        assert_eq!(joint_loss(2.0, 4.0, 0.5).unwrap(), 3.0);
    }

    #[test]
    fn joint_loss_endpoints() {
        assert_eq!(joint_loss(2.0, 4.0, 1.0).unwrap(), 2.0);
        assert_eq!(joint_loss(2.0, 4.0, 0.0).unwrap(), 4.0);
    }

    #[test]
    fn joint_loss_rejects_bad_lambda() {
        assert!(joint_loss(1.0, 1.0, -0.1).is_err());
        assert!(joint_loss(1.0, 1.0, 1.1).is_err());
    }

    #[test]
    fn joint_loss_linear_in_attention_term() {
        let lambda = 0.3;
        let delta = 0.77;
        let a = joint_loss(2.0, 5.0, lambda).unwrap();
        let b = joint_loss(2.0 + delta, 5.0, lambda).unwrap();
        assert!((b - a - lambda * delta).abs() < 1e-12);
    }
}
