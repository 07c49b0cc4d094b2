//! CTC over a toy posterior matrix: exact sequence probability, greedy and
//! prefix beam decoding, and an analytic-vs-numeric gradient check.
//!
//!     cargo run --example ctc_playground

use ainukit::model::{
    collapse, ctc_grad, ctc_log_prob, greedy_decode, prefix_beam_decode, CtcInput,
};

fn main() -> ainukit::Result<()> {
    // 4 frames over symbols {a, b}; the last column is the blank.
    let probs = [
        [0.6, 0.2, 0.2],
        [0.3, 0.2, 0.5],
        [0.2, 0.6, 0.2],
        [0.1, 0.5, 0.4],
    ];
    let input = CtcInput {
        log_posteriors: probs.iter().map(|r| r.iter().map(|p: &f64| p.ln()).collect()).collect(),
        symbol_table: vec!["a".into(), "b".into()],
    };
    input.validate()?;

    let path = vec![Some(0), None, Some(1), Some(1)];
    println!("collapse(a . b b)   = {:?}", collapse(&path));

    for labels in [vec![0, 1], vec![0], vec![1, 1]] {
        let lp = ctc_log_prob(&input, &labels)?;
        println!("p({labels:?} | X) = {:.6}", lp.exp());
    }

    println!("greedy decode       = {:?}", greedy_decode(&input));
    println!("beam decode (w=8)   = {:?}", prefix_beam_decode(&input, 8));

    // Finite-difference check of d logP / d logpost.
    let labels = vec![0, 1];
    let grad = ctc_grad(&input, &labels)?;
    let step = 1e-6;
    let mut worst = 0.0f64;
    for t in 0..input.num_frames() {
        for k in 0..=input.num_symbols() {
            let mut plus = input.clone();
            plus.log_posteriors[t][k] += step;
            let mut minus = input.clone();
            minus.log_posteriors[t][k] -= step;
            let fd =
                (ctc_log_prob(&plus, &labels)? - ctc_log_prob(&minus, &labels)?) / (2.0 * step);
            worst = worst.max((grad[t][k] - fd).abs() / grad[t][k].abs().max(1.0));
        }
    }
    println!("gradient check      = max relative error {worst:.3e}");
    Ok(())
}
