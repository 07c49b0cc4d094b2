//! Attention weights and context vectors, the joint CTC/attention loss, and
//! frame stacking for encoder inputs.
//!
//!     cargo run --example attention_and_loss

use ainukit::model::{
    attention_context, attention_weights, joint_loss, stack_frames, DEFAULT_LAMBDA, DEFAULT_STACK,
};

fn main() -> ainukit::Result<()> {
    let encoder_states = vec![
        vec![1.0, 0.0, 0.5],
        vec![0.2, 1.0, -0.3],
        vec![-0.5, 0.4, 0.9],
    ];
    let scores = vec![2.0, 0.5, -1.0];
    let weights = attention_weights(&scores);
    println!("attention weights: {weights:?}");
    println!("weights sum to {}", weights.iter().sum::<f64>());
    let context = attention_context(&encoder_states, &weights)?;
    println!("context vector:    {context:?}");

    let l_attn = 2.0;
    let l_ctc = 4.0;
    println!(
        "joint loss λ={DEFAULT_LAMBDA}: {l_attn} / {l_ctc} -> {}",
        joint_loss(l_attn, l_ctc, DEFAULT_LAMBDA)?
    );

    // Seven 2-dimensional frames stacked three at a time -> three frames of
    // dimension six; the last window repeats the final frame.
    let frames: Vec<Vec<f64>> = (0..7).map(|i| vec![i as f64, i as f64 + 0.5]).collect();
    let stacked = stack_frames(&frames, DEFAULT_STACK);
    println!("\nstacked frames (k = {DEFAULT_STACK}):");
    for row in &stacked {
        println!("  {row:?}");
    }
    Ok(())
}
