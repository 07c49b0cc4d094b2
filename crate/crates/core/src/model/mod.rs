//! Sequence-model mathematics: CTC collapse/probability/gradient and
//! decoding, attention weight normalization and context vectors, the joint
//! CTC+attention loss, and acoustic frame stacking.

mod attention;
mod ctc;
mod decode;
mod frames;
mod matrix;

pub use attention::{attention_context, attention_weights, context_dot_grad, joint_loss, DEFAULT_LAMBDA};
pub use ctc::{collapse, ctc_grad, ctc_log_prob, inverse_collapse, CtcInput, PathSymbol};
pub use decode::{greedy_decode, prefix_beam_decode};
pub use frames::{stack_frames, DEFAULT_STACK};
pub use matrix::{format_matrix_tsv, parse_matrix_tsv, TsvMatrix};
