//! Frame stacking: concatenating k consecutive acoustic feature frames into
//! one wider vector with hop k (3 x 40-dim frames become one 120-dim frame).

/// Stacks `k` consecutive frames with hop `k`. The final window is padded by
/// repeating the last frame, so the output has ⌈N/k⌉ rows.
pub fn stack_frames(features: &[Vec<f64>], k: usize) -> Vec<Vec<f64>> {
    assert!(k >= 1, "k must be at least 1");
    let n = features.len();
    if n == 0 {
        return Vec::new();
    }
    let mut stacked = Vec::with_capacity(n.div_ceil(k));
    for start in (0..n).step_by(k) {
        let mut row = Vec::with_capacity(k * features[0].len());
        for offset in 0..k {
            let idx = (start + offset).min(n - 1);
            row.extend_from_slice(&features[idx]);
        }
        stacked.push(row);
    }
    stacked
}

pub const DEFAULT_STACK: usize = 3;
