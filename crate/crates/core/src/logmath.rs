//! Log-space accumulation helpers. `f64::NEG_INFINITY` is the zero of this
//! semiring and must survive every operation without producing NaN.

pub const LOG_ZERO: f64 = f64::NEG_INFINITY;

/// log(exp(a) + exp(b)), saturating at `LOG_ZERO`.
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == LOG_ZERO {
        return b;
    }
    if b == LOG_ZERO {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// log Σ exp(xs), max-shifted.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(LOG_ZERO, f64::max);
    if m == LOG_ZERO {
        return LOG_ZERO;
    }
    let s: f64 = xs.iter().map(|x| (x - m).exp()).sum();
    m + s.ln()
}
