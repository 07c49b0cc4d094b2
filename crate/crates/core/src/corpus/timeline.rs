use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalKind {
    Speech,
    Pause,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub kind: IntervalKind,
    pub start_ms: u64,
    pub end_ms: u64,
}

/// A contiguous speech/pause annotation of one recording.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SpeechTimeline {
    pub intervals: Vec<Interval>,
}

impl SpeechTimeline {
    pub fn validate(&self) -> Result<()> {
        for (i, iv) in self.intervals.iter().enumerate() {
            if iv.end_ms <= iv.start_ms {
                return Err(Error::InvalidTimeline(format!(
                    "interval {i} is empty or reversed ({}..{})",
                    iv.start_ms, iv.end_ms
                )));
            }
            if i > 0 && iv.start_ms != self.intervals[i - 1].end_ms {
                return Err(Error::InvalidTimeline(format!(
                    "interval {i} not contiguous with its predecessor"
                )));
            }
        }
        Ok(())
    }
}

/// Default pause threshold for IPU segmentation, in milliseconds.
pub const DEFAULT_MIN_PAUSE_MS: u64 = 400;

/// Splits a timeline into inter-pausal units: maximal speech stretches where
/// pauses shorter than `min_pause_ms` are absorbed and longer pauses split.
pub fn segment_ipus(timeline: &SpeechTimeline, min_pause_ms: u64) -> Result<Vec<(u64, u64)>> {
    timeline.validate()?;
    if min_pause_ms == 0 {
        return Err(Error::InvalidTimeline("min_pause_ms must be positive".into()));
    }
    let mut ipus: Vec<(u64, u64)> = Vec::new();
    let mut current: Option<(u64, u64)> = None;
    let mut pending_pause: u64 = 0;
    for iv in &timeline.intervals {
        match iv.kind {
            IntervalKind::Speech => match current {
                Some((start, _)) if pending_pause < min_pause_ms => {
                    current = Some((start, iv.end_ms));
                }
                Some(done) => {
                    ipus.push(done);
                    current = Some((iv.start_ms, iv.end_ms));
                }
                None => current = Some((iv.start_ms, iv.end_ms)),
            },
            IntervalKind::Pause => {
                if current.is_some() {
                    pending_pause = iv.end_ms - iv.start_ms;
                }
            }
        }
        if iv.kind == IntervalKind::Speech {
            pending_pause = 0;
        }
    }
    if let Some(done) = current {
        ipus.push(done);
    }
    Ok(ipus)
}
