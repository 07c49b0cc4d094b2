//! Normalize raw transcript lines and carve a speech/pause timeline into
//! inter-pausal units.
//!
//!     cargo run --example normalize_and_segment

use ainukit::corpus::{
    normalize_transcript, segment_ipus, Interval, IntervalKind, SpeechTimeline,
    DEFAULT_MIN_PAUSE_MS,
};

fn main() -> ainukit::Result<()> {
    let raw_lines = [
        "uymam'=an wa isam=an __hi okake ta",
        "nen poka  apkas an",
        "i=kokopan _wa",
    ];
    println!("normalization:");
    for raw in raw_lines {
        println!("  {raw:<40} -> {}", normalize_transcript(raw)?);
    }

    // Speech bounded by pauses; pauses shorter than the threshold are
    // absorbed into the surrounding speech.
    let timeline = SpeechTimeline {
        intervals: vec![
            Interval { kind: IntervalKind::Speech, start_ms: 0, end_ms: 1200 },
            Interval { kind: IntervalKind::Pause, start_ms: 1200, end_ms: 1450 }, // short
            Interval { kind: IntervalKind::Speech, start_ms: 1450, end_ms: 2600 },
            Interval { kind: IntervalKind::Pause, start_ms: 2600, end_ms: 3400 }, // long
            Interval { kind: IntervalKind::Speech, start_ms: 3400, end_ms: 5000 },
        ],
    };
    timeline.validate()?;
    let ipus = segment_ipus(&timeline, DEFAULT_MIN_PAUSE_MS)?;
    println!("\nIPUs with a {DEFAULT_MIN_PAUSE_MS} ms pause threshold:");
    for (start, end) in ipus {
        println!("  {start:>5} .. {end:>5} ms");
    }
    Ok(())
}
