use std::fmt::Write as _;

/// Error/token tallies for one speaker under one metric.
#[derive(Debug, Clone)]
pub struct SpeakerScore {
    pub speaker_id: String,
    pub errors: usize,
    pub ref_tokens: usize,
}

impl SpeakerScore {
    pub fn rate(&self) -> f64 {
        100.0 * self.errors as f64 / self.ref_tokens as f64
    }
}

#[derive(Debug, Clone)]
pub struct ScoreReport {
    pub speakers: Vec<SpeakerScore>,
    /// Micro-average: pooled errors over pooled reference tokens, i.e. the
    /// per-speaker rates weighted by reference token counts.
    pub average: f64,
}

/// Token-weighted aggregation across speakers.
pub fn aggregate(per_speaker: Vec<SpeakerScore>) -> ScoreReport {
    assert!(per_speaker.iter().all(|s| s.ref_tokens > 0), "ref_tokens must be positive");
    let errors: usize = per_speaker.iter().map(|s| s.errors).sum();
    let tokens: usize = per_speaker.iter().map(|s| s.ref_tokens).sum();
    let average = if tokens == 0 { 0.0 } else { 100.0 * errors as f64 / tokens as f64 };
    ScoreReport { speakers: per_speaker, average }
}

impl ScoreReport {
    pub fn to_tsv(&self, metric: &str) -> String {
        let mut out = format!("speaker_id\t{metric}\terrors\tref_tokens\n");
        for s in &self.speakers {
            let _ = writeln!(out, "{}\t{:.1}\t{}\t{}", s.speaker_id, s.rate(), s.errors, s.ref_tokens);
        }
        let _ = writeln!(out, "average\t{:.1}\t\t", self.average);
        out
    }

    pub fn to_table(&self, metric: &str) -> String {
        let mut rows: Vec<[String; 2]> = vec![["speaker".into(), format!("{metric} (%)")]];
        for s in &self.speakers {
            rows.push([s.speaker_id.clone(), format!("{:.1}", s.rate())]);
        }
        rows.push(["average".into(), format!("{:.1}", self.average)]);
        let w0 = rows.iter().map(|r| r[0].len()).max().unwrap();
        let w1 = rows.iter().map(|r| r[1].len()).max().unwrap();
        let mut out = String::new();
        for r in rows {
            let _ = writeln!(out, "{:<w0$}  {:>w1$}", r[0], r[1]);
        }
        out
    }
}
