use std::fmt::Write as _;

use super::CorpusManifest;

#[derive(Debug, Clone, PartialEq)]
pub struct SpeakerStats {
    pub speaker_id: String,
    pub duration_ms: u64,
    pub pct: f64,
    pub episodes: usize,
    pub ipus: usize,
}

#[derive(Debug, Clone)]
pub struct StatsReport {
    /// Sorted by duration, longest speaker first.
    pub speakers: Vec<SpeakerStats>,
    pub total_duration_ms: u64,
    pub total_episodes: usize,
    pub total_ipus: usize,
}

/// Per-speaker duration, episode, and IPU counts with percentage shares.
pub fn corpus_stats(manifest: &CorpusManifest) -> StatsReport {
    let mut speakers: Vec<SpeakerStats> = manifest
        .speakers
        .iter()
        .map(|speaker| {
            let duration_ms: u64 = speaker
                .episodes
                .iter()
                .flat_map(|e| e.ipus.iter())
                .map(|ipu| ipu.duration_ms())
                .sum();
            let ipus = speaker.episodes.iter().map(|e| e.ipus.len()).sum();
            SpeakerStats {
                speaker_id: speaker.speaker_id.clone(),
                duration_ms,
                pct: 0.0,
                episodes: speaker.episodes.len(),
                ipus,
            }
        })
        .collect();
    let total_duration_ms: u64 = speakers.iter().map(|s| s.duration_ms).sum();
    let total_episodes: usize = speakers.iter().map(|s| s.episodes).sum();
    let total_ipus: usize = speakers.iter().map(|s| s.ipus).sum();
    for s in &mut speakers {
        s.pct = if total_duration_ms == 0 {
            0.0
        } else {
            100.0 * s.duration_ms as f64 / total_duration_ms as f64
        };
    }
    speakers.sort_by(|a, b| b.duration_ms.cmp(&a.duration_ms).then(a.speaker_id.cmp(&b.speaker_id)));
    StatsReport { speakers, total_duration_ms, total_episodes, total_ipus }
}

pub fn format_hms(ms: u64) -> String {
    let total_s = ms / 1000;
    format!("{}:{:02}:{:02}", total_s / 3600, (total_s / 60) % 60, total_s % 60)
}

impl StatsReport {
    /// Aligned-column text table with a totals row.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<[String; 5]> = vec![[
            "speaker".into(),
            "duration".into(),
            "pct".into(),
            "episodes".into(),
            "ipus".into(),
        ]];
        for s in &self.speakers {
            rows.push([
                s.speaker_id.clone(),
                format_hms(s.duration_ms),
                format!("{:.1}", s.pct),
                s.episodes.to_string(),
                s.ipus.to_string(),
            ]);
        }
        rows.push([
            "total".into(),
            format_hms(self.total_duration_ms),
            "100.0".into(),
            self.total_episodes.to_string(),
            self.total_ipus.to_string(),
        ]);
        let mut widths = [0usize; 5];
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for row in &rows {
            let mut line = String::new();
            for (w, cell) in widths.iter().zip(row) {
                let _ = write!(line, "{cell:<w$}  ");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// Machine-readable TSV: speaker_id, duration_ms, pct, episodes, ipus.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("speaker_id\tduration_ms\tpct\tepisodes\tipus\n");
        for s in &self.speakers {
            let _ = writeln!(
                out,
                "{}\t{}\t{:.1}\t{}\t{}",
                s.speaker_id, s.duration_ms, s.pct, s.episodes, s.ipus
            );
        }
        let _ = writeln!(
            out,
            "total\t{}\t100.0\t{}\t{}",
            self.total_duration_ms, self.total_episodes, self.total_ipus
        );
        out
    }
}
