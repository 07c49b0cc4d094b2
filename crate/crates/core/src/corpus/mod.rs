//! Corpus manifests: transcript normalization, inter-pausal unit
//! segmentation, long-utterance filtering, train/dev/test splits, and
//! speaker-wise statistics.

mod stats;
mod timeline;

pub use stats::{corpus_stats, SpeakerStats, StatsReport};
pub use timeline::{segment_ipus, Interval, IntervalKind, SpeechTimeline, DEFAULT_MIN_PAUSE_MS};

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alphabet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub speakers: Vec<SpeakerRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpeakerRecord {
    pub speaker_id: String,
    pub episodes: Vec<EpisodeRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub episode_id: String,
    pub ipus: Vec<IpuRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IpuRecord {
    pub ipu_id: String,
    pub start_ms: u64,
    pub end_ms: u64,
    pub raw_transcript: String,
    /// Derived from `raw_transcript`; populated by [`CorpusManifest::normalize`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized_transcript: Option<String>,
}

impl IpuRecord {
    pub fn duration_ms(&self) -> u64 {
        self.end_ms - self.start_ms
    }
}

/// A reference to one IPU inside a manifest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IpuRef {
    pub speaker_id: String,
    pub episode_id: String,
    pub ipu_id: String,
}

impl CorpusManifest {
    pub fn from_json(json: &str) -> Result<Self> {
        let manifest: CorpusManifest = serde_json::from_str(json)?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let mut speaker_ids = HashSet::new();
        for speaker in &self.speakers {
            if !speaker_ids.insert(&speaker.speaker_id) {
                return Err(Error::InvalidManifest(format!(
                    "duplicate speaker_id '{}'",
                    speaker.speaker_id
                )));
            }
            let mut episode_ids = HashSet::new();
            for episode in &speaker.episodes {
                if !episode_ids.insert(&episode.episode_id) {
                    return Err(Error::InvalidManifest(format!(
                        "duplicate episode_id '{}' in speaker '{}'",
                        episode.episode_id, speaker.speaker_id
                    )));
                }
                let mut ipu_ids = HashSet::new();
                for ipu in &episode.ipus {
                    if !ipu_ids.insert(&ipu.ipu_id) {
                        return Err(Error::InvalidManifest(format!(
                            "duplicate ipu_id '{}' in episode '{}'",
                            ipu.ipu_id, episode.episode_id
                        )));
                    }
                    if ipu.end_ms <= ipu.start_ms {
                        return Err(Error::InvalidManifest(format!(
                            "ipu '{}' has non-positive duration ({}..{})",
                            ipu.ipu_id, ipu.start_ms, ipu.end_ms
                        )));
                    }
                    if let Some(norm) = &ipu.normalized_transcript {
                        if norm.contains('_') || norm.contains('\'') {
                            return Err(Error::InvalidManifest(format!(
                                "ipu '{}' normalized transcript still contains '_' or '''",
                                ipu.ipu_id
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Fills `normalized_transcript` for every IPU.
    pub fn normalize(&mut self) -> Result<()> {
        for speaker in &mut self.speakers {
            for episode in &mut speaker.episodes {
                for ipu in &mut episode.ipus {
                    ipu.normalized_transcript = Some(normalize_transcript(&ipu.raw_transcript)?);
                }
            }
        }
        Ok(())
    }

    pub fn ipu_refs(&self) -> Vec<IpuRef> {
        let mut refs = Vec::new();
        for speaker in &self.speakers {
            for episode in &speaker.episodes {
                for ipu in &episode.ipus {
                    refs.push(IpuRef {
                        speaker_id: speaker.speaker_id.clone(),
                        episode_id: episode.episode_id.clone(),
                        ipu_id: ipu.ipu_id.clone(),
                    });
                }
            }
        }
        refs
    }
}

/// Removes `_`, `__`, and `'` from a raw transcript, collapsing whitespace.
/// `=` is kept attached to its neighbors exactly as in the input.
pub fn normalize_transcript(raw: &str) -> Result<String> {
    for (pos, ch) in raw.chars().enumerate() {
        let ok = alphabet::is_letter(ch) || ch == alphabet::EQ || ch == '\'' || ch == '_' || ch == ' ';
        if !ok {
            return Err(Error::InvalidCharacter { ch, pos });
        }
    }
    let stripped: String = raw.chars().filter(|&c| c != '_' && c != '\'').collect();
    Ok(stripped.split_whitespace().collect::<Vec<_>>().join(" "))
}

/// Keeps IPUs no longer than `max_seconds` (the boundary itself is kept).
/// Returns the retained records and the number removed.
pub fn filter_long(ipus: Vec<IpuRecord>, max_seconds: f64) -> (Vec<IpuRecord>, usize) {
    let max_ms = (max_seconds * 1000.0).round() as u64;
    let before = ipus.len();
    let kept: Vec<IpuRecord> = ipus
        .into_iter()
        .filter(|ipu| ipu.duration_ms() <= max_ms)
        .collect();
    let removed = before - kept.len();
    (kept, removed)
}

pub const DEFAULT_MAX_SECONDS: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitMode {
    SpeakerClosed,
    SpeakerOpen,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitSpec {
    pub mode: SplitMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub held_out_speaker: Option<String>,
    #[serde(default)]
    pub dev_episodes: BTreeMap<String, String>,
    #[serde(default)]
    pub test_episodes: BTreeMap<String, String>,
    /// When true, holding out a dominant speaker (KM or UT) is allowed.
    #[serde(default)]
    pub allow_dominant_held_out: bool,
}

impl SplitSpec {
    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

/// Speakers whose data dominates the corpus; removing either leaves too
/// little training material, so holding them out requires an explicit
/// override.
pub const DOMINANT_SPEAKERS: [&str; 2] = ["KM", "UT"];

#[derive(Debug, Clone, Default)]
pub struct Splits {
    pub train: Vec<IpuRef>,
    pub dev: Vec<IpuRef>,
    pub test: Vec<IpuRef>,
}

/// Partitions the manifest's IPUs into train/dev/test according to `spec`.
pub fn make_splits(manifest: &CorpusManifest, spec: &SplitSpec) -> Result<Splits> {
    match spec.mode {
        SplitMode::SpeakerClosed => make_closed_splits(manifest, spec),
        SplitMode::SpeakerOpen => make_open_splits(manifest, spec),
    }
}

fn make_closed_splits(manifest: &CorpusManifest, spec: &SplitSpec) -> Result<Splits> {
    let mut splits = Splits::default();
    for speaker in &manifest.speakers {
        let dev_episode = spec.dev_episodes.get(&speaker.speaker_id).ok_or_else(|| {
            Error::InvalidSplit(format!("no dev episode for speaker '{}'", speaker.speaker_id))
        })?;
        let test_episode = spec.test_episodes.get(&speaker.speaker_id).ok_or_else(|| {
            Error::InvalidSplit(format!("no test episode for speaker '{}'", speaker.speaker_id))
        })?;
        if dev_episode == test_episode {
            return Err(Error::InvalidSplit(format!(
                "dev and test episode coincide ('{}') for speaker '{}'",
                dev_episode, speaker.speaker_id
            )));
        }
        for id in [dev_episode, test_episode] {
            if !speaker.episodes.iter().any(|e| &e.episode_id == id) {
                return Err(Error::InvalidSplit(format!(
                    "episode '{}' not found in speaker '{}'",
                    id, speaker.speaker_id
                )));
            }
        }
        for episode in &speaker.episodes {
            let bucket = if &episode.episode_id == dev_episode {
                &mut splits.dev
            } else if &episode.episode_id == test_episode {
                &mut splits.test
            } else {
                &mut splits.train
            };
            for ipu in &episode.ipus {
                bucket.push(IpuRef {
                    speaker_id: speaker.speaker_id.clone(),
                    episode_id: episode.episode_id.clone(),
                    ipu_id: ipu.ipu_id.clone(),
                });
            }
        }
    }
    Ok(splits)
}

fn make_open_splits(manifest: &CorpusManifest, spec: &SplitSpec) -> Result<Splits> {
    let held_out = spec
        .held_out_speaker
        .as_ref()
        .ok_or_else(|| Error::InvalidSplit("speaker-open requires held_out_speaker".into()))?;
    if DOMINANT_SPEAKERS.contains(&held_out.as_str()) && !spec.allow_dominant_held_out {
        return Err(Error::InvalidSplit(format!(
            "holding out dominant speaker '{held_out}' removes most training data; \
             set allow_dominant_held_out to proceed"
        )));
    }
    if !manifest.speakers.iter().any(|s| &s.speaker_id == held_out) {
        return Err(Error::InvalidSplit(format!(
            "held_out_speaker '{held_out}' not present in manifest"
        )));
    }
    let mut splits = Splits::default();
    for speaker in &manifest.speakers {
        let bucket = if &speaker.speaker_id == held_out {
            &mut splits.test
        } else {
            &mut splits.train
        };
        for episode in &speaker.episodes {
            for ipu in &episode.ipus {
                bucket.push(IpuRef {
                    speaker_id: speaker.speaker_id.clone(),
                    episode_id: episode.episode_id.clone(),
                    ipu_id: ipu.ipu_id.clone(),
                });
            }
        }
    }
    Ok(splits)
}
