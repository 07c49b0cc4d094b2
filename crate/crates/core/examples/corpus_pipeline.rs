//! Build a manifest in memory, print speaker statistics, filter long
//! utterances, and partition the corpus into train/dev/test.
//!
//!     cargo run --example corpus_pipeline

use std::collections::BTreeMap;

use ainukit::corpus::{
    corpus_stats, filter_long, make_splits, CorpusManifest, EpisodeRecord, IpuRecord,
    SpeakerRecord, SplitMode, SplitSpec,
};

fn ipu(id: &str, end_ms: u64, text: &str) -> IpuRecord {
    IpuRecord {
        ipu_id: id.into(),
        start_ms: 0,
        end_ms,
        raw_transcript: text.into(),
        normalized_transcript: None,
    }
}

fn main() -> ainukit::Result<()> {
    let manifest = CorpusManifest {
        speakers: vec![
            SpeakerRecord {
                speaker_id: "AA".into(),
                episodes: vec![
                    EpisodeRecord {
                        episode_id: "AA-e0".into(),
                        ipus: vec![ipu("AA-i0", 4_000, "pirka wa"), ipu("AA-i1", 14_000, "nen poka apkas an")],
                    },
                    EpisodeRecord { episode_id: "AA-e1".into(), ipus: vec![ipu("AA-i2", 6_000, "isam an")] },
                    EpisodeRecord { episode_id: "AA-e2".into(), ipus: vec![ipu("AA-i3", 5_000, "kusu")] },
                ],
            },
            SpeakerRecord {
                speaker_id: "BB".into(),
                episodes: vec![
                    EpisodeRecord { episode_id: "BB-e0".into(), ipus: vec![ipu("BB-i0", 9_000, "mak an")] },
                    EpisodeRecord { episode_id: "BB-e1".into(), ipus: vec![ipu("BB-i1", 3_000, "uymam=an")] },
                    EpisodeRecord { episode_id: "BB-e2".into(), ipus: vec![ipu("BB-i2", 2_000, "wa")] },
                ],
            },
        ],
    };
    manifest.validate()?;

    println!("{}", corpus_stats(&manifest).to_table());

    // Remove utterances longer than 12 seconds before training.
    let all_ipus: Vec<IpuRecord> =
        manifest.speakers.iter().flat_map(|s| &s.episodes).flat_map(|e| e.ipus.clone()).collect();
    let (kept, dropped) = filter_long(all_ipus, 12.0);
    println!("long-utterance filter kept {} IPUs, dropped {dropped}\n", kept.len());

    let spec = SplitSpec {
        mode: SplitMode::SpeakerClosed,
        held_out_speaker: None,
        dev_episodes: BTreeMap::from([
            ("AA".to_string(), "AA-e1".to_string()),
            ("BB".to_string(), "BB-e1".to_string()),
        ]),
        test_episodes: BTreeMap::from([
            ("AA".to_string(), "AA-e2".to_string()),
            ("BB".to_string(), "BB-e2".to_string()),
        ]),
        allow_dominant_held_out: false,
    };
    let splits = make_splits(&manifest, &spec)?;
    for (name, refs) in [("train", &splits.train), ("dev", &splits.dev), ("test", &splits.test)] {
        let ids: Vec<&str> = refs.iter().map(|r| r.ipu_id.as_str()).collect();
        println!("{name:<5} {ids:?}");
    }
    Ok(())
}
