//! Score hypotheses against references with word and phone error rates,
//! including the compound-word case where WER and PER diverge.
//!
//!     cargo run --example score_hypotheses

use ainukit::eval::{aggregate, edit_alignment, per, wer, SpeakerScore};

fn main() -> ainukit::Result<()> {
    let cases = [
        ("i okake un a unuhu a onaha", "piokake un a unuhu a onaha"),
        ("i okake un a unuhu a onaha", "<unk> un a unuhu a onaha"),
        ("nen poka apkas an mak an kusu", "nenpoka apkas an makan kusu"),
    ];
    for (reference, hypothesis) in cases {
        println!("ref: {reference}");
        println!("hyp: {hypothesis}");
        println!("     WER {:5.1}%   PER {:5.1}%\n", wer(reference, hypothesis)?, per(reference, hypothesis)?);
    }

    // Alignment detail for the compound-word case.
    let r: Vec<&str> = "nen poka apkas an mak an kusu".split(' ').collect();
    let h: Vec<&str> = "nenpoka apkas an makan kusu".split(' ').collect();
    let a = edit_alignment(&r, &h);
    println!(
        "alignment: {} hits, {} substitutions, {} deletions, {} insertions",
        a.hits, a.substitutions, a.deletions, a.insertions
    );

    // Token-weighted averaging across speakers.
    let report = aggregate(vec![
        SpeakerScore { speaker_id: "KM".into(), errors: 4, ref_tokens: 7 },
        SpeakerScore { speaker_id: "UT".into(), errors: 1, ref_tokens: 20 },
    ]);
    println!("\n{}", report.to_table("WER"));
    Ok(())
}
