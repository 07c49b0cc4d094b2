use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ainukit::corpus::{self, CorpusManifest, SplitSpec};
use ainukit::eval::{self, SpeakerScore};
use ainukit::model::{self, CtcInput};
use ainukit::units::{self, Scheme, TokenSequence, UnitScheme, WordVocabulary};
use ainukit::wordpiece::{self, TrainConfig, UnigramModel};

#[derive(Parser)]
#[command(name = "ainukit", version, about = "Corpus preparation, tokenization, and scoring for low-resource end-to-end ASR")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Phone,
    Syllable,
    Wordpiece,
    Word,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize raw transcripts line by line.
    Normalize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Tokenize normalized text into a modeling unit.
    Tokenize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        scheme: SchemeArg,
        /// Word-piece model file (required for --scheme wordpiece).
        #[arg(long)]
        model: Option<PathBuf>,
        /// Word vocabulary file (required for --scheme word).
        #[arg(long)]
        vocab: Option<PathBuf>,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Rewrite token lines back into surface text.
    Detokenize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        scheme: SchemeArg,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Train a unigram word-piece model.
    TrainWp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 500)]
        target_size: usize,
        #[arg(long, default_value_t = 8)]
        max_piece_len: usize,
        #[arg(long, default_value_t = 2)]
        em_iters_per_round: usize,
        #[arg(long, default_value_t = 0.75)]
        keep_fraction: f64,
        #[arg(long = "out-model")]
        out_model: PathBuf,
    },
    /// Partition a manifest into train/dev/test IPU lists.
    Split {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Score hypotheses against references with WER and PER.
    Score {
        /// Reference surface text, one utterance per line.
        #[arg(long = "ref", conflicts_with = "pairs")]
        ref_file: Option<PathBuf>,
        /// Hypothesis file aligned with --ref.
        #[arg(long = "hyp", conflicts_with = "pairs", requires = "ref_file")]
        hyp_file: Option<PathBuf>,
        /// Alternative input: TSV of utterance_id, ref, hyp. The speaker id
        /// is the utterance_id prefix before the first '_'.
        #[arg(long)]
        pairs: Option<PathBuf>,
        /// Unit scheme of the hypothesis lines; anything but `word` surface
        /// text is first rewritten to words.
        #[arg(long, default_value = "word")]
        scheme: SchemeArg,
        /// Hypotheses are token lines of the given scheme rather than
        /// surface text.
        #[arg(long, default_value_t = false)]
        tokens: bool,
        #[arg(long = "report-out")]
        report_out: PathBuf,
    },
    /// CTC utilities over a log-posterior matrix TSV.
    Ctc {
        #[command(subcommand)]
        op: CtcOp,
    },
    /// Print per-speaker corpus statistics.
    Stats {
        #[arg(long)]
        manifest: PathBuf,
        /// Also write the machine-readable TSV here.
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CtcOp {
    /// Log-probability of a label sequence.
    Logprob {
        #[arg(long)]
        matrix: PathBuf,
        /// Space-separated label indices, e.g. "0 2 1".
        #[arg(long)]
        labels: String,
    },
    /// Prefix beam search decoding.
    Decode {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 16)]
        beam: usize,
        /// Comma-separated symbol names; defaults to indices.
        #[arg(long)]
        symbols: Option<String>,
    },
    /// Compare the analytic gradient against central finite differences.
    Gradcheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        labels: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>, String> {
    Ok(fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?
        .lines()
        .map(str::to_string)
        .collect())
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_ctc_input(path: &Path, symbols: Option<&str>) -> Result<CtcInput, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let matrix = model::parse_matrix_tsv(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let v = matrix.dims.get(1).copied().unwrap_or_else(|| {
        matrix.rows.first().map(|r| r.len().saturating_sub(1)).unwrap_or(0)
    });
    let symbol_table: Vec<String> = match symbols {
        Some(list) => list.split(',').map(str::to_string).collect(),
        None => (0..v).map(|i| i.to_string()).collect(),
    };
    if symbol_table.len() != v {
        return Err(format!("{} symbol names given for V={v}", symbol_table.len()));
    }
    let input = CtcInput { log_posteriors: matrix.rows, symbol_table };
    input.validate().map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(input)
}

fn parse_labels(labels: &str) -> Result<Vec<usize>, String> {
    labels
        .split_whitespace()
        .map(|f| f.parse::<usize>().map_err(|e| format!("bad label '{f}': {e}")))
        .collect()
}

fn resolve_scheme<'a>(
    scheme: SchemeArg,
    model: &'a Option<UnigramModel>,
    vocab: &'a Option<WordVocabulary>,
) -> Result<UnitScheme<'a>, String> {
    match scheme {
        SchemeArg::Phone => Ok(UnitScheme::Phone),
        SchemeArg::Syllable => Ok(UnitScheme::Syllable),
        SchemeArg::Wordpiece => model
            .as_ref()
            .map(UnitScheme::Wordpiece)
            .ok_or_else(|| "--scheme wordpiece requires --model".to_string()),
        SchemeArg::Word => vocab
            .as_ref()
            .map(UnitScheme::Word)
            .ok_or_else(|| "--scheme word requires --vocab".to_string()),
    }
}

fn plain_scheme(scheme: SchemeArg) -> Scheme {
    match scheme {
        SchemeArg::Phone => Scheme::Phone,
        SchemeArg::Syllable => Scheme::Syllable,
        SchemeArg::Wordpiece => Scheme::Wordpiece,
        SchemeArg::Word => Scheme::Word,
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Normalize { input, output } => {
            let mut out = String::new();
            for (i, line) in read_lines(&input)?.iter().enumerate() {
                let normalized = corpus::normalize_transcript(line)
                    .map_err(|e| format!("{} line {}: {e}", input.display(), i + 1))?;
                out.push_str(&normalized);
                out.push('\n');
            }
            write_file(&output, &out)
        }
        Command::Tokenize { input, scheme, model, vocab, output } => {
            let wp_model = match &model {
                Some(p) => Some(
                    UnigramModel::from_text(
                        &fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
                    )
                    .map_err(|e| format!("{}: {e}", p.display()))?,
                ),
                None => None,
            };
            let word_vocab = match &vocab {
                Some(p) => Some(
                    WordVocabulary::from_text(
                        &fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
                    )
                    .map_err(|e| format!("{}: {e}", p.display()))?,
                ),
                None => None,
            };
            let unit_scheme = resolve_scheme(scheme, &wp_model, &word_vocab)?;
            let mut out = String::new();
            for (i, line) in read_lines(&input)?.iter().enumerate() {
                let seq = units::tokenize(line, unit_scheme)
                    .map_err(|e| format!("{} line {}: {e}", input.display(), i + 1))?;
                out.push_str(&seq.to_line());
                out.push('\n');
            }
            write_file(&output, &out)
        }
        Command::Detokenize { input, scheme, output } => {
            let scheme = plain_scheme(scheme);
            let mut out = String::new();
            for (i, line) in read_lines(&input)?.iter().enumerate() {
                let seq = TokenSequence::from_line(scheme, line);
                let text = units::detokenize(&seq)
                    .map_err(|e| format!("{} line {}: {e}", input.display(), i + 1))?;
                out.push_str(&text);
                out.push('\n');
            }
            write_file(&output, &out)
        }
        Command::TrainWp {
            input,
            target_size,
            max_piece_len,
            em_iters_per_round,
            keep_fraction,
            out_model,
        } => {
            let lines = read_lines(&input)?;
            let config = TrainConfig {
                target_size,
                max_piece_len,
                em_iters_per_round,
                keep_fraction,
                ..TrainConfig::default()
            };
            let (model, report) =
                wordpiece::train(&lines, &config).map_err(|e| e.to_string())?;
            if !report.reached_target {
                eprintln!(
                    "warning: corpus supports only {} pieces (target {})",
                    model.len(),
                    target_size
                );
            }
            eprintln!(
                "trained {} pieces in {} rounds, log-likelihood {:.6}",
                model.len(),
                report.rounds,
                report.final_log_likelihood
            );
            write_file(&out_model, &model.to_text())
        }
        Command::Split { manifest, spec, out_dir } => {
            let manifest = CorpusManifest::load(&manifest).map_err(|e| e.to_string())?;
            let spec = SplitSpec::from_json(
                &fs::read_to_string(&spec).map_err(|e| format!("{}: {e}", spec.display()))?,
            )
            .map_err(|e| e.to_string())?;
            let splits = corpus::make_splits(&manifest, &spec).map_err(|e| e.to_string())?;
            fs::create_dir_all(&out_dir).map_err(|e| format!("{}: {e}", out_dir.display()))?;
            for (name, refs) in
                [("train", &splits.train), ("dev", &splits.dev), ("test", &splits.test)]
            {
                let mut out = String::new();
                for r in refs {
                    out.push_str(&format!("{}\t{}\t{}\n", r.speaker_id, r.episode_id, r.ipu_id));
                }
                write_file(&out_dir.join(format!("{name}.tsv")), &out)?;
            }
            eprintln!(
                "train {} / dev {} / test {} IPUs",
                splits.train.len(),
                splits.dev.len(),
                splits.test.len()
            );
            Ok(())
        }
        Command::Score { ref_file, hyp_file, pairs, scheme, tokens, report_out } => {
            let entries: Vec<(String, String, String)> = if let Some(pairs) = &pairs {
                let mut entries = Vec::new();
                for (i, line) in read_lines(pairs)?.iter().enumerate() {
                    if line.trim().is_empty() {
                        continue;
                    }
                    let fields: Vec<&str> = line.split('\t').collect();
                    if fields.len() != 3 {
                        return Err(format!(
                            "{} line {}: expected 3 tab-separated fields",
                            pairs.display(),
                            i + 1
                        ));
                    }
                    let speaker = fields[0].split('_').next().unwrap_or(fields[0]).to_string();
                    entries.push((speaker, fields[1].to_string(), fields[2].to_string()));
                }
                entries
            } else {
                let ref_file = ref_file.ok_or("either --ref/--hyp or --pairs is required")?;
                let hyp_file = hyp_file.ok_or("--hyp is required with --ref")?;
                let refs = read_lines(&ref_file)?;
                let hyps = read_lines(&hyp_file)?;
                if refs.len() != hyps.len() {
                    return Err(format!(
                        "{} has {} lines but {} has {}",
                        ref_file.display(),
                        refs.len(),
                        hyp_file.display(),
                        hyps.len()
                    ));
                }
                refs.into_iter().zip(hyps).map(|(r, h)| ("all".to_string(), r, h)).collect()
            };

            let scheme = plain_scheme(scheme);
            let mut word_tallies: BTreeMap<String, (usize, usize)> = BTreeMap::new();
            let mut phone_tallies: BTreeMap<String, (usize, usize)> = BTreeMap::new();
            for (i, (speaker, ref_text, hyp_raw)) in entries.iter().enumerate() {
                let hyp_text = if tokens && scheme != Scheme::Word {
                    let seq = TokenSequence::from_line(scheme, hyp_raw);
                    eval::rewrite_units_to_words(&seq)
                        .map_err(|e| format!("hypothesis line {}: {e}", i + 1))?
                } else {
                    hyp_raw.clone()
                };
                let ref_words: Vec<&str> = ref_text.split_whitespace().collect();
                let hyp_words: Vec<&str> = hyp_text.split_whitespace().collect();
                if ref_words.is_empty() {
                    return Err(format!("reference line {} is empty", i + 1));
                }
                let wa = eval::edit_alignment(&ref_words, &hyp_words);
                let entry = word_tallies.entry(speaker.clone()).or_insert((0, 0));
                entry.0 += wa.errors();
                entry.1 += ref_words.len();

                let ref_phones: Vec<String> =
                    eval::phones(ref_text).iter().map(|c| c.to_string()).collect();
                let hyp_phones: Vec<String> =
                    eval::phones(&hyp_text).iter().map(|c| c.to_string()).collect();
                if ref_phones.is_empty() {
                    return Err(format!("reference line {} has no phones", i + 1));
                }
                let pa = eval::edit_alignment(&ref_phones, &hyp_phones);
                let entry = phone_tallies.entry(speaker.clone()).or_insert((0, 0));
                entry.0 += pa.errors();
                entry.1 += ref_phones.len();
            }

            let to_scores = |tallies: BTreeMap<String, (usize, usize)>| {
                tallies
                    .into_iter()
                    .map(|(speaker_id, (errors, ref_tokens))| SpeakerScore {
                        speaker_id,
                        errors,
                        ref_tokens,
                    })
                    .collect::<Vec<_>>()
            };
            let wer_report = eval::aggregate(to_scores(word_tallies));
            let per_report = eval::aggregate(to_scores(phone_tallies));

            print!("{}", wer_report.to_table("WER"));
            println!();
            print!("{}", per_report.to_table("PER"));
            let mut tsv = wer_report.to_tsv("WER");
            tsv.push_str(&per_report.to_tsv("PER"));
            write_file(&report_out, &tsv)
        }
        Command::Ctc { op } => match op {
            CtcOp::Logprob { matrix, labels } => {
                let input = load_ctc_input(&matrix, None)?;
                let labels = parse_labels(&labels)?;
                let lp = model::ctc_log_prob(&input, &labels).map_err(|e| e.to_string())?;
                println!("{lp}");
                Ok(())
            }
            CtcOp::Decode { matrix, beam, symbols } => {
                let input = load_ctc_input(&matrix, symbols.as_deref())?;
                let decoded = model::prefix_beam_decode(&input, beam);
                let names: Vec<&str> =
                    decoded.iter().map(|&k| input.symbol_table[k].as_str()).collect();
                println!("{}", names.join(" "));
                Ok(())
            }
            CtcOp::Gradcheck { matrix, labels } => {
                let input = load_ctc_input(&matrix, None)?;
                let labels = parse_labels(&labels)?;
                let grad = model::ctc_grad(&input, &labels).map_err(|e| e.to_string())?;
                let step = 1e-6;
                let mut worst = 0.0f64;
                for t in 0..input.num_frames() {
                    for k in 0..=input.num_symbols() {
                        let mut plus = input.clone();
                        plus.log_posteriors[t][k] += step;
                        let mut minus = input.clone();
                        minus.log_posteriors[t][k] -= step;
                        let fd = (model::ctc_log_prob(&plus, &labels).map_err(|e| e.to_string())?
                            - model::ctc_log_prob(&minus, &labels).map_err(|e| e.to_string())?)
                            / (2.0 * step);
                        let denom = grad[t][k].abs().max(1.0);
                        worst = worst.max(((grad[t][k] - fd) / denom).abs());
                    }
                }
                println!("max relative error {worst:.3e}");
                if worst < 1e-5 {
                    Ok(())
                } else {
                    Err(format!("gradient check failed: max relative error {worst:.3e}"))
                }
            }
        },
        Command::Stats { manifest, tsv } => {
            let manifest = CorpusManifest::load(&manifest).map_err(|e| e.to_string())?;
            let report = corpus::corpus_stats(&manifest);
            print!("{}", report.to_table());
            if let Some(tsv) = tsv {
                write_file(&tsv, &report.to_tsv())?;
            }
            Ok(())
        }
    }
}
