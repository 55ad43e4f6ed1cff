//! Command-line front end: parse instance files, run constructions, moves,
//! and certification, and emit JSON, DOT, or ASCII diagrams.
//!
//! Exit codes: 0 on success, 1 on a domain error (with a machine-readable
//! `{"error": code, "detail": ...}` object on stdout), 2 on usage errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use stringex::diagram::build_diagram;
use stringex::dot::{coloured_to_dot, usual_to_dot};
use stringex::exchange::{coloured_quiver, exchange_matrix, usual_quiver, ExchangeMatrix};
use stringex::moves::{flip, reduce, reduce_to_bottom, ReductionKind};
use stringex::mutation::{apply_seq, search_reddening, MutationSeq};
use stringex::oracle::{check_entry_ranges, oracle_matrix};
use stringex::pprime::{certify_pprime, replay, Certificate};
use stringex::sample;
use stringex::{ClosedStringId, InstanceFile};

#[derive(Parser)]
#[command(name = "stringex", version, about = "Exchange matrices from string diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Ascii,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuiverKind {
    Coloured,
    Usual,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApplyOrder {
    /// Leftmost direction applied last (function composition; the default).
    Composition,
    /// Leftmost direction applied first.
    Sequential,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceArg {
    Ld,
    Lu,
    Rd,
    Ru,
}

impl From<ReduceArg> for ReductionKind {
    fn from(value: ReduceArg) -> Self {
        match value {
            ReduceArg::Ld => ReductionKind::Ld,
            ReduceArg::Lu => ReductionKind::Lu,
            ReduceArg::Rd => ReductionKind::Rd,
            ReduceArg::Ru => ReductionKind::Ru,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the exchange matrix of an instance.
    Build {
        #[arg(short, long, conflicts_with = "dir")]
        input: Option<PathBuf>,
        /// Process every .json instance in a directory, sorted by filename.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Render the string diagram as ASCII, one row per level.
    Render {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Emit a quiver view as DOT.
    Dot {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = QuiverKind::Coloured)]
        kind: QuiverKind,
    },
    /// Apply a mutation sequence to the exchange matrix.
    Mutate {
        #[arg(short, long)]
        input: PathBuf,
        /// Comma-separated directions, e.g. "1:2,1:3".
        #[arg(long)]
        seq: String,
        #[arg(long, value_enum, default_value_t = ApplyOrder::Composition)]
        apply_order: ApplyOrder,
    },
    /// Flip the diagonal between triangles pos and pos+1.
    Flip {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        pos: usize,
    },
    /// Toggle an end letter between the bases.
    Reduce {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: ReduceArg,
    },
    /// Reduce to the all-bottom word, recording mutations.
    ReduceToBottom {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Produce a replayable source-sink extension certificate.
    Certify {
        #[arg(short, long, conflicts_with = "dir")]
        input: Option<PathBuf>,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Replay a certificate against the instance's exchange matrix.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Breadth-first search for a reddening sequence of the framed matrix.
    Redden {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_depth: usize,
        /// Lift the vertex-count guard.
        #[arg(long)]
        allow_large: bool,
    },
    /// Cross-checks against the independent entry oracle.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Compare the construction against the oracle and the entry ranges.
    Check {
        #[arg(short, long, conflicts_with_all = ["dir", "random"])]
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "random")]
        dir: Option<PathBuf>,
        /// Check this many seeded random instances instead of a file.
        #[arg(long)]
        random: Option<usize>,
        /// Seed for --random; falls back to STRINGEX_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Domain(stringex::Error),
    Io(String),
    Mismatch(String),
}

impl From<stringex::Error> for Failure {
    fn from(e: stringex::Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, detail) = match failure {
                Failure::Domain(e) => (e.code(), e.to_string()),
                Failure::Io(detail) => ("Io", detail),
                Failure::Mismatch(detail) => ("VerificationFailed", detail),
            };
            println!(
                "{}",
                pretty(&json!({ "error": code, "detail": detail }))
            );
            ExitCode::FAILURE
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn read_instance(path: &Path) -> Result<InstanceFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::Domain(stringex::Error::InvalidInstance(format!(
            "{}: {e}",
            path.display()
        )))
    })
}

fn read_word(path: &Path) -> Result<stringex::ShuffleWord, Failure> {
    Ok(read_instance(path)?.to_word()?)
}

fn parse_seq(text: &str, order: ApplyOrder) -> Result<MutationSeq, Failure> {
    let mut directions = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<ClosedStringId>())
        .collect::<stringex::Result<Vec<_>>>()?;
    if let ApplyOrder::Sequential = order {
        directions.reverse();
    }
    Ok(MutationSeq::new(directions))
}

fn instance_dir(dir: &Path) -> Result<Vec<(String, InstanceFile)>, Failure> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let name = p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((name, read_instance(&p)?))
        })
        .collect()
}

fn matrix_value(matrix: &ExchangeMatrix) -> Value {
    serde_json::to_value(matrix.to_json()).expect("matrix serializes")
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Build { input, dir, format } => match (input, dir) {
            (Some(path), None) => {
                let word = read_word(&path)?;
                build_one(&word, format)
            }
            (None, Some(dir)) => {
                let mut out = BTreeMap::new();
                for (name, inst) in instance_dir(&dir)? {
                    let word = inst.to_word()?;
                    out.insert(name, matrix_value(&exchange_matrix(&word)?));
                }
                Ok(pretty(&out) + "\n")
            }
            _ => Err(Failure::Io("build needs --input or --dir".into())),
        },
        Command::Render { input } => {
            let word = read_word(&input)?;
            Ok(build_diagram(&word).render())
        }
        Command::Dot { input, kind } => {
            let word = read_word(&input)?;
            let matrix = exchange_matrix(&word)?;
            match kind {
                QuiverKind::Coloured => {
                    let q = coloured_quiver(&matrix, word.cartan())?;
                    Ok(coloured_to_dot(&q, word.cartan()))
                }
                QuiverKind::Usual => Ok(usual_to_dot(&usual_quiver(&matrix)?)),
            }
        }
        Command::Mutate {
            input,
            seq,
            apply_order,
        } => {
            let word = read_word(&input)?;
            let sequence = parse_seq(&seq, apply_order)?;
            let matrix = apply_seq(&exchange_matrix(&word)?, &sequence)?;
            Ok(pretty(&matrix.to_json()) + "\n")
        }
        Command::Flip { input, pos } => {
            let word = read_word(&input)?;
            let (flipped, effect) = flip(&word, pos)?;
            Ok(pretty(&json!({
                "instance": InstanceFile::from_word(&flipped),
                "effect": effect,
            })) + "\n")
        }
        Command::Reduce { input, kind } => {
            let word = read_word(&input)?;
            let reduced = reduce(&word, kind.into())?;
            Ok(pretty(&InstanceFile::from_word(&reduced)) + "\n")
        }
        Command::ReduceToBottom { input } => {
            let word = read_word(&input)?;
            let (bottom, mutations, label_map) = reduce_to_bottom(&word)?;
            Ok(pretty(&json!({
                "bottom_word": InstanceFile::from_word(&bottom),
                "mutations": mutations,
                "label_map": label_map,
            })) + "\n")
        }
        Command::Certify { input, dir } => match (input, dir) {
            (Some(path), None) => {
                let word = read_word(&path)?;
                Ok(pretty(&certify_pprime(&word)?) + "\n")
            }
            (None, Some(dir)) => {
                let mut out = BTreeMap::new();
                for (name, inst) in instance_dir(&dir)? {
                    let word = inst.to_word()?;
                    let cert = certify_pprime(&word)?;
                    out.insert(name, serde_json::to_value(cert).expect("serializable"));
                }
                Ok(pretty(&out) + "\n")
            }
            _ => Err(Failure::Io("certify needs --input or --dir".into())),
        },
        Command::Verify { input, certificate } => {
            let word = read_word(&input)?;
            let text = std::fs::read_to_string(&certificate)
                .map_err(|e| Failure::Io(format!("{}: {e}", certificate.display())))?;
            let cert: Certificate = serde_json::from_str(&text).map_err(|e| {
                Failure::Domain(stringex::Error::InvalidInstance(format!(
                    "{}: {e}",
                    certificate.display()
                )))
            })?;
            let matrix = exchange_matrix(&word)?;
            match replay(&cert, &matrix) {
                Ok(()) => Ok(pretty(&json!({ "verified": true })) + "\n"),
                Err(detail) => Err(Failure::Mismatch(detail)),
            }
        }
        Command::Redden {
            input,
            max_depth,
            allow_large,
        } => {
            let word = read_word(&input)?;
            let matrix = exchange_matrix(&word)?;
            let found = search_reddening(&matrix, max_depth, allow_large)?;
            Ok(pretty(&json!({
                "sequence": found,
                "exhausted": found.is_none(),
            })) + "\n")
        }
        Command::Oracle { command } => match command {
            OracleCommand::Check {
                input,
                dir,
                random,
                seed,
            } => oracle_check(input, dir, random, seed),
        },
    }
}

fn build_one(word: &stringex::ShuffleWord, format: Format) -> CmdResult {
    let matrix = exchange_matrix(word)?;
    match format {
        Format::Json => Ok(pretty(&matrix.to_json()) + "\n"),
        Format::Ascii => Ok(build_diagram(word).render()),
        Format::Dot => {
            let q = coloured_quiver(&matrix, word.cartan())?;
            Ok(coloured_to_dot(&q, word.cartan()))
        }
    }
}

fn check_one(word: &stringex::ShuffleWord) -> Result<(), Failure> {
    let built = exchange_matrix(word)?;
    let oracle = oracle_matrix(&build_diagram(word))?;
    if built != oracle {
        return Err(Failure::Mismatch(format!(
            "oracle disagrees on word {word}"
        )));
    }
    if !check_entry_ranges(&built, word.cartan()) {
        return Err(Failure::Mismatch(format!(
            "entry ranges violated on word {word}"
        )));
    }
    Ok(())
}

fn oracle_check(
    input: Option<PathBuf>,
    dir: Option<PathBuf>,
    random: Option<usize>,
    seed: Option<u64>,
) -> CmdResult {
    let mut checked = 0usize;
    if let Some(count) = random {
        let seed = seed
            .or_else(|| {
                std::env::var("STRINGEX_SEED")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            check_one(&sample::random_word(&mut rng, 4, 12))?;
            checked += 1;
        }
    } else if let Some(dir) = dir {
        for (_, inst) in instance_dir(&dir)? {
            check_one(&inst.to_word()?)?;
            checked += 1;
        }
    } else if let Some(path) = input {
        check_one(&read_word(&path)?)?;
        checked += 1;
    } else {
        return Err(Failure::Io(
            "oracle check needs --input, --dir, or --random".into(),
        ));
    }
    Ok(pretty(&json!({ "agree": true, "entry_ranges": true, "instances": checked })) + "\n")
}
