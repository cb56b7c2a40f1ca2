use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

mod commands;
mod input;
mod output;

use output::{Envelope, Format};

#[derive(Parser, Debug)]
#[command(name = "permclass", version, about = "Permutation classes, periodic permutations and rank encodings")]
struct Cli {
    /// Print human-readable text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    table: bool,
    /// Print the JSON envelope (default).
    #[arg(long, global = true)]
    json: bool,
    /// Suppress progress messages on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Finitely based class as JSON, e.g. {"basis": [[3,2,1]]}.
    #[arg(long = "class", value_name = "FILE")]
    pub class: Option<PathBuf>,
    /// Permutation of the naturals as JSON: {"window", "N", "P"} or {"prefix"}.
    #[arg(long = "pi", value_name = "FILE")]
    pub pi: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count (and optionally list) the members of a class by length.
    Enumerate {
        #[arg(long, value_name = "FILE")]
        class: PathBuf,
        #[arg(long)]
        max_n: usize,
        /// Include the members themselves.
        #[arg(long)]
        members: bool,
    },
    /// Basis elements of Sub(pi) up to a length.
    Basis {
        #[arg(long, value_name = "FILE")]
        pi: PathBuf,
        #[arg(long)]
        max_n: usize,
    },
    /// Infer an automaton for the encoded class and its generating function.
    Gf {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        train_len: usize,
    },
    /// Search for a pair of members with no common superpattern in the class.
    Atomic {
        #[arg(long, value_name = "FILE")]
        class: PathBuf,
        #[arg(long, value_parser = at_least(1))]
        pair_len: usize,
        /// Longest joint witness to accept; defaults to twice the pair length.
        #[arg(long)]
        witness_len: Option<usize>,
    },
    /// Decide between the sum-form and periodic branches for Sub(pi).
    Classify {
        #[arg(long, value_name = "FILE")]
        pi: PathBuf,
        #[arg(long, value_name = "FILE")]
        class: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Rank encoding of a permutation, e.g. `3142` or `3 1 4 2`.
    Encode { perm: String },
    /// Permutation with the given rank encoding, e.g. `1 2 1 3`.
    Decode { word: String },
    /// The length-k patterns of pi.
    Sub {
        #[arg(long, value_name = "FILE")]
        pi: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Landmarks k, l and the u/v sequences of an ultimately periodic pi.
    Landmarks {
        #[arg(long, value_name = "FILE")]
        pi: PathBuf,
        #[arg(long, value_name = "FILE")]
        class: PathBuf,
        /// Number of u/v entries.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Initial prefix length searched for embeddings of C.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Regenerate the worked example families.
    #[command(subcommand)]
    Examples(Example),
}

#[derive(Subcommand, Debug)]
enum Example {
    /// The n-th basis element of the twin oscillation's class.
    Twin {
        #[arg(long, value_parser = at_least(1))]
        n: usize,
    },
    /// The growing-block permutation and its initial segments.
    Growing {
        #[arg(long, value_parser = at_least(10))]
        depth: usize,
    },
}

fn at_least(min: u64) -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::new().range(min..)
}

fn configure_threads() {
    let Ok(raw) = std::env::var("PERMCLASS_THREADS") else { return };
    match raw.trim().parse::<usize>() {
        Ok(n) => {
            // Zero lets rayon pick.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => eprintln!("ignoring PERMCLASS_THREADS={raw:?}: not a non-negative integer"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Atomic { pair_len, witness_len: Some(w), .. } = &cli.command {
        if w < pair_len {
            Cli::command()
                .error(clap::error::ErrorKind::ValueValidation, "--witness-len must be at least --pair-len")
                .exit();
        }
    }
    configure_threads();
    let format = if cli.table { Format::Table } else { Format::Json };
    let progress = output::Progress::new(!cli.quiet);

    let result = match cli.command {
        Command::Enumerate { class, max_n, members } => commands::enumerate(&class, max_n, members, &progress),
        Command::Basis { pi, max_n } => commands::basis(&pi, max_n, &progress),
        Command::Gf { source, train_len } => commands::gf(&source, train_len, &progress),
        Command::Atomic { class, pair_len, witness_len } => commands::atomic(&class, pair_len, witness_len),
        Command::Classify { pi, class, depth } => commands::classify(&pi, &class, depth),
        Command::Encode { perm } => commands::encode(&perm),
        Command::Decode { word } => commands::decode(&word),
        Command::Sub { pi, k } => commands::sub(&pi, k),
        Command::Landmarks { pi, class, count, horizon } => commands::landmarks(&pi, &class, count, horizon),
        Command::Examples(Example::Twin { n }) => commands::twin(n),
        Command::Examples(Example::Growing { depth }) => commands::growing(depth),
    };

    let (envelope, code) = match result {
        Ok(out) => (Envelope::ok(out.payload, out.diagnostics, out.table), ExitCode::SUCCESS),
        Err(e) => (Envelope::error(&e), ExitCode::from(1)),
    };
    envelope.print(format);
    code
}
