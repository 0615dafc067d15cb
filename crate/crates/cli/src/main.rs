mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "gamehop",
    version,
    about = "Exact replay of game-based proofs for BBS and Goldwasser-Micali"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the number-theoretic facts by enumeration.
    Facts(FactsArgs),
    /// Replay the BBS unpredictability reduction step by step.
    ReplayBbs(ReplayBbsArgs),
    /// Replay the GM semantic-security reduction step by step.
    ReplayGm(ReplayGmArgs),
    /// Print BBS output bits for a seed.
    Bbs(BbsArgs),
    /// Encrypt and decrypt a bit or bitstring with GM.
    Gm(GmArgs),
    /// Zero/one counts of a BBS output.
    Stats(BbsArgs),
}

/// One or more `(p, q)` pairs, given as repeated `--p P --q Q`.
#[derive(Debug, Args)]
struct Moduli {
    #[arg(long = "p", required = true)]
    p: Vec<u64>,
    #[arg(long = "q", required = true)]
    q: Vec<u64>,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the JSON report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FactsArgs {
    #[command(flatten)]
    moduli: Moduli,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Family {
    /// Attacker names to keep; `default` keeps all, `random` keeps the
    /// seeded random attackers.
    #[arg(long, value_delimiter = ',', default_value = "default")]
    family: Vec<String>,
    /// Seed for generating random attackers.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random attackers.
    #[arg(long, default_value_t = gamehop::games::family::DEFAULT_RANDOM_ATTACKERS)]
    random: usize,
    /// Corrupt one step of the chain.
    #[arg(long)]
    mutate: Option<gamehop::proofreplay::Mutation>,
}

#[derive(Debug, Args)]
struct ReplayBbsArgs {
    #[command(flatten)]
    moduli: Moduli,
    /// Output lengths to replay.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
    len: Vec<usize>,
    #[command(flatten)]
    family: Family,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct ReplayGmArgs {
    #[command(flatten)]
    moduli: Moduli,
    /// Public `y`; defaults to the least element of QNR_n(+1).
    #[arg(long)]
    y: Option<u64>,
    #[command(flatten)]
    family: Family,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct BbsArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    len: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct GmArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    /// Public `y`; defaults to the least element of QNR_n(+1).
    #[arg(long)]
    y: Option<u64>,
    #[arg(long, conflicts_with = "bits", required_unless_present = "bits", value_parser = clap::value_parser!(u8).range(0..=1))]
    bit: Option<u8>,
    /// A message such as `0110`, encrypted bit by bit.
    #[arg(long)]
    bits: Option<String>,
    /// Randomizers, one per bit. Without them the i-th bit uses the
    /// `(seed + i) mod |Z_n^*|`-th unit.
    #[arg(long, value_delimiter = ',')]
    x: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Facts(a) => commands::facts(a),
        Command::ReplayBbs(a) => commands::replay_bbs(a),
        Command::ReplayGm(a) => commands::replay_gm(a),
        Command::Bbs(a) => commands::bbs(a),
        Command::Gm(a) => commands::gm(a),
        Command::Stats(a) => commands::stats(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
