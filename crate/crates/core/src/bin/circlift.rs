use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use circlift::circulant::{Border, CircVec, CodeSpec};
use circlift::distance::{min_hamming_distance, min_lee_distance};
use circlift::equivalence::{canonical_spec, orbit_size};
use circlift::record::{parse_records, verify_record, Family};
use circlift::search::{format_results, run_search, SearchConfig};
use circlift::{ChainRing, Error};

#[derive(Parser)]
#[command(name = "circlift", version, about = "Search self-dual double and bordered circulant codes over Z_{p^m}")]
struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the best minimum Lee distance for one length and family.
    Search {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        family: String,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Allow lengths above 24.
        #[arg(long)]
        extended: bool,
        /// Evaluate every lift of every base exactly.
        #[arg(long)]
        no_pruning: bool,
    },
    /// Re-check every record of a results file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Self-duality and minimum distances of one code.
    Distance {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        vector: String,
        /// `beta,gamma,delta` for bordered codes.
        #[arg(long)]
        border: Option<String>,
    },
    /// Canonical representative of a generating vector's orbit.
    Canon {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        vector: String,
        #[arg(long)]
        border: Option<String>,
    },
}

enum Failure {
    Config(Error),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::InvalidArgument(_) | Error::Parse(_) | Error::Unsupported(_) => {
                Failure::Config(e)
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn build_spec(ring: ChainRing, vector: &str, border: Option<&str>) -> Result<CodeSpec, Error> {
    let alpha = ring.alpha().expect("alpha set by caller");
    let core = CircVec::parse(ring, alpha, vector)?;
    match border {
        None => Ok(CodeSpec::double(core)),
        Some(b) => CodeSpec::bordered(core, Border::parse(ring, b)?),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Search { ring, length, family, threads, out, checkpoint, extended, no_pruning } => {
            let mut cfg = SearchConfig::new(ChainRing::parse(&ring)?, length, family.parse()?);
            cfg.threads = threads;
            cfg.out = out;
            cfg.checkpoint = checkpoint;
            cfg.extended = extended;
            cfg.no_pruning = no_pruning;
            cfg.validate()?;
            let outcome = run_search(&cfg).map_err(|e| Failure::Runtime(e.to_string()))?;
            print!("{}", format_results(&cfg, &outcome, true));
            Ok(())
        }
        Command::Verify { input } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", input.display())))?;
            let records = parse_records(&text).map_err(|e| Failure::Runtime(e.to_string()))?;
            let mut bad = 0;
            for rec in &records {
                let ok = verify_record(rec).unwrap_or(false);
                println!("{} {rec}", if ok { "ok  " } else { "FAIL" });
                bad += usize::from(!ok);
            }
            println!("# {} records, {} failed", records.len(), bad);
            if bad > 0 {
                return Err(Failure::Runtime(format!("{bad} records failed verification")));
            }
            Ok(())
        }
        Command::Distance { ring, family, vector, border } => {
            let family: Family = family.parse()?;
            let ring = family.ring_with_alpha(ChainRing::parse(&ring)?)?;
            if family.is_bordered() != border.is_some() {
                return Err(Error::Config(format!("--border is required exactly for bordered families")).into());
            }
            let spec = build_spec(ring, &vector, border.as_deref())?;
            println!("n={} k={} self_dual={}", spec.n(), spec.k(), spec.is_self_dual());
            println!("d_lee={}", min_lee_distance(&spec, None));
            println!("d_ham={}", min_hamming_distance(&spec));
            if ring.m() > 1 {
                let base = spec.project_to(ring.residue_field())?;
                println!("d_ham_base={}", min_hamming_distance(&base));
            }
            Ok(())
        }
        Command::Canon { ring, alpha, vector, border } => {
            let r = ChainRing::parse(&ring)?;
            let r = r.with_alpha(r.elem(alpha)?)?;
            let spec = build_spec(r, &vector, border.as_deref())?;
            let canon = canonical_spec(&spec);
            match canon.border() {
                None => println!("{} orbit_size={}", canon.core().to_digits(), orbit_size(spec.core())),
                Some(b) => println!("{} border={}", canon.core().to_digits(), b.to_digits()),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("circlift: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("circlift: {msg}");
            ExitCode::from(2)
        }
    }
}
