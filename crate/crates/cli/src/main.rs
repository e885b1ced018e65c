//! `derange`: analysis of permutation groups and actions from the command
//! line.
//!
//! Exit status: 0 analysis completed, 1 invalid input, 2 cap exceeded,
//! 3 internal invariant violated.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use derange_core::constructions::DEFAULT_COSET_CAP;
use derange_core::{Error, DEFAULT_ENUMERATION_CAP, DEFAULT_LATTICE_CAP};
use derange_core::affine::DEFAULT_SPIN_CAP;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "derange", version, about = "Derangements, normal coverings and related checks")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Largest group enumerated element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP, value_parser = positive)]
    pub cap_enum: usize,
    /// Largest group whose subgroup lattice is built.
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_CAP, value_parser = positive)]
    pub cap_lattice: usize,
    /// Most cosets defined during coset enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_COSET_CAP, value_parser = positive)]
    pub cap_coset: usize,
    /// Largest vector space listed point by point.
    #[arg(long, global = true, default_value_t = DEFAULT_SPIN_CAP, value_parser = positive)]
    pub cap_spin: usize,
    /// Worker threads for the conjecture harness.
    #[arg(long, global = true, default_value_t = 1, value_parser = positive)]
    pub jobs: usize,
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = derange_core::derangements::SWEEP_SEED)]
    pub seed: u64,
    /// Print the canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Derangement search on an action file.
    Check {
        file: PathBuf,
        /// Random elements tried when the group is too large to enumerate.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Whether the conjugates of the given subgroups cover the group.
    Covering {
        group: PathBuf,
        /// Group file of a subgroup; repeat for each subgroup.
        #[arg(long = "subgroup", required = true)]
        subgroups: Vec<PathBuf>,
    },
    /// Searches for two equal-order subgroups whose conjugates cover.
    VerifyConjecture {
        /// Group files to check instead of a catalog.
        files: Vec<PathBuf>,
        #[arg(long, value_enum)]
        catalog: Option<CatalogName>,
        /// Catalog groups above this order are left out.
        #[arg(long, default_value_t = 200)]
        max_order: usize,
    },
    /// Exact mean of fixed points over the coset `G h`.
    CosetAverage {
        group: PathBuf,
        /// Element of the symmetric group in 1-based cycle notation.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Coset enumeration on a presentation file.
    Present {
        file: PathBuf,
        /// Comma-separated subgroup generators as words.
        #[arg(long, default_value = "")]
        subgroup: String,
    },
    /// Affine and linear groups over prime fields.
    Affine {
        #[command(subcommand)]
        command: AffineCommand,
    },
    /// Derangement fixing a nonzero vector under a representation.
    Isbell {
        group: PathBuf,
        /// Matrix file with one matrix per group generator.
        #[arg(long)]
        rho: PathBuf,
    },
    /// Exceptional root systems and the last-node filter.
    Roots {
        /// 6, 7 or 8; all three when omitted.
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Numeric inequalities, valuations and Lie-type parameters.
    Bounds {
        #[arg(long, value_enum)]
        part: BoundPart,
        /// Evaluate a whole grid instead of one case.
        #[arg(long)]
        grid: bool,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        f: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        /// Grid limits: `i` uses d and r, p; `ii` uses b, p, f; `factorial`
        /// uses m, p; `table` uses the rank.
        #[arg(long, value_delimiter = ',')]
        max: Vec<u64>,
    },
    /// The default catalog of groups and actions.
    Catalog {
        /// Print the manifest only, without building anything.
        #[arg(long)]
        manifest: bool,
        #[arg(long)]
        max_order: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum AffineCommand {
    /// Summary of V:H, with H generated by a matrix file or all of GL_d(p).
    Group {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        gens: Option<PathBuf>,
        /// Also sort the maximal subgroups.
        #[arg(long)]
        maximals: bool,
    },
    /// Builds (v, h^-1) from M <= H and checks it is a derangement.
    Construct {
        /// Generators of H; all of GL_d(p) when omitted.
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        h: PathBuf,
        /// Comma-separated vector entries.
        #[arg(long, value_delimiter = ',')]
        v: Vec<u32>,
    },
    /// GL_m(p^2) on the cosets of GL_m(p): index valuation and unipotent classes.
    Subfield {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u32,
    },
    /// dim C_V(g) = dim V (mod e) across GL_n(p).
    Congruence {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_e: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    Default,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundPart {
    I,
    Ii,
    Factorial,
    Table,
    Records,
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 2,
        Error::InvariantViolation(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = commands::run(&cli);
    let elapsed = start.elapsed();
    match outcome {
        Ok(report) => {
            emit(&report, cli.config.json);
            eprintln!("timing: {{\"elapsed_ms\": {}}}", elapsed.as_millis());
            ExitCode::from(report.exit_status)
        }
        Err(commands::Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.canonical_json());
    } else {
        print!("{}", report.text());
    }
}
