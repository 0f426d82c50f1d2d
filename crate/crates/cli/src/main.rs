mod commands;
mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Checks for Legendrian contact homology DGAs, cobordism maps and the
/// orientation sign lemmas.
///
/// Exit status: 0 on success, 1 when a check fails, 2 on unreadable input or
/// bad usage.
#[derive(Parser, Debug)]
#[command(name = "lch", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate gradings and check that the differential squares to zero.
    Check {
        dga: PathBuf,
        /// Rescale gradings of a file written in the older convention for
        /// dimension n.
        #[arg(long, value_name = "N")]
        legacy_rescale: Option<u32>,
    },
    /// Check that a cobordism table is a chain map of the right degree.
    MorphismCheck {
        cobordism: PathBuf,
        /// Overrides the file's `source` line.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Overrides the file's `target` line.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Print `second ∘ first`.
    Compose {
        first: PathBuf,
        second: PathBuf,
        /// Emit `source` and `target` lines copied from the inputs.
        #[arg(long)]
        with_paths: bool,
    },
    /// Sweep every sign lemma and compare ledgers with their closed forms.
    VerifySigns(SweepArgs),
    /// Linearized differential and homology ranks for an augmentation.
    Linearize { dga: PathBuf, augmentation: PathBuf },
}

#[derive(clap::Args, Debug)]
struct SweepArgs {
    /// Largest number of negative punctures on the upper disk.
    #[arg(long, env = "LCH_MAX_M", default_value_t = 5)]
    max_m: usize,
    /// Largest number of negative punctures on the lower disk.
    #[arg(long, env = "LCH_MAX_R", default_value_t = 5)]
    max_r: usize,
    /// Largest negative word length in the chain-map scenarios.
    #[arg(long, env = "LCH_MAX_L", default_value_t = 5)]
    max_l: usize,
    #[arg(long, env = "LCH_GRADING_MIN", default_value_t = -3, allow_hyphen_values = true)]
    grading_min: i64,
    #[arg(long, env = "LCH_GRADING_MAX", default_value_t = 4, allow_hyphen_values = true)]
    grading_max: i64,
    /// Dimensions to sweep, comma separated.
    #[arg(long = "n", env = "LCH_N", value_delimiter = ',', default_values_t = [1, 2, 3])]
    n_values: Vec<u32>,
    #[arg(long, env = "LCH_SEED", default_value_t = 0)]
    seed: u64,
    /// Random scenarios per randomized lemma.
    #[arg(long, env = "LCH_SAMPLES", default_value_t = 2000)]
    samples: usize,
    /// Bound on both disks in the exhaustive conformal sweep.
    #[arg(long, env = "LCH_CONFORMAL_MAX", default_value_t = 7)]
    conformal_max: usize,
    #[arg(long, env = "LCH_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// Flat key=value lines.
    Summary,
}

/// How a command ended, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    Check,
    Input(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { dga, legacy_rescale } => commands::check(&dga, legacy_rescale),
        Command::MorphismCheck {
            cobordism,
            source,
            target,
        } => commands::morphism_check(&cobordism, source.as_deref(), target.as_deref()),
        Command::Compose {
            first,
            second,
            with_paths,
        } => commands::compose(&first, &second, with_paths),
        Command::VerifySigns(a) => commands::verify_signs(
            lch_core::scenario::sweep::SweepConfig {
                max_m: a.max_m,
                max_r: a.max_r,
                max_l: a.max_l,
                grading_min: a.grading_min,
                grading_max: a.grading_max,
                n_values: a.n_values,
                seed: a.seed,
                samples: a.samples,
                conformal_max: a.conformal_max,
            },
            a.format == Format::Summary,
        ),
        Command::Linearize { dga, augmentation } => commands::linearize(&dga, &augmentation),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
