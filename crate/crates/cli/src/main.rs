mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orthocusp_core::enumerate::DEFAULT_CAP;
use orthocusp_core::DegreeProfile;

use crate::commands::{CliError, EnumerateArgs, Target};
use crate::report::Report;

/// Exact combinatorics of right-angled hyperbolic polyhedra.
///
/// Exit status: 0 when every check passes, 1 on a failed check or
/// uncheckable input, 2 on usage errors, 3 on I/O errors.
#[derive(Parser, Debug)]
#[command(name = "orthocusp", version)]
struct Cli {
    /// Print `key=value` records instead of the text report.
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structural invariants of a POLY3 file.
    Validate {
        file: PathBuf,
        /// Required degrees as `FINITE,IDEAL`, e.g. `3,4` for right-angled.
        #[arg(long, value_parser = parse_profile)]
        profile: Option<DegreeProfile>,
    },
    /// Check Andreev's conditions (a)-(e) for a dihedral angle assignment.
    Andreev {
        file: PathBuf,
        /// Use pi/2 on every edge.
        #[arg(long, conflicts_with = "angles", required_unless_present = "angles")]
        right_angled: bool,
        /// Angle file with lines `angle: u v p q`, meaning (p/q) pi on edge u-v.
        #[arg(long)]
        angles: Option<PathBuf>,
    },
    /// Check the right-angled realizability conditions.
    RightAngled { file: PathBuf },
    /// Print the face-average bound for (n, k, l), or audit a POLY3 file.
    Nikulin {
        #[arg(conflicts_with_all = ["n", "k", "l"], required_unless_present = "n")]
        file: Option<PathBuf>,
        /// Dimension.
        #[arg(long, requires_all = ["k", "l"])]
        n: Option<usize>,
        /// Face dimension.
        #[arg(long, requires = "n")]
        k: Option<usize>,
        /// Subface dimension.
        #[arg(long, requires = "n")]
        l: Option<usize>,
    },
    /// Enumerate almost-simple types with up to F faces and C cusps.
    Enumerate {
        #[arg(long)]
        faces: usize,
        /// Number of cusps (0, 1 or 2).
        #[arg(long)]
        cusps: usize,
        /// Keep only types passing the right-angled conditions.
        #[arg(long)]
        realizable: bool,
        /// Directory for the POLY3 files and index.txt; defaults to $ORTHOCUSP_CACHE.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare the cache with a fresh enumeration instead of writing it.
        #[arg(long)]
        check_cache: bool,
        /// Worker threads; output does not depend on it.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        workers: Option<u16>,
        /// Upper limit accepted for --faces.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Re-run one of the built-in verifications.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        /// Face budget for the two-cusp minima.
        #[arg(long, default_value_t = 10)]
        budget: usize,
    },
    /// Print the cusp-count lower bounds for dimensions 6 to 12.
    Bounds {
        /// Include the arithmetic behind every entry.
        #[arg(long)]
        certificate: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyTarget {
    Lemma31,
    Tables,
    Minima,
    N7,
    All,
}

fn parse_profile(s: &str) -> Result<DegreeProfile, String> {
    let (a, b) = s.split_once(',').ok_or("expected FINITE,IDEAL")?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad degree `{a}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad degree `{b}`"))?;
    DegreeProfile::new(a, b).ok_or_else(|| "degrees must be positive".to_string())
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { file, profile } => commands::validate_file(file, *profile),
        Command::Andreev { file, angles, .. } => commands::andreev(file, angles.as_deref()),
        Command::RightAngled { file } => commands::right_angled(file),
        Command::Nikulin { file, n, k, l } => match (file, n, k, l) {
            (Some(f), ..) => commands::nikulin_file(f),
            (None, Some(n), Some(k), Some(l)) => commands::nikulin_bound(*n, *k, *l),
            _ => Err(CliError::Usage(
                "give a POLY3 file or all of --n, --k, --l".into(),
            )),
        },
        Command::Enumerate {
            faces,
            cusps,
            realizable,
            out,
            check_cache,
            workers,
            cap,
        } => commands::enumerate_types(&EnumerateArgs {
            faces: *faces,
            cusps: *cusps,
            realizable: *realizable,
            out: out.clone(),
            check_cache: *check_cache,
            workers: workers.map(usize::from),
            cap: *cap,
        }),
        Command::Verify { target, budget } => {
            let target = match target {
                VerifyTarget::Lemma31 => Target::Lemma31,
                VerifyTarget::Tables => Target::Tables,
                VerifyTarget::Minima => Target::Minima,
                VerifyTarget::N7 => Target::N7,
                VerifyTarget::All => Target::All,
            };
            commands::verify(target, *budget)
        }
        Command::Bounds { certificate } => Ok(commands::bounds(*certificate)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.machine));
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("orthocusp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
