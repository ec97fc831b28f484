use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ratpat::cli_io::{cmd_check, cmd_info_index, cmd_score, cmd_tau, CommandOutput, OutputFormat};
use ratpat::trust_scoring::parse_probability;
use ratpat::{D0Zone, MembershipVariant, ScoringConfig};

#[derive(Parser)]
#[command(
    name = "ratpat",
    version,
    about = "Reviewer rationality patterns and trust degrees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Score reviewers from a JSONL episode file and a reviews document.
    Score {
        episodes: PathBuf,
        reviews: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Membership::Minmax)]
        membership: Membership,
        #[arg(long = "d0-zone", value_enum, default_value_t = D0::Rational)]
        d0_zone: D0,
        /// Probability of the rational zone, e.g. 0.5 or 1/2.
        #[arg(long, default_value = "0.5")]
        p: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the outcome set for n objects over t periods.
    Tau {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Membership::Minmax)]
        membership: Membership,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Information index of a graded list and the chosen element.
    InfoIndex {
        list: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Contraction consistency and rationalizability of a choice table.
    Check {
        table: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Membership {
    Minmax,
    Smoothed,
}

#[derive(Clone, Copy, ValueEnum)]
enum D0 {
    Rational,
    Irrational,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

impl From<Membership> for MembershipVariant {
    fn from(m: Membership) -> Self {
        match m {
            Membership::Minmax => MembershipVariant::MinMax,
            Membership::Smoothed => MembershipVariant::Smoothed,
        }
    }
}

fn emit(output: &OutputArgs, result: ratpat::Result<CommandOutput>) -> ExitCode {
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", out.body),
    }
    if out.clean {
        ExitCode::SUCCESS
    } else {
        eprintln!("warning: some records could not be scored; see the issues section");
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Score {
            episodes,
            reviews,
            membership,
            d0_zone,
            p,
            output,
        } => {
            let result = parse_probability(&p).and_then(|p| {
                let config = ScoringConfig {
                    membership: membership.into(),
                    d0_zone: match d0_zone {
                        D0::Rational => D0Zone::Rational,
                        D0::Irrational => D0Zone::Irrational,
                    },
                    p,
                };
                cmd_score(&episodes, reviews.as_deref(), &config, output.format.into())
            });
            emit(&output, result)
        }
        Command::Tau {
            n,
            t,
            membership,
            output,
        } => emit(
            &output,
            cmd_tau(n, t, membership.into(), output.format.into()),
        ),
        Command::InfoIndex { list, output } => {
            emit(&output, cmd_info_index(&list, output.format.into()))
        }
        Command::Check { table, output } => emit(&output, cmd_check(&table, output.format.into())),
    }
}
