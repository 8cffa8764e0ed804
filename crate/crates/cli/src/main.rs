//! Command-line front end: compute exact voting power, classify games,
//! generate instance families, and benchmark the counting backends.
//!
//! Exit codes: 0 success, 2 invalid input, 3 no applicable backend,
//! 4 internal cross-check mismatch.

mod bench;
mod output;

use std::fmt::Display;
use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use banzhaf_core::{
    compute, game_to_json, game_to_text, gen_3game, gen_reduction, parse_exact_numeral, parse_game,
    random_game, Backend, ComputeOptions, DispatchError, GameError, GameShape, InstanceError,
    SubsetSumInstance, WeightedGame,
};

#[derive(Parser)]
#[command(
    name = "banzhaf",
    version,
    about = "Exact Banzhaf voting power for weighted voting games",
    after_help = "Games are written as `quota; w1, w2, ...` or as JSON \
                  {\"quota\": \"q\", \"weights\": [\"w1\", ...]}. Weights may be \
                  arbitrary-precision integers or rationals like 5/2. All \
                  results are exact; decimals appear only under --decimal \
                  and are marked as approximations."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute swing counts and power indices for one game.
    Compute(ComputeArgs),
    /// Report the structural classes a game belongs to, as JSON.
    Classify {
        /// Game file, or `-` to read stdin.
        input: String,
    },
    /// Generate and print instance families.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Time counting backends on built-in size ladders; CSV on stdout.
    Bench {
        #[arg(long, value_enum)]
        suite: bench::Suite,
    },
}

#[derive(Args)]
struct ComputeArgs {
    /// Game file, or `-` to read stdin.
    input: String,
    /// Force this backend instead of planning one; its preconditions
    /// still apply. Names as reported in the output, e.g. dp, gf, brute.
    #[arg(long)]
    backend: Option<String>,
    /// Also run the next applicable backend and require identical counts.
    #[arg(long)]
    crosscheck: bool,
    #[arg(long, value_enum, default_value_t = output::Format::Json)]
    format: output::Format,
    /// Append base-10 approximations rounded to this many places.
    #[arg(long, value_name = "PLACES")]
    decimal: Option<u32>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Paired powers of three: 2m players, quota just past half the total.
    #[command(name = "3game")]
    ThreeGame {
        /// Number of weight pairs.
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = GameFormat::Text)]
        format: GameFormat,
    },
    /// Subset-sum encoding: a unit player plus one weight pair per value.
    /// The unit player has positive power exactly when some subset of the
    /// values sums to the target.
    Reduction {
        /// Comma-separated positive values, e.g. --z 3,5,7.
        #[arg(long, value_delimiter = ',', required = true)]
        z: Vec<u64>,
        /// Target sum.
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t = GameFormat::Text)]
        format: GameFormat,
    },
    /// Seeded random game of a chosen shape.
    Random {
        /// Number of players.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ShapeArg::General)]
        shape: ShapeArg,
        /// Distinct weight values; required for --shape k-value.
        #[arg(long)]
        k: Option<usize>,
        /// Minimum consecutive weight ratio, e.g. 2 or 13/8; required for
        /// --shape geometric.
        #[arg(long)]
        ratio: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GameFormat::Text)]
        format: GameFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GameFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    General,
    TwoValue,
    KValue,
    Geometric,
    Unbalanced,
}

/// What went wrong, with the exit code the shell contract assigns to it.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn invalid(message: impl Display) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    pub fn no_backend(message: impl Display) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        Failure::invalid(e)
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::invalid(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e)
    }
}

impl From<DispatchError> for Failure {
    fn from(e: DispatchError) -> Self {
        let code = match &e {
            DispatchError::NoApplicableBackend { .. } | DispatchError::Backend(_) => 3,
            DispatchError::CrosscheckMismatch { .. } => 4,
            DispatchError::Game(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_game(input: &str) -> Result<WeightedGame, Failure> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(input)?
    };
    Ok(parse_game(&text)?)
}

fn run_compute(args: &ComputeArgs) -> Result<String, Failure> {
    let game = read_game(&args.input)?;
    let forced = args
        .backend
        .as_deref()
        .map(Backend::from_str)
        .transpose()
        .map_err(Failure::invalid)?;
    let options = ComputeOptions {
        forced,
        crosscheck: args.crosscheck,
        ..ComputeOptions::default()
    };
    let outcome = compute(&game, &options)?;
    Ok(output::render(&game, &outcome, args.format, args.decimal))
}

fn run_classify(input: &str) -> Result<String, Failure> {
    let game = read_game(input)?;
    let profile = banzhaf_core::detect_classes(&game);
    Ok(serde_json::to_string_pretty(&profile.to_json()).expect("profile is plain json"))
}

fn render_game(game: &WeightedGame, format: GameFormat) -> String {
    match format {
        GameFormat::Text => game_to_text(game),
        GameFormat::Json => game_to_json(game).to_string(),
    }
}

fn run_gen(cmd: &GenCommand) -> Result<String, Failure> {
    match cmd {
        GenCommand::ThreeGame { m, format } => Ok(render_game(&gen_3game(*m)?, *format)),
        GenCommand::Reduction { z, t, format } => {
            let inst = SubsetSumInstance::new(z.clone(), *t)?;
            Ok(render_game(&gen_reduction(&inst)?, *format))
        }
        GenCommand::Random {
            n,
            shape,
            k,
            ratio,
            max_weight,
            seed,
            format,
        } => {
            let shape = match shape {
                ShapeArg::General => GameShape::General,
                ShapeArg::TwoValue => GameShape::TwoValue,
                ShapeArg::Unbalanced => GameShape::Unbalanced,
                ShapeArg::KValue => {
                    let k =
                        k.ok_or_else(|| Failure::invalid("--shape k-value needs --k VALUES"))?;
                    GameShape::KValue(k)
                }
                ShapeArg::Geometric => {
                    let text = ratio
                        .as_deref()
                        .ok_or_else(|| Failure::invalid("--shape geometric needs --ratio R"))?;
                    let r = parse_exact_numeral(text)?;
                    GameShape::Geometric(r)
                }
            };
            Ok(render_game(
                &random_game(*n, *max_weight, *seed, &shape)?,
                *format,
            ))
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Classify { input } => run_classify(input),
        Command::Gen(cmd) => run_gen(cmd),
        Command::Bench { suite } => bench::run(*suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
