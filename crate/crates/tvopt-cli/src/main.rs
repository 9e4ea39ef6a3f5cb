//! `tvopt` — command-line front end for the closed-form extremum solvers.
//!
//! Subcommands: `solve` (one problem, optional oracle cross-check), `sweep`
//! (value curve as CSV), `partition` (level sets of the payoff), `metrics`
//! (divergence report between two distributions), and `limits` (saturation
//! radius and nominal expectation).
//!
//! Exit codes: `0` success, `2` invalid input or usage, `3` infeasible
//! problem, `4` oracle disagreement beyond tolerance.

mod instance;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tvopt::oracle::OracleOutcome;
use tvopt::{d_max, r_max, Direction, ProblemKind};

use render::Format;

/// A solve result must agree with the independent check to this tolerance.
const VERIFY_TOLERANCE: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "tvopt",
    version,
    about = "Closed-form extremum solvers for linear payoffs over total-variation neighbourhoods"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one extremum problem on an instance.
    Solve {
        /// Problem kind: d-plus, d-minus, r-plus, or r-minus.
        #[arg(long, value_parser = parse_kind)]
        problem: ProblemKind,
        /// Path to the instance file.
        #[arg(long)]
        instance: PathBuf,
        /// Ball radius in [0, 2]; required by d-plus and d-minus.
        #[arg(long)]
        radius: Option<f64>,
        /// Payoff target; required by r-plus and r-minus.
        #[arg(long)]
        target: Option<f64>,
        /// Cross-check the result against the brute-force linear-programming
        /// solver (alphabets up to 25 symbols); disagreement exits with 4.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Trace value against budget over a uniform grid; emits CSV.
    Sweep {
        /// Problem kind: d-plus, d-minus, r-plus, or r-minus.
        #[arg(long, value_parser = parse_kind)]
        problem: ProblemKind,
        /// Path to the instance file.
        #[arg(long)]
        instance: PathBuf,
        /// First budget of the grid (inclusive).
        #[arg(long)]
        from: f64,
        /// Last budget of the grid (inclusive).
        #[arg(long)]
        to: f64,
        /// Number of uniformly spaced grid points.
        #[arg(long)]
        points: usize,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Append one nu_i column per symbol to every row.
        #[arg(long)]
        include_nu: bool,
    },
    /// Print the level-set partition of the payoff.
    Partition {
        /// Path to the instance file.
        #[arg(long)]
        instance: PathBuf,
        /// Middle-set order: from-min (ascending) or from-max (descending).
        #[arg(long, value_parser = parse_direction)]
        direction: Direction,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the distributions of two instance files (first vs second).
    Metrics {
        /// Instance whose distribution plays the perturbed measure.
        #[arg(long)]
        instance: PathBuf,
        /// Instance whose distribution plays the nominal measure.
        #[arg(long)]
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the saturation radius R_max and the nominal expectation D_max.
    Limits {
        /// Path to the instance file.
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum CliError {
    /// Unreadable files, malformed numbers, domain violations: exit 2.
    Invalid(String),
    /// The requested target is unreachable: exit 3.
    Infeasible(String),
    /// Solver and oracle disagree beyond [`VERIFY_TOLERANCE`]: exit 4.
    OracleMismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::OracleMismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(text)
            | CliError::Infeasible(text)
            | CliError::OracleMismatch(text) => text,
        }
    }
}

/// Maps library errors onto the exit-code contract: unreachable targets are
/// infeasibility (including inside a sweep), everything else is bad input.
fn classify(error: tvopt::Error) -> CliError {
    fn unreachable_target(error: &tvopt::Error) -> bool {
        match error {
            tvopt::Error::TargetBelowMinimum { .. } | tvopt::Error::TargetBelowNominal { .. } => {
                true
            }
            tvopt::Error::AtBudget { source, .. } => unreachable_target(source),
            _ => false,
        }
    }
    if unreachable_target(&error) {
        CliError::Infeasible(error.to_string())
    } else {
        CliError::Invalid(error.to_string())
    }
}

fn parse_kind(text: &str) -> Result<ProblemKind, String> {
    text.parse().map_err(|_| {
        format!("unknown problem kind '{text}' (expected d-plus, d-minus, r-plus, or r-minus)")
    })
}

fn parse_direction(text: &str) -> Result<Direction, String> {
    match text {
        "from-min" => Ok(Direction::FromMin),
        "from-max" => Ok(Direction::FromMax),
        _ => Err(format!(
            "unknown direction '{text}' (expected from-min or from-max)"
        )),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            // --help and --version exit 0; anything else is a usage error.
            let code = if error.exit_code() == 0 { 0 } else { 2 };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {}", error.message());
            ExitCode::from(error.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve {
            problem,
            instance,
            radius,
            target,
            verify,
            format,
        } => {
            let instance = instance::load(&instance).map_err(CliError::Invalid)?;
            let budget = resolve_budget(problem, radius, target)?;
            let solution =
                tvopt::solve(problem, &instance.ell, &instance.mu, budget).map_err(classify)?;
            let verification = if verify {
                Some(cross_check(problem, &instance, budget, solution.value)?)
            } else {
                None
            };
            print!(
                "{}",
                render::solve(
                    problem,
                    instance.name.as_deref(),
                    budget,
                    &solution,
                    verification.as_ref(),
                    format
                )
            );
            Ok(())
        }
        Command::Sweep {
            problem,
            instance,
            from,
            to,
            points,
            output,
            include_nu,
        } => {
            let instance = instance::load(&instance).map_err(CliError::Invalid)?;
            if points == 0 {
                return Err(CliError::Invalid("--points must be at least 1".to_string()));
            }
            if !from.is_finite() || !to.is_finite() {
                return Err(CliError::Invalid(
                    "--from and --to must be finite".to_string(),
                ));
            }
            let grid = linspace(from, to, points);
            let rows =
                tvopt::sweep(problem, &instance.ell, &instance.mu, &grid).map_err(classify)?;
            let csv = render::sweep_csv(&rows, include_nu);
            match output {
                Some(path) => fs::write(&path, csv).map_err(|error| {
                    CliError::Invalid(format!("cannot write {}: {error}", path.display()))
                })?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Partition {
            instance,
            direction,
            format,
        } => {
            let instance = instance::load(&instance).map_err(CliError::Invalid)?;
            let partition = tvopt::build_partition(&instance.ell, direction);
            print!("{}", render::partition(&partition, format));
            Ok(())
        }
        Command::Metrics {
            instance,
            second,
            format,
        } => {
            let perturbed = instance::load(&instance).map_err(CliError::Invalid)?;
            let nominal = instance::load(&second).map_err(CliError::Invalid)?;
            let report = tvopt::check_bounds(&perturbed.mu, &nominal.mu).map_err(classify)?;
            print!("{}", render::metrics(&report, format));
            Ok(())
        }
        Command::Limits { instance, format } => {
            let instance = instance::load(&instance).map_err(CliError::Invalid)?;
            let r_max = r_max(&instance.ell, &instance.mu).map_err(classify)?;
            let d_max = d_max(&instance.ell, &instance.mu).map_err(classify)?;
            print!("{}", render::limits(r_max, d_max, format));
            Ok(())
        }
    }
}

/// Picks the budget flag matching the problem kind and rejects the other.
fn resolve_budget(
    kind: ProblemKind,
    radius: Option<f64>,
    target: Option<f64>,
) -> Result<f64, CliError> {
    match (kind.takes_radius(), radius, target) {
        (true, Some(radius), None) => Ok(radius),
        (false, None, Some(target)) => Ok(target),
        (true, _, _) => Err(CliError::Invalid(format!(
            "{kind} takes --radius and no --target"
        ))),
        (false, _, _) => Err(CliError::Invalid(format!(
            "{kind} takes --target and no --radius"
        ))),
    }
}

/// Uniform inclusive grid; the last point is exactly `to`.
fn linspace(from: f64, to: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![from];
    }
    let step = (to - from) / (points - 1) as f64;
    (0..points)
        .map(|i| if i == points - 1 { to } else { from + step * i as f64 })
        .collect()
}

/// Runs the brute-force solver on the same problem and compares values.
fn cross_check(
    kind: ProblemKind,
    instance: &instance::Instance,
    budget: f64,
    value: f64,
) -> Result<render::Verification, CliError> {
    let outcome = tvopt::oracle::solve(kind, &instance.ell, &instance.mu, budget)
        .map_err(|error| CliError::Invalid(format!("cannot verify: {error}")))?;
    match outcome {
        OracleOutcome::Optimal {
            value: oracle_value,
            ..
        } => {
            let discrepancy = (oracle_value - value).abs();
            if discrepancy > VERIFY_TOLERANCE {
                return Err(CliError::OracleMismatch(format!(
                    "solver value {} differs from oracle value {} by {}",
                    render::fmt12(value),
                    render::fmt12(oracle_value),
                    render::fmt12(discrepancy)
                )));
            }
            Ok(render::Verification {
                oracle_value,
                discrepancy,
            })
        }
        OracleOutcome::Infeasible => Err(CliError::OracleMismatch(
            "oracle reports infeasible for a problem the solver answered".to_string(),
        )),
        OracleOutcome::Unbounded => Err(CliError::OracleMismatch(
            "oracle reports unbounded for a problem the solver answered".to_string(),
        )),
    }
}
