use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spbw_cli::report::exit;
use spbw_cli::{run, Command, Options};
use spbw_core::monomial::OrderKind;

#[derive(Parser)]
#[command(name = "spbw", version, about = "Skew PBW extensions over finite rings: arithmetic and module property checks")]
struct Cli {
    /// Instance file (JSON).
    instance: PathBuf,
    #[command(subcommand)]
    command: Cmd,
    /// Degree bound for bounded checks.
    #[arg(long, global = true, default_value_t = 2)]
    degree: u32,
    /// Print only the JSON report, never the summary on standard error.
    #[arg(long, global = true)]
    json_only: bool,
    /// Candidate budget for bounded searches.
    #[arg(long, global = true)]
    max_space: Option<u128>,
    /// Monomial order, overriding the instance file.
    #[arg(long, global = true, value_enum)]
    order: Option<OrderArg>,
    /// Seed for the randomized consistency checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Add wall-clock time to the report (makes reports differ between runs).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Deglex,
    Lex,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the instance and certify consistency.
    Validate,
    /// Multiply two polynomials.
    Mul { left: String, right: String },
    /// Act on a module polynomial by a polynomial.
    Act { m: String, f: String },
    /// Annihilators of module polynomials in R and, up to the degree bound, in A.
    Ann {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Decide a property.
    Check { property: String },
    /// Run the implication suite.
    Theorems,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Validate => Command::Validate,
        Cmd::Mul { left, right } => Command::Mul(left, right),
        Cmd::Act { m, f } => Command::Act(m, f),
        Cmd::Ann { elements } => Command::Ann(elements),
        Cmd::Check { property } => Command::Check(property),
        Cmd::Theorems => Command::Theorems,
    };
    let opts = Options {
        degree: cli.degree,
        max_space: cli.max_space,
        order: cli.order.map(|o| match o {
            OrderArg::Deglex => OrderKind::DegLex,
            OrderArg::Lex => OrderKind::Lex,
        }),
        seed: cli.seed,
        timing: cli.timing,
    };
    let text = match std::fs::read_to_string(&cli.instance) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("spbw: cannot read {}: {e}", cli.instance.display());
            return ExitCode::from(exit::INPUT as u8);
        }
    };
    let outcome = run(&text, &command, &opts);
    // a closed pipe on stdout is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", outcome.report.to_json());
    if !cli.json_only && std::io::stderr().is_terminal() {
        eprintln!("{}", outcome.human);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
