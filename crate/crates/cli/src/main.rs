use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use funceq_cli::{run, CliConfig, Command, Format};

#[derive(Parser)]
#[command(name = "funceq", version, about = "Exact analysis of F(y) - F(x) = (y - x) sum a_i f(alpha_i x + beta_i y)")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Common {
    /// Equation description file
    file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify every degree and print the solution basis
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Analyze degrees 1..=P only
        #[arg(long = "max-degree", value_name = "P")]
        max_degree: Option<usize>,
        /// Initial working precision for zero tests
        #[arg(long = "precision-bits", value_name = "B", default_value_t = 128)]
        precision_bits: u32,
        /// Precision limit for zero tests
        #[arg(long = "max-precision-bits", value_name = "B", default_value_t = 65536)]
        max_precision_bits: u32,
    },
    /// Check the hypotheses on the parameters
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Check a given (f, F) pair exactly
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match &cli.command {
        Cmd::Analyze { common, .. } => (Command::Analyze, common),
        Cmd::Validate { common } => (Command::Validate, common),
        Cmd::Verify { common } => (Command::Verify, common),
    };
    let mut config = CliConfig::new(command, common.file.clone());
    config.format = match common.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    if let Cmd::Analyze {
        max_degree,
        precision_bits,
        max_precision_bits,
        ..
    } = cli.command
    {
        config.max_degree = max_degree;
        config.precision_bits = precision_bits;
        config.max_precision_bits = max_precision_bits;
    }
    let code = run(&config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
