use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use cotoeplitz::WindowBound;
use cotoeplitz_cli::verify::{self, Scope};
use cotoeplitz_cli::{error_json, parse_window, Format, OperatorArgs, UsageError};

/// Exact co-Toeplitz quantization of coalgebras.
#[derive(Parser)]
#[command(name = "cotoeplitz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Operator {
    #[arg(long)]
    coalgebra: String,
    #[arg(long)]
    form: String,
    #[arg(long, allow_hyphen_values = true)]
    symbol: String,
    /// Comma-separated basis keys spanning P; default is the full basis.
    #[arg(long)]
    projection: Option<String>,
}

impl Operator {
    fn args(&self) -> OperatorArgs<'_> {
        OperatorArgs {
            coalgebra: &self.coalgebra,
            form: &self.form,
            symbol: &self.symbol,
            projection: self.projection.as_deref(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List coalgebra, form and weight spec strings.
    List,
    /// Comultiplication of an element.
    Comul {
        #[arg(long)]
        coalgebra: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Apply C_g to an element.
    Apply {
        #[command(flatten)]
        op: Operator,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Matrix of C_g on a basis window.
    Matrix {
        #[command(flatten)]
        op: Operator,
        /// `deg<=D` or `full`.
        #[arg(long, value_parser = parse_window)]
        window: WindowBound,
    },
    /// Creation, annihilation or preservation.
    Classify {
        #[command(flatten)]
        op: Operator,
        #[arg(long, value_parser = parse_window)]
        window: WindowBound,
    },
    /// Gram matrix, Hermiticity and positive-definiteness of a form.
    Gram {
        #[arg(long)]
        coalgebra: String,
        #[arg(long)]
        form: String,
        #[arg(long, value_parser = parse_window)]
        window: WindowBound,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include per-check elapsed time (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

/// Output text, warnings for stderr, and whether the run succeeded.
fn run(cli: &Cli) -> Result<(String, Vec<String>, bool)> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::List => (cotoeplitz_cli::cmd_list(f)?, vec![], true),
        Command::Comul { coalgebra, element } => (cotoeplitz_cli::cmd_comul(coalgebra, element, f)?, vec![], true),
        Command::Apply { op, element } => (cotoeplitz_cli::cmd_apply(&op.args(), element, f)?, vec![], true),
        Command::Matrix { op, window } => {
            let e = cotoeplitz_cli::cmd_matrix(&op.args(), *window, f)?;
            (e.output, e.warnings, true)
        }
        Command::Classify { op, window } => (cotoeplitz_cli::cmd_classify(&op.args(), *window, f)?, vec![], true),
        Command::Gram { coalgebra, form, window } => (cotoeplitz_cli::cmd_gram(coalgebra, form, *window, f)?, vec![], true),
        Command::Verify { scope, seed, timings } => {
            let report = verify::run(*scope, *seed);
            let text = match f {
                Format::Text => report.to_text(*timings),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.to_json(*timings))?),
                Format::Csv => report.to_csv(*timings),
            };
            (text, vec![], report.ok())
        }
    })
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(text, warnings, ok)| {
        for w in warnings {
            eprintln!("warning: {w}");
        }
        emit(&cli, &text)?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            if let Some(usage) = err.downcast_ref::<UsageError>() {
                eprintln!("error: {usage}");
                return ExitCode::from(2);
            }
            let body = match err.downcast_ref::<cotoeplitz::Error>() {
                Some(e) => error_json(e.kind(), &e.to_string()),
                None => error_json("IoError", &format!("{err:#}")),
            };
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}
