//! `charvar`: cohomology, smoothness and surface-group reports for
//! representations of finitely presented groups.
//!
//! Exit codes: 0 on success, 1 for usage, I/O and parse errors, 2 when the
//! input is well formed but rejected (relators fail, out-of-range surface,
//! non-canonical presentation, ...).

mod canonical;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use charvar::cohomology::AnalysisOptions;
use charvar::rep::GroupSpec;
use charvar::surfaces::SurfaceKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commands::Failure;

#[derive(Parser)]
#[command(name = "charvar", version, about = "Deformation invariants of surface and finitely presented group representations")]
struct Cli {
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    /// Only for `scan`.
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SurfaceChoice {
    #[arg(long, value_name = "G")]
    orientable: Option<usize>,
    #[arg(long, value_name = "H")]
    nonorientable: Option<usize>,
}

impl SurfaceChoice {
    fn kind(&self) -> SurfaceKind {
        match (self.orientable, self.nonorientable) {
            (Some(genus), _) => SurfaceKind::Orientable { genus },
            (_, Some(crosscaps)) => SurfaceKind::NonOrientable { crosscaps },
            _ => unreachable!("clap requires one of the two"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology, rank diagnostics and smoothness classification.
    Analyze { file: String },
    /// Canonical presentation and expected character-variety dimension.
    Surface {
        #[command(flatten)]
        choice: SurfaceChoice,
        #[arg(long, default_value = "SL(2,C)")]
        group: String,
    },
    /// Orientation double cover of a non-orientable surface representation.
    Cover { file: String },
    /// Betti numbers along a one-parameter family.
    Scan { file: String },
    /// Cup-product pairing of two cocycles, or its Gram matrix on H^1.
    Pairing {
        file: String,
        #[arg(long)]
        gram: bool,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Input file for a seeded random surface-group representation.
    Random {
        #[command(flatten)]
        choice: SurfaceChoice,
        #[arg(long, default_value = "SL(2,C)")]
        group: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn render<T: Serialize>(report: &T, format: Format, text: impl Fn(&T) -> String) -> Result<String, Failure> {
    match format {
        Format::Json => canonical::to_canonical(report).map_err(|e| Failure::Domain(format!("serialization failed: {e}"))),
        Format::Text => Ok(text(report)),
        Format::Csv => Err(Failure::Input("--format csv is only available for `scan`".into())),
    }
}

fn group(text: &str) -> Result<GroupSpec, Failure> {
    text.parse().map_err(|e| Failure::Input(format!("--group: {e}")))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    if !(cli.tol.is_finite() && cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(Failure::Input(format!("--tol must lie in (0, 1), got {}", cli.tol)));
    }
    let options = AnalysisOptions::with_rel_tol(cli.tol);
    match &cli.command {
        Command::Analyze { file } => render(&commands::analyze(file, &options)?, cli.format, commands::analyze_text),
        Command::Surface { choice, group: g } => {
            render(&commands::surface(choice.kind(), group(g)?, &options)?, cli.format, commands::surface_text)
        }
        Command::Cover { file } => render(&commands::cover(file, &options)?, cli.format, commands::cover_text),
        Command::Scan { file } => {
            let report = commands::scan(file, &options)?;
            match cli.format {
                Format::Csv => Ok(commands::scan_csv(&report)),
                f => render(&report, f, commands::scan_text),
            }
        }
        Command::Pairing { file, gram, alpha, beta } => {
            let report = commands::pairing(file, *gram, (alpha.as_deref(), beta.as_deref()), &options)?;
            render(&report, cli.format, commands::pairing_text)
        }
        Command::Random { choice, group: g, seed } => commands::random_document(choice.kind(), group(g)?, *seed),
    }
}

fn emit(cli: &Cli, output: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, output).map_err(|e| Failure::Input(format!("{path}: {e}"))),
        None => std::io::stdout().write_all(output.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
