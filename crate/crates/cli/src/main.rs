mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pencil_core::spectrum::{Mode, PolygonChoice};
use pencil_core::CoefficientField;

/// Exact analysis of pencils of plane curves `mu f# + lambda g#`.
#[derive(Debug, Parser)]
#[command(name = "pencil", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum, reducibility statistics and bound verdicts of a pencil.
    Analyze(AnalyzeArgs),
    /// Absolute irreducibility test through the kernel of R(f#).
    Irreducible(IrreducibleArgs),
    /// Newton polygon counts and rendering.
    Newton(NewtonArgs),
    /// Exhaustive spectrum over a prime field.
    #[command(name = "spectrum-bf")]
    SpectrumBf(SpectrumBfArgs),
    /// Random plane substitution of an n-variate polynomial.
    Bertini(BertiniArgs),
    /// Reference computations for the dense, rectangle and five-term families.
    #[command(name = "paper-examples")]
    PaperExamples(ExamplesArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Suppress the summary on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct SeedArg {
    #[arg(long, env = "PENCIL_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    /// `q` or `fp:<prime>`.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: CoefficientField,
    #[arg(long, value_enum, default_value_t = ModeArg::Dense)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = PolygonArg::Auto)]
    polygon: PolygonArg,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct IrreducibleArgs {
    #[arg(long)]
    f: String,
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: CoefficientField,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct NewtonArgs {
    #[arg(long)]
    f: String,
    /// Second polynomial; the polygon is then the joint one.
    #[arg(long)]
    g: Option<String>,
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: CoefficientField,
    #[arg(long, value_enum, default_value_t = PolygonArg::Newton)]
    polygon: PolygonArg,
    /// Also write an SVG rendering.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct SpectrumBfArgs {
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    #[arg(long)]
    prime: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct BertiniArgs {
    /// Number of variables `X1..Xn`.
    #[arg(long)]
    vars: usize,
    #[arg(long)]
    poly: String,
    /// Optional second polynomial sent through the same substitution.
    #[arg(long)]
    g: Option<String>,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct ExamplesArgs {
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Dense,
    Sparse,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Dense => Mode::Dense,
            ModeArg::Sparse => Mode::Sparse,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolygonArg {
    Auto,
    Newton,
    Superior,
}

impl From<PolygonArg> for PolygonChoice {
    fn from(p: PolygonArg) -> Self {
        match p {
            PolygonArg::Auto => PolygonChoice::Auto,
            PolygonArg::Newton => PolygonChoice::Newton,
            PolygonArg::Superior => PolygonChoice::Superior,
        }
    }
}

fn parse_field(s: &str) -> Result<CoefficientField, String> {
    match s {
        "q" | "Q" => Ok(CoefficientField::Rationals),
        _ => {
            let p = s
                .strip_prefix("fp:")
                .ok_or_else(|| format!("expected `q` or `fp:<prime>`, got `{s}`"))?
                .parse::<u64>()
                .map_err(|e| e.to_string())?;
            CoefficientField::prime(p).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            match e.downcast_ref::<pencil_core::Error>() {
                Some(core) => eprintln!("error: {}: {e:#}", core.module()),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(1)
        }
    }
}
