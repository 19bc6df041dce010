use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use spectral_cic::criteria::cross_validate_with_fault;
use spectral_cic::report::ReportDocument;
use spectral_cic::BezoutSpectrum;

use spectral_cic_cli::{fuzz, model, render};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "spectral-cic",
    version,
    about = "Prime spectra of finite Bezout models and the primes surviving in the complete integral closure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Model document; standard input when omitted or `-`.
    model: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the spectrum as a Graphviz digraph.
    #[arg(long, value_name = "PATH")]
    export_dot: Option<PathBuf>,

    #[arg(long, default_value_t = model::DEFAULT_MAX_COORDINATES)]
    max_coordinates: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the points, heights, prime filters and cover edges.
    Spectrum(ModelArgs),
    /// Cross-validate the three Spec* criteria on one model.
    Verify {
        #[command(flatten)]
        args: ModelArgs,

        /// Flip the rim-closure verdict at this point.
        #[cfg(feature = "fault-injection")]
        #[arg(long, value_name = "POINT")]
        inject_fault: Option<String>,
    },
    /// Cross-validate seeded random models.
    Fuzz {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=16))]
        max_rank: u64,

        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_components: u64,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Input(anyhow::Error),
    Violation,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn load(args: &ModelArgs) -> Result<BezoutSpectrum, Failure> {
    let desc = model::load(args.model.as_deref(), args.max_coordinates)?;
    let spec = BezoutSpectrum::build(desc).context("invalid model")?;
    if let Some(path) = &args.export_dot {
        fs::write(path, spec.poset().to_dot("spectrum"))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(spec)
}

fn emit<T: serde::Serialize>(format: Format, doc: &T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(doc).expect("serializable")
        ),
        Format::Text => print!("{}", text(doc)),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Spectrum(args) => {
            let spec = load(&args)?;
            emit(
                args.format,
                &render::SpectrumDocument::new(&spec),
                render::spectrum_text,
            );
            Ok(())
        }
        Command::Verify {
            args,
            #[cfg(feature = "fault-injection")]
            inject_fault,
        } => {
            let spec = load(&args)?;
            #[cfg(feature = "fault-injection")]
            let fault = inject_fault
                .map(|name| spec.poset().point(&name))
                .transpose()
                .context("--inject-fault")?;
            #[cfg(not(feature = "fault-injection"))]
            let fault = None;
            let report = cross_validate_with_fault(&spec, fault).context("verification failed")?;
            let doc = ReportDocument::new(&spec, &report);
            emit(args.format, &doc, render::report_text);
            if doc.passed() {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
        Command::Fuzz {
            count,
            seed,
            max_rank,
            max_components,
            format,
        } => {
            let summary = fuzz::run(&fuzz::FuzzConfig {
                count: count as usize,
                seed,
                max_rank: max_rank as usize,
                max_components: max_components as usize,
            });
            emit(format, &summary, fuzz::summary_text);
            if summary.failed == 0 {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(EXIT_VIOLATION),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
