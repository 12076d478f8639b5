use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hermite_filter::csvio::{write_signal, ImplicitGrid};
use hermite_filter::pipeline::{run, write_report};
use hermite_filter::plan::FilterPlan;
use hermite_filter::synth::{parse_mix, synth_signal, GridSpec, SynthKind};
use hermite_filter::verify::run_suite;
use hermite_filter::{FilterError, Result};

#[derive(Parser)]
#[command(name = "filter", version, about = "Hermite/Laguerre spectral subspace filtering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "gaussian_pulse")]
    GaussianPulse,
    #[value(name = "chirp")]
    Chirp,
    #[value(name = "hermite_mix")]
    HermiteMix,
    #[value(name = "noisy")]
    Noisy,
}

#[derive(Subcommand)]
enum Command {
    /// Filter a CSV signal according to a JSON plan.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Sample spacing for one-column input.
        #[arg(long, allow_hyphen_values = true)]
        dt: Option<f64>,
        /// First sample time for one-column input.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        t0: f64,
    },
    /// Write a synthetic test signal.
    Synth {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long)]
        dt: f64,
        #[arg(long)]
        out: PathBuf,
        /// Mode mix for hermite_mix, e.g. "2:1.0,5:1.0".
        #[arg(long, default_value = "0:1.0")]
        mix: String,
        /// Clean signal under the noise.
        #[arg(long, default_value = "gaussian_pulse")]
        base: Kind,
        #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
        snr_db: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the embedded invariant suite.
    Verify,
}

fn clean_kind(kind: Kind, mix: &str) -> Result<SynthKind> {
    Ok(match kind {
        Kind::GaussianPulse => SynthKind::GaussianPulse,
        Kind::Chirp => SynthKind::Chirp,
        Kind::HermiteMix => SynthKind::HermiteMix(parse_mix(mix)?),
        Kind::Noisy => return Err(FilterError::Config("--base cannot itself be noisy".into())),
    })
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { config, input, output, report, dt, t0 } => {
            let plan = FilterPlan::from_path(&config)?;
            let implicit = dt.map(|dt| ImplicitGrid { t0, dt });
            let rep = run(&plan, &input, &output, implicit)?;
            match report {
                Some(path) => write_report(&path, &rep)?,
                None => println!(
                    "{}",
                    serde_json::to_string_pretty(&rep).map_err(|e| FilterError::Io(e.to_string()))?
                ),
            }
            Ok(true)
        }
        Command::Synth { kind, n, t0, dt, out, mix, base, snr_db, seed } => {
            let kind = match kind {
                Kind::Noisy => SynthKind::Noisy {
                    base: Box::new(clean_kind(base, &mix)?),
                    snr_db,
                    seed,
                },
                other => clean_kind(other, &mix)?,
            };
            let s = synth_signal(&kind, GridSpec { n, t0, dt })?;
            write_signal(&out, &s.series, &s.comments)?;
            Ok(true)
        }
        Command::Verify => {
            let mut all = true;
            for check in run_suite() {
                let status = if check.passed() { "PASS" } else { "FAIL" };
                println!("{status} {:<40} {:.3e} (tol {:.0e})", check.name, check.value, check.tolerance);
                all &= check.passed();
            }
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
