//! Command-line surface: trajectory emission, source audits, star sweeps
//! and representation conversions, as CSV or JSON for external plotting.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qutrit_ivr::commands::{
    cmd_audit, cmd_convert, cmd_evolve, cmd_msr_sweep, parse_state_arg, parse_stars_arg,
    AuditConfig, ConvertInput, EvolveConfig, SweepConfig,
};
use qutrit_ivr::output::OutputFormat;
use qutrit_ivr::{CascadeParams, Error, ParamSource, SpinParams};

#[derive(Parser)]
#[command(name = "qutrit-ivr", version, about = "Invariant-vector and Majorana-star representations of qutrit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Rabi-like frequency of the cascade model.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Mixing angle between detuning and drive, radians.
    #[arg(long, default_value_t = 3.0)]
    theta: f64,
    /// Coupling phase, radians.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Detuning; combine with --g1/--g2/--phi instead of --omega/--theta/--delta.
    #[arg(long, conflicts_with_all = ["omega", "theta", "delta"], requires = "phi")]
    eps1: Option<f64>,
    /// Real coupling component.
    #[arg(long, default_value_t = 0.0)]
    g1: f64,
    /// Imaginary coupling component.
    #[arg(long, default_value_t = 0.0)]
    g2: f64,
    /// External field amplitude.
    #[arg(long)]
    phi: Option<f64>,
}

impl ModelArgs {
    fn params(&self) -> Result<CascadeParams, Error> {
        match self.eps1 {
            Some(eps1) => {
                CascadeParams::from_field(eps1, self.g1, self.g2, self.phi.unwrap_or(1.0))
            }
            None => CascadeParams::from_angular(self.omega, self.theta, self.delta),
        }
    }
}

#[derive(Args)]
struct GridArgs {
    /// Grid end, in units of omega*t.
    #[arg(long = "t-max", default_value_t = 4.0 * std::f64::consts::PI)]
    t_max: f64,
    /// Number of grid samples.
    #[arg(long, default_value_t = 400)]
    samples: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output path; standard output when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Emit angles in degrees instead of radians.
    #[arg(long)]
    degrees: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a trajectory table of states, parameters, invariant vectors and
    /// angles.
    Evolve {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Parameter source: paper-formulas or pipeline.
        #[arg(long, default_value = "paper-formulas")]
        source: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reconcile the closed-form parameter expressions with the
    /// first-principles pipeline (JSON report).
    Audit {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Output path; standard output when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Sweep the second Majorana star's colatitude with the first star
    /// fixed, emitting invariant-vector angles.
    MsrSweep {
        /// Colatitude of the fixed star, radians.
        #[arg(long, default_value_t = 1.0)]
        theta1: f64,
        /// Azimuth of the fixed star, radians.
        #[arg(long, default_value_t = 1.0)]
        phi1: f64,
        /// Azimuth of the swept star, radians.
        #[arg(long, default_value_t = 4.0)]
        phi2: f64,
        /// Number of theta2 samples over [0, pi].
        #[arg(long, default_value_t = 361)]
        samples: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Convert between representations: state, stars, or density parameters
    /// in, everything out (JSON).
    Convert {
        /// State amplitudes "re,im,re,im,re,im" (normalized internally).
        #[arg(long, conflicts_with_all = ["stars", "params_json"])]
        state: Option<String>,
        /// Star pair "theta1,phi1,theta2,phi2" in radians.
        #[arg(long, conflicts_with = "params_json")]
        stars: Option<String>,
        /// Density parameters as JSON with fields omega1..3, a1..3, q1..3
        /// (inline or @file).
        #[arg(long = "params-json")]
        params_json: Option<String>,
        /// Emit angles in degrees instead of radians.
        #[arg(long)]
        degrees: bool,
        /// Output path; standard output when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Evolve {
            model,
            grid,
            source,
            out,
        } => {
            let cfg = EvolveConfig {
                params: model.params()?,
                source: source.parse::<ParamSource>()?,
                omega_t_max: grid.t_max,
                samples: grid.samples,
                format: out.format.parse::<OutputFormat>()?,
                degrees: out.degrees,
            };
            cmd_evolve(&cfg, &mut open_output(&out.output)?)
        }
        Command::Audit {
            model,
            grid,
            output,
        } => {
            let cfg = AuditConfig {
                params: model.params()?,
                omega_t_max: grid.t_max,
                samples: grid.samples,
            };
            cmd_audit(&cfg, &mut open_output(&output)?)
        }
        Command::MsrSweep {
            theta1,
            phi1,
            phi2,
            samples,
            out,
        } => {
            let cfg = SweepConfig {
                theta1,
                phi1,
                phi2,
                samples,
                format: out.format.parse::<OutputFormat>()?,
                degrees: out.degrees,
            };
            cmd_msr_sweep(&cfg, &mut open_output(&out.output)?)
        }
        Command::Convert {
            state,
            stars,
            params_json,
            degrees,
            output,
        } => {
            let input = match (state, stars, params_json) {
                (Some(s), None, None) => ConvertInput::State(parse_state_arg(&s)?),
                (None, Some(s), None) => {
                    let (star1, star2) = parse_stars_arg(&s)?;
                    ConvertInput::Stars { star1, star2 }
                }
                (None, None, Some(s)) => {
                    let text = match s.strip_prefix('@') {
                        Some(path) => std::fs::read_to_string(path)?,
                        None => s,
                    };
                    let params: SpinParams = serde_json::from_str(&text)?;
                    ConvertInput::DensityParams(params)
                }
                _ => {
                    return Err(Error::BadInput(
                        "supply exactly one of --state, --stars, --params-json".into(),
                    ))
                }
            };
            cmd_convert(&input, degrees, &mut open_output(&output)?)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                // bad input: 1; internal invariant violation: 2
                Error::BadInput(_)
                | Error::BadGrid
                | Error::BadStep { .. }
                | Error::NotNormalized { .. }
                | Error::PopulationSum { .. }
                | Error::NegativePopulation { .. }
                | Error::CascadeReduction(_)
                | Error::NotPositive { .. }
                | Error::MixedStateStars { .. }
                | Error::BadTrace { .. }
                | Error::NotHermitian { .. }
                | Error::Io(_)
                | Error::Json(_) => 1,
                Error::ZeroVector | Error::NegativeRadicand { .. } => 2,
            };
            ExitCode::from(code)
        }
    }
}
