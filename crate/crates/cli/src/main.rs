//! `woods-saxon`: bound-state energies, depth windows, wavefunctions and
//! shooting-oracle checks for the Woods-Saxon well in the Pekeris approximation.

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod format;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use woods_saxon::presets::TablePreset;
use woods_saxon::QuantumNumbers;

use crate::commands::Outcome;
use crate::config::{resolve_params, ConfigFile, ParamOverrides};
use crate::error::CliError;
use crate::format::Format;

const DEFAULT_TOL: f64 = 1e-4;
const DEFAULT_ORACLE_STEP: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(
    name = "woods-saxon",
    version,
    about = "Woods-Saxon bound states in the Pekeris approximation"
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Well depth in MeV
    #[arg(long = "V0", global = true)]
    v0: Option<f64>,
    /// Radius in fm
    #[arg(long = "R0", global = true)]
    r0: Option<f64>,
    /// Surface diffuseness in fm
    #[arg(long, global = true)]
    a: Option<f64>,
    /// Reduced mass in u
    #[arg(long, global = true)]
    mu: Option<f64>,
    /// Mass number used for the default V0 and R0
    #[arg(long = "A", global = true)]
    mass_number: Option<f64>,
    /// hbar*c in MeV fm
    #[arg(long = "hbar-c", global = true)]
    hbar_c: Option<f64>,
    /// Atomic mass unit in MeV
    #[arg(long = "u-mev", global = true)]
    u_mev: Option<f64>,
    /// Output format
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `key = value` file; keys are long flag names
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy of one level
    Energy {
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// All bound levels with l up to l-max
    Spectrum {
        #[arg(long = "l-max")]
        l_max: Option<u32>,
    },
    /// Depth window admitting a level (every allowed n when --n is omitted)
    Window {
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Energies for a list of (l, n, V0) rows
    Table {
        /// paper-table-1, paper-table-2, or custom (with --rows)
        #[arg(long)]
        preset: Option<String>,
        /// "l,n,V0;l,n,V0;..."
        #[arg(long)]
        rows: Option<String>,
        /// Add the Numerov shooting energy for each row
        #[arg(long = "with-oracle")]
        with_oracle: bool,
        /// Numerov step in fm
        #[arg(long)]
        h: Option<f64>,
    },
    /// Normalised radial wavefunction samples
    Wavefunction {
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Grid end in fm (default: where the tail has decayed)
        #[arg(long = "r-max")]
        r_max: Option<f64>,
        /// Grid step in fm
        #[arg(long)]
        h: Option<f64>,
    },
    /// Compare closed-form energies with the shooting oracle
    Validate {
        /// "l,n;l,n;..." at the current V0
        #[arg(long, conflicts_with = "preset")]
        states: Option<String>,
        /// Rows of a preset, each at its own V0
        #[arg(long)]
        preset: Option<String>,
        /// Keep only preset rows with l at most this
        #[arg(long = "max-l")]
        max_l: Option<u32>,
        /// Agreement tolerance in MeV
        #[arg(long)]
        tol: Option<f64>,
        /// Numerov step in fm
        #[arg(long)]
        h: Option<f64>,
    },
}

fn run(cli: Cli) -> Result<(Outcome, Format, Option<PathBuf>), CliError> {
    let cfg = match &cli.common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let c = &cli.common;
    let overrides = ParamOverrides {
        v0: c.v0,
        r0: c.r0,
        a: c.a,
        mu: c.mu,
        mass_number: c.mass_number,
        hbar_c: c.hbar_c,
        u_mev: c.u_mev,
    };
    let params = resolve_params(&overrides, &cfg)?;
    if let Some(w) = params.thin_surface_warning() {
        eprintln!("warning: {w}");
    }
    let format = match c.format {
        Some(f) => f,
        None => match cfg.raw("format") {
            Some(s) => clap::ValueEnum::from_str(s, true)
                .map_err(|_| CliError::Usage(format!("config: invalid value `{s}` for `format`")))?,
            None => Format::Csv,
        },
    };
    let out = cfg.pick(c.out.clone(), "out")?;

    let outcome = match cli.command {
        Command::Energy { l, n } => {
            let qn = QuantumNumbers::new(cfg.require(n, "n")?, cfg.require(l, "l")?);
            commands::energy_cmd(&params, qn)?
        }
        Command::Spectrum { l_max } => commands::spectrum_cmd(&params, cfg.require(l_max, "l-max")?)?,
        Command::Window { l, n } => commands::window_cmd(&params, cfg.require(l, "l")?, cfg.pick(n, "n")?)?,
        Command::Table {
            preset,
            rows,
            with_oracle,
            h,
        } => {
            let preset = cfg.pick(preset, "preset")?;
            let rows_spec = cfg.pick(rows, "rows")?;
            let rows = match (&preset, &rows_spec) {
                (Some(name), None) if name == "custom" => {
                    return Err(CliError::Usage("--preset custom needs --rows".into()))
                }
                (Some(name), None) => commands::preset_rows(name)?,
                (Some(name), Some(spec)) if name == "custom" => commands::parse_rows(spec)?,
                (None, Some(spec)) => commands::parse_rows(spec)?,
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage("--rows goes with --preset custom or no preset".into()))
                }
                (None, None) => return Err(CliError::Usage("missing required --preset or --rows".into())),
            };
            let with_oracle = cfg.flag(with_oracle, "with-oracle")?;
            let h = cfg.pick(h, "h")?.unwrap_or(DEFAULT_ORACLE_STEP);
            commands::table_cmd(&params, &rows, with_oracle, h, preset.as_deref())?
        }
        Command::Wavefunction { l, n, r_max, h } => {
            let qn = QuantumNumbers::new(cfg.require(n, "n")?, cfg.require(l, "l")?);
            commands::wavefunction_cmd(&params, qn, cfg.pick(r_max, "r-max")?, cfg.pick(h, "h")?)?
        }
        Command::Validate {
            states,
            preset,
            max_l,
            tol,
            h,
        } => {
            let states = cfg.pick(states, "states")?;
            let preset = cfg.pick(preset, "preset")?;
            let max_l = cfg.pick(max_l, "max-l")?;
            let cases: Vec<(QuantumNumbers, f64)> = match (&states, &preset) {
                (Some(spec), None) => commands::parse_states(spec)?
                    .into_iter()
                    .map(|qn| (qn, params.v0))
                    .collect(),
                (None, Some(name)) => {
                    let preset = TablePreset::from_name(name)
                        .ok_or_else(|| CliError::Usage(format!("unknown preset `{name}`")))?;
                    preset
                        .rows()
                        .iter()
                        .filter(|r| max_l.is_none_or(|m| r.l <= m))
                        .map(|r| (r.qn(), r.v0))
                        .collect()
                }
                (Some(_), Some(_)) => return Err(CliError::Usage("give either --states or --preset, not both".into())),
                (None, None) => return Err(CliError::Usage("missing required --states or --preset".into())),
            };
            if cases.is_empty() {
                return Err(CliError::Usage("no states selected".into()));
            }
            let tol = cfg.pick(tol, "tol")?.unwrap_or(DEFAULT_TOL);
            let h = cfg.pick(h, "h")?.unwrap_or(DEFAULT_ORACLE_STEP);
            if !(tol > 0.0) || !(h > 0.0) {
                return Err(CliError::Usage("--tol and --h must be positive".into()));
            }
            commands::validate_cmd(&params, &cases, tol, h)?
        }
    };
    Ok((outcome, format, out))
}

fn emit(outcome: &Outcome, format: Format, out: Option<PathBuf>) -> Result<(), CliError> {
    let text = outcome.document.render(format);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = run(cli).and_then(|(outcome, format, out)| {
        emit(&outcome, format, out)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(outcome.exit_code)
        }
        // a closed downstream pipe (`| head`) is not a failure
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
