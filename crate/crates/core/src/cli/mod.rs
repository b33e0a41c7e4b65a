//! Command-line front end: single-point spectra, parameter sweeps, Green
//! function tables and figure recipes.

pub mod config;
pub mod green;
pub mod output;
pub mod recipes;
pub mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{ConfigError, Format, RunConfig, SphereVariant};

/// Environment variable holding the default sweep worker count.
pub const WORKERS_ENV: &str = "CURVED_LATTICE_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "curved-lattice", version, about = "Collective emission of emitter rings on planar and spherical waveguides")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the Green function of the configured surface.
    Green {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated separations (central angles in radians on a sphere).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        separations: Option<Vec<f64>>,
        /// Sphere functions to tabulate.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// Collective spectrum at the configured point (any sweep block is ignored).
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Spectra across the configured sweep, with mode tracking.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Worker threads for sweep points.
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
    },
    /// Print a figure recipe as a config document, or list the recipes.
    Recipes {
        name: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON run configuration.
    #[arg(long, conflicts_with = "recipe")]
    pub config: Option<PathBuf>,
    /// Start from a named figure recipe instead of a config file.
    #[arg(long)]
    pub recipe: Option<String>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Ring size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Significant digits in emitted floats.
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Both,
    Open,
    Closed,
}

/// Failure categories, each with its own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Numeric(#[from] crate::Error),
    #[error("{failed} of {total} sweep points failed")]
    Partial { failed: usize, total: usize },
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Io { .. } => 2,
            Self::Numeric(_) => 3,
            Self::Partial { .. } => 4,
        }
    }
}

/// Parse arguments, run, report errors on stderr and map them to an exit
/// status.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Recipes { name } => {
            match name {
                None => {
                    for n in recipes::RECIPE_NAMES {
                        println!("{n}");
                    }
                }
                Some(n) => {
                    let cfg = recipes::recipe(&n)?;
                    if let Some(note) = &cfg.notes {
                        eprintln!("warning: {note}");
                    }
                    println!("{}", cfg.to_json());
                }
            }
            Ok(())
        }
        Command::Green {
            common,
            separations,
            variant,
        } => {
            let mut cfg = load(&common)?;
            if let Some(v) = variant {
                let g = cfg.green.get_or_insert_with(|| config::GreenTable {
                    separations: Vec::new(),
                    variant: SphereVariant::Both,
                });
                g.variant = match v {
                    VariantArg::Both => SphereVariant::Both,
                    VariantArg::Open => SphereVariant::Open,
                    VariantArg::Closed => SphereVariant::Closed,
                };
            }
            let seps = separations
                .or_else(|| cfg.green.as_ref().map(|g| g.separations.clone()))
                .filter(|s| !s.is_empty())
                .ok_or_else(|| ConfigError("no separations given".into()))?;
            let table = green::green_table(&cfg, &seps)?;
            let p = cfg.output.precision;
            let text = match cfg.output.format {
                Format::Csv => output::green_csv(&table, cfg.notes.as_deref(), p),
                Format::Json => output::green_json(&table, p),
            };
            emit(&cfg, &text)
        }
        Command::Spectrum { common } => {
            let cfg = load(&common)?;
            if cfg.emitters.is_none() {
                return Err(ConfigError("the spectrum command needs an emitters block".into()).into());
            }
            let result = sweep::single_point(&cfg)?;
            emit(&cfg, &render(&cfg, &result))
        }
        Command::Sweep { common, workers } => {
            let mut cfg = load(&common)?;
            if workers.is_some() {
                cfg.workers = workers;
            }
            let workers = cfg.workers.unwrap_or_else(rayon::current_num_threads);
            if workers == 0 {
                return Err(ConfigError("workers must be at least 1".into()).into());
            }
            let result = sweep::run_sweep(&cfg, workers)?;
            emit(&cfg, &render(&cfg, &result))?;
            let failed = result.failures();
            let total = result.rows.len();
            match failed {
                0 => Ok(()),
                f if f == total => Err(crate::Error::Domain(format!(
                    "all {total} sweep points failed; first: {}",
                    result.rows[0].outcome.as_ref().err().map_or("", String::as_str)
                ))
                .into()),
                _ => Err(CliError::Partial { failed, total }),
            }
        }
    }
}

fn render(cfg: &RunConfig, result: &sweep::SweepResult) -> String {
    let p = cfg.output.precision;
    match cfg.output.format {
        Format::Csv => output::sweep_csv(result, cfg.notes.as_deref(), p),
        Format::Json => output::sweep_json(result, p),
    }
}

/// Config file or recipe, with command-line overrides applied.
pub fn load(common: &CommonArgs) -> Result<RunConfig, ConfigError> {
    let mut cfg = match (&common.config, &common.recipe) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::from_json(&text)?
        }
        (None, Some(name)) => recipes::recipe(name)?,
        (None, None) => return Err(ConfigError("pass --config <path> or --recipe <name>".into())),
    };
    if let Some(n) = common.n {
        match cfg.emitters.as_mut() {
            Some(e) if e.layout == config::Layout::Ring => e.n = Some(n),
            _ => return Err(ConfigError("--n applies to ring layouts only".into())),
        }
    }
    if let Some(p) = common.precision {
        cfg.output.precision = p;
    }
    if let Some(f) = common.format {
        cfg.output.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(out) = &common.out {
        cfg.output.path = Some(out.display().to_string());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output.path {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
