use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use isochrone::claims::{all_passed, verify_counterexample};
use isochrone::input::{Settings, SystemSpec};
use isochrone::portrait::{self, PortraitOptions};
use isochrone::report::analyze;

const EXIT_PARSE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;

#[derive(Parser)]
#[command(name = "isochrone", version, about = "Analyze uniformly isochronous planar polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a JSON analysis report.
    Analyze {
        spec: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        settings: SettingsArgs,
    },
    /// Render a phase portrait as SVG or CSV.
    Portrait {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long, default_value_t = 24)]
        trajectories: usize,
        /// Half-width of the plotted square.
        #[arg(long)]
        range: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        settings: SettingsArgs,
    },
    /// Check every claim about the cubic counterexample.
    PaperVerify {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Csv,
}

#[derive(Args)]
struct SettingsArgs {
    #[arg(long)]
    rtol: Option<f64>,
    #[arg(long)]
    atol: Option<f64>,
    /// Radius treated as escape to infinity.
    #[arg(long)]
    ceiling: Option<f64>,
    /// Boundary sample count.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    cluster_tol: Option<f64>,
    /// Degree bound for the commutant search.
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

impl SettingsArgs {
    fn to_settings(&self) -> Settings {
        Settings {
            rtol: self.rtol,
            atol: self.atol,
            ceiling: self.ceiling,
            grid: self.grid,
            cluster_tol: self.cluster_tol,
            n_max: self.n_max,
            samples: self.samples,
            seed: self.seed,
        }
    }
}

fn load(path: &Path) -> Result<SystemSpec, ExitCode> {
    SystemSpec::from_path(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), ExitCode> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::FAILURE
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Analyze { spec, out, settings } => {
            let spec = load(&spec)?;
            let resolved = settings.to_settings().resolve(&spec.settings);
            let report = analyze(&spec, &resolved);
            emit(out.as_deref(), &(report.to_json() + "\n"))?;
            if report.is_center == Some(false) {
                eprintln!("not a center: the mean of Q over the circle is nonzero");
                return Ok(ExitCode::from(EXIT_PRECONDITION));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Portrait {
            spec,
            format,
            trajectories,
            range,
            out,
            settings,
        } => {
            let spec = load(&spec)?;
            let cli_seed = settings.seed;
            let resolved = settings.to_settings().resolve(&spec.settings);
            let seed = cli_seed.unwrap_or_else(|| portrait::seed_from_env(resolved.seed));
            let p = portrait::build(
                &spec,
                &PortraitOptions {
                    trajectories,
                    range,
                    seed,
                    settings: resolved,
                },
            );
            let text = match format {
                Format::Svg => portrait::to_svg(&p),
                Format::Csv => portrait::to_csv(&p).map_err(|e| {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                })?,
            };
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PaperVerify { json } => {
            let results = verify_counterexample();
            if json {
                println!("{}", serde_json::to_string_pretty(&results).expect("results serialize"));
            } else {
                for r in &results {
                    let mark = if r.passed { "PASS" } else { "FAIL" };
                    println!("{:>2}  {mark}  {:<56} {}", r.id, r.claim, r.detail);
                }
            }
            Ok(if all_passed(&results) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
