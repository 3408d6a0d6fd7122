mod commands;
mod plot;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypero::arrangement::CategoryODatum;
use hypero::fixtures;

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "hypero", version, about = "Exact computations for hypertoric category O")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Regularity, unimodularity and saturation of the datum.
    Validate,
    /// Feasible and bounded sign vectors.
    Chambers,
    /// The order on bounded feasible chambers with its vertex tables.
    Order,
    /// Predicted dimensions against the computed finite algebra.
    Dims,
    /// Structure constants of the finite algebra.
    Algebra,
    /// Koszulity, quadratic dual, standard modules and BGG reciprocity.
    Koszul,
    /// The Gale dual datum and the feasible/bounded swap.
    Gale,
    /// Block dimensions against Ext over the Gale dual.
    Mirror,
    /// Riemann-Hilbert truncations.
    Rh,
    /// Polytope skeleton against corners of the Koszul dual.
    Skeleton,
    /// Every check, as one JSON summary.
    Report,
    /// SVG picture of the arrangement (dimension at most 2).
    Plot,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Chambers => "chambers",
            Command::Order => "order",
            Command::Dims => "dims",
            Command::Algebra => "algebra",
            Command::Koszul => "koszul",
            Command::Gale => "gale",
            Command::Mirror => "mirror",
            Command::Rh => "rh",
            Command::Skeleton => "skeleton",
            Command::Report => "report",
            Command::Plot => "plot",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    #[value(name = "EX0", alias = "ex0")]
    Ex0,
    #[value(name = "EX1", alias = "ex1")]
    Ex1,
    #[value(name = "EX2", alias = "ex2")]
    Ex2,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Datum JSON file.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Datum JSON given inline.
    #[arg(long, global = true, value_name = "JSON")]
    pub datum: Option<String>,
    /// A built-in worked example instead of an input file.
    #[arg(long, global = true, value_enum)]
    pub fixture: Option<Fixture>,
    /// Truncation order for the Riemann-Hilbert check.
    #[arg(long, global = true, default_value_t = 4)]
    pub k: usize,
    /// Cap on resolution length and quadratic-dual degree.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for output files; stdout when absent.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Seed for the random data checked by `report`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random data checked by `report`.
    #[arg(long, global = true, default_value_t = 0)]
    pub samples: usize,
}

impl RunConfig {
    pub fn bound(&self) -> usize {
        self.bound as usize
    }

    fn load_datum(&self) -> Result<CategoryODatum, Failure> {
        let given = [self.input.is_some(), self.datum.is_some(), self.fixture.is_some()];
        match given.iter().filter(|&&x| x).count() {
            0 => return Err(Failure::Input("one of --input, --datum or --fixture is required".into())),
            1 => {}
            _ => return Err(Failure::Input("--input, --datum and --fixture are mutually exclusive".into())),
        }
        if let Some(f) = self.fixture {
            return Ok(match f {
                Fixture::Ex0 => fixtures::ex0(),
                Fixture::Ex1 => fixtures::ex1(),
                Fixture::Ex2 => fixtures::ex2(),
            });
        }
        let text = match (&self.input, &self.datum) {
            (Some(p), _) => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
            (_, Some(s)) => s.clone(),
            _ => unreachable!(),
        };
        Ok(CategoryODatum::from_json(&text)?)
    }
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, body: &str) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)
}

fn emit(cmd: Command, cfg: &RunConfig, outcome: &Outcome) -> io::Result<()> {
    let (ext, body) = match cfg.format {
        Format::Json => ("json", outcome.to_json()),
        Format::Csv => ("csv", outcome.to_csv()),
    };
    match &cfg.out {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())?;
            if !body.ends_with('\n') {
                writeln!(out)?;
            }
        }
        Some(dir) => {
            fs::create_dir_all(dir)?;
            write_atomic(&dir.join(format!("{}.{ext}", cmd.name())), &body)?;
            for (name, content) in &outcome.attachments {
                write_atomic(&dir.join(name), content)?;
            }
        }
    }
    Ok(())
}

fn emit_plot(cfg: &RunConfig, svg: &str) -> io::Result<()> {
    match &cfg.out {
        None => io::stdout().lock().write_all(svg.as_bytes()),
        Some(dir) => {
            fs::create_dir_all(dir)?;
            write_atomic(&dir.join("plot.svg"), svg)
        }
    }
}

fn run(cmd: Command, cfg: &RunConfig) -> Result<bool, Failure> {
    let datum = cfg.load_datum()?;
    if cmd == Command::Plot {
        let svg = plot::render(&datum)?;
        emit_plot(cfg, &svg).map_err(|e| Failure::Input(e.to_string()))?;
        return Ok(true);
    }
    let outcome = commands::dispatch(cmd, cfg, &datum)?;
    emit(cmd, cfg, &outcome).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(outcome.pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Compute(msg)) => {
            eprintln!("hypero: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("hypero: {msg}");
            ExitCode::from(2)
        }
    }
}
