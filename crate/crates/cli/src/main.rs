//! `cpl-verify`: runs the catalog and geometry verification suites and
//! prints multiplication tables of catalog members.

mod data;
mod report;
mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cpl_core::algebra::{derivation_dimension, Variety};
use cpl_core::exactmath::{RatFunc, Scalar, Var};
use thiserror::Error;

use data::DataSet;
use report::{Filters, Report, Summary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("data file missing: {}", .0.display())]
    DataFileMissing(PathBuf),
    #[error("cannot read {file}: {reason}")]
    BadDataFile { file: String, reason: String },
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Core(#[from] cpl_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "cpl-verify", version, about = "Exact verification of two-dimensional compatible pre-Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Restrict to one variety: pre-lie, comm-assoc, assoc or novikov.
    #[arg(long, global = true)]
    variety: Option<String>,
    /// Only report items with this name (family, witness or relation set).
    #[arg(long, global = true)]
    only: Option<String>,
    /// Seed for every randomised check.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Sample points per randomised check.
    #[arg(long, global = true, default_value_t = 5)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Read the data files from this directory instead of the built-in copies.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Identities, Z2 membership, automorphism groups and isomorphism exceptions.
    VerifyCatalog,
    /// Degenerations, non-degenerations, orbit dimensions and components.
    VerifyGeometry,
    /// Print both multiplication tables of a family, e.g. `show C39 alpha=1 beta=2`.
    Show {
        name: String,
        /// Parameter values as `name=value`.
        params: Vec<String>,
    },
}

/// Settings shared by the suites.
pub struct RunConfig {
    pub variety: Option<Variety>,
    pub only: Option<String>,
    pub seed: u64,
    pub samples: usize,
}

fn parse_params(args: &[String]) -> Result<BTreeMap<Var, Scalar>, CliError> {
    args.iter()
        .map(|a| {
            let (k, v) = a.split_once('=').ok_or_else(|| CliError::BadConfig(format!("expected name=value, got `{a}`")))?;
            let var: Var = k.trim().parse().map_err(|_| CliError::BadConfig(format!("unknown parameter `{k}`")))?;
            let value = v
                .parse::<RatFunc>()
                .ok()
                .and_then(|f| f.constant_value())
                .ok_or_else(|| CliError::BadConfig(format!("`{v}` is not a number")))?;
            Ok((var, value))
        })
        .collect()
}

fn show(data: &DataSet, name: &str, params: &[String], format: Format) -> Result<String, CliError> {
    let fam = data.catalog.family(name)?;
    let point = parse_params(params)?;
    let (algebra, der) = if point.is_empty() && !fam.params.is_empty() {
        (fam.algebra.clone(), None)
    } else {
        let a = fam.instantiate(&point)?;
        let d = derivation_dimension(&a)?;
        (a, Some(d))
    };
    if format == Format::Json {
        let v = serde_json::json!({
            "family": fam.name,
            "label": fam.label,
            "params": point,
            "algebra": algebra,
            "derivation_dimension": der,
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("serialisable")));
    }
    let mut out = format!("{}  (base {})\n", fam.label, fam.base);
    for c in &fam.constraints {
        out.push_str(&format!("  requires {c}\n"));
    }
    let table = |p: &cpl_core::algebra::Product| p.to_string().replace(", ", "\n      ");
    out.push_str(&format!("  ·   {}\n", table(&algebra.first)));
    out.push_str(&format!("  ∗   {}\n", table(&algebra.second)));
    match der {
        Some(d) => out.push_str(&format!("  derivations: {d}\n")),
        None => {
            let names: Vec<&str> = fam.params.iter().map(|p| p.name()).collect();
            out.push_str(&format!("  derivations: give values for {}\n", names.join(", ")));
        }
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let data = match &cli.data_dir {
        Some(dir) => DataSet::from_dir(dir)?,
        None => DataSet::embedded()?,
    };
    let variety = match &cli.variety {
        Some(v) => Some(v.parse::<Variety>().map_err(|_| CliError::BadConfig(format!("unknown variety `{v}`")))?),
        None => None,
    };
    if cli.samples == 0 {
        return Err(CliError::BadConfig("--samples must be positive".into()));
    }
    let cfg = RunConfig { variety, only: cli.only.clone(), seed: cli.seed, samples: cli.samples };
    let (suite, items, dimensions, graphs) = match &cli.command {
        Command::Show { name, params } => return Ok((show(&data, name, params, cli.format)?, false)),
        Command::VerifyCatalog => ("verify-catalog", suites::verify_catalog(&data, &cfg)?, vec![], vec![]),
        Command::VerifyGeometry => {
            let g = suites::verify_geometry(&data, &cfg)?;
            ("verify-geometry", g.items, g.dimensions, g.graphs)
        }
    };
    if items.is_empty() {
        return Err(CliError::BadConfig("the filters select no items".into()));
    }
    let mut report = Report {
        suite: suite.into(),
        seed: cfg.seed,
        samples: cfg.samples,
        filters: Filters { variety: variety.map(|v| v.name().to_string()), only: cfg.only.clone() },
        data_hashes: data.hashes.clone(),
        summary: Summary::default(),
        items,
        dimensions,
        graphs,
    };
    report.summarise();
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    Ok((text, report.failed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, failed)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Write { path: path.clone(), source }),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(failed))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
