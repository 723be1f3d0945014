mod commands;
mod input;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use central_units::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::commands::Report;

/// Central units of integral group rings: strong Shoda pairs, Wedderburn
/// components, generalized Bass units and index bounds.
#[derive(Parser, Debug)]
#[command(name = "central-units", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Catalog group name, e.g. G3, ScriptG1, H1, Q8.
    #[arg(long, global = true, conflicts_with = "file")]
    pub group: Option<String>,
    /// Odd prime for the p-families.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Parameter of G8 for p > 3.
    #[arg(long, global = true)]
    pub d: Option<u64>,
    /// Cyclic factor orders for AbelianP, e.g. 4,2.
    #[arg(long, global = true, value_delimiter = ',')]
    pub invariants: Vec<u64>,
    /// JSON group specification.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest group order for full subgroup enumeration.
    #[arg(long, global = true, default_value_t = 1296, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_subgroups: u64,
    /// Cap on the exponent search for generalized Bass units (default 4|G|).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_ngm: Option<u64>,
    /// Class number override `q=v` for the real cyclotomic field of conductor q.
    #[arg(long = "h-plus", global = true, value_parser = parse_h_plus)]
    pub h_plus: Vec<HPlus>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Use the published pair list of a catalog group instead of the computed family.
    #[arg(long, global = true)]
    pub published: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Order, exponent and relation audit.
    Info,
    /// The complete irredundant family of strong Shoda pairs.
    Ssp,
    /// Primitive central idempotents and their checks.
    Idempotents,
    /// Wedderburn components of Q[G].
    Wedderburn,
    /// Rank of the central units of Z[G].
    Rank,
    /// Minimal exponents n_{H,K} of the generalized Bass units.
    BassN,
    /// The virtual basis of central units.
    Basis,
    /// Upper bound on the index of the virtual basis.
    Bound,
    /// Run every applicable check; nonzero exit on failure.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Ssp => "ssp",
            Command::Idempotents => "idempotents",
            Command::Wedderburn => "wedderburn",
            Command::Rank => "rank",
            Command::BassN => "bass-n",
            Command::Basis => "basis",
            Command::Bound => "bound",
            Command::Verify => "verify",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug)]
pub struct HPlus(pub u64, pub u64);

fn parse_h_plus(s: &str) -> Result<HPlus, String> {
    let (q, v) = s.split_once('=').ok_or("expected q=v")?;
    let q = q.trim().parse().map_err(|_| format!("bad conductor {q:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("bad class number {v:?}"))?;
    Ok(HPlus(q, v))
}

/// Why a run stopped before producing a report.
enum Failure {
    /// Bad arguments or an unusable group description.
    Usage(Error),
    Compute(Error),
}

fn run(cfg: &RunConfig) -> Result<Report, Failure> {
    if let Some(j) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j as usize)
            .build_global()
            .map_err(|e| Failure::Usage(Error::Input(e.to_string())))?;
    }
    let input = match (&cfg.file, &cfg.group) {
        (Some(path), _) => input::from_file(path),
        (None, Some(name)) => input::catalog_entry(name, cfg.p, cfg.d, &cfg.invariants).and_then(input::from_catalog),
        (None, None) => Err(Error::Input("one of --group or --file is required".into())),
    }
    .map_err(Failure::Usage)?;
    let mut input = input;
    if cfg.published {
        let entry = input
            .entry
            .as_ref()
            .ok_or_else(|| Failure::Usage(Error::Input("--published needs a catalog group".into())))?;
        let pairs = central_units::known::published_pairs(entry)
            .ok_or_else(|| Failure::Usage(Error::Input(format!("no published pair list for {}", input.name))))?;
        input.pairs = Some(pairs);
    }
    commands::dispatch(cfg, &input).map_err(|e| match e {
        Error::Input(_) => Failure::Usage(e),
        e => Failure::Compute(e),
    })
}

fn error_object(kind: &str, message: &str) -> Value {
    json!({"schema": 1, "error": {"kind": kind, "message": message}})
}

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let json_wanted = std::env::args().any(|a| a == "json" || a == "--format=json");
            if json_wanted {
                println!("{}", error_object("Usage", e.to_string().trim()));
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(report) => {
            match cfg.format {
                Format::Json => {
                    let mut v = report.json;
                    v["schema"] = json!(1);
                    v["command"] = json!(cfg.command.name());
                    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
                }
                Format::Text => print!("{}", report.text),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let (code, e) = match f {
                Failure::Usage(e) => (2, e),
                Failure::Compute(e) => (1, e),
            };
            match cfg.format {
                Format::Json => println!("{}", error_object(e.kind(), &e.to_string())),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
