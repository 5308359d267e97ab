//! `actiview`: validate data directories, generate synthetic cohorts, serve
//! the HTTP API and print offline comparison reports.
//!
//! Exit status is 0 on success, 1 for data problems (parse or validation
//! errors, unknown subjects) and 2 for usage problems (bad flags, missing
//! files, unwritable output, port in use).

mod report;
mod settings;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use actiview_core::analytics::FilterSpec;
use actiview_core::dataset::{LoadError, QueryError, RawDataset};
use actiview_core::model::BiometricKind;
use actiview_core::synth::{generate_cohort, golden_scenario, Archetype, GOLDEN_DAYS};
use actiview_core::validate::{Issue, ValidationReport};
use actiview_core::{wire, Dataset, Settings};
use actiview_server::AppState;
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

const OK: ExitCode = ExitCode::SUCCESS;

fn data_error() -> ExitCode {
    ExitCode::from(1)
}

fn usage_error() -> ExitCode {
    ExitCode::from(2)
}

#[derive(Parser)]
#[command(name = "actiview", version, about = "Actigraphy and biometrics analytics for camp cohorts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a data directory and report every problem found.
    Validate {
        #[arg(long)]
        data: PathBuf,
        /// Machine-readable report.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Write a synthetic cohort (subjects.csv, actigraphy.csv, biometrics.csv).
    Gen {
        #[arg(long, required_unless_present = "golden")]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Emit the fixed four-subject scenario; other options are ignored.
        #[arg(long)]
        golden: bool,
        #[arg(long, default_value_t = GOLDEN_DAYS)]
        days: u32,
        #[arg(long, default_value = "2015-03-01", value_parser = parse_date_arg)]
        start: NaiveDate,
        /// Comma list of archetype:count, e.g. `weekend_active:3,non_wearer:1`.
        #[arg(long, default_value = "weekend_active:2,weekday_active:2,mostly_sedentary:2,non_wearer:2", value_parser = parse_spec)]
        spec: CohortSpec,
    },
    /// Serve the HTTP API over a data directory until interrupted.
    Serve {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Compare two subjects offline.
    Report {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 24.0)]
        max_sedentary_hours: f64,
        /// Comma list of biometric kinds; all kinds when omitted.
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<BiometricKind>,
        /// Print the compare endpoint's JSON document.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Args, Clone, Default)]
struct ConfigArgs {
    /// Flat key=value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one configuration key; repeatable, applied after --config.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Clone)]
struct CohortSpec(Vec<(Archetype, usize)>);

fn parse_date_arg(s: &str) -> Result<NaiveDate, String> {
    actiview_core::ingest::parse_date(s).ok_or_else(|| format!("`{s}` is not YYYY-MM-DD"))
}

fn parse_spec(s: &str) -> Result<CohortSpec, String> {
    s.split(',')
        .map(|item| {
            let (name, count) = item
                .split_once(':')
                .ok_or_else(|| format!("`{item}` is not archetype:count"))?;
            let archetype = name.trim().parse::<Archetype>().map_err(|e| e.to_string())?;
            let count = count
                .trim()
                .parse()
                .map_err(|_| format!("`{count}` is not a count"))?;
            Ok((archetype, count))
        })
        .collect::<Result<_, _>>()
        .map(CohortSpec)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_target(false)
        .init();
    match Cli::parse().command {
        Command::Validate { data, json, config } => validate(&data, json, &config),
        Command::Gen {
            seed,
            out,
            golden,
            days,
            start,
            spec,
        } => gen(seed, &out, golden, days, start, &spec),
        Command::Serve {
            data,
            port,
            bind,
            config,
        } => serve(&data, &bind, port, &config),
        Command::Report {
            data,
            a,
            b,
            max_sedentary_hours,
            kinds,
            json,
            config,
        } => run_report(&data, &a, &b, max_sedentary_hours, kinds, json, &config),
    }
}

fn load_settings(args: &ConfigArgs) -> Result<Settings, ExitCode> {
    settings::load(args.config.as_deref(), &args.set).map_err(|e| {
        eprintln!("error: {e}");
        usage_error()
    })
}

/// Loads and validates a dataset, printing problems to stderr.
fn load_dataset(dir: &Path, settings: Settings) -> Result<Dataset, ExitCode> {
    Dataset::load(dir, settings).map_err(|e| {
        let issues = load_issues(&e);
        for issue in &issues {
            eprintln!("{issue}");
        }
        eprintln!("error: {e}");
        match e {
            LoadError::Missing(_) => usage_error(),
            _ => data_error(),
        }
    })
}

fn load_issues(e: &LoadError) -> Vec<Issue> {
    match e {
        LoadError::Missing(_) | LoadError::Analytics(_) => Vec::new(),
        LoadError::Parse(errors) => errors
            .iter()
            .flat_map(|e| e.row_errors())
            .map(|r| Issue {
                file: r.file,
                line: r.line,
                code: "parse_error",
                message: r.message,
            })
            .collect(),
        LoadError::Invalid(report) => report.issues.clone(),
    }
}

fn validate(dir: &Path, json: bool, config: &ConfigArgs) -> ExitCode {
    let settings = match load_settings(config) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let report = match RawDataset::read_dir(dir) {
        Ok(raw) => raw.validate(&settings),
        Err(e @ LoadError::Missing(_)) => {
            eprintln!("error: {e}");
            return usage_error();
        }
        Err(e) => ValidationReport {
            issues: load_issues(&e),
        },
    };
    if json {
        let doc = serde_json::json!({
            "accepted": report.is_accepted(),
            "issues": report.issues,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else if report.is_accepted() {
        println!("{}: ok", dir.display());
    } else {
        for issue in &report.issues {
            println!("{issue}");
        }
        println!("{}: {} issue(s)", dir.display(), report.issues.len());
    }
    if report.is_accepted() {
        OK
    } else {
        data_error()
    }
}

fn gen(
    seed: Option<u64>,
    out: &Path,
    golden: bool,
    days: u32,
    start: NaiveDate,
    spec: &CohortSpec,
) -> ExitCode {
    let files = if golden {
        golden_scenario()
    } else {
        match generate_cohort(seed.unwrap_or_default(), &spec.0, start, days) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("error: {e}");
                return usage_error();
            }
        }
    };
    match files.write_to(out) {
        Ok(()) => OK,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", out.display());
            usage_error()
        }
    }
}

fn serve(dir: &Path, bind: &str, port: u16, config: &ConfigArgs) -> ExitCode {
    let settings = match load_settings(config) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let dataset = match load_dataset(dir, settings) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let state = Arc::new(AppState::new(dataset));
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            eprintln!("error: cannot start runtime: {e}");
            return usage_error();
        }
    };
    runtime.block_on(async move {
        let listener = match tokio::net::TcpListener::bind((bind, port)).await {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: cannot bind {bind}:{port}: {e}");
                return usage_error();
            }
        };
        match listener.local_addr() {
            Ok(addr) => log::info!("listening on http://{addr}"),
            Err(_) => log::info!("listening on {bind}:{port}"),
        }
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        match actiview_server::serve(listener, state, shutdown).await {
            Ok(()) => OK,
            Err(e) => {
                eprintln!("error: {e}");
                data_error()
            }
        }
    })
}

fn run_report(
    dir: &Path,
    a: &str,
    b: &str,
    max_sedentary_hours: f64,
    kinds: Vec<BiometricKind>,
    json: bool,
    config: &ConfigArgs,
) -> ExitCode {
    if a == b {
        eprintln!("error: --a and --b must name different subjects");
        return usage_error();
    }
    let filter = match FilterSpec::with_max_sedentary_hours(max_sedentary_hours) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return usage_error();
        }
    };
    let kinds = if kinds.is_empty() {
        BiometricKind::ALL.to_vec()
    } else {
        kinds
    };
    let settings = match load_settings(config) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let dataset = match load_dataset(dir, settings) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let comparison = match dataset.compare(a, b, &filter, &kinds) {
        Ok(r) => r,
        Err(e @ QueryError::UnknownSubject(_)) => {
            eprintln!("error: {e}");
            return data_error();
        }
        Err(e) => {
            eprintln!("error: {e}");
            return usage_error();
        }
    };
    if json {
        println!(
            "{}",
            serde_json::to_string(&wire::comparison(&comparison)).unwrap()
        );
    } else {
        print!("{}", report::render(&comparison, max_sedentary_hours));
    }
    OK
}
