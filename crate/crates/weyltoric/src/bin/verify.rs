//! Command-line front end: runs verification suites and writes reports.
//!
//! ```text
//! verify --n 2 --ell -2 --suite module-t0neg --out reports
//! verify --n 3 --suite relations
//! verify --n 2 --ell -4:4 --suite relations,pbw-span --format text
//! ```
//!
//! Exit status is 0 iff every requested suite passes; configuration errors
//! (including twist-parity preconditions) exit with status 2.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;

use weyltoric::report::{self, OutputFormat, RunConfig, SuiteName};

/// Environment variable overriding the default output directory.
const OUT_DIR_ENV: &str = "WEYLTORIC_OUT";

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Exact verification suites for twisted differential operator rings on toric varieties"
)]
struct Cli {
    /// Ambient rank n (at least 2).
    #[arg(long)]
    n: Option<usize>,

    /// Twist or twist range: `2`, `-4:4`, or `1,2,3`.
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<String>,

    /// Comma-separated suite names.
    #[arg(long)]
    suite: Option<String>,

    /// Weight window `lo:hi` for the infinite section modules.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,

    /// Filtration order bound for the span oracle and the ring isomorphism.
    #[arg(long)]
    max_order: Option<u32>,

    /// Word length bound for the span oracle.
    #[arg(long)]
    max_word_len: Option<u32>,

    /// Output format: json, csv, or text.
    #[arg(long)]
    format: Option<String>,

    /// Report directory (also via WEYLTORIC_OUT; defaults to ./reports).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Do not write report files.
    #[arg(long, default_value_t = false)]
    no_out: bool,

    /// JSON config file; explicit flags win over its fields.
    #[arg(long)]
    config: Option<PathBuf>,

    /// List the available suites and exit.
    #[arg(long, default_value_t = false)]
    list_suites: bool,
}

fn parse_ells(s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once(':') {
        let lo: i64 = lo.trim().parse().map_err(|e| format!("bad twist {lo:?}: {e}"))?;
        let hi: i64 = hi.trim().parse().map_err(|e| format!("bad twist {hi:?}: {e}"))?;
        if lo > hi {
            return Err(format!("empty twist range {lo}:{hi}"));
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad twist {t:?}: {e}"))
        })
        .collect()
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("window must be lo:hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad window {lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad window {hi:?}: {e}"))?;
    Ok((lo, hi))
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    // start from the config file, if any; flags override
    let mut file_cfg: Option<RunConfig> = None;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        file_cfg = Some(serde_json::from_str(&text).map_err(|e| format!("bad config: {e}"))?);
    }

    let n = cli
        .n
        .or(file_cfg.as_ref().map(|c| c.n))
        .ok_or("missing --n")?;
    let ells = match &cli.ell {
        Some(s) => parse_ells(s)?,
        None => file_cfg
            .as_ref()
            .map(|c| c.ells.clone())
            .unwrap_or_else(|| vec![0]),
    };
    let suites = match &cli.suite {
        Some(s) => s
            .split(',')
            .map(|t| SuiteName::from_str(t).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?,
        None => file_cfg
            .as_ref()
            .map(|c| c.suites.clone())
            .ok_or("missing --suite")?,
    };
    let window = match &cli.window {
        Some(s) => Some(parse_window(s)?),
        None => file_cfg.as_ref().and_then(|c| c.window),
    };
    let out_dir = if cli.no_out {
        None
    } else {
        cli.out
            .clone()
            .or_else(|| file_cfg.as_ref().and_then(|c| c.out_dir.clone()))
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .or_else(|| Some(PathBuf::from("reports")))
    };
    let format = match &cli.format {
        Some(s) => OutputFormat::from_str(s).map_err(|e| e.to_string())?,
        None => file_cfg
            .as_ref()
            .map(|c| c.format)
            .unwrap_or(OutputFormat::Text),
    };
    Ok(RunConfig {
        n,
        ells,
        suites,
        window,
        max_order: cli
            .max_order
            .or(file_cfg.as_ref().map(|c| c.max_order))
            .unwrap_or(4),
        max_word_len: cli
            .max_word_len
            .or(file_cfg.as_ref().map(|c| c.max_word_len))
            .unwrap_or(3),
        out_dir,
        format,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_suites {
        for s in SuiteName::all() {
            println!("{}", s.as_str());
        }
        return ExitCode::SUCCESS;
    }
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let manifest = match report::run(&config) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    match config.format {
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&manifest).expect("serializable")
            );
        }
        OutputFormat::Csv | OutputFormat::Text => {
            for outcome in &manifest.suites {
                println!(
                    "{:<16} {}  {}",
                    outcome.suite,
                    if outcome.pass { "pass" } else { "FAIL" },
                    outcome.detail
                );
                if config.format == OutputFormat::Text {
                    if let (Some(dir), Some(file)) = (&config.out_dir, &outcome.report_file) {
                        if let Ok(text) = std::fs::read_to_string(dir.join(file)) {
                            if let Ok(payload) = serde_json::from_str(&text) {
                                let rendered = report::table(&payload);
                                if rendered.contains('|') || rendered.contains("empty") {
                                    print!("{rendered}");
                                }
                            }
                        }
                    }
                }
            }
            println!(
                "{} ({} suites, {} ms)",
                if manifest.pass { "PASS" } else { "FAIL" },
                manifest.suites.len(),
                manifest.timing_ms
            );
        }
    }
    if manifest.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
