use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use num_complex::Complex64;

use nlcalc::maps::ExampleId;
use nlcalc::verifier::{run_experiment, run_suite, ExperimentConfig, ExperimentKind, ExperimentReport};

/// Directory used for reports when `--out` is absent.
const OUT_DIR_ENV: &str = "VERIFY_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Run a numerical experiment on the example curves and write its report.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// smoothness, taylor-failure, identity-theorem-failure, c1-not-c2,
    /// real-restriction, measure-identities, or `all`
    experiment: String,
    /// example1, example2 or example3
    #[arg(long)]
    example: Option<String>,
    /// Divided-difference order.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Exponent of the Lᵖ gauge (example3 only), in ]1/2, 1[.
    #[arg(long, default_value_t = nlcalc::maps::DEFAULT_P)]
    p: f64,
    /// Shrink ratio of the node schedule, in ]0, 1[.
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[arg(long, default_value_t = nlcalc::verifier::DEFAULT_STEPS)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Convergence tolerance for gauge traces.
    #[arg(long)]
    tol: Option<f64>,
    /// Output file, or directory for `all`. Defaults to $VERIFY_OUT_DIR, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Center `re,im`; repeat for several. Defaults to seeded random centers.
    #[arg(long = "center", value_parser = parse_center)]
    centers: Vec<Complex64>,
}

fn parse_center(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

fn config(cli: &Cli) -> anyhow::Result<ExperimentConfig> {
    let kind: ExperimentKind = cli.experiment.parse()?;
    let example = cli.example.as_deref().map(str::parse::<ExampleId>).transpose()?;
    let mut cfg = ExperimentConfig::new(kind, example)
        .with_seed(cli.seed)
        .with_k(cli.k)
        .with_p(cli.p)
        .with_steps(cli.steps)
        .with_centers(cli.centers.clone());
    cfg.rho = cli.rho;
    if let Some(tol) = cli.tol {
        cfg.tolerances.convergence = tol;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_report<W: Write>(report: &ExperimentReport, format: Format, w: W) -> io::Result<()> {
    let mut w = BufWriter::new(w);
    match format {
        Format::Json => {
            report.write_json(&mut w)?;
            writeln!(w)?;
        }
        Format::Csv => report.write_csv(&mut w)?,
    }
    w.flush()
}

fn write_to_file(report: &ExperimentReport, format: Format, path: &Path) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_report(report, format, file).with_context(|| format!("writing {}", path.display()))
}

fn env_dir() -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if cli.experiment == "all" {
        let reports = run_suite(cli.seed)?;
        let dir = cli.out.clone().or_else(env_dir);
        if let Some(dir) = &dir {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        for r in &reports {
            println!("{}", r.summary_line());
            if let Some(dir) = &dir {
                write_to_file(r, cli.format, &dir.join(format!("{}.{}", r.config.report_id(), cli.format.extension())))?;
            }
        }
        let ok = reports.iter().all(|r| r.verdict.is_success());
        println!("overall: {}", if ok { "ok" } else { "FAILED" });
        return Ok(ok);
    }

    let cfg = config(&cli)?;
    let report = run_experiment(&cfg)?;
    match (&cli.out, env_dir()) {
        (Some(path), _) => write_to_file(&report, cli.format, path)?,
        (None, Some(dir)) => {
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            write_to_file(&report, cli.format, &dir.join(format!("{}.{}", cfg.report_id(), cli.format.extension())))?
        }
        (None, None) => write_report(&report, cli.format, io::stdout().lock())?,
    }
    eprintln!("{}", report.summary_line());
    Ok(report.verdict.is_success())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.experiment != "all" && cli.experiment.parse::<ExperimentKind>().is_err() {
        eprintln!("error: unknown experiment {:?}", cli.experiment);
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
