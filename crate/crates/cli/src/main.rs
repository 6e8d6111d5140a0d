mod args;
mod commands;
mod config;
mod sweep;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use config::ConfigFile;
use table::{emit, Format};

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let threads = cfg.pick(cli.threads, "threads")?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            anyhow::bail!("threads must be at least 1");
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().context("cannot start worker threads")?;

    if let Command::Verify { level } = &cli.command {
        let level = commands::verify_level(*level, &cfg)?;
        let reports = pool.install(|| dicke_verify::run(level));
        let mut out = std::io::stdout().lock();
        for r in &reports {
            writeln!(out, "{r}")?;
        }
        let passed = reports.iter().filter(|r| r.passed).count();
        writeln!(out, "{passed} of {} criteria passed", reports.len())?;
        return Ok(if passed == reports.len() {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        });
    }

    let format = cfg.pick(cli.format, "format")?.unwrap_or(Format::Csv);
    let output = cfg.pick::<PathBuf>(cli.output.clone(), "output")?;
    let columns = match cli.columns.clone() {
        Some(c) => Some(c),
        None => cfg
            .raw("columns")
            .map(|s| s.split(',').map(|c| c.trim().to_string()).collect()),
    };

    let result = pool.install(|| commands::run(&cli.command, &cfg))?;
    let mut table = result.table;
    if let Some(names) = &columns {
        table = table.select(names)?;
    }
    let bytes = match format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(json!({
            "command": commands::command_name(&cli.command),
            "params": result.params,
            "version": env!("CARGO_PKG_VERSION"),
        }))?,
    };
    emit(&bytes, output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            // clap appends usage and hints; keep the message line only
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
