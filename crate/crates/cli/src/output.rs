//! Report emission: JSON or CSV on stdout or a file, summaries on stderr.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use amalgam_core::{NormReport64, SuiteReport};
use serde::Serialize;

use crate::config::Format;
use crate::error::CliError;

#[derive(Serialize)]
struct CaseRow<'a> {
    suite: &'a str,
    case: &'a str,
    key: &'a str,
    measured: Option<f64>,
    bound: Option<f64>,
    pass: bool,
}

#[derive(Serialize)]
struct CellRow {
    cell: i64,
    local: f64,
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e))
}

/// One CSV row per measured or bounded key of every case.
pub fn write_reports(reports: &[SuiteReport], format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let mut out = sink(path)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, reports).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                for c in &r.cases {
                    let mut keys: Vec<&String> = c.measured.keys().chain(c.bound.keys()).collect();
                    keys.sort();
                    keys.dedup();
                    for key in keys {
                        w.serialize(CaseRow {
                            suite: &r.theorem_tag,
                            case: &c.label,
                            key,
                            measured: c.measured.get(key).copied(),
                            bound: c.bound.get(key).copied(),
                            pass: c.pass,
                        })
                        .map_err(csv_error)?;
                    }
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn write_norm(report: &NormReport64, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let mut out = sink(path)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for (&cell, &local) in &report.locals {
                w.serialize(CellRow { cell, local }).map_err(csv_error)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), CliError> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

pub fn summary(reports: &[SuiteReport]) -> String {
    let mut s = format!(
        "{:<22} {:>6} {:>6} {:>8} {:>10}\n",
        "suite", "cases", "pass", "refined", "delta"
    );
    for r in reports {
        let failed = r.cases.iter().filter(|c| !c.pass).count();
        s.push_str(&format!(
            "{:<22} {:>6} {:>6} {:>8} {:>10.2e}\n",
            r.theorem_tag,
            r.cases.len(),
            if r.overall_pass { "ok".to_string() } else { format!("{failed} x") },
            if r.refined_pass { "ok" } else { "FAIL" },
            r.grid_refinement_delta
        ));
    }
    s
}
