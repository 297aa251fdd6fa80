use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use fusionkit::format::Input;
use fusionkit::{Error, Result, Status};
use rayon::prelude::*;

use crate::checks::{self, Ctx, Sink};
use crate::report::{display_path, RunReport};

fn input_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn run_file(path: &Path, ctx: &Ctx) -> RunReport {
    let mut report = RunReport::new("sweep", ctx.seed, ctx.tol);
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| display_path(path));
    let input = match crate::load(path, &mut report) {
        Ok(input) => input,
        Err(e) => {
            report.error(Some(&name), &e);
            return report;
        }
    };
    let negative = input.meta().negative_control;
    let mut out = Sink {
        report: &mut report,
        file: Some(name.clone()),
    };
    let result = match &input {
        Input::Ring { ring, meta } => checks::ring_pipeline(ring, meta, ctx, &mut out),
        Input::Group { table, .. } => checks::group_pipeline(table, ctx, &mut out),
        Input::Type { ty, integral, .. } => {
            checks::type_checks(ty, *integral, false, &mut out);
            Ok(())
        }
    };
    if let Err(e) = result {
        out.error(&e);
    }
    if negative {
        checks::settle_negative_control(&mut report, &name);
    }
    report
}

/// Runs every file of `dir` in parallel and merges the results in file-name order.
pub fn run(dir: &Path, jobs: usize, ctx: &Ctx, report: &mut RunReport) -> Result<()> {
    if !dir.is_dir() {
        return Err(Error::Parse(format!("{} is not a directory", display_path(dir))));
    }
    let files = input_files(dir)?;
    if files.is_empty() {
        report
            .warnings
            .push(format!("no input files in {}; zero checks run", display_path(dir)));
        return Ok(());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Inconsistent(e.to_string()))?;
    let parts: Vec<RunReport> = pool.install(|| files.par_iter().map(|f| run_file(f, ctx)).collect());
    for part in parts {
        report.absorb(part);
    }
    Ok(())
}

/// Per-file counts as a plain-text table.
pub fn summary_table(report: &RunReport) -> String {
    let mut rows: BTreeMap<String, [usize; 5]> = BTreeMap::new();
    for r in &report.verdicts {
        let row = rows.entry(r.file.clone().unwrap_or_default()).or_default();
        let col = match r.verdict.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::NotApplicable => 2,
            Status::ExpectedFail => 3,
        };
        row[col] += 1;
    }
    for e in &report.errors {
        rows.entry(e.file.clone().unwrap_or_default()).or_default()[4] += 1;
    }
    let width = rows.keys().map(String::len).max().unwrap_or(4).max(4);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>5} {:>5} {:>5} {:>8} {:>6}",
        "file", "pass", "fail", "n/a", "expected", "errors"
    );
    for (file, c) in &rows {
        let _ = writeln!(
            out,
            "{file:<width$}  {:>5} {:>5} {:>5} {:>8} {:>6}",
            c[0], c[1], c[2], c[3], c[4]
        );
    }
    out
}
