//! Scenario files, pipelines and reports behind the `derint` binary.

mod pipeline;
pub mod report;
pub mod scenario;

pub use pipeline::{build_lagrangian, error_tag, run_file, run_scenario, run_source, RunOptions, DEFAULT_TRUNCATION, DEFAULT_WINDOW};

use rayon::prelude::*;
use report::Report;
use scenario::InputError;
use serde::Serialize;
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Outcome of one file in a corpus run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub file: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub entries: Vec<Entry>,
}

impl VerifySummary {
    pub fn exit_code(&self) -> i32 {
        if self.errors > 0 {
            EXIT_INPUT
        } else if self.failed > 0 {
            EXIT_MISMATCH
        } else {
            EXIT_PASS
        }
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match (&e.report, &e.error) {
                (Some(r), _) if !r.passed() => {
                    out += &format!("FAIL  {}  ({})\n", e.file, r.failed_checks().join("; "));
                }
                (Some(_), _) => out += &format!("PASS  {}\n", e.file),
                (None, err) => out += &format!("ERROR {}  {}\n", e.file, err.as_deref().unwrap_or_default()),
            }
        }
        out += &format!("{} passed, {} failed, {} errors\n", self.passed, self.failed, self.errors);
        out
    }
}

/// Scenario files (`*.scn`) of a directory, sorted by file name.
pub fn scenario_files(dir: &Path) -> Result<Vec<PathBuf>, InputError> {
    let read = std::fs::read_dir(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
    let mut files = vec![];
    for entry in read {
        let path = entry.map_err(|e| InputError(format!("{}: {e}", dir.display())))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == "scn") {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    if files.is_empty() {
        return Err(InputError(format!("{}: no .scn files", dir.display())));
    }
    Ok(files)
}

fn entry(path: &Path) -> Entry {
    let file = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    match run_file(path, &RunOptions::default()) {
        Ok(r) => Entry { file, status: if r.passed() { "pass" } else { "fail" }.into(), error: None, report: Some(r) },
        Err(e) => Entry { file, status: "error".into(), error: Some(e.0), report: None },
    }
}

/// Runs every scenario of `dir`; `jobs` bounds the worker threads (`Some(1)` is sequential).
pub fn verify_corpus(dir: &Path, jobs: Option<usize>) -> Result<VerifySummary, InputError> {
    let files = scenario_files(dir)?;
    let entries: Vec<Entry> = match jobs {
        Some(1) => files.iter().map(|p| entry(p)).collect(),
        _ => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| InputError(format!("thread pool: {e}")))?;
            pool.install(|| files.par_iter().map(|p| entry(p)).collect())
        }
    };
    let count = |s: &str| entries.iter().filter(|e| e.status == s).count();
    Ok(VerifySummary { passed: count("pass"), failed: count("fail"), errors: count("error"), entries })
}
