//! Problem files, the task runner and report rendering.

mod parse;
mod run;

use serde::Serialize;

pub use parse::{parse_problem, parse_vector, Object, ProblemFile, Task};
pub use run::{run, Flags};

use crate::report::{Entry, Report, Status, Summary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: u32,
    seed: u64,
    arity: usize,
    order: u32,
    entries: &'a [Entry],
    summary: Summary,
}

/// Render a report. `quiet` keeps only failures and the summary line in text output.
pub fn render(report: &Report, flags: &Flags, format: Format, quiet: bool) -> String {
    match format {
        Format::Json => {
            let doc = JsonReport {
                schema: 1,
                seed: flags.seed,
                arity: flags.arity,
                order: flags.order,
                entries: &report.entries,
                summary: report.summary(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let shown = if quiet {
                Report { entries: report.entries.iter().filter(|e| e.status == Status::Fail).cloned().collect() }
            } else {
                report.clone()
            };
            let mut s = shown.to_string();
            if quiet {
                let sum = report.summary();
                let last = s.rfind('\n').map_or(0, |i| i + 1);
                s.truncate(last);
                s.push_str(&format!("{} passed, {} failed", sum.passed, sum.failed));
            }
            s.push('\n');
            s
        }
    }
}

/// Process exit status for a finished run.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

/// Parse, run and render in one step; parse errors yield exit status 2.
pub fn run_source(text: &str, flags: &Flags, format: Format, quiet: bool) -> (String, i32) {
    match parse_problem(text) {
        Ok(p) => {
            let r = run(&p, flags);
            (render(&r, flags, format, quiet), exit_code(&r))
        }
        Err(e) => (format!("error: {}\n", e), 2),
    }
}
