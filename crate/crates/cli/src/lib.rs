//! Command-line front end: argument parsing, input resolution and report
//! assembly. [`run`] is the whole program minus process exit.

mod args;
mod commands;
mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format};
pub use report::{Inputs, Report};

/// Exit status for malformed input of any kind.
pub const EXIT_INVALID: i32 = 2;
/// Exit status when an enumeration budget runs out.
pub const EXIT_BUDGET: i32 = 1;

/// Environment variable consulted when `--budget` is absent.
pub const BUDGET_ENV: &str = "SYZEX_BUDGET";

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    /// Absent when clap handled the request itself (help, version, usage errors).
    pub report: Option<Report>,
    pub output: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INVALID,
            };
            return Outcome {
                code,
                report: None,
                output: e.render().to_string(),
            };
        }
    };
    let format = cli.format;
    let (code, report) = commands::execute(&cli, echo);
    let output = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    Outcome {
        code,
        report: Some(report),
        output,
    }
}
