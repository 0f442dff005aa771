use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use starpi::Result;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Refused,
    Failed,
}

/// A command's output in both formats.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub csv: String,
    pub status: Status,
}

impl Report {
    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let body = match format {
            Format::Text => &self.text,
            Format::Csv => &self.csv,
        };
        match out {
            Some(path) => std::fs::write(path, body)?,
            None => print!("{body}"),
        }
        Ok(())
    }
}

/// One line of a verification suite.
#[derive(Debug)]
pub struct Check {
    pub item: String,
    pub passed: bool,
    pub detail: String,
}

pub fn checks_report(suite: &str, checks: &[Check], extra_text: &str) -> Result<Report> {
    let mut text = String::from(extra_text);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "item", "passed", "detail"])?;
    for c in checks {
        writeln!(
            text,
            "[{}] {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.item,
            c.detail
        )
        .expect("write to string");
        w.write_record([suite, &c.item, if c.passed { "true" } else { "false" }, &c.detail])?;
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    writeln!(text, "{suite}: {passed}/{} checks passed", checks.len()).expect("write to string");
    let csv = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8");
    let status = if passed == checks.len() {
        Status::Ok
    } else {
        Status::Failed
    };
    Ok(Report { text, csv, status })
}
