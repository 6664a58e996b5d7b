//! Record emission: newline-delimited JSON, CSV with fixed columns, or an
//! aligned plain-text table.

use std::io::Write;

use serde::Serialize;

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// A flat output record. `cells` must line up with `COLUMNS`.
pub trait Record: Serialize {
    const COLUMNS: &'static [&'static str];

    fn cells(&self) -> Vec<String>;
}

pub fn cell<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// Shortest round-trip text, in exponent form for very small or large magnitudes.
pub fn float(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn float_cell(value: &Option<f64>) -> String {
    value.map(float).unwrap_or_default()
}

pub fn emit<R: Record>(records: &[R], format: Format, out: &mut impl Write) -> CliResult<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n").map_err(CliError::Output)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(R::COLUMNS)?;
            for r in records {
                w.write_record(r.cells())?;
            }
            w.flush().map_err(CliError::Output)?;
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = records.iter().map(Record::cells).collect();
            let mut widths: Vec<usize> = R::COLUMNS.iter().map(|c| c.chars().count()).collect();
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let header: Vec<String> = R::COLUMNS.iter().map(|c| c.to_string()).collect();
            for row in std::iter::once(&header).chain(&rows) {
                let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                writeln!(out, "{}", line.join("  ").trim_end()).map_err(CliError::Output)?;
            }
        }
    }
    out.flush().map_err(CliError::Output)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        name: String,
        value: Option<f64>,
    }

    impl Record for Row {
        const COLUMNS: &'static [&'static str] = &["name", "value"];

        fn cells(&self) -> Vec<String> {
            vec![self.name.clone(), cell(&self.value)]
        }
    }

    fn render(format: Format) -> String {
        let rows = [Row { name: "a,b".into(), value: Some(0.5) }, Row { name: "long name".into(), value: None }];
        let mut buf = Vec::new();
        emit(&rows, format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(render(Format::Json), "{\"name\":\"a,b\",\"value\":0.5}\n{\"name\":\"long name\",\"value\":null}\n");
        assert_eq!(render(Format::Csv), "name,value\n\"a,b\",0.5\nlong name,\n");
        assert_eq!(render(Format::Table), "name       value\na,b        0.5\nlong name\n");
    }
}
