//! Deterministic CSV/JSON emission.
//!
//! Every number is printed with 17 significant digits so identical inputs
//! produce byte-identical files and both formats decode to the same values.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io::Write;

use crate::error::Result;

/// 17 significant digits, scientific notation.
pub fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

/// JSON formatter that prints every float with 17 significant digits.
pub struct Sig17Formatter;

impl Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(fmt17(value).as_bytes())
    }
}

/// Serialize to pretty JSON with the fixed float format.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits utf-8"))
}

pub fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<()> {
    let s = to_json_string(value)?;
    out.write_all(s.as_bytes())?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_csv_row(out: &mut dyn Write, values: &[f64]) -> Result<()> {
    let row: Vec<String> = values.iter().map(|&x| fmt17(x)).collect();
    writeln!(out, "{}", row.join(","))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(crate::error::Error::BadInput(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
        }
    }
}
