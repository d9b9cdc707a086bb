//! Rendering and parsing of sequence tables.
//!
//! All formats carry term values as canonical decimal strings. The b-file
//! layout is one `n value` pair per line after a `#` header naming the
//! family and the method that produced the values.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use schreier_core::{FamilyParams, Method, SequenceTable};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
    Bfile,
}

/// One emitted term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputRecord {
    pub n: u32,
    pub value: String,
    pub method: Method,
}

pub fn records(table: &SequenceTable) -> Vec<OutputRecord> {
    table
        .iter()
        .map(|(n, v)| OutputRecord {
            n,
            value: v.to_str_radix(10),
            method: table.method(),
        })
        .collect()
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonParams {
    p: u32,
    q: Option<u32>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonTable {
    params: JsonParams,
    method: String,
    first_index: u32,
    values: Vec<String>,
}

pub fn render(table: &SequenceTable, format: Format) -> String {
    let rows = records(table);
    let mut out = String::new();
    match format {
        Format::Plain => {
            for r in &rows {
                let _ = writeln!(out, "{}", r.value);
            }
        }
        Format::Csv => {
            out.push_str("n,value,method\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{}", r.n, r.value, r.method);
            }
        }
        Format::Json => {
            let doc = JsonTable {
                params: JsonParams {
                    p: table.params().p(),
                    q: table.params().q(),
                },
                method: table.method().tag().to_string(),
                first_index: table.first_index(),
                values: rows.into_iter().map(|r| r.value).collect(),
            };
            out = serde_json::to_string(&doc).expect("plain data serializes");
            out.push('\n');
        }
        Format::Bfile => {
            out.push_str("# Schreier-Fibonacci counts\n");
            let _ = writeln!(out, "# params: {}", table.params());
            let _ = writeln!(out, "# method: {}", table.method());
            for r in &rows {
                let _ = writeln!(out, "{} {}", r.n, r.value);
            }
        }
    }
    out
}

fn parse_params(text: &str) -> Result<FamilyParams, CliError> {
    let mut p = None;
    let mut q = None;
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("bad params field {field:?}")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| CliError::Parse(format!("bad number in {field:?}")))?;
        match key {
            "p" => p = Some(value),
            "q" => q = Some(value),
            _ => return Err(CliError::Parse(format!("unknown params key {key:?}"))),
        }
    }
    let p = p.ok_or_else(|| CliError::Parse("params header lacks p".into()))?;
    Ok(FamilyParams::new(p, q)?)
}

/// Reads a b-file produced by [`render`] back into a table.
pub fn parse_bfile(text: &str) -> Result<SequenceTable, CliError> {
    let mut params = None;
    let mut method = None;
    let mut first_index = None;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("params:") {
                params = Some(parse_params(rest)?);
            } else if let Some(rest) = comment.strip_prefix("method:") {
                method = Some(Method::from_str(rest.trim())?);
            }
            continue;
        }
        let bad = || CliError::Parse(format!("line {}: expected \"n value\"", lineno + 1));
        let (n, value) = line.split_once(' ').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        let value: BigUint = value.trim().parse().map_err(|_| bad())?;
        let expected = first_index.map_or(n, |first: u32| first + values.len() as u32);
        if n != expected {
            return Err(CliError::Parse(format!(
                "line {}: index {n} out of order (expected {expected})",
                lineno + 1
            )));
        }
        first_index.get_or_insert(n);
        values.push(value);
    }
    let params = params.ok_or_else(|| CliError::Parse("missing params header".into()))?;
    let method = method.ok_or_else(|| CliError::Parse("missing method header".into()))?;
    let first_index = first_index.ok_or_else(|| CliError::Parse("no terms".into()))?;
    Ok(SequenceTable::new(params, first_index, values, method)?)
}
