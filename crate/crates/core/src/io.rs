//! Reading functions from JSON documents or `x,y` sample files.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::piecewise::{from_samples, Function, SampleMode};

pub fn parse_json(text: &str) -> Result<Function> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("function JSON: {e}")))
}

/// Parses `x,y` rows. A first row that does not parse as two numbers is
/// taken as a header.
pub fn parse_csv(text: &str, mode: SampleMode) -> Result<Function> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("samples CSV: {e}")))?;
        if rec.len() != 2 {
            return Err(Error::Parse(format!(
                "samples CSV row {} has {} fields, expected 2 (x,y)",
                i + 1,
                rec.len()
            )));
        }
        let x = rec[0].parse::<f64>();
        let y = rec[1].parse::<f64>();
        match (x, y) {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            _ if i == 0 => continue,
            _ => {
                return Err(Error::Parse(format!(
                    "samples CSV row {}: {:?} is not a pair of numbers",
                    i + 1,
                    rec.iter().collect::<Vec<_>>()
                )))
            }
        }
    }
    from_samples(&xs, &ys, mode)
}

/// JSON when the first non-blank character is `{`, samples otherwise.
pub fn parse_function(text: &str, mode: SampleMode) -> Result<Function> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_csv(text, mode)
    }
}

pub fn load_function(path: &Path, mode: SampleMode) -> Result<Function> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_function(&text, mode)
}

pub fn to_json(f: &Function) -> String {
    serde_json::to_string(f).expect("functions always serialize")
}
