use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One line of a golden count file: `n=<k> count=<v> filter=<name>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCount {
    pub n: usize,
    pub count: u64,
    pub filter: String,
}

impl fmt::Display for GoldenCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} count={} filter={}", self.n, self.count, self.filter)
    }
}

impl FromStr for GoldenCount {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, String> {
        let mut n = None;
        let mut count = None;
        let mut filter = None;
        for field in line.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| format!("bad field '{field}'"))?;
            match key {
                "n" => n = Some(value.parse().map_err(|e| format!("n: {e}"))?),
                "count" => count = Some(value.parse().map_err(|e| format!("count: {e}"))?),
                "filter" => filter = Some(value.to_string()),
                _ => return Err(format!("unknown key '{key}'")),
            }
        }
        Ok(GoldenCount {
            n: n.ok_or("missing n")?,
            count: count.ok_or("missing count")?,
            filter: filter.ok_or("missing filter")?,
        })
    }
}

/// Parses a golden file, skipping blank lines and `#` comments.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenCount>, Error> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(k, l)| l.parse().map_err(|msg| Error::Parse { line: k + 1, msg }))
        .collect()
}
