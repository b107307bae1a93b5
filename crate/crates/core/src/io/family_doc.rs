use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, MAX_N};
use crate::setsys::{Family, RawFamily, SubsetMask};

/// External family form: 1-based elements, each set strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl FamilyDocument {
    pub fn from_masks(n: usize, sets: &[SubsetMask]) -> Self {
        FamilyDocument {
            n,
            sets: sets.iter().map(|s| s.elements().collect()).collect(),
        }
    }

    pub fn from_family(f: &Family) -> Self {
        Self::from_masks(f.n(), f.sets())
    }

    pub fn from_raw(r: &RawFamily) -> Self {
        Self::from_masks(r.n(), r.sets())
    }

    /// Validates ranges, ordering and duplicates. `lines[k]` is the source
    /// line of set `k`, for diagnostics.
    fn to_raw_with_lines(&self, lines: &[usize]) -> Result<RawFamily> {
        if !(1..=MAX_N).contains(&self.n) {
            return Err(Error::GroundSetSize { n: self.n, max: MAX_N });
        }
        let mut first_seen: HashMap<SubsetMask, usize> = HashMap::new();
        let mut masks = Vec::with_capacity(self.sets.len());
        for (k, set) in self.sets.iter().enumerate() {
            let line = lines.get(k).copied().unwrap_or(0);
            let mut mask = SubsetMask::EMPTY;
            let mut prev = 0;
            for &e in set {
                if e == 0 || e > self.n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("element {e} out of range 1..={}", self.n),
                    });
                }
                if e <= prev {
                    return Err(Error::Parse {
                        line,
                        msg: format!("elements must be strictly increasing ({prev} then {e})"),
                    });
                }
                prev = e;
                mask = mask.with(e);
            }
            if let Some(&earlier) = first_seen.get(&mask) {
                let at = if line > 0 {
                    format!("line {earlier}")
                } else {
                    format!("set #{}", earlier + 1)
                };
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate set {mask} (first at {at})"),
                });
            }
            first_seen.insert(mask, if line > 0 { line } else { k });
            masks.push(mask);
        }
        RawFamily::new(self.n, masks)
    }

    pub fn to_raw(&self) -> Result<RawFamily> {
        self.to_raw_with_lines(&[])
    }

    /// `n=<k>`, then one set per line; `-` is the empty set.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for set in &self.sets {
            if set.is_empty() {
                out.push('-');
            } else {
                let parts: Vec<String> = set.iter().map(|e| e.to_string()).collect();
                out.push_str(&parts.join(","));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// Parses either the JSON form (`{"n": k, "sets": [[...]]}`) or the text
/// form (`n=<k>` then one comma-separated set per line, `-` for ∅). Blank
/// lines and lines starting with `#` are ignored in the text form.
pub fn parse_family(input: &str) -> Result<RawFamily> {
    if input.trim_start().starts_with('{') {
        let doc: FamilyDocument = serde_json::from_str(input).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        return doc.to_raw();
    }
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line: hline,
            msg: format!("expected 'n=<k>', found '{header}'"),
        })?;
    let mut sets = Vec::new();
    let mut at = Vec::new();
    for (line, text) in lines {
        let set = if text == "-" {
            Vec::new()
        } else {
            text.split(',')
                .map(|tok| {
                    tok.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad element '{}'", tok.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        sets.push(set);
        at.push(line);
    }
    FamilyDocument { n, sets }.to_raw_with_lines(&at)
}
