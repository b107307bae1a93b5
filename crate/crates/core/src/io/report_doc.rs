use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::claims::{ClaimId, ClaimReport, ClaimResult, ReportStatus, SkippedClaim};
use crate::io::FamilyDocument;
use crate::machinery::BoundTrace;
use crate::setsys::{Family, PreconditionReport, ReductionLog};

pub const REPORT_SCHEMA: &str = "iclab.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyBlock {
    pub original_n: usize,
    pub n: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violations {
    pub count: usize,
    pub failed: Vec<ClaimId>,
}

/// Serialized form of a [`ClaimReport`]. Field order is part of the schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    /// SHA-256 of the input family's canonical JSON form.
    pub input_digest: String,
    pub status: ReportStatus,
    pub family: FamilyBlock,
    pub reduction: Option<ReductionLog>,
    /// Reduced label → checked label (`permutation[k-1]` is the new label of `k`).
    pub permutation: Vec<usize>,
    pub frequencies: Vec<u64>,
    pub preconditions: PreconditionReport,
    pub trace: Option<BoundTrace>,
    pub claims: Vec<ClaimResult>,
    pub skipped: Vec<SkippedClaim>,
    pub violations: Violations,
}

/// Hex SHA-256 of the family's canonical JSON (sets in ascending mask order).
pub fn input_digest(input: &Family) -> String {
    let canon = FamilyDocument::from_family(input).to_json();
    let hash = Sha256::digest(canon.as_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl ReportDocument {
    pub fn new(report: &ClaimReport, input: &Family) -> Self {
        let failed: Vec<ClaimId> = report.failed().map(|c| c.claim).collect();
        ReportDocument {
            schema: REPORT_SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: input_digest(input),
            status: report.status,
            family: FamilyBlock {
                original_n: report.summary.original_n,
                n: report.summary.n,
                size: report.summary.size,
            },
            reduction: report.reduction.clone(),
            permutation: report.summary.permutation.as_slice().to_vec(),
            frequencies: report.summary.frequencies.counts.clone(),
            preconditions: report.preconditions.clone(),
            trace: report.trace.clone(),
            claims: report.claims.clone(),
            skipped: report.skipped.clone(),
            violations: Violations {
                count: failed.len(),
                failed,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = self.write_text(&mut out);
        out
    }

    fn write_text(&self, out: &mut String) -> std::fmt::Result {
        writeln!(
            out,
            "family      n={} (input n={}) |F|={}",
            self.family.n, self.family.original_n, self.family.size
        )?;
        writeln!(out, "digest      {}", self.input_digest)?;
        if let Some(red) = self.reduction.as_ref().filter(|r| !r.is_noop()) {
            writeln!(
                out,
                "reduction   {} step(s), label map {:?}",
                red.steps.len(),
                red.label_map
            )?;
        }
        writeln!(out, "numbering   {:?}", self.permutation)?;
        writeln!(out, "|F_i|       {:?}", self.frequencies)?;
        let p = &self.preconditions;
        writeln!(
            out,
            "conditions  ordered={} F_1!=F={} distinct={} empty_in_F={}",
            p.ordered, p.f1_proper, p.pairwise_distinct, p.empty_in_f
        )?;
        for fail in &p.failures {
            writeln!(out, "            - {fail}")?;
        }
        if let Some(trace) = &self.trace {
            write_trace(out, trace)?;
        }
        if !self.claims.is_empty() {
            writeln!(out, "\nclaim          verdict  details")?;
        }
        for c in &self.claims {
            let verdict = if c.holds { "holds" } else { "FAILS" };
            let shown: Vec<String> = c
                .details
                .iter()
                .map(|d| {
                    format!(
                        "i={}: {} {} {}{}",
                        d.level,
                        d.lhs,
                        d.relation,
                        d.rhs,
                        if d.holds { "" } else { " ✗" }
                    )
                })
                .collect();
            let shown = if shown.is_empty() {
                "-".to_string()
            } else {
                shown.join(", ")
            };
            writeln!(out, "{:<14} {:<8} {}", c.claim.as_str(), verdict, shown)?;
            for w in &c.witnesses {
                let sets: Vec<String> = w.sets.iter().map(|s| s.to_string()).collect();
                let level = w.level.map(|l| format!("level {l}: ")).unwrap_or_default();
                let sets = if sets.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", sets.join(" "))
                };
                writeln!(out, "{:<14} witness  {level}{}{sets}", "", w.note)?;
            }
        }
        for s in &self.skipped {
            writeln!(out, "{:<14} skipped  {}", s.claim.as_str(), s.reason)?;
        }
        writeln!(out, "\nstatus      {}", status_word(self.status))?;
        Ok(())
    }
}

fn status_word(s: ReportStatus) -> &'static str {
    match s {
        ReportStatus::Ok => "ok",
        ReportStatus::ClaimsFailed => "claims_failed",
        ReportStatus::PreconditionFailed => "precondition_failed",
        ReportStatus::Degenerate => "degenerate",
    }
}

pub fn write_trace(out: &mut String, trace: &BoundTrace) -> std::fmt::Result {
    let t: Vec<String> = trace.t.iter().map(|v| v.to_string()).collect();
    writeln!(out, "\nt           ({})", t.join(", "))?;
    for lvl in &trace.levels {
        let recs: Vec<String> = lvl
            .records
            .iter()
            .map(|r| match r.root {
                Some(j) => format!("{} root {} |H|={}", r.a, j, r.h_size),
                None => format!("{} |H|={}", r.a, r.h_size),
            })
            .collect();
        writeln!(
            out,
            "D_{:<9} {}",
            lvl.level,
            if recs.is_empty() {
                "(none)".to_string()
            } else {
                recs.join("; ")
            }
        )?;
    }
    Ok(())
}

pub fn serialize_report(report: &ClaimReport, input: &Family, format: ReportFormat) -> String {
    let doc = ReportDocument::new(report, input);
    match format {
        ReportFormat::Json => doc.to_json(),
        ReportFormat::Text => doc.to_text(),
    }
}
