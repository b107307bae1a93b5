use serde::{Deserialize, Serialize};

use crate::claims::{ClaimContext, ClaimId, ClaimResult};
use crate::error::{Error, Result};
use crate::machinery::BoundTrace;
use crate::setsys::{
    canonical_relabel, check_preconditions, element_frequencies, reduce_family, relabel_admissible, Family,
    FrequencyVector, Permutation, PreconditionReport, ReductionLog,
};

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Apply `reduce_family` before relabeling.
    pub reduce: bool,
    /// Explicit numbering (old → new, over the reduced ground set) instead
    /// of the canonical one. Must give nonincreasing frequencies.
    pub permutation: Option<Permutation>,
    pub claims: Vec<ClaimId>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            reduce: true,
            permutation: None,
            claims: ClaimId::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    /// Every checked claim holds.
    Ok,
    ClaimsFailed,
    PreconditionFailed,
    /// Empty family, or nothing left after reduction.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub original_n: usize,
    pub n: usize,
    pub size: usize,
    pub frequencies: FrequencyVector,
    /// Reduced label → checked label.
    pub permutation: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedClaim {
    pub claim: ClaimId,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct ClaimReport {
    /// The family the claims were evaluated on (reduced and relabeled).
    pub checked: Family,
    pub summary: FamilySummary,
    pub reduction: Option<ReductionLog>,
    pub preconditions: PreconditionReport,
    pub trace: Option<BoundTrace>,
    pub claims: Vec<ClaimResult>,
    pub skipped: Vec<SkippedClaim>,
    pub status: ReportStatus,
}

impl ClaimReport {
    pub fn failed(&self) -> impl Iterator<Item = &ClaimResult> {
        self.claims.iter().filter(|c| !c.holds)
    }

    pub fn claim(&self, id: ClaimId) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.claim == id)
    }
}

pub fn full_report(f: &Family) -> ClaimReport {
    full_report_with(f, &ReportOptions::default()).expect("default options never fail")
}

/// Reduce (optionally), relabel, check preconditions, trace, then every
/// requested claim in [`ClaimId::ALL`] order.
///
/// Fails only for an invalid or non-admissible explicit permutation.
pub fn full_report_with(f: &Family, opts: &ReportOptions) -> Result<ClaimReport> {
    let original_n = f.n();
    let (reduced, reduction) = if opts.reduce {
        let (g, log) = reduce_family(f);
        (g, Some(log))
    } else {
        (f.clone(), None)
    };

    let selected: Vec<ClaimId> = ClaimId::ALL.into_iter().filter(|c| opts.claims.contains(c)).collect();
    let skip_all = |reason: &str| -> Vec<SkippedClaim> {
        selected
            .iter()
            .map(|&claim| SkippedClaim {
                claim,
                reason: reason.to_string(),
            })
            .collect()
    };

    if reduced.n() == 0 || reduced.is_empty() {
        let summary = FamilySummary {
            original_n,
            n: reduced.n(),
            size: reduced.len(),
            frequencies: element_frequencies(&reduced),
            permutation: Permutation::identity(reduced.n()),
        };
        return Ok(ClaimReport {
            preconditions: check_preconditions(&reduced),
            checked: reduced,
            summary,
            reduction,
            trace: None,
            claims: Vec::new(),
            skipped: skip_all("degenerate family"),
            status: ReportStatus::Degenerate,
        });
    }

    let (checked, permutation) = match &opts.permutation {
        Some(p) => (relabel_admissible(&reduced, p)?, p.clone()),
        None => canonical_relabel(&reduced),
    };
    let preconditions = check_preconditions(&checked);
    let summary = FamilySummary {
        original_n,
        n: checked.n(),
        size: checked.len(),
        frequencies: element_frequencies(&checked),
        permutation,
    };

    if !preconditions.all_pass() {
        let reason = format!("preconditions failed: {}", preconditions.failures.join("; "));
        return Ok(ClaimReport {
            skipped: skip_all(&reason),
            checked,
            summary,
            reduction,
            preconditions,
            trace: None,
            claims: Vec::new(),
            status: ReportStatus::PreconditionFailed,
        });
    }

    let ctx = ClaimContext::new(&checked)?;
    let mut claims = Vec::new();
    let mut skipped = Vec::new();
    for claim in selected {
        match ctx.check(claim) {
            Ok(r) => claims.push(r),
            Err(Error::Precondition(reason)) | Err(Error::Degenerate(reason)) => {
                skipped.push(SkippedClaim { claim, reason })
            }
            Err(e) => return Err(e),
        }
    }
    let trace = ctx.trace().clone();
    let status = if claims.iter().all(|c| c.holds) {
        ReportStatus::Ok
    } else {
        ReportStatus::ClaimsFailed
    };
    Ok(ClaimReport {
        checked,
        summary,
        reduction,
        preconditions,
        trace: Some(trace),
        claims,
        skipped,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::SubsetMask;

    fn fam(n: usize, sets: &[&[usize]]) -> Family {
        Family::new(
            n,
            sets.iter()
                .map(|s| SubsetMask::from_elements(s.iter().copied()))
                .collect(),
        )
        .unwrap()
    }

    fn failing(r: &ClaimReport) -> Vec<ClaimId> {
        r.failed().map(|c| c.claim).collect()
    }

    #[test]
    fn chain_report() {
        let r = full_report(&fam(3, &[&[], &[1], &[1, 2], &[1, 2, 3]]));
        assert_eq!(r.status, ReportStatus::ClaimsFailed);
        assert_eq!(r.trace.as_ref().unwrap().t, vec![4, 4, 2, 0]);
        // lemma5 fails here as well (A = ∅ at levels 2 and 3)
        assert_eq!(failing(&r), vec![ClaimId::Thm1Ineq4, ClaimId::Lemma5]);
        assert_eq!(r.claim(ClaimId::Thm1Ineq4).unwrap().first_failing_level(), Some(3));
        assert_eq!(r.skipped.len(), 1);
        assert_eq!(r.skipped[0].claim, ClaimId::Equ3Chain);
    }

    #[test]
    fn power_set_report() {
        let r = full_report(&fam(2, &[&[], &[1], &[2], &[1, 2]]));
        assert_eq!(r.status, ReportStatus::Ok);
        assert_eq!(r.claims.len(), 10);
        assert!(r.skipped.is_empty());
    }

    #[test]
    fn degenerate_after_reduction() {
        let r = full_report(&fam(2, &[&[1, 2]]));
        assert_eq!(r.status, ReportStatus::Degenerate);
        assert_eq!(r.summary.n, 0);
        assert!(r.claims.is_empty());
        assert_eq!(r.skipped.len(), 10);
    }

    #[test]
    fn relabels_before_checking() {
        let r = full_report(&fam(3, &[&[], &[2], &[2, 3], &[1, 2, 3]]));
        assert_eq!(r.summary.permutation.as_slice(), &[3, 1, 2]);
        assert_eq!(r.summary.frequencies.counts, vec![3, 2, 1]);
        assert_eq!(r.trace.unwrap().t, vec![4, 4, 2, 0]);
    }

    #[test]
    fn explicit_permutation_and_no_reduce() {
        let cube = fam(2, &[&[], &[1], &[2], &[1, 2]]);
        let opts = ReportOptions {
            permutation: Some(Permutation::new(vec![2, 1]).unwrap()),
            ..Default::default()
        };
        assert_eq!(full_report_with(&cube, &opts).unwrap().status, ReportStatus::Ok);

        let chain = fam(3, &[&[], &[1], &[1, 2], &[1, 2, 3]]);
        let opts = ReportOptions {
            permutation: Some(Permutation::new(vec![3, 2, 1]).unwrap()),
            ..Default::default()
        };
        assert!(matches!(full_report_with(&chain, &opts), Err(Error::Permutation(_))));

        let twins = fam(3, &[&[], &[1, 2], &[1, 2, 3]]);
        let opts = ReportOptions {
            reduce: false,
            ..Default::default()
        };
        assert_eq!(
            full_report_with(&twins, &opts).unwrap().status,
            ReportStatus::PreconditionFailed
        );
        assert_eq!(full_report(&twins).summary.n, 2);
    }

    #[test]
    fn deterministic() {
        let f = fam(3, &[&[], &[1], &[2], &[1, 2], &[1, 2, 3]]);
        let a = full_report(&f);
        let b = full_report(&f);
        assert_eq!(a.claims, b.claims);
        assert_eq!(a.trace, b.trace);
    }
}
