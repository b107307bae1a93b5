use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machinery::cylinder::ExclusionCylinder;
use crate::machinery::discard::{level_records, DiscardingRecord};
use crate::setsys::{check_preconditions, Family};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLevel {
    pub level: usize,
    pub records: Vec<DiscardingRecord>,
    /// Sum of `h_size` over `records`.
    pub excluded: u64,
}

/// `t[0] = 2^(n-1)`, `t[i] = t[i-1] - Σ_{A ∈ D_i} |H^A_i|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTrace {
    pub n: usize,
    /// Signed: on families far from the ordering preconditions the
    /// exclusions can exceed `2^(n-1)`.
    pub t: Vec<i64>,
    pub levels: Vec<TraceLevel>,
}

impl BoundTrace {
    pub fn records(&self) -> impl Iterator<Item = &DiscardingRecord> {
        self.levels.iter().flat_map(|l| l.records.iter())
    }

    /// Discarding sets at `level` (1-based).
    pub fn discarding(&self, level: usize) -> &[DiscardingRecord] {
        &self.levels[level - 1].records
    }

    pub fn cylinders(&self) -> Vec<ExclusionCylinder> {
        self.records()
            .map(|r| ExclusionCylinder::new(self.n, r.level, r.a, r.root))
            .collect()
    }

    pub fn rooted_count(&self) -> usize {
        self.records().filter(|r| r.root.is_some()).count()
    }

    pub fn total_excluded(&self) -> u64 {
        self.levels.iter().map(|l| l.excluded).sum()
    }
}

/// The bound trace of a family that passes every ordering precondition.
pub fn bound_trace(f: &Family) -> Result<BoundTrace> {
    let report = check_preconditions(f);
    if !report.all_pass() {
        return Err(Error::Precondition(report.failures.join("; ")));
    }
    Ok(compute_trace(f))
}

/// The same recursion with no precondition gate. Meaningful for any
/// family with `n >= 1`; the inequalities only speak about ordered ones.
pub fn compute_trace(f: &Family) -> BoundTrace {
    let n = f.n();
    assert!(n >= 1, "trace needs a nonempty ground set");
    let mut t = Vec::with_capacity(n + 1);
    t.push(1i64 << (n - 1));
    let mut levels = Vec::with_capacity(n);
    for level in 1..=n {
        let records = level_records(f, level).expect("level in range");
        let excluded: u64 = records.iter().map(|r| r.h_size).sum();
        t.push(t[level - 1] - excluded as i64);
        levels.push(TraceLevel {
            level,
            records,
            excluded,
        });
    }
    BoundTrace { n, t, levels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::SubsetMask;

    fn m(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    fn fam(n: usize, sets: &[&[usize]]) -> Family {
        Family::new(n, sets.iter().map(|s| m(s)).collect()).unwrap()
    }

    #[test]
    fn chain_trace() {
        let tr = bound_trace(&fam(3, &[&[], &[1], &[1, 2], &[1, 2, 3]])).unwrap();
        assert_eq!(tr.t, vec![4, 4, 2, 0]);
        assert!(tr.discarding(1).is_empty());
        assert_eq!(tr.discarding(2).len(), 1);
        assert_eq!(tr.discarding(2)[0].h_size, 2);
        let d3: Vec<_> = tr.discarding(3).iter().map(|r| (r.a, r.h_size)).collect();
        assert_eq!(d3, vec![(m(&[]), 1), (m(&[1]), 1)]);
    }

    #[test]
    fn power_set_trace() {
        let tr = bound_trace(&fam(2, &[&[], &[1], &[2], &[1, 2]])).unwrap();
        assert_eq!(tr.t, vec![2, 2, 2]);
        assert_eq!(tr.records().count(), 0);
    }

    #[test]
    fn chain_plus_square_trace() {
        let tr = bound_trace(&fam(3, &[&[], &[1], &[2], &[1, 2], &[1, 2, 3]])).unwrap();
        assert_eq!(tr.t, vec![4, 4, 4, 1]);
        let d3: Vec<_> = tr.discarding(3).iter().map(|r| r.a).collect();
        assert_eq!(d3, vec![m(&[]), m(&[1]), m(&[2])]);
    }

    #[test]
    fn refuses_precondition_failures() {
        assert!(matches!(
            bound_trace(&fam(2, &[&[1], &[1, 2]])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn never_rooted_at_top_level() {
        for code in 0u64..(1 << 16) {
            let Some(f) = Family::from_code64(4, code) else {
                continue;
            };
            let tr = compute_trace(&f);
            assert!(tr.discarding(4).iter().all(|r| r.root.is_none()));
            assert!(tr.t.windows(2).all(|w| w[0] >= w[1]));
            assert!(tr.total_excluded() <= 16 - f.len() as u64);
        }
    }
}
