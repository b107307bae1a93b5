use serde::{Deserialize, Serialize};

use crate::setsys::precondition::membership_columns;
use crate::setsys::{Family, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ReductionStep {
    /// Element (original label) contained in every member.
    RemoveUniversal { element: usize },
    /// `from` occurs in exactly the same members as `into` (original labels).
    Merge { from: usize, into: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLog {
    pub original_n: usize,
    pub steps: Vec<ReductionStep>,
    /// Original label → label in the reduced family; removed elements map to
    /// `None`, merged elements to their representative's label.
    pub label_map: Vec<Option<usize>>,
}

impl ReductionLog {
    pub fn is_noop(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Deletes universal elements and merges co-occurring ones until neither
/// applies, then compacts labels to `1..=n'`.
pub fn reduce_family(f: &Family) -> (Family, ReductionLog) {
    let original_n = f.n();
    // alive[e-1]: element still present; rep[e-1]: representative (original label)
    let mut alive = vec![true; original_n];
    let mut rep: Vec<Option<usize>> = (1..=original_n).map(Some).collect();
    let mut steps = Vec::new();
    let mut cur = f.clone();
    // cur is over compacted labels; `labels[k]` is the original label of k+1
    let mut labels: Vec<usize> = (1..=original_n).collect();

    loop {
        let cols = membership_columns(&cur);
        let total = cur.len();
        let mut drop = vec![false; cur.n()];
        let mut changed = false;

        for (k, col) in cols.iter().enumerate() {
            if count_ones(col) == total {
                drop[k] = true;
                changed = true;
                let orig = labels[k];
                alive[orig - 1] = false;
                rep[orig - 1] = None;
                steps.push(ReductionStep::RemoveUniversal { element: orig });
            }
        }
        if !changed {
            for j in 0..cur.n() {
                if let Some(i) = (0..j).find(|&i| !drop[i] && cols[i] == cols[j]) {
                    drop[j] = true;
                    changed = true;
                    let (from, into) = (labels[j], labels[i]);
                    alive[from - 1] = false;
                    for r in rep.iter_mut() {
                        if *r == Some(from) {
                            *r = Some(into);
                        }
                    }
                    steps.push(ReductionStep::Merge { from, into });
                }
            }
        }
        if !changed {
            break;
        }
        let kept: Vec<usize> = (1..=cur.n()).filter(|&e| !drop[e - 1]).collect();
        let sets = cur.iter().map(|s| compress(s, &kept)).collect();
        // projections along universal or duplicated coordinates are injective
        // and commute with intersection
        cur = Family::from_closed_unchecked(kept.len(), sets);
        labels = kept.iter().map(|&e| labels[e - 1]).collect();
    }

    let new_label = |orig: usize| labels.iter().position(|&l| l == orig).map(|k| k + 1);
    let label_map = rep.iter().map(|r| r.and_then(new_label)).collect();
    debug_assert!(alive.iter().filter(|a| **a).count() == cur.n());
    (
        cur,
        ReductionLog {
            original_n,
            steps,
            label_map,
        },
    )
}

fn count_ones(col: &[u64]) -> usize {
    col.iter().map(|w| w.count_ones() as usize).sum()
}

/// Keeps the elements listed in `kept` (ascending) and renumbers them `1..`.
fn compress(s: SubsetMask, kept: &[usize]) -> SubsetMask {
    kept.iter()
        .enumerate()
        .filter(|(_, &e)| s.contains(e))
        .fold(SubsetMask::EMPTY, |acc, (k, _)| acc.with(k + 1))
}
