use serde::{Deserialize, Serialize};

use crate::setsys::{element_frequencies, Family, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionReport {
    /// `|F_1| >= |F_2| >= ... >= |F_n|`
    pub ordered: bool,
    /// `F_1 != F`
    pub f1_proper: bool,
    /// `F_i != F_j` for `i != j`
    pub pairwise_distinct: bool,
    pub empty_in_f: bool,
    pub failures: Vec<String>,
}

impl PreconditionReport {
    pub fn all_pass(&self) -> bool {
        self.ordered && self.f1_proper && self.pairwise_distinct && self.empty_in_f
    }

    /// Everything except the ordering requirement.
    pub fn pass_ignoring_order(&self) -> bool {
        self.f1_proper && self.pairwise_distinct && self.empty_in_f
    }
}

/// Per-element membership columns: bit `k` of column `i` is set iff the
/// `k`-th member contains element `i + 1`. Equal columns ⇔ `F_i = F_j`.
pub(crate) fn membership_columns(f: &Family) -> Vec<Vec<u64>> {
    let words = f.len().div_ceil(64);
    let mut cols = vec![vec![0u64; words]; f.n()];
    for (k, s) in f.iter().enumerate() {
        for e in s.elements() {
            cols[e - 1][k / 64] |= 1 << (k % 64);
        }
    }
    cols
}

pub fn check_preconditions(f: &Family) -> PreconditionReport {
    let freq = element_frequencies(f);
    let total = f.len() as u64;
    let mut failures = Vec::new();

    let ordered = freq.is_nonincreasing();
    if !ordered {
        let i = freq.counts.windows(2).position(|w| w[0] < w[1]).unwrap() + 1;
        failures.push(format!(
            "not ordered: |F_{i}| = {} < |F_{}| = {}",
            freq.get(i),
            i + 1,
            freq.get(i + 1)
        ));
    }

    let f1_proper = f.n() >= 1 && freq.get(1) != total;
    if f.n() == 0 {
        failures.push("ground set is empty".to_string());
    } else if !f1_proper {
        failures.push("F_1 = F: element 1 lies in every member".to_string());
    }

    let cols = membership_columns(f);
    let mut pairwise_distinct = true;
    'outer: for i in 0..f.n() {
        for j in i + 1..f.n() {
            if cols[i] == cols[j] {
                pairwise_distinct = false;
                failures.push(format!("F_{} = F_{}", i + 1, j + 1));
                break 'outer;
            }
        }
    }

    let empty_in_f = f.contains(SubsetMask::EMPTY);
    if !empty_in_f {
        failures.push("∅ is not a member".to_string());
    }
    // ordered + F_1 != F gives |F_i| <= |F_1| < |F| for all i, so no element
    // is universal, the meet of all members is ∅, and closedness puts it in F.
    if ordered && f1_proper && (f.meet() != Some(SubsetMask::EMPTY) || !empty_in_f) {
        failures.push(format!(
            "implication violated: ordered and F_1 != F but meet = {:?}, ∅ member = {empty_in_f}",
            f.meet()
        ));
    }

    PreconditionReport {
        ordered,
        f1_proper,
        pairwise_distinct,
        empty_in_f,
        failures,
    }
}
