use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setsys::{Family, SubsetMask};

/// One discarding set `a` at `level`, with its root (if any) and the size
/// of the collection it excludes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscardingRecord {
    pub level: usize,
    pub a: SubsetMask,
    pub root: Option<usize>,
    pub h_size: u64,
}

/// `2^(n-i)` without a root, `2^(n-i-1)` with one.
pub fn exclusion_size(n: usize, level: usize, rooted: bool) -> u64 {
    let fixed = level + usize::from(rooted);
    assert!(fixed <= n, "no free coordinates left at level {level} of {n}");
    1u64 << (n - fixed)
}

pub(crate) fn check_level(f: &Family, level: usize) -> Result<()> {
    if level == 0 || level > f.n() {
        return Err(Error::LevelOutOfRange { level, n: f.n() });
    }
    Ok(())
}

/// `{A ∈ F : A ⊆ [i-1], A ∪ {i} ∉ F}` in ascending mask order.
pub fn discarding_sets(f: &Family, level: usize) -> Result<Vec<SubsetMask>> {
    check_level(f, level)?;
    let below = SubsetMask::prefix(level - 1);
    let up = f.iter().take_while(|s| s.bits() <= below.bits());
    Ok(up
        .filter(|a| a.is_subset_of(below) && !f.contains(a.with(level)))
        .collect())
}

/// `{X ⊆ {i+1..n} : a ∪ {i} ∪ X ∈ F}` in ascending order.
pub fn extensions(f: &Family, a: SubsetMask, level: usize) -> Result<Vec<SubsetMask>> {
    check_level(f, level)?;
    let below = SubsetMask::prefix(level - 1);
    if !a.is_subset_of(below) {
        return Err(Error::NotPrefixSubset {
            mask: a,
            bound: level - 1,
        });
    }
    let head = a.with(level);
    let fixed = SubsetMask::prefix(level);
    Ok(f.iter()
        .filter(|b| b.intersect(fixed) == head)
        .map(|b| b.minus(fixed))
        .collect())
}

fn ensure_discarding(f: &Family, a: SubsetMask, level: usize) -> Result<()> {
    check_level(f, level)?;
    if !a.is_subset_of(SubsetMask::prefix(level - 1)) {
        return Err(Error::NotPrefixSubset {
            mask: a,
            bound: level - 1,
        });
    }
    if !f.contains(a) || f.contains(a.with(level)) {
        return Err(Error::NotDiscarding { a, level });
    }
    Ok(())
}

/// Smallest element common to every extension of the discarding set `a`,
/// or `None` when `a` has no extensions.
pub fn root_of(f: &Family, a: SubsetMask, level: usize) -> Result<Option<usize>> {
    ensure_discarding(f, a, level)?;
    let exts = extensions(f, a, level)?;
    Ok(common_part(&exts).and_then(SubsetMask::min_element))
}

/// Intersection of all masks; `None` for an empty slice.
pub(crate) fn common_part(xs: &[SubsetMask]) -> Option<SubsetMask> {
    let first = *xs.first()?;
    Some(xs.iter().fold(first, |acc, &x| acc.intersect(x)))
}

/// All discarding records at `level`. Extensions are grouped by their
/// `[i]`-prefix in one pass over the family instead of one pass per set.
pub fn level_records(f: &Family, level: usize) -> Result<Vec<DiscardingRecord>> {
    check_level(f, level)?;
    let fixed = SubsetMask::prefix(level);
    let mut common: HashMap<SubsetMask, SubsetMask> = HashMap::new();
    for b in f.iter().filter(|b| b.contains(level)) {
        let x = b.minus(fixed);
        common
            .entry(b.intersect(fixed))
            .and_modify(|c| *c = c.intersect(x))
            .or_insert(x);
    }
    let n = f.n();
    Ok(discarding_sets(f, level)?
        .into_iter()
        .map(|a| {
            let root = common.get(&a.with(level)).and_then(|c| c.min_element());
            DiscardingRecord {
                level,
                a,
                root,
                h_size: exclusion_size(n, level, root.is_some()),
            }
        })
        .collect())
}
