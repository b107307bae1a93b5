use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machinery::discard::{exclusion_size, root_of};
use crate::setsys::{Family, SubsetMask};

/// Default cap on materialized exclusion sets.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// The sets `prefix ∪ X` for `X ⊆ {level+1..n}`, optionally with
/// `forbidden ∉ X`. `prefix` fixes every coordinate in `[level]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCylinder {
    pub n: usize,
    pub level: usize,
    pub prefix: SubsetMask,
    pub forbidden: Option<usize>,
}

impl ExclusionCylinder {
    pub fn new(n: usize, level: usize, a: SubsetMask, root: Option<usize>) -> Self {
        debug_assert!(a.is_subset_of(SubsetMask::prefix(level - 1)));
        debug_assert!(root.is_none_or(|j| j > level && j <= n));
        ExclusionCylinder {
            n,
            level,
            prefix: a.with(level),
            forbidden: root,
        }
    }

    pub fn cardinality(&self) -> u64 {
        exclusion_size(self.n, self.level, self.forbidden.is_some())
    }

    /// Coordinates left free by the cylinder.
    pub fn free(&self) -> SubsetMask {
        let free = SubsetMask::range(self.level + 1, self.n);
        match self.forbidden {
            Some(j) => free.without(j),
            None => free,
        }
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        s.fits(self.n)
            && s.intersect(SubsetMask::prefix(self.level)) == self.prefix
            && self.forbidden.is_none_or(|j| !s.contains(j))
    }

    /// Every member, ascending. Fails if there are more than `budget`.
    pub fn materialize(&self, budget: u64) -> Result<Vec<SubsetMask>> {
        let size = self.cardinality();
        if size > budget {
            return Err(Error::BudgetExceeded { size, budget });
        }
        Ok(self.free().subsets().map(|x| self.prefix.union(x)).collect())
    }

    /// The smallest set in both cylinders, if they meet.
    ///
    /// Prefixes must agree on their common fixed coordinates; with that, the
    /// union of both prefixes with every free coordinate cleared avoids any
    /// forbidden element that is not forced in by the other prefix.
    pub fn common_member(&self, other: &ExclusionCylinder) -> Option<SubsetMask> {
        debug_assert_eq!(self.n, other.n);
        let overlap = SubsetMask::prefix(self.level.min(other.level));
        if self.prefix.intersect(overlap) != other.prefix.intersect(overlap) {
            return None;
        }
        let s = self.prefix.union(other.prefix);
        (self.contains(s) && other.contains(s)).then_some(s)
    }

    pub fn is_disjoint(&self, other: &ExclusionCylinder) -> bool {
        self.common_member(other).is_none()
    }
}

/// `H^a_i` as a cylinder; `a` must be discarding at `level`.
pub fn h_cylinder(f: &Family, a: SubsetMask, level: usize) -> Result<ExclusionCylinder> {
    let root = root_of(f, a, level)?;
    Ok(ExclusionCylinder::new(f.n(), level, a, root))
}

pub fn h_materialize(c: &ExclusionCylinder, budget: u64) -> Result<Vec<SubsetMask>> {
    c.materialize(budget)
}

pub fn cylinders_disjoint(c1: &ExclusionCylinder, c2: &ExclusionCylinder) -> bool {
    c1.is_disjoint(c2)
}
