use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setsys::{check_preconditions, Family, SubsetMask};

/// Largest n for the naive `2^(2^n)` scan.
pub const NAIVE_MAX_N: usize = 4;
/// Largest n for the pruned search.
pub const EXHAUSTIVE_MAX_N: usize = 5;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filters {
    /// Keep only families that satisfy every precondition as given.
    pub preconditions_only: bool,
    /// Keep only families containing ∅.
    pub require_empty_set: bool,
}

impl Filters {
    pub fn accepts(&self, f: &Family) -> bool {
        (!self.require_empty_set || f.contains(SubsetMask::EMPTY))
            && (!self.preconditions_only || check_preconditions(f).all_pass())
    }

    /// Name used in golden count files.
    pub fn name(&self) -> &'static str {
        match (self.preconditions_only, self.require_empty_set) {
            (false, false) => "all",
            (true, false) => "preconditions",
            (false, true) => "empty",
            (true, true) => "preconditions+empty",
        }
    }
}

fn check_n(n: usize, max: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::GroundSetSize { n, max });
    }
    if n > max {
        return Err(Error::TooLarge { n, limit: max, what });
    }
    Ok(())
}

/// Tests every subfamily of `2^[n]` for closedness. Oracle for
/// [`enumerate_closed`]; visits in increasing characteristic-vector order.
pub fn naive_enumerate(n: usize, filters: Filters, mut visit: impl FnMut(&Family)) -> Result<u64> {
    check_n(n, NAIVE_MAX_N, "the naive scan")?;
    let candidates = 1u64 << (1u32 << n);
    let mut count = 0;
    for code in 0..candidates {
        let sets: Vec<SubsetMask> = (0..1u32 << n).filter(|m| code >> m & 1 == 1).map(SubsetMask).collect();
        let Ok(f) = Family::new(n, sets) else { continue };
        if filters.accepts(&f) {
            count += 1;
            visit(&f);
        }
    }
    Ok(count)
}

/// A node of the pruned search: masks above `next` are decided.
///
/// Masks are decided from `2^n - 1` down to `0`. Since `A ∩ B` is at most
/// `min(A, B)` numerically, every intersection a choice creates is decided
/// later, where it is forced in. No branch dead-ends, so the search visits
/// each closed family exactly once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    pub n: usize,
    /// Number of masks still undecided; the next one is `remaining - 1`.
    pub remaining: u32,
    pub code: u64,
    pub forced: u64,
}

impl Shard {
    fn root(n: usize) -> Self {
        Shard {
            n,
            remaining: 1 << n,
            code: 0,
            forced: 0,
        }
    }

    fn include(&self, m: u32) -> Shard {
        let mut forced = self.forced;
        let mut rest = self.code;
        while rest != 0 {
            let t = rest.trailing_zeros();
            rest &= rest - 1;
            forced |= 1 << (m & t);
        }
        forced |= 1 << m;
        Shard {
            remaining: m,
            code: self.code | 1 << m,
            forced,
            ..*self
        }
    }

    fn exclude(&self, m: u32) -> Shard {
        Shard { remaining: m, ..*self }
    }

    /// Children in visit order: exclude before include.
    fn children(&self) -> impl Iterator<Item = Shard> {
        let m = self.remaining - 1;
        let forced = self.forced >> m & 1 == 1;
        let skip = (!forced).then(|| self.exclude(m));
        skip.into_iter().chain(std::iter::once(self.include(m)))
    }
}

/// Splits the search by the decisions on the `depth` largest masks.
/// Shards come out in visit order and partition the search space.
pub fn shards(n: usize, depth: u32) -> Result<Vec<Shard>> {
    check_n(n, EXHAUSTIVE_MAX_N, "exhaustive enumeration")?;
    let depth = depth.min(1 << n);
    let mut level = vec![Shard::root(n)];
    for _ in 0..depth {
        level = level.iter().flat_map(|s| s.children()).collect();
    }
    Ok(level)
}

/// Default shard depth for `n`: 8 for n = 5, 4 below.
pub fn default_shard_depth(n: usize) -> u32 {
    if n >= 5 {
        8
    } else {
        4
    }
}

/// Visits every closed family below `shard`; returns the number visited
/// after filtering.
pub fn enumerate_shard(shard: &Shard, filters: Filters, visit: &mut impl FnMut(&Family)) -> u64 {
    let mut stack = vec![*shard];
    let mut count = 0;
    while let Some(s) = stack.pop() {
        if s.remaining == 0 {
            let sets = bits(s.code).map(SubsetMask).collect();
            let f = Family::from_closed_unchecked(s.n, sets);
            if filters.accepts(&f) {
                count += 1;
                visit(&f);
            }
            continue;
        }
        let kids: Vec<Shard> = s.children().collect();
        // LIFO: push in reverse to pop in visit order
        stack.extend(kids.into_iter().rev());
    }
    count
}

fn bits(mut code: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        (code != 0).then(|| {
            let t = code.trailing_zeros();
            code &= code - 1;
            t
        })
    })
}

/// Pruned enumeration of every intersection-closed family over `{1..n}`.
pub fn enumerate_closed(n: usize, filters: Filters, mut visit: impl FnMut(&Family)) -> Result<u64> {
    check_n(n, EXHAUSTIVE_MAX_N, "exhaustive enumeration")?;
    Ok(enumerate_shard(&Shard::root(n), filters, &mut visit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::is_intersection_closed;

    fn codes(n: usize, filters: Filters, naive: bool) -> Vec<String> {
        let mut out = Vec::new();
        let push = |f: &Family| out.push(f.code_hex().unwrap());
        if naive {
            naive_enumerate(n, filters, push).unwrap();
        } else {
            enumerate_closed(n, filters, push).unwrap();
        }
        out.sort();
        out
    }

    #[test]
    fn small_counts() {
        assert_eq!(naive_enumerate(1, Filters::default(), |_| {}).unwrap(), 4);
        assert_eq!(naive_enumerate(2, Filters::default(), |_| {}).unwrap(), 14);
        assert_eq!(enumerate_closed(1, Filters::default(), |_| {}).unwrap(), 4);
        assert_eq!(enumerate_closed(2, Filters::default(), |_| {}).unwrap(), 14);
    }

    #[test]
    fn n1_visits_exactly_the_four_families() {
        let got = codes(1, Filters::default(), false);
        assert_eq!(got, vec!["0", "1", "2", "3"]);
    }

    #[test]
    fn pruned_matches_naive() {
        for n in 1..=3 {
            for filters in [
                Filters::default(),
                Filters {
                    preconditions_only: true,
                    require_empty_set: false,
                },
                Filters {
                    preconditions_only: false,
                    require_empty_set: true,
                },
            ] {
                assert_eq!(codes(n, filters, false), codes(n, filters, true), "n={n} {filters:?}");
            }
        }
    }

    #[test]
    fn every_visit_is_closed_and_unique() {
        let mut seen = std::collections::HashSet::new();
        enumerate_closed(4, Filters::default(), |f| {
            assert!(is_intersection_closed(&crate::setsys::RawFamily::from(f)).closed);
            assert!(seen.insert(f.code64().unwrap()));
        })
        .unwrap();
    }

    #[test]
    fn shards_partition_the_search() {
        for n in 1..=4 {
            let whole = enumerate_closed(n, Filters::default(), |_| {}).unwrap();
            for depth in [0, 1, 3, 5, 40] {
                let mut order = Vec::new();
                let total: u64 = shards(n, depth)
                    .unwrap()
                    .iter()
                    .map(|s| enumerate_shard(s, Filters::default(), &mut |f: &Family| order.push(f.code64().unwrap())))
                    .sum();
                assert_eq!(total, whole);
                let mut direct = Vec::new();
                enumerate_closed(n, Filters::default(), |f| direct.push(f.code64().unwrap())).unwrap();
                assert_eq!(order, direct, "shard order must follow visit order");
            }
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(
            naive_enumerate(5, Filters::default(), |_| {}),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            enumerate_closed(6, Filters::default(), |_| {}),
            Err(Error::TooLarge { .. })
        ));
        assert!(enumerate_closed(0, Filters::default(), |_| {}).is_err());
    }
}
