use std::collections::HashSet;

use crate::error::{Error, Result, MAX_N};
use crate::setsys::SubsetMask;

/// Largest n for which membership uses a dense `2^n`-bit table.
pub const TABLE_MAX_N: usize = 20;

/// Pre-closure input: duplicate-free masks over `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFamily {
    n: usize,
    sets: Vec<SubsetMask>,
}

impl RawFamily {
    pub fn new(n: usize, sets: Vec<SubsetMask>) -> Result<Self> {
        check_ground_size(n)?;
        let mut seen = HashSet::with_capacity(sets.len());
        for &s in &sets {
            if !s.fits(n) {
                return Err(Error::MaskOutOfRange { mask: s, n });
            }
            if !seen.insert(s) {
                return Err(Error::DuplicateSet(s));
            }
        }
        Ok(RawFamily { n, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

impl From<&Family> for RawFamily {
    fn from(f: &Family) -> Self {
        RawFamily {
            n: f.n,
            sets: f.sets.clone(),
        }
    }
}

pub(crate) fn check_ground_size(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSetSize { n, max: MAX_N })
    }
}

#[derive(Debug, Clone)]
pub(crate) enum MembershipIndex {
    Table(Vec<u64>),
    Hash(HashSet<u32>),
}

impl MembershipIndex {
    pub(crate) fn for_ground_size(n: usize) -> Self {
        if n <= TABLE_MAX_N {
            MembershipIndex::Table(vec![0; (1usize << n).div_ceil(64)])
        } else {
            MembershipIndex::Hash(HashSet::new())
        }
    }

    #[inline]
    pub(crate) fn contains(&self, m: SubsetMask) -> bool {
        match self {
            MembershipIndex::Table(t) => {
                let b = m.bits() as usize;
                t.get(b / 64).is_some_and(|w| w >> (b % 64) & 1 == 1)
            }
            MembershipIndex::Hash(h) => h.contains(&m.bits()),
        }
    }

    /// Returns true when `m` was newly inserted.
    #[inline]
    pub(crate) fn insert(&mut self, m: SubsetMask) -> bool {
        match self {
            MembershipIndex::Table(t) => {
                let b = m.bits() as usize;
                let w = &mut t[b / 64];
                let bit = 1u64 << (b % 64);
                let fresh = *w & bit == 0;
                *w |= bit;
                fresh
            }
            MembershipIndex::Hash(h) => h.insert(m.bits()),
        }
    }
}

/// An intersection-closed family over `{1..n}`.
///
/// Only [`Family::new`] (which validates) and the closure/reduction
/// operations construct one, so every `Family` is closed.
#[derive(Debug, Clone)]
pub struct Family {
    n: usize,
    sets: Vec<SubsetMask>,
    index: MembershipIndex,
}

impl TryFrom<RawFamily> for Family {
    type Error = crate::error::Error;

    /// Accepts the family only if it is already intersection-closed.
    fn try_from(raw: RawFamily) -> Result<Self> {
        Family::new(raw.n, raw.sets)
    }
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sets == other.sets
    }
}

impl Eq for Family {}

impl Family {
    /// Validating constructor; `n = 0` is allowed for degenerate families.
    pub fn new(n: usize, sets: Vec<SubsetMask>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::GroundSetSize { n, max: MAX_N });
        }
        let mut index = MembershipIndex::for_ground_size(n);
        for &s in &sets {
            if !s.fits(n) {
                return Err(Error::MaskOutOfRange { mask: s, n });
            }
            if !index.insert(s) {
                return Err(Error::DuplicateSet(s));
            }
        }
        let mut sets = sets;
        sets.sort_unstable();
        for (k, &a) in sets.iter().enumerate() {
            for &b in &sets[k + 1..] {
                if !index.contains(a.intersect(b)) {
                    return Err(Error::NotClosed { a, b });
                }
            }
        }
        Ok(Family { n, sets, index })
    }

    /// Caller guarantees: masks fit `n`, no duplicates, intersection-closed.
    pub(crate) fn from_closed_unchecked(n: usize, mut sets: Vec<SubsetMask>) -> Self {
        sets.sort_unstable();
        let mut index = MembershipIndex::for_ground_size(n);
        for &s in &sets {
            let fresh = index.insert(s);
            debug_assert!(fresh, "duplicate {s}");
        }
        Family { n, sets, index }
    }

    pub(crate) fn from_parts(n: usize, sets: Vec<SubsetMask>, index: MembershipIndex) -> Self {
        let mut sets = sets;
        sets.sort_unstable();
        Family { n, sets, index }
    }

    /// The empty family over `{1..n}`.
    pub fn empty(n: usize) -> Self {
        Family::from_closed_unchecked(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Member sets in ascending mask order.
    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.sets.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    #[inline]
    pub fn contains(&self, m: SubsetMask) -> bool {
        self.index.contains(m)
    }

    /// Intersection of all members (`None` for the empty family).
    pub fn meet(&self) -> Option<SubsetMask> {
        let first = *self.sets.first()?;
        Some(self.sets.iter().fold(first, |acc, &s| acc.intersect(s)))
    }

    /// The family's `2^n`-bit characteristic vector packed into a `u64`
    /// (bit `m` set iff mask `m` is a member). Only for `n <= 6`.
    pub fn code64(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.sets.iter().fold(0u64, |c, s| c | 1 << s.bits()))
    }

    /// Inverse of [`Family::code64`]; `None` if the code is not closed.
    pub fn from_code64(n: usize, code: u64) -> Option<Self> {
        if n > 6 {
            return None;
        }
        let width = 1u32 << n;
        if width < 64 && code >> width != 0 {
            return None;
        }
        let sets = (0..width).filter(|m| code >> m & 1 == 1).map(SubsetMask).collect();
        Family::new(n, sets).ok()
    }

    /// Characteristic vector as lowercase hex, most significant digit first.
    /// At least one digit; only for `n <= 16`.
    pub fn code_hex(&self) -> Option<String> {
        if self.n > 16 {
            return None;
        }
        let bits = 1usize << self.n;
        let digits = bits.div_ceil(4);
        let mut nibbles = vec![0u8; digits];
        for s in &self.sets {
            let b = s.bits() as usize;
            nibbles[b / 4] |= 1 << (b % 4);
        }
        Some(
            nibbles
                .iter()
                .rev()
                .map(|&v| char::from_digit(v as u32, 16).unwrap())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    #[test]
    fn raw_rejects_duplicates_and_range() {
        assert!(matches!(
            RawFamily::new(2, vec![m(&[1]), m(&[1])]),
            Err(Error::DuplicateSet(_))
        ));
        assert!(matches!(
            RawFamily::new(2, vec![m(&[3])]),
            Err(Error::MaskOutOfRange { .. })
        ));
        assert!(matches!(RawFamily::new(0, vec![]), Err(Error::GroundSetSize { .. })));
        assert!(matches!(RawFamily::new(25, vec![]), Err(Error::GroundSetSize { .. })));
    }

    #[test]
    fn family_validates_closedness() {
        let err = Family::new(3, vec![m(&[1, 2]), m(&[2, 3])]).unwrap_err();
        assert!(matches!(err, Error::NotClosed { .. }));
        let f = Family::new(3, vec![m(&[1, 2]), m(&[2]), m(&[2, 3])]).unwrap();
        assert_eq!(f.sets(), &[m(&[2]), m(&[1, 2]), m(&[2, 3])]);
        assert!(f.contains(m(&[2])));
        assert!(!f.contains(m(&[1])));
    }

    #[test]
    fn hash_index_beyond_table_limit() {
        let f = Family::new(22, vec![m(&[22]), SubsetMask::EMPTY]).unwrap();
        assert!(matches!(f.index, MembershipIndex::Hash(_)));
        assert!(f.contains(m(&[22])));
        assert!(!f.contains(m(&[21])));
    }

    #[test]
    fn codes() {
        // {∅,{1},{2},{1,2}} -> bits 0..3 all set -> "f"
        let f = Family::new(2, vec![m(&[]), m(&[1]), m(&[2]), m(&[1, 2])]).unwrap();
        assert_eq!(f.code_hex().unwrap(), "f");
        assert_eq!(f.code64(), Some(0xf));
        let g = Family::new(3, vec![m(&[]), m(&[1, 2, 3])]).unwrap();
        assert_eq!(g.code_hex().unwrap(), "81");
        assert_eq!(Family::from_code64(3, 0x81).unwrap(), g);
        assert!(Family::from_code64(3, 0x06).is_none());
        assert_eq!(Family::new(0, vec![m(&[])]).unwrap().code_hex().unwrap(), "1");
    }
}
