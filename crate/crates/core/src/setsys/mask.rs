use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of the ground set `{1..n}`; element `e` is bit `e - 1`.
///
/// Serializes as the ascending list of its 1-based elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The full ground set `{1..n}`.
    pub fn full(n: usize) -> Self {
        SubsetMask(low_bits(n))
    }

    /// `[k] = {1..k}`.
    pub fn prefix(k: usize) -> Self {
        SubsetMask(low_bits(k))
    }

    /// `{lo..=hi}` (empty when `lo > hi`).
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi || lo == 0 {
            return SubsetMask::EMPTY;
        }
        SubsetMask(low_bits(hi) & !low_bits(lo - 1))
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!((1..=32).contains(&e));
        SubsetMask(1 << (e - 1))
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        elems.into_iter().fold(SubsetMask::EMPTY, |m, e| m.with(e))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        (1..=32).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        SubsetMask(self.0 | (1 << (e - 1)))
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        SubsetMask(self.0 & !(1 << (e - 1)))
    }

    #[inline]
    pub fn intersect(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn minus(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// True when only elements of `{1..n}` are present.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.0 & !low_bits(n) == 0
    }

    /// Smallest element, if any.
    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order (1-based).
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

#[inline]
fn low_bits(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as usize + 1)
    }
}

/// Submask walk via `(s - universe) & universe`.
pub struct Subsets {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        let nxt = cur.wrapping_sub(self.universe) & self.universe;
        self.next = (nxt != 0).then_some(nxt);
        Some(SubsetMask(cur))
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(de)?;
        let mut m = SubsetMask::EMPTY;
        for e in elems {
            if !(1..=32).contains(&e) {
                return Err(D::Error::custom(format!("element {e} out of range")));
            }
            m = m.with(e);
        }
        Ok(m)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_bits_are_one_based() {
        let m = SubsetMask::from_elements([1, 3]);
        assert_eq!(m.bits(), 0b101);
        assert!(m.contains(1) && !m.contains(2) && m.contains(3));
        assert_eq!(m.elements().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(m.to_string(), "{1,3}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "∅");
    }

    #[test]
    fn ranges_and_prefixes() {
        assert_eq!(SubsetMask::prefix(0), SubsetMask::EMPTY);
        assert_eq!(SubsetMask::prefix(3), SubsetMask::from_elements([1, 2, 3]));
        assert_eq!(SubsetMask::range(3, 5), SubsetMask::from_elements([3, 4, 5]));
        assert_eq!(SubsetMask::range(4, 3), SubsetMask::EMPTY);
        assert_eq!(SubsetMask::full(24).len(), 24);
        assert!(SubsetMask::from_elements([2, 4]).fits(4));
        assert!(!SubsetMask::from_elements([2, 5]).fits(4));
    }

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let u = SubsetMask::from_elements([1, 3, 4]);
        let subs: Vec<_> = u.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|s| s.is_subset_of(u)));
        assert_eq!(SubsetMask::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn min_max() {
        let m = SubsetMask::from_elements([2, 7]);
        assert_eq!(m.min_element(), Some(2));
        assert_eq!(m.max_element(), Some(7));
        assert_eq!(SubsetMask::EMPTY.min_element(), None);
    }
}
