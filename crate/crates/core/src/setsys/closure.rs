use crate::error::Result;
use crate::setsys::family::{check_ground_size, MembershipIndex};
use crate::setsys::{Family, RawFamily, SubsetMask};

/// Smallest intersection-closed superfamily of `input`.
pub fn intersection_closure(input: &RawFamily) -> Result<Family> {
    check_ground_size(input.n())?;
    Ok(close_sets(input.n(), input.sets().iter().copied()))
}

pub(crate) fn close_sets(n: usize, seeds: impl IntoIterator<Item = SubsetMask>) -> Family {
    let mut index = MembershipIndex::for_ground_size(n);
    let mut sets: Vec<SubsetMask> = Vec::new();
    for s in seeds {
        if index.insert(s) {
            sets.push(s);
        }
    }
    // every pair (j, k) with j < k is intersected exactly once
    let mut k = 0;
    while k < sets.len() {
        let s = sets[k];
        for j in 0..k {
            let x = s.intersect(sets[j]);
            if index.insert(x) {
                sets.push(x);
            }
        }
        k += 1;
    }
    Family::from_parts(n, sets, index)
}

/// Result of a closedness test; `witness` names one pair whose
/// intersection is missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosednessCheck {
    pub closed: bool,
    pub witness: Option<(SubsetMask, SubsetMask)>,
}

pub fn is_intersection_closed(input: &RawFamily) -> ClosednessCheck {
    let mut index = MembershipIndex::for_ground_size(input.n());
    for &s in input.sets() {
        index.insert(s);
    }
    let mut sets = input.sets().to_vec();
    sets.sort_unstable();
    for (k, &a) in sets.iter().enumerate() {
        for &b in &sets[k + 1..] {
            if !index.contains(a.intersect(b)) {
                return ClosednessCheck {
                    closed: false,
                    witness: Some((a, b)),
                };
            }
        }
    }
    ClosednessCheck {
        closed: true,
        witness: None,
    }
}
