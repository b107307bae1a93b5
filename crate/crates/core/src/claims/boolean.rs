use serde::{Deserialize, Serialize};

use crate::claims::{ClaimContext, ClaimId, ClaimResult, LevelDetail, Relation, Witness};
use crate::setsys::{Family, SubsetMask};

/// `F = { base ∪ ⋃_{s ∈ S} blocks[s] : S ⊆ [k] }` with pairwise disjoint,
/// nonempty blocks disjoint from `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BooleanDecomposition {
    pub base: SubsetMask,
    pub blocks: Vec<SubsetMask>,
}

/// Decomposes `f` as a Boolean algebra of sets, if it is one.
///
/// The base is the meet of all members; each element `e` above it spans the
/// block `cl(e) ∖ base`, where `cl(e)` is the meet of the members containing
/// `e`. The family is Boolean iff those blocks are pairwise disjoint and all
/// `2^k` unions are members with `|F| = 2^k`.
pub fn is_boolean_algebra(f: &Family) -> Option<BooleanDecomposition> {
    let base = f.meet()?;
    let top = f.iter().fold(SubsetMask::EMPTY, |acc, s| acc.union(s));
    let mut blocks: Vec<SubsetMask> = Vec::new();
    let mut covered = SubsetMask::EMPTY;
    for e in top.minus(base).elements() {
        if covered.contains(e) {
            continue;
        }
        let cl = f.iter().filter(|s| s.contains(e)).fold(top, |acc, s| acc.intersect(s));
        let block = cl.minus(base);
        if !block.intersect(covered).is_empty() {
            return None;
        }
        covered = covered.union(block);
        blocks.push(block);
    }
    let k = blocks.len();
    if k >= usize::BITS as usize || f.len() != 1usize << k {
        return None;
    }
    for pick in 0u32..(1u32 << k) {
        let s = (0..k)
            .filter(|b| pick >> b & 1 == 1)
            .fold(base, |acc, b| acc.union(blocks[b]));
        if !f.contains(s) {
            return None;
        }
    }
    Some(BooleanDecomposition { base, blocks })
}

impl ClaimContext<'_> {
    /// `2|F_n| = |F|` exactly when `F` is a Boolean algebra. The detail
    /// records `2|F_n|` against `|F|`; the verdict is whether the two sides
    /// of the equivalence agree.
    pub fn boolean_characterization(&self) -> ClaimResult {
        let n = self.n();
        let size = self.family.len() as i64;
        let d = LevelDetail::new(n, 2 * self.freq.get(n) as i64, Relation::Eq, size);
        let decomposition = is_boolean_algebra(self.family);
        let boolean = decomposition.is_some();
        let witnesses = if d.holds == boolean {
            Vec::new()
        } else {
            let note = if boolean {
                format!("Boolean algebra but 2|F_{n}| = {} != |F| = {size}", d.lhs)
            } else {
                format!("2|F_{n}| = |F| = {size} but not a Boolean algebra")
            };
            vec![Witness::at(
                n,
                self.family.iter().filter(|s| s.contains(n)).collect(),
                note,
            )]
        };
        let mut r = ClaimResult::from_witnesses(ClaimId::Cor2Boolean, vec![d], witnesses);
        r.decomposition = decomposition;
        r
    }
}
