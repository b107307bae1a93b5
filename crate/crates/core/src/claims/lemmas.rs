use std::collections::HashMap;

use crate::claims::{ClaimContext, ClaimId, ClaimResult, LevelDetail, Relation, Witness, LEMMA2_MATERIALIZE_LIMIT};
use crate::machinery::{common_part, ExclusionCylinder};
use crate::setsys::SubsetMask;

impl ClaimContext<'_> {
    /// Members containing `level`, grouped by their trace on `[level]`.
    fn members_by_head(&self, level: usize) -> HashMap<SubsetMask, Vec<SubsetMask>> {
        let fixed = SubsetMask::prefix(level);
        let mut groups: HashMap<SubsetMask, Vec<SubsetMask>> = HashMap::new();
        for b in self.family.iter().filter(|b| b.contains(level)) {
            groups.entry(b.intersect(fixed)).or_default().push(b);
        }
        groups
    }

    /// All extensions of a discarding set share an element above its level,
    /// and that common part closes back into the family.
    pub fn lemma1(&self) -> ClaimResult {
        let mut witnesses = Vec::new();
        let mut details = Vec::new();
        for lvl in &self.trace.levels {
            let i = lvl.level;
            let groups = self.members_by_head(i);
            let fixed = SubsetMask::prefix(i);
            let mut with_ext = 0i64;
            for r in &lvl.records {
                let head = r.a.with(i);
                let Some(members) = groups.get(&head) else { continue };
                with_ext += 1;
                let exts: Vec<SubsetMask> = members.iter().map(|b| b.minus(fixed)).collect();
                let common = common_part(&exts).expect("nonempty group");
                if common.is_empty() {
                    let pair = disjoint_pair(&exts);
                    let mut sets = vec![r.a];
                    sets.extend(pair.map_or_else(|| exts.clone(), |(x, y)| vec![x, y]));
                    let note = match pair {
                        Some(_) => "two extensions are disjoint",
                        None => "extensions pairwise intersect but share no common element",
                    };
                    witnesses.push(Witness::at(i, sets, note));
                } else if !self.family.contains(head.union(common)) {
                    witnesses.push(Witness::at(
                        i,
                        vec![r.a, common],
                        "a ∪ {i} ∪ (common part of extensions) is not a member",
                    ));
                }
            }
            details.push(LevelDetail::new(i, with_ext, Relation::Le, lvl.records.len() as i64));
        }
        ClaimResult::from_witnesses(ClaimId::Lemma1, details, witnesses)
    }

    /// Exclusion-set sizes for levels `1..n-1` equal the closed form, and
    /// no exclusion set (any level) meets the family.
    pub fn lemma2(&self) -> ClaimResult {
        let n = self.n();
        let mut details = Vec::new();
        let mut witnesses = Vec::new();
        for lvl in &self.trace.levels {
            let i = lvl.level;
            let groups = self.members_by_head(i);
            for r in &lvl.records {
                let cyl = ExclusionCylinder::new(n, i, r.a, r.root);
                if let Some(members) = groups.get(&cyl.prefix) {
                    if let Some(&hit) = members.iter().find(|&&b| cyl.contains(b)) {
                        witnesses.push(Witness::at(i, vec![r.a, hit], "exclusion set contains a member"));
                    }
                }
                if i == n {
                    continue;
                }
                let bound = match r.root {
                    None => 1i64 << (n - i),
                    Some(_) => 1i64 << (n - i - 1),
                };
                let counted = if cyl.cardinality() <= LEMMA2_MATERIALIZE_LIMIT {
                    cyl.materialize(LEMMA2_MATERIALIZE_LIMIT).expect("within limit").len() as i64
                } else {
                    1i64 << cyl.free().len()
                };
                let d = LevelDetail::new(i, counted, Relation::Eq, bound);
                if !d.holds || counted != r.h_size as i64 {
                    witnesses.push(Witness::at(
                        i,
                        vec![r.a],
                        format!("|H| = {counted}, bound {bound}, recorded {}", r.h_size),
                    ));
                }
                details.push(d);
            }
        }
        ClaimResult::from_witnesses(ClaimId::Lemma2, details, witnesses)
    }

    /// Exclusion cylinders from all levels are pairwise disjoint.
    ///
    /// Two cylinders can only meet if the lower-level prefix equals the
    /// higher-level prefix cut to the lower level, so each cylinder is
    /// tested against exactly those candidates.
    pub fn lemma3(&self) -> ClaimResult {
        let cyls = self.trace.cylinders();
        let by_key: HashMap<(usize, SubsetMask), usize> =
            cyls.iter().enumerate().map(|(k, c)| ((c.level, c.prefix), k)).collect();
        let mut witnesses = Vec::new();
        for (k, c) in cyls.iter().enumerate() {
            for j in 1..=c.level {
                let key = (j, c.prefix.intersect(SubsetMask::prefix(j)));
                let Some(&other) = by_key.get(&key) else { continue };
                if other == k {
                    continue;
                }
                if let Some(common) = c.common_member(&cyls[other]) {
                    let o = &cyls[other];
                    witnesses.push(Witness::at(
                        c.level,
                        vec![c.prefix.without(c.level), o.prefix.without(o.level), common],
                        format!("H at level {} and H at level {} share a set", c.level, o.level),
                    ));
                }
            }
        }
        let details = vec![LevelDetail::new(self.n(), witnesses.len() as i64, Relation::Eq, 0)];
        ClaimResult::from_witnesses(ClaimId::Lemma3, details, witnesses)
    }

    /// At each level whose counting hypothesis holds, `A ∈ F ⇔ A ∪ {i} ∈ F`
    /// for every `A ⊆ [i-1]`. Details record the two sides of the hypothesis.
    pub fn lemma5(&self) -> ClaimResult {
        let mut details = Vec::new();
        let mut witnesses = Vec::new();
        for lvl in &self.trace.levels {
            let i = lvl.level;
            let lhs = self.below[i] as i64 - lvl.records.len() as i64;
            let rhs = self.top[i] as i64;
            let d = LevelDetail::new(i, lhs, Relation::Eq, rhs);
            details.push(d);
            if !d.holds {
                continue;
            }
            if let Some(a) = self.equ2_violation(i) {
                let (inside, lifted) = (self.family.contains(a), self.family.contains(a.with(i)));
                witnesses.push(Witness::at(
                    i,
                    vec![a],
                    format!("hypothesis holds but A ∈ F is {inside} while A ∪ {{{i}}} ∈ F is {lifted}"),
                ));
            }
        }
        ClaimResult::from_witnesses(ClaimId::Lemma5, details, witnesses)
    }

    /// Smallest `A ⊆ [i-1]` with `A ∈ F` and `A ∪ {i} ∈ F` disagreeing.
    fn equ2_violation(&self, i: usize) -> Option<SubsetMask> {
        let below = SubsetMask::prefix(i - 1);
        let f = self.family;
        let mut worst: Option<SubsetMask> = None;
        for s in f.iter() {
            let candidate = if s.is_subset_of(below) {
                (!f.contains(s.with(i))).then_some(s)
            } else if s.max_element() == Some(i) {
                (!f.contains(s.without(i))).then(|| s.without(i))
            } else {
                None
            };
            if let Some(a) = candidate {
                worst = Some(worst.map_or(a, |w| w.min(a)));
            }
        }
        worst
    }
}

fn disjoint_pair(xs: &[SubsetMask]) -> Option<(SubsetMask, SubsetMask)> {
    xs.iter().enumerate().find_map(|(k, &x)| {
        xs[k + 1..]
            .iter()
            .find(|y| x.intersect(**y).is_empty())
            .map(|&y| (x, y))
    })
}

#[cfg(test)]
mod tests {
    use crate::claims::*;
    use crate::setsys::{Family, SubsetMask};

    fn m(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    fn fam(n: usize, sets: &[&[usize]]) -> Family {
        Family::new(n, sets.iter().map(|s| m(s)).collect()).unwrap()
    }

    fn chain() -> Family {
        fam(3, &[&[], &[1], &[1, 2], &[1, 2, 3]])
    }

    fn cube2() -> Family {
        fam(2, &[&[], &[1], &[2], &[1, 2]])
    }

    fn rooted() -> Family {
        fam(3, &[&[], &[1], &[1, 3], &[1, 2, 3]])
    }

    #[test]
    fn lemma1_examples() {
        assert!(check_lemma1(&chain()).unwrap().holds);
        assert!(check_lemma1(&cube2()).unwrap().holds);
        let f = rooted();
        assert!(check_lemma1(&f).is_err(), "unordered family is refused in strict mode");
        let r = ClaimContext::ignoring_order(&f).unwrap().lemma1();
        assert!(r.holds);
        assert_eq!(r.details[1], LevelDetail::new(2, 1, Relation::Le, 2));
    }

    #[test]
    fn lemma2_examples() {
        let r = check_lemma2(&chain()).unwrap();
        assert!(r.holds);
        assert_eq!(r.details[0], LevelDetail::new(2, 2, Relation::Eq, 2));
        let f = rooted();
        let r = ClaimContext::ignoring_order(&f).unwrap().lemma2();
        assert!(r.holds);
        assert_eq!(r.details[0], LevelDetail::new(2, 2, Relation::Eq, 2));
        assert_eq!(r.details[1], LevelDetail::new(2, 1, Relation::Eq, 1));
        let r = check_lemma2(&cube2()).unwrap();
        assert!(r.holds && r.details.is_empty());
    }

    #[test]
    fn lemma3_examples() {
        assert!(check_lemma3(&chain()).unwrap().holds);
        assert!(
            check_lemma3(&fam(3, &[&[], &[1], &[2], &[1, 2], &[1, 2, 3]]))
                .unwrap()
                .holds
        );
        assert!(check_lemma3(&cube2()).unwrap().holds);
    }

    #[test]
    fn lemma5_on_power_set_holds() {
        let r = check_lemma5(&cube2()).unwrap();
        assert!(r.holds);
        assert_eq!(r.details[1], LevelDetail::new(2, 2, Relation::Eq, 2));
    }

    #[test]
    fn lemma5_on_chain_reports_empty_set() {
        // level 2: |{∅,{1}}| - |{∅}| = 1 = |{{1,2}}|, yet ∅ ∈ F and {2} ∉ F; level 3 alike
        let r = check_lemma5(&chain()).unwrap();
        assert_eq!(r.details[1], LevelDetail::new(2, 1, Relation::Eq, 1));
        assert_eq!(r.details[2], LevelDetail::new(3, 1, Relation::Eq, 1));
        assert!(!r.holds);
        assert_eq!(r.first_failing_level(), Some(2));
        let levels: Vec<_> = r.witnesses.iter().map(|w| w.level).collect();
        assert_eq!(levels, vec![Some(2), Some(3)]);
        assert!(r.witnesses.iter().all(|w| w.sets == vec![SubsetMask::EMPTY]));
    }

    #[test]
    fn lemma5_level_one_hypothesis_always_holds() {
        // with ∅ ∈ F: |{∅}| - [{1} ∉ F] = [{1} ∈ F]
        let f = fam(2, &[&[], &[1], &[1, 2]]);
        let r = check_lemma5(&f).unwrap();
        assert!(r.details[0].holds);
        assert!(r.details[1].holds);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(
            (r.witnesses[0].level, r.witnesses[0].sets.clone()),
            (Some(2), vec![SubsetMask::EMPTY])
        );
    }
}
