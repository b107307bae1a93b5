use crate::claims::{ClaimContext, ClaimId, ClaimResult, LevelDetail, Relation};
use crate::error::{Error, Result};
use crate::setsys::{Family, FrequencyVector, SubsetMask};

impl ClaimContext<'_> {
    /// `t^i >= |F_i|` for every level.
    pub fn ineq4(&self) -> ClaimResult {
        let details = (1..=self.n())
            .map(|i| LevelDetail::new(i, self.trace.t[i], Relation::Ge, self.freq.get(i) as i64))
            .collect();
        ClaimResult::from_details(ClaimId::Thm1Ineq4, details)
    }

    /// `2^(n-i) · |F ∖ (F_i ∪ … ∪ F_n)| >= t^(i-1)` for every level.
    pub fn ineq5(&self) -> ClaimResult {
        let n = self.n();
        let details = (1..=n)
            .map(|i| {
                let lhs = (1i64 << (n - i)) * self.below[i] as i64;
                LevelDetail::new(i, lhs, Relation::Ge, self.trace.t[i - 1])
            })
            .collect();
        ClaimResult::from_details(ClaimId::Thm1Ineq5, details)
    }

    /// `|F| >= |F_{n-1}| + |F_n|`; needs `n >= 2`.
    pub fn frankl(&self) -> Result<ClaimResult> {
        let n = self.n();
        if n < 2 {
            return Err(Error::Precondition(format!("needs n >= 2, have n = {n}")));
        }
        let rhs = (self.freq.get(n - 1) + self.freq.get(n)) as i64;
        let d = LevelDetail::new(n, self.family.len() as i64, Relation::Ge, rhs);
        Ok(ClaimResult::from_details(ClaimId::Cor1Frankl, vec![d]))
    }

    pub fn rare_element(&self) -> Result<ClaimResult> {
        rare_element(self.family, &self.freq)
    }

    /// `2^(n-k) · |F ∖ (F_k ∪ … ∪ F_n)| = t^(k-1)` for `k = n..1`, under the
    /// premise `2|F_n| = |F|`.
    pub fn equ3(&self) -> Result<ClaimResult> {
        let n = self.n();
        let (twice, size) = (2 * self.freq.get(n), self.family.len() as u64);
        if twice != size {
            return Err(Error::Precondition(format!(
                "premise 2|F_n| = |F| not met ({twice} != {size})"
            )));
        }
        let details = (1..=n)
            .rev()
            .map(|k| {
                let lhs = (1i64 << (n - k)) * self.below[k] as i64;
                LevelDetail::new(k, lhs, Relation::Eq, self.trace.t[k - 1])
            })
            .collect();
        Ok(ClaimResult::from_details(ClaimId::Equ3Chain, details))
    }
}

/// `2 · |F_r| <= |F|` for the rarest element `r` (the last of the rarest
/// when tied, which is `n` under the canonical numbering).
pub(crate) fn rare_element(f: &Family, freq: &FrequencyVector) -> Result<ClaimResult> {
    let n = f.n();
    if n == 0 || f.is_empty() {
        return Err(Error::Degenerate("needs n >= 1 and a nonempty family".into()));
    }
    if f.len() == 1 && f.sets()[0] == SubsetMask::full(n) {
        return Err(Error::Degenerate("the family {N} has no rare element".into()));
    }
    let min = *freq.counts.iter().min().expect("n >= 1");
    let r = freq.counts.iter().rposition(|&c| c == min).unwrap() + 1;
    let d = LevelDetail::new(r, 2 * min as i64, Relation::Le, f.len() as i64);
    let mut res = ClaimResult::from_details(ClaimId::RareElement, vec![d]);
    for w in &mut res.witnesses {
        w.sets = f.iter().filter(|s| s.contains(r)).collect();
        w.note = format!("rarest element {r} lies in {min} of {} members", f.len());
    }
    Ok(res)
}
