//! Straight-from-the-definition evaluator used as a test oracle.
//!
//! Everything here works on plain `u32` masks and `Vec`s and deliberately
//! shares no code with the library: no cylinders, no prefix grouping, no
//! membership tables.

#![allow(dead_code)]

pub struct Oracle {
    pub n: usize,
    pub sets: Vec<u32>,
}

fn bit(e: usize) -> u32 {
    1 << (e - 1)
}

fn has(m: u32, e: usize) -> bool {
    m & bit(e) != 0
}

/// `{1..k}` as a mask.
fn upto(k: usize) -> u32 {
    (1..=k).fold(0, |m, e| m | bit(e))
}

/// Every subset of `mask`, by scanning all masks of the ground set.
fn subsets_of(mask: u32, n: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|x| x & !mask == 0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRecord {
    pub level: usize,
    pub a: u32,
    pub root: Option<usize>,
    pub h: Vec<u32>,
}

impl Oracle {
    pub fn new(n: usize, sets: Vec<u32>) -> Self {
        Oracle { n, sets }
    }

    pub fn member(&self, m: u32) -> bool {
        self.sets.contains(&m)
    }

    pub fn is_closed(&self) -> bool {
        self.sets.iter().all(|&a| self.sets.iter().all(|&b| self.member(a & b)))
    }

    /// F_i as a sorted list of members.
    pub fn fi(&self, i: usize) -> Vec<u32> {
        let mut v: Vec<u32> = self.sets.iter().copied().filter(|&s| has(s, i)).collect();
        v.sort_unstable();
        v
    }

    pub fn freq(&self) -> Vec<u64> {
        (1..=self.n).map(|i| self.fi(i).len() as u64).collect()
    }

    pub fn ordered(&self) -> bool {
        self.freq().windows(2).all(|w| w[0] >= w[1])
    }

    pub fn f1_proper(&self) -> bool {
        self.n >= 1 && self.fi(1).len() != self.sets.len()
    }

    pub fn pairwise_distinct(&self) -> bool {
        (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.fi(i) != self.fi(j)))
    }

    pub fn empty_in(&self) -> bool {
        self.member(0)
    }

    pub fn preconditions(&self) -> bool {
        self.ordered() && self.f1_proper() && self.pairwise_distinct() && self.empty_in()
    }

    /// A ⊆ [i-1], A ∈ F, A ∪ {i} ∉ F.
    pub fn discarding(&self, i: usize) -> Vec<u32> {
        subsets_of(upto(i - 1), self.n)
            .into_iter()
            .filter(|&a| self.member(a) && !self.member(a | bit(i)))
            .collect()
    }

    /// X ⊆ {i+1..n} with A ∪ {i} ∪ X ∈ F.
    pub fn extensions(&self, a: u32, i: usize) -> Vec<u32> {
        let above = upto(self.n) & !upto(i);
        subsets_of(above, self.n)
            .into_iter()
            .filter(|&x| self.member(a | bit(i) | x))
            .collect()
    }

    pub fn root(&self, a: u32, i: usize) -> Option<usize> {
        let ext = self.extensions(a, i);
        if ext.is_empty() {
            return None;
        }
        let common = ext.iter().fold(upto(self.n), |acc, &x| acc & x);
        (i + 1..=self.n).find(|&j| has(common, j))
    }

    /// H^A_i by its case definition.
    pub fn h(&self, a: u32, i: usize) -> Vec<u32> {
        let above = upto(self.n) & !upto(i);
        let root = self.root(a, i);
        subsets_of(above, self.n)
            .into_iter()
            .filter(|&x| root.is_none_or(|j| !has(x, j)))
            .map(|x| a | bit(i) | x)
            .collect()
    }

    pub fn records(&self, i: usize) -> Vec<OracleRecord> {
        self.discarding(i)
            .into_iter()
            .map(|a| OracleRecord {
                level: i,
                a,
                root: self.root(a, i),
                h: self.h(a, i),
            })
            .collect()
    }

    pub fn t(&self) -> Vec<i64> {
        let mut t = vec![1i64 << (self.n - 1)];
        for i in 1..=self.n {
            let removed: i64 = self.records(i).iter().map(|r| r.h.len() as i64).sum();
            t.push(t[i - 1] - removed);
        }
        t
    }

    /// |F \ (F_i ∪ ... ∪ F_n)|: members avoiding every element ≥ i.
    pub fn avoiding_from(&self, i: usize) -> i64 {
        self.sets.iter().filter(|&&s| (i..=self.n).all(|e| !has(s, e))).count() as i64
    }

    /// |F_i \ (F_{i+1} ∪ ... ∪ F_n)|.
    pub fn top_at(&self, i: usize) -> i64 {
        self.sets
            .iter()
            .filter(|&&s| has(s, i) && (i + 1..=self.n).all(|e| !has(s, e)))
            .count() as i64
    }

    /// (lhs, rhs) of t^i ≥ |F_i| for i = 1..n.
    pub fn ineq4(&self) -> Vec<(i64, i64)> {
        let t = self.t();
        (1..=self.n).map(|i| (t[i], self.fi(i).len() as i64)).collect()
    }

    /// (lhs, rhs) of 2^(n-i)|F \ (F_i ∪ ... ∪ F_n)| ≥ t^(i-1).
    pub fn ineq5(&self) -> Vec<(i64, i64)> {
        let t = self.t();
        (1..=self.n)
            .map(|i| ((1i64 << (self.n - i)) * self.avoiding_from(i), t[i - 1]))
            .collect()
    }

    pub fn frankl(&self) -> (i64, i64) {
        let n = self.n;
        (self.sets.len() as i64, (self.fi(n - 1).len() + self.fi(n).len()) as i64)
    }

    pub fn rare(&self) -> bool {
        2 * self.fi(self.n).len() <= self.sets.len()
    }

    /// lemma5: wherever the counting hypothesis holds, A ∈ F ⇔ A ∪ {i} ∈ F
    /// for every A ⊆ [i-1]. Returns the failing levels.
    pub fn lemma5_failures(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&i| self.avoiding_from(i) - self.discarding(i).len() as i64 == self.top_at(i))
            .filter(|&i| {
                subsets_of(upto(i - 1), self.n)
                    .into_iter()
                    .any(|a| self.member(a) != self.member(a | bit(i)))
            })
            .collect()
    }

    /// Boolean algebra: the atoms (minimal members above the meet) overlap only
    /// in the meet, unions of members are members, and |F| = 2^(#atoms).
    pub fn is_boolean(&self) -> bool {
        if self.sets.is_empty() {
            return false;
        }
        let base = self.sets.iter().fold(u32::MAX, |acc, &s| acc & s);
        let atoms: Vec<u32> = self
            .sets
            .iter()
            .copied()
            .filter(|&s| s != base)
            .filter(|&s| !self.sets.iter().any(|&t| t != base && t != s && t & !s == 0))
            .collect();
        let disjoint = atoms
            .iter()
            .enumerate()
            .all(|(k, &x)| atoms[k + 1..].iter().all(|&y| (x & y) & !base == 0));
        let union_closed = self.sets.iter().all(|&a| self.sets.iter().all(|&b| self.member(a | b)));
        disjoint && union_closed && self.sets.len() == 1usize << atoms.len()
    }

    pub fn lemma1_ok(&self) -> bool {
        (1..=self.n).all(|i| {
            self.discarding(i).into_iter().all(|a| {
                let ext = self.extensions(a, i);
                if ext.is_empty() {
                    return true;
                }
                let pairs = ext.iter().all(|&x| ext.iter().all(|&y| x & y != 0));
                let common = ext.iter().fold(upto(self.n), |acc, &x| acc & x);
                pairs && common != 0 && self.member(a | bit(i) | common)
            })
        })
    }

    pub fn all_h(&self) -> Vec<Vec<u32>> {
        (1..=self.n).flat_map(|i| self.records(i)).map(|r| r.h).collect()
    }
}

/// All intersection-closed families on [n], by filtering all 2^(2^n) candidates.
pub fn all_closed(n: usize) -> Vec<Oracle> {
    let universe = 1u64 << n;
    (0..1u64 << universe)
        .map(|code| Oracle::new(n, (0..universe as u32).filter(|&m| code >> m & 1 == 1).collect()))
        .filter(|o| o.is_closed())
        .collect()
}
