use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setsys::{element_frequencies, Family, SubsetMask};

/// Element relabeling, old label → new label, both 1-based.
/// `map[old - 1] = new`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (1..=n).collect() }
    }

    /// Validates that `map` is a bijection on `{1..map.len()}`.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v == 0 || v > n {
                return Err(Error::Permutation(format!("label {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::Permutation(format!("label {v} used twice")));
            }
        }
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// New label of `old`.
    pub fn image(&self, old: usize) -> usize {
        self.map[old - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, m: SubsetMask) -> SubsetMask {
        m.elements().fold(SubsetMask::EMPTY, |acc, e| acc.with(self.map[e - 1]))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (k, &v) in self.map.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { map: inv }
    }
}

/// Image of `f` under `perm`. Bijections preserve closedness.
pub fn relabel(f: &Family, perm: &Permutation) -> Result<Family> {
    if perm.len() != f.n() {
        return Err(Error::Permutation(format!(
            "permutation has {} entries, ground set has {}",
            perm.len(),
            f.n()
        )));
    }
    Ok(Family::from_closed_unchecked(
        f.n(),
        f.iter().map(|s| perm.apply(s)).collect(),
    ))
}

/// Relabels so frequencies are nonincreasing; ties keep their original order.
pub fn canonical_relabel(f: &Family) -> (Family, Permutation) {
    let freq = element_frequencies(f);
    let mut order: Vec<usize> = (1..=f.n()).collect();
    // stable
    order.sort_by_key(|&e| std::cmp::Reverse(freq.get(e)));
    let mut map = vec![0; f.n()];
    for (new0, &old) in order.iter().enumerate() {
        map[old - 1] = new0 + 1;
    }
    let perm = Permutation { map };
    let out = relabel(f, &perm).expect("length matches");
    (out, perm)
}

/// Applies a user-chosen relabeling, rejecting it unless the resulting
/// frequencies are nonincreasing.
pub fn relabel_admissible(f: &Family, perm: &Permutation) -> Result<Family> {
    let out = relabel(f, perm)?;
    let freq = element_frequencies(&out);
    if !freq.is_nonincreasing() {
        return Err(Error::Permutation(format!(
            "frequencies under this numbering are {:?}, not nonincreasing",
            freq.counts
        )));
    }
    Ok(out)
}
