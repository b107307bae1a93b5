use serde::{Deserialize, Serialize};

use crate::setsys::Family;

/// `counts[i - 1] = |F_i|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrequencyVector {
    pub counts: Vec<u64>,
}

impl FrequencyVector {
    /// `|F_i|` for a 1-based element.
    pub fn get(&self, element: usize) -> u64 {
        self.counts[element - 1]
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn element_frequencies(f: &Family) -> FrequencyVector {
    let mut counts = vec![0u64; f.n()];
    for s in f.iter() {
        for e in s.elements() {
            counts[e - 1] += 1;
        }
    }
    FrequencyVector { counts }
}
