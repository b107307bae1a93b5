//! Claim checkers. Each returns a [`ClaimResult`] carrying the compared
//! quantities per level and, on failure, witnesses that can be re-checked
//! against the definitions.
//!
//! A `false` verdict is data, not an error: errors are reserved for inputs
//! the claim does not speak about (precondition or premise not met).

mod boolean;
mod lemmas;
mod report;
mod theorem;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machinery::{compute_trace, BoundTrace};
use crate::setsys::{check_preconditions, element_frequencies, Family, FrequencyVector, SubsetMask};

pub use boolean::{is_boolean_algebra, BooleanDecomposition};
pub use report::{
    full_report, full_report_with, ClaimReport, FamilySummary, ReportOptions, ReportStatus, SkippedClaim,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    Lemma1,
    Lemma2,
    Lemma3,
    Thm1Ineq4,
    Thm1Ineq5,
    Cor1Frankl,
    RareElement,
    Lemma5,
    Cor2Boolean,
    Equ3Chain,
}

impl ClaimId {
    /// Every claim, in report order.
    pub const ALL: [ClaimId; 10] = [
        ClaimId::Lemma1,
        ClaimId::Lemma2,
        ClaimId::Lemma3,
        ClaimId::Thm1Ineq4,
        ClaimId::Thm1Ineq5,
        ClaimId::Cor1Frankl,
        ClaimId::RareElement,
        ClaimId::Lemma5,
        ClaimId::Cor2Boolean,
        ClaimId::Equ3Chain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Lemma1 => "lemma1",
            ClaimId::Lemma2 => "lemma2",
            ClaimId::Lemma3 => "lemma3",
            ClaimId::Thm1Ineq4 => "thm1_ineq4",
            ClaimId::Thm1Ineq5 => "thm1_ineq5",
            ClaimId::Cor1Frankl => "cor1_frankl",
            ClaimId::RareElement => "rare_element",
            ClaimId::Lemma5 => "lemma5",
            ClaimId::Cor2Boolean => "cor2_boolean",
            ClaimId::Equ3Chain => "equ3_chain",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unknown claim '{s}'"),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
}

impl Relation {
    pub fn eval(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "==",
        })
    }
}

/// One compared pair of quantities; `holds` is `lhs relation rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDetail {
    pub level: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub relation: Relation,
    pub holds: bool,
}

impl LevelDetail {
    pub fn new(level: usize, lhs: i64, relation: Relation, rhs: i64) -> Self {
        LevelDetail {
            level,
            lhs,
            rhs,
            relation,
            holds: relation.eval(lhs, rhs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub level: Option<usize>,
    pub sets: Vec<SubsetMask>,
    pub note: String,
}

impl Witness {
    pub(crate) fn at(level: usize, sets: Vec<SubsetMask>, note: impl Into<String>) -> Self {
        Witness {
            level: Some(level),
            sets,
            note: note.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: ClaimId,
    pub holds: bool,
    pub details: Vec<LevelDetail>,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<BooleanDecomposition>,
}

impl ClaimResult {
    /// Verdict is the absence of witnesses.
    pub(crate) fn from_witnesses(claim: ClaimId, details: Vec<LevelDetail>, witnesses: Vec<Witness>) -> Self {
        ClaimResult {
            claim,
            holds: witnesses.is_empty(),
            details,
            witnesses,
            decomposition: None,
        }
    }

    /// Verdict is every detail holding; failing details become witnesses.
    pub(crate) fn from_details(claim: ClaimId, details: Vec<LevelDetail>) -> Self {
        let witnesses = details
            .iter()
            .filter(|d| !d.holds)
            .map(|d| Witness {
                level: Some(d.level),
                sets: Vec::new(),
                note: format!("{} {} {} is false", d.lhs, d.relation, d.rhs),
            })
            .collect();
        ClaimResult::from_witnesses(claim, details, witnesses)
    }

    /// First level at which the claim fails, if any.
    pub fn first_failing_level(&self) -> Option<usize> {
        self.witnesses.iter().find_map(|w| w.level)
    }
}

/// Largest exclusion set the `lemma2` check counts by materializing it;
/// bigger ones are counted from their free coordinates.
pub const LEMMA2_MATERIALIZE_LIMIT: u64 = 1 << 12;

/// Shared per-family data for the checkers.
pub struct ClaimContext<'a> {
    family: &'a Family,
    freq: FrequencyVector,
    trace: BoundTrace,
    /// `below[i] = |{A ∈ F : A ⊆ [i-1]}|` for `i` in `1..=n+1`.
    below: Vec<u64>,
    /// `top[i] = |{A ∈ F : max A = i}| = |F_i ∖ (F_{i+1} ∪ … ∪ F_n)|`.
    top: Vec<u64>,
}

impl<'a> ClaimContext<'a> {
    /// Requires every ordering precondition.
    pub fn new(family: &'a Family) -> Result<Self> {
        let pre = check_preconditions(family);
        if !pre.all_pass() {
            return Err(Error::Precondition(pre.failures.join("; ")));
        }
        Ok(Self::build(family))
    }

    /// Requires the preconditions except the frequency ordering, for
    /// inspecting claims whose statement does not depend on it.
    pub fn ignoring_order(family: &'a Family) -> Result<Self> {
        let pre = check_preconditions(family);
        if !pre.pass_ignoring_order() {
            return Err(Error::Precondition(pre.failures.join("; ")));
        }
        Ok(Self::build(family))
    }

    fn build(family: &'a Family) -> Self {
        let n = family.n();
        let mut top = vec![0u64; n + 1];
        for s in family.iter() {
            top[s.max_element().unwrap_or(0)] += 1;
        }
        let mut below = vec![0u64; n + 2];
        for i in 1..=n + 1 {
            below[i] = below[i - 1] + top[i - 1];
        }
        ClaimContext {
            family,
            freq: element_frequencies(family),
            trace: compute_trace(family),
            below,
            top,
        }
    }

    pub fn family(&self) -> &Family {
        self.family
    }

    pub fn trace(&self) -> &BoundTrace {
        &self.trace
    }

    pub fn frequencies(&self) -> &FrequencyVector {
        &self.freq
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn check(&self, claim: ClaimId) -> Result<ClaimResult> {
        match claim {
            ClaimId::Lemma1 => Ok(self.lemma1()),
            ClaimId::Lemma2 => Ok(self.lemma2()),
            ClaimId::Lemma3 => Ok(self.lemma3()),
            ClaimId::Thm1Ineq4 => Ok(self.ineq4()),
            ClaimId::Thm1Ineq5 => Ok(self.ineq5()),
            ClaimId::Cor1Frankl => self.frankl(),
            ClaimId::RareElement => self.rare_element(),
            ClaimId::Lemma5 => Ok(self.lemma5()),
            ClaimId::Cor2Boolean => Ok(self.boolean_characterization()),
            ClaimId::Equ3Chain => self.equ3(),
        }
    }
}

pub fn check_lemma1(f: &Family) -> Result<ClaimResult> {
    Ok(ClaimContext::new(f)?.lemma1())
}

pub fn check_lemma2(f: &Family) -> Result<ClaimResult> {
    Ok(ClaimContext::new(f)?.lemma2())
}

pub fn check_lemma3(f: &Family) -> Result<ClaimResult> {
    Ok(ClaimContext::new(f)?.lemma3())
}

/// Inequalities (4) and (5), in that order.
pub fn check_theorem1(f: &Family) -> Result<(ClaimResult, ClaimResult)> {
    let ctx = ClaimContext::new(f)?;
    Ok((ctx.ineq4(), ctx.ineq5()))
}

pub fn check_frankl(f: &Family) -> Result<ClaimResult> {
    ClaimContext::new(f)?.frankl()
}

pub fn check_rare_element(f: &Family) -> Result<ClaimResult> {
    theorem::rare_element(f, &element_frequencies(f))
}

pub fn check_lemma5(f: &Family) -> Result<ClaimResult> {
    Ok(ClaimContext::new(f)?.lemma5())
}

pub fn check_boolean_characterization(f: &Family) -> Result<ClaimResult> {
    Ok(ClaimContext::new(f)?.boolean_characterization())
}

pub fn check_equ3(f: &Family) -> Result<ClaimResult> {
    ClaimContext::new(f)?.equ3()
}
