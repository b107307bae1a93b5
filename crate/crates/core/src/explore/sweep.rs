use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::claims::{full_report_with, ClaimId, ReportOptions, ReportStatus};
use crate::error::{Error, Result};
use crate::explore::checkpoint::Checkpoint;
use crate::explore::enumerate::{default_shard_depth, enumerate_shard, shards, Filters, EXHAUSTIVE_MAX_N};
use crate::explore::random::random_closed_stream;
use crate::setsys::{check_preconditions, Family, SubsetMask};

/// Exhaustive sweeps at this n and above need `allow_large`.
pub const GUARDED_N: usize = 5;
/// Default checkpoint interval, in visited families.
pub const CHECKPOINT_EVERY: u64 = 10_000_000;
/// Samples per mining block; blocks are the unit of parallel work.
const MINE_BLOCK: u64 = 1024;

#[derive(Debug, Clone)]
pub struct CheckpointConfig {
    pub path: PathBuf,
    pub every: u64,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n: usize,
    pub filters: Filters,
    pub claims: Vec<ClaimId>,
    pub workers: usize,
    pub witness_limit: usize,
    /// Required for `n >= 5`.
    pub allow_large: bool,
    pub checkpoint: Option<CheckpointConfig>,
}

impl SweepConfig {
    pub fn new(n: usize) -> Self {
        SweepConfig {
            n,
            filters: Filters::default(),
            claims: ClaimId::ALL.to_vec(),
            workers: 1,
            witness_limit: 16,
            allow_large: false,
            checkpoint: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::GroundSetSize {
                n: 0,
                max: EXHAUSTIVE_MAX_N,
            });
        }
        if self.n > EXHAUSTIVE_MAX_N {
            return Err(Error::TooLarge {
                n: self.n,
                limit: EXHAUSTIVE_MAX_N,
                what: "exhaustive sweeps",
            });
        }
        if self.n >= GUARDED_N && !self.allow_large {
            return Err(Error::TooLarge {
                n: self.n,
                limit: GUARDED_N - 1,
                what: "exhaustive sweeps without the large-n flag",
            });
        }
        if self.workers == 0 {
            return Err(Error::Precondition("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MineConfig {
    pub n: usize,
    pub samples: u64,
    pub generators: usize,
    pub seed: u64,
    pub filters: Filters,
    pub claims: Vec<ClaimId>,
    pub workers: usize,
    pub witness_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimTally {
    pub claim: ClaimId,
    pub held: u64,
    pub failed: u64,
    pub skipped: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootStats {
    pub records: u64,
    pub rooted_records: u64,
    pub families_with_root: u64,
}

/// A family from the stream on which some claim failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepWitness {
    /// Position in the visit order (0-based, before filtering).
    pub index: u64,
    pub n: usize,
    pub sets: Vec<SubsetMask>,
    /// Characteristic-vector hex code, for `n <= 16`.
    pub code: Option<String>,
    pub failed: Vec<ClaimId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub filter: String,
    pub visited: u64,
    /// Families meeting every precondition exactly as visited.
    pub passing_preconditions_raw: u64,
    /// Families that meet them after reduction and canonical numbering.
    pub passing_preconditions_reduced: u64,
    /// Families the claims were run on.
    pub checked: u64,
    pub claims: Vec<ClaimTally>,
    pub roots: RootStats,
    pub witnesses: Vec<SweepWitness>,
}

impl SweepSummary {
    fn empty(n: usize, filters: &Filters, claims: &[ClaimId]) -> Self {
        let claims = ClaimId::ALL
            .into_iter()
            .filter(|c| claims.contains(c))
            .map(|claim| ClaimTally {
                claim,
                held: 0,
                failed: 0,
                skipped: 0,
            })
            .collect();
        SweepSummary {
            n,
            filter: filters.name().to_string(),
            claims,
            ..Default::default()
        }
    }

    pub fn tally(&self, claim: ClaimId) -> Option<&ClaimTally> {
        self.claims.iter().find(|t| t.claim == claim)
    }

    pub fn failures(&self) -> u64 {
        self.claims.iter().map(|t| t.failed).sum()
    }

    /// Appends `later`, which covers the visits right after `self`'s.
    /// Associative; witness indices are shifted into the combined order.
    pub fn absorb(&mut self, later: SweepSummary, witness_limit: usize) {
        let offset = self.visited;
        self.visited += later.visited;
        self.passing_preconditions_raw += later.passing_preconditions_raw;
        self.passing_preconditions_reduced += later.passing_preconditions_reduced;
        self.checked += later.checked;
        for (mine, theirs) in self.claims.iter_mut().zip(later.claims) {
            debug_assert_eq!(mine.claim, theirs.claim);
            mine.held += theirs.held;
            mine.failed += theirs.failed;
            mine.skipped += theirs.skipped;
        }
        self.roots.records += later.roots.records;
        self.roots.rooted_records += later.roots.rooted_records;
        self.roots.families_with_root += later.roots.families_with_root;
        for mut w in later.witnesses {
            if self.witnesses.len() >= witness_limit {
                break;
            }
            w.index += offset;
            self.witnesses.push(w);
        }
    }

    fn observe(&mut self, f: &Family, filters: &Filters, opts: &ReportOptions, witness_limit: usize) {
        let index = self.visited;
        self.visited += 1;
        let raw_ok = check_preconditions(f).all_pass();
        self.passing_preconditions_raw += u64::from(raw_ok);
        let report = full_report_with(f, opts).expect("canonical numbering is always admissible");
        let reduced_ok = !matches!(
            report.status,
            ReportStatus::Degenerate | ReportStatus::PreconditionFailed
        );
        self.passing_preconditions_reduced += u64::from(reduced_ok);

        let eligible = if filters.preconditions_only { raw_ok } else { reduced_ok }
            && (!filters.require_empty_set || f.contains(SubsetMask::EMPTY));
        if !eligible {
            return;
        }
        self.checked += 1;
        for tally in &mut self.claims {
            match report.claim(tally.claim) {
                Some(r) if r.holds => tally.held += 1,
                Some(_) => tally.failed += 1,
                None => tally.skipped += 1,
            }
        }
        if let Some(trace) = &report.trace {
            let rooted = trace.rooted_count() as u64;
            self.roots.records += trace.records().count() as u64;
            self.roots.rooted_records += rooted;
            self.roots.families_with_root += u64::from(rooted > 0);
        }
        let failed: Vec<ClaimId> = report.failed().map(|c| c.claim).collect();
        if !failed.is_empty() && self.witnesses.len() < witness_limit {
            self.witnesses.push(SweepWitness {
                index,
                n: f.n(),
                sets: f.sets().to_vec(),
                code: f.code_hex(),
                failed,
            });
        }
    }
}

fn report_options(claims: &[ClaimId]) -> ReportOptions {
    ReportOptions {
        claims: claims.to_vec(),
        ..Default::default()
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Io(e.to_string()))
}

/// Exhaustive claim sweep over every closed family on `{1..n}`.
///
/// Shards run concurrently; their partial summaries are merged in shard
/// order, so the result does not depend on the worker count.
pub fn sweep(config: &SweepConfig) -> Result<SweepSummary> {
    config.validate()?;
    let all = shards(config.n, default_shard_depth(config.n))?;
    let opts = report_options(&config.claims);
    let fingerprint = fingerprint(config);

    let mut total = SweepSummary::empty(config.n, &config.filters, &config.claims);
    let mut next = 0usize;
    if let Some(cp) = &config.checkpoint {
        if let Some(saved) = Checkpoint::load(&cp.path)? {
            saved.check_matches(&fingerprint, all.len())?;
            next = saved.next_shard;
            total = saved.partial;
        }
    }

    let pool = pool(config.workers)?;
    let chunk = (config.workers * 4).max(1);
    let mut since_checkpoint = 0u64;
    while next < all.len() {
        let end = (next + chunk).min(all.len());
        let parts: Vec<SweepSummary> = pool.install(|| {
            all[next..end]
                .par_iter()
                .map(|shard| {
                    let mut part = SweepSummary::empty(config.n, &config.filters, &config.claims);
                    // filters are applied by `observe`; the shard walk sees everything
                    enumerate_shard(shard, Filters::default(), &mut |f: &Family| {
                        part.observe(f, &config.filters, &opts, config.witness_limit)
                    });
                    part
                })
                .collect()
        });
        for part in parts {
            since_checkpoint += part.visited;
            total.absorb(part, config.witness_limit);
        }
        next = end;
        if let Some(cp) = &config.checkpoint {
            if since_checkpoint >= cp.every || next == all.len() {
                Checkpoint {
                    version: Checkpoint::VERSION,
                    fingerprint: fingerprint.clone(),
                    next_shard: next,
                    total_shards: all.len(),
                    partial: total.clone(),
                }
                .save(&cp.path)?;
                since_checkpoint = 0;
            }
        }
    }
    Ok(total)
}

fn fingerprint(config: &SweepConfig) -> String {
    let claims: Vec<&str> = config.claims.iter().map(|c| c.as_str()).collect();
    format!(
        "sweep n={} filter={} claims={} witnesses={}",
        config.n,
        config.filters.name(),
        claims.join(","),
        config.witness_limit
    )
}

/// Claim sweep over `samples` random closed families. Sample `s` is drawn
/// from stream `s` of the seed, so results are independent of the worker
/// count.
pub fn mine(config: &MineConfig) -> Result<SweepSummary> {
    if config.workers == 0 {
        return Err(Error::Precondition("worker count must be at least 1".into()));
    }
    // validates n
    random_closed_stream(config.n, 0, config.seed, 0)?;
    let opts = report_options(&config.claims);
    let blocks: Vec<(u64, u64)> = (0..config.samples)
        .step_by(MINE_BLOCK as usize)
        .map(|lo| (lo, (lo + MINE_BLOCK).min(config.samples)))
        .collect();
    let parts: Vec<SweepSummary> = pool(config.workers)?.install(|| {
        blocks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut part = SweepSummary::empty(config.n, &config.filters, &config.claims);
                for s in lo..hi {
                    let f = random_closed_stream(config.n, config.generators, config.seed, s).expect("n validated");
                    part.observe(&f, &config.filters, &opts, config.witness_limit);
                }
                part
            })
            .collect()
    });
    let mut total = SweepSummary::empty(config.n, &config.filters, &config.claims);
    for part in parts {
        total.absorb(part, config.witness_limit);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_preconditions_only_finds_ineq4_violation() {
        let mut cfg = SweepConfig::new(3);
        cfg.filters.preconditions_only = true;
        cfg.claims = vec![ClaimId::Thm1Ineq4];
        let s = sweep(&cfg).unwrap();
        assert_eq!(s.visited, 122);
        assert_eq!(s.checked, 22);
        assert!(s.tally(ClaimId::Thm1Ineq4).unwrap().failed >= 1);
        let chain = SubsetMask::from_elements([1, 2, 3]);
        assert!(s.witnesses.iter().any(|w| w.sets.len() == 4 && w.sets.contains(&chain)));
    }

    #[test]
    fn n3_lemma1_and_lemma3_never_fail() {
        let mut cfg = SweepConfig::new(3);
        cfg.claims = vec![ClaimId::Lemma1, ClaimId::Lemma3];
        let s = sweep(&cfg).unwrap();
        assert_eq!(s.failures(), 0, "{:?}", s.witnesses);
        assert!(s.checked > 0);
    }

    #[test]
    fn worker_count_does_not_change_the_summary() {
        let mut cfg = SweepConfig::new(3);
        let one = serde_json::to_string(&sweep(&cfg).unwrap()).unwrap();
        cfg.workers = 4;
        let four = serde_json::to_string(&sweep(&cfg).unwrap()).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn absorb_is_associative() {
        let cfg = MineConfig {
            n: 5,
            samples: 3000,
            generators: 4,
            seed: 7,
            filters: Filters::default(),
            claims: ClaimId::ALL.to_vec(),
            workers: 3,
            witness_limit: 5,
        };
        let whole = mine(&cfg).unwrap();
        let single = mine(&MineConfig {
            workers: 1,
            ..cfg.clone()
        })
        .unwrap();
        assert_eq!(whole, single);
        assert_eq!(whole.visited, 3000);
    }

    #[test]
    fn large_n_needs_flag() {
        assert!(matches!(sweep(&SweepConfig::new(5)), Err(Error::TooLarge { .. })));
        assert!(matches!(sweep(&SweepConfig::new(6)), Err(Error::TooLarge { .. })));
    }
}
