//! Exhaustive and random family streams, and claim sweeps over them.

mod checkpoint;
mod enumerate;
mod golden;
mod random;
mod sweep;

pub use checkpoint::Checkpoint;
pub use enumerate::{
    default_shard_depth, enumerate_closed, enumerate_shard, naive_enumerate, shards, Filters, Shard, EXHAUSTIVE_MAX_N,
    NAIVE_MAX_N,
};
pub use golden::{parse_golden, GoldenCount};
pub use random::{random_closed, random_closed_stream, random_subsets, random_subsets_stream};
pub use sweep::{
    mine, sweep, CheckpointConfig, ClaimTally, MineConfig, RootStats, SweepConfig, SweepSummary, SweepWitness,
    CHECKPOINT_EVERY, GUARDED_N,
};
