use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explore::sweep::SweepSummary;

/// Resume point of an exhaustive sweep: every shard before `next_shard` is
/// folded into `partial`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub fingerprint: String,
    pub next_shard: usize,
    pub total_shards: usize,
    pub partial: SweepSummary,
}

impl Checkpoint {
    pub const VERSION: u32 = 1;

    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(path)?;
        let cp: Checkpoint =
            serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        if cp.version != Self::VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {}", cp.version)));
        }
        Ok(Some(cp))
    }

    /// Writes to a sibling temp file, then renames over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Checkpoint(e.to_string()))?;
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub(crate) fn check_matches(&self, fingerprint: &str, total_shards: usize) -> Result<()> {
        if self.fingerprint != fingerprint || self.total_shards != total_shards {
            return Err(Error::Checkpoint(format!(
                "checkpoint is for '{}' ({} shards), this run is '{fingerprint}' ({total_shards} shards)",
                self.fingerprint, self.total_shards
            )));
        }
        if self.next_shard > total_shards {
            return Err(Error::Checkpoint("resume cursor past the last shard".into()));
        }
        Ok(())
    }
}
