//! Reproducible random substreams.
//!
//! Every stream is keyed by a base seed plus a label tuple and seeded from a
//! SHA-256 digest of that key, so any trial can be regenerated on its own and
//! results do not depend on which worker ran which trial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub type Stream = ChaCha8Rng;

/// Key of one random substream.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub base_seed: u64,
    pub experiment: String,
    pub p: u64,
    pub n: u64,
    pub trial: u64,
    pub purpose: String,
}

impl SeedSpec {
    pub fn new(
        base_seed: u64,
        experiment: impl Into<String>,
        p: usize,
        n: usize,
        trial: usize,
        purpose: impl Into<String>,
    ) -> Self {
        SeedSpec {
            base_seed,
            experiment: experiment.into(),
            p: p as u64,
            n: n as u64,
            trial: trial as u64,
            purpose: purpose.into(),
        }
    }

    fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"ncda-stream-v1");
        h.update(self.base_seed.to_le_bytes());
        for s in [&self.experiment, &self.purpose] {
            h.update((s.len() as u64).to_le_bytes());
            h.update(s.as_bytes());
        }
        h.update(self.p.to_le_bytes());
        h.update(self.n.to_le_bytes());
        h.update(self.trial.to_le_bytes());
        h.finalize().into()
    }
}

pub fn derive_stream(seed: &SeedSpec) -> Stream {
    ChaCha8Rng::from_seed(seed.digest())
}
