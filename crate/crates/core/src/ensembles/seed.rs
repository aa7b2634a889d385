use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A reproducible random stream: `master_seed` selects the ChaCha key and
/// `stream_index` the ChaCha stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        SeedSpec {
            master_seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        self.substream(0)
    }

    /// Independent generator for the `slot`-th matrix of this replicate.
    ///
    /// The key holds `master_seed` and `slot` verbatim, so distinct
    /// `(master_seed, stream_index, slot)` never share a stream.
    pub fn substream(&self, slot: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.master_seed.to_le_bytes());
        key[8..16].copy_from_slice(&slot.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream_index);
        rng
    }

    /// The seed of replicate `index` in a run.
    pub fn replicate(master_seed: u64, index: u64) -> Self {
        SeedSpec::new(master_seed, index)
    }
}
