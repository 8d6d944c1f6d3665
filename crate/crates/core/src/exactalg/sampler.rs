use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Deterministic random stream identified by `(seed, stream_id)`.
///
/// Backed by ChaCha8 with the stream id selecting the ChaCha stream, so the
/// output depends only on the pair and the draw position, never on the host
/// or on thread scheduling.
#[derive(Clone, Debug)]
pub struct SeededSampler {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl SeededSampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    /// Sampler whose stream id is [`stream_id`]`(task, j, trial)`.
    pub fn for_task(seed: u64, task: &str, j: u64, trial: u64) -> Self {
        Self::new(seed, stream_id(task, j, trial))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_element<F: super::Field>(&mut self, field: &F) -> F::Elem {
        field.sample(self)
    }

    /// Uniform integer in the closed range `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }
}

/// Stable 64-bit stream id for a named task: the first eight bytes of
/// SHA-256 over the task name and the little-endian `j` and `trial`.
pub fn stream_id(task: &str, j: u64, trial: u64) -> u64 {
    let mut h = Sha256::new();
    h.update((task.len() as u64).to_le_bytes());
    h.update(task.as_bytes());
    h.update(j.to_le_bytes());
    h.update(trial.to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_ids_are_pinned() {
        // frozen so that reports stay reproducible across releases
        let a = stream_id("dim_R2", 0, 0);
        assert_eq!(a, 4_875_477_064_621_306_986);
        assert_ne!(a, stream_id("dim_R2", 0, 1));
        assert_ne!(a, stream_id("dim_R2", 1, 0));
        assert_ne!(stream_id("ab", 0, 0), stream_id("a", 0, 0));
    }

    #[test]
    fn same_seed_and_stream_replay() {
        let mut a = SeededSampler::new(11, 5);
        let mut b = SeededSampler::new(11, 5);
        let xs: Vec<i64> = (0..64).map(|_| a.int_in(-1000, 1000)).collect();
        let ys: Vec<i64> = (0..64).map(|_| b.int_in(-1000, 1000)).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn distinct_streams_diverge() {
        let mut a = SeededSampler::new(11, 5);
        let mut b = SeededSampler::new(11, 6);
        let xs: Vec<u64> = (0..16).map(|_| a.below(u64::MAX)).collect();
        let ys: Vec<u64> = (0..16).map(|_| b.below(u64::MAX)).collect();
        assert_ne!(xs, ys);
    }
}
