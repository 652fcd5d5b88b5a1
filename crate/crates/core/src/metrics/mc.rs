//! Chunked, counter-seeded Monte Carlo.
//!
//! The sample range is cut into fixed chunks of [`CHUNK`] draws; chunk `c`
//! uses a ChaCha8 stream `c` seeded with the run seed. Chunk statistics are
//! merged in chunk order, so the result does not depend on the thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const CHUNK: usize = 4096;

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl MCEstimate {
    /// A deterministic value dressed as an estimate (zero error).
    pub fn exact(value: f64) -> Self {
        MCEstimate {
            mean: value,
            stderr: 0.0,
            samples: 0,
            seed: 0,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        MCEstimate {
            mean: self.mean * c,
            stderr: self.stderr * c.abs(),
            ..self
        }
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Stats {
    pub n: usize,
    pub mean: f64,
    pub m2: f64,
}

impl Stats {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(self, other: Stats) -> Stats {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Stats {
            n,
            mean: self.mean + delta * other.n as f64 / n as f64,
            m2: self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64,
        }
    }

    pub fn estimate(&self, seed: u64) -> MCEstimate {
        let var = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        MCEstimate {
            mean: self.mean,
            stderr: (var.max(0.0) / self.n.max(1) as f64).sqrt(),
            samples: self.n,
            seed,
        }
    }
}

pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Estimate `E f` from `samples` draws.
pub fn estimate<F>(samples: usize, seed: u64, f: F) -> MCEstimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    estimate_many(samples, seed, 1, |rng, out| out[0] = f(rng))[0]
}

/// Estimate the means of `k` quantities that share each draw.
pub fn estimate_many<F>(samples: usize, seed: u64, k: usize, f: F) -> Vec<MCEstimate>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Vec<Stats>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c as u64);
            let len = CHUNK.min(samples - c * CHUNK);
            let mut stats = vec![Stats::default(); k];
            let mut buf = vec![0.0; k];
            for _ in 0..len {
                f(&mut rng, &mut buf);
                for (s, &x) in stats.iter_mut().zip(&buf) {
                    s.push(x);
                }
            }
            stats
        })
        .collect();
    let mut total = vec![Stats::default(); k];
    for part in parts {
        for (t, s) in total.iter_mut().zip(part) {
            *t = t.merge(s);
        }
    }
    total.iter().map(|s| s.estimate(seed)).collect()
}

/// Derive an independent seed for a labelled sub-computation.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut all = Stats::default();
        xs.iter().for_each(|&x| all.push(x));
        let (mut a, mut b) = (Stats::default(), Stats::default());
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert_eq!(m.n, all.n);
        assert!((m.mean - all.mean).abs() < 1e-12);
        assert!((m.m2 - all.m2).abs() < 1e-8);
    }

    #[test]
    fn uniform_mean_and_error() {
        let e = estimate(100_000, 3, |r| r.random::<f64>());
        assert!((e.mean - 0.5).abs() < 4.0 * e.stderr);
        assert!((e.stderr - (1.0f64 / 12.0 / 1e5).sqrt()).abs() < 1e-5);
        assert_eq!(e.samples, 100_000);
    }

    #[test]
    fn thread_count_does_not_change_bits() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate(50_000, 11, |r| r.random::<f64>().powi(3)))
        };
        let (a, b) = (run(1), run(4));
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }
}
