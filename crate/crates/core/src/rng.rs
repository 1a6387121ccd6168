use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Seeded, reproducible random stream.
///
/// Backed by ChaCha8, chosen for its documented behaviour and cheap
/// independent substreams (`set_stream`); statistical quality far exceeds
/// what direction sampling needs. The same `(seed, stream)` pair always
/// yields the same draw sequence.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    /// A fresh stream with the same seed but an independent stream index.
    pub fn substream(&self, stream: u64) -> Self {
        Self::with_stream(self.seed, stream)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform draw from `[0, 1)`.
    pub fn uniform<T: Real>(&mut self) -> T {
        T::uniform_01(&mut self.rng)
    }

    /// Standard normal draw.
    pub fn standard_normal<T: Real>(&mut self) -> T {
        T::standard_normal(&mut self.rng)
    }
}

/// Draws a direction uniformly distributed on the unit sphere in `n`
/// dimensions, by normalizing a vector of independent standard normals.
pub fn sample_unit_direction<T: Real>(rng: &mut RngStream, n: usize) -> Result<Vec<T>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    loop {
        let v: Vec<T> = (0..n).map(|_| rng.standard_normal()).collect();
        let norm = v
            .iter()
            .fold(T::zero(), |acc, &x| acc + x * x)
            .sqrt();
        // A zero or non-finite norm cannot be normalized; redraw.
        if norm.is_finite() && norm > T::zero() {
            return Ok(v.into_iter().map(|x| x / norm).collect());
        }
    }
}

// Substream layout for one optimization trial. Keeping the initial position,
// the schedule coin and each beetle on separate streams makes the direction
// sequence of beetle i depend only on (seed, i), not on how many beetles run
// alongside it or on which branches earlier iterations took.
const INIT_STREAM: u64 = 0;
const COIN_STREAM: u64 = 1;
const BEETLE_STREAM_BASE: u64 = 2;

/// All random state owned by a single optimization run.
#[derive(Debug, Clone)]
pub struct TrialRng {
    seed: u64,
    init: RngStream,
    coin: RngStream,
    beetles: Vec<RngStream>,
}

impl TrialRng {
    pub fn new(seed: u64, beetle_count: usize) -> Self {
        let init = RngStream::with_stream(seed, INIT_STREAM);
        let coin = RngStream::with_stream(seed, COIN_STREAM);
        let beetles = (0..beetle_count)
            .map(|i| RngStream::with_stream(seed, BEETLE_STREAM_BASE + i as u64))
            .collect();
        Self {
            seed,
            init,
            coin,
            beetles,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform starting point in `[0, 1)^n`.
    pub fn initial_position<T: Real>(&mut self, n: usize) -> Vec<T> {
        (0..n).map(|_| self.init.uniform()).collect()
    }

    /// Uniform draw from `[0, 1)` deciding whether a schedule update goes
    /// ahead after a non-improving iteration.
    pub fn coin<T: Real>(&mut self) -> T {
        self.coin.uniform()
    }

    /// Unit direction for the given beetle index.
    pub fn direction<T: Real>(&mut self, beetle: usize, n: usize) -> Result<Vec<T>> {
        while self.beetles.len() <= beetle {
            let next = self.beetles.len() as u64;
            self.beetles
                .push(RngStream::with_stream(self.seed, BEETLE_STREAM_BASE + next));
        }
        sample_unit_direction(&mut self.beetles[beetle], n)
    }
}
