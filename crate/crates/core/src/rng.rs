//! Tiny deterministic PRNG (splitmix64) for randomized searches.
//!
//! Decomposition and isomorphism testing probe random endomorphisms. Results
//! must be byte-identical across runs and library versions, so the generator
//! is pinned here rather than taken from an external crate whose stream might
//! change. Quality requirements are mild: we only need well-spread residues.

#[derive(Debug, Clone)]
pub struct DetRng {
    state: u64,
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng { state: seed ^ 0x9e3779b97f4a7c15 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform residue in [0, bound); bound must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        // Modulo bias is irrelevant at field sizes < 2^31.
        self.next_u64() % bound
    }
}
