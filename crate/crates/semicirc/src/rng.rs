//! Seeded pseudo-random number generation.
//!
//! All randomness in this crate flows through [`SplitMix64`] so that seeded
//! runs reproduce bit-for-bit across platforms and implementations. The
//! sequence is the standard splitmix64 generator:
//!
//! ```text
//! state += 0x9E37_79B9_7F4A_7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58_476D_1CE4_E5B9
//! z = (z ^ (z >> 27)) * 0x94D0_49BB_1331_11EB
//! output = z ^ (z >> 31)
//! ```
//!
//! Bounded draws use plain modulo reduction (`next_u64() % bound`); the
//! slight bias is irrelevant here, reproducibility is what matters.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound`. `bound` must be nonzero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    pub fn next_usize(&mut self, bound: usize) -> usize {
        self.next_below(bound as u64) as usize
    }

    /// Signed draw in `lo..=hi`.
    pub fn next_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + self.next_below(span) as i64
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// Seeded Fisher-Yates shuffle producing a permutation of `0..n`.
///
/// The loop runs from the top index down and swaps each position with a
/// draw at or below it: `for i in (1..n).rev() { j = rng % (i+1); swap(i, j) }`.
pub fn fisher_yates(n: usize, rng: &mut SplitMix64) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.next_usize(i + 1);
        perm.swap(i, j);
    }
    perm
}
