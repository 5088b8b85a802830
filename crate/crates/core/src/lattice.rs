//! Subset reachability over the Boolean lattice of `[n]`.

use alloc::vec;
use alloc::vec::Vec;

/// Word masks selecting the positions whose bit `i` is clear, for `i < 6`.
const LOW_HALVES: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Table answering "does some seed set lie inside `U`?" for every `U`.
///
/// Built by a subset-sum zeta transform over the OR semiring, packed 64
/// lattice points per word: `O(n * 2^n / 64)` word operations.
#[derive(Clone, Debug)]
pub struct SubsetReach {
    n: u32,
    words: Vec<u64>,
}

impl SubsetReach {
    pub fn new(n: u32, seeds: impl IntoIterator<Item = u32>) -> Self {
        assert!(n < 32, "lattice too large");
        let points = 1usize << n;
        let mut words = vec![0u64; points.div_ceil(64)];
        for s in seeds {
            debug_assert!((s as usize) < points);
            words[s as usize >> 6] |= 1 << (s & 63);
        }
        for (i, low) in LOW_HALVES.iter().enumerate().take(n.min(6) as usize) {
            for w in &mut words {
                *w |= (*w & low) << (1 << i);
            }
        }
        for j in 0..n.saturating_sub(6) {
            let stride = 1usize << j;
            for w in 0..words.len() {
                if w & stride != 0 {
                    words[w] |= words[w ^ stride];
                }
            }
        }
        SubsetReach { n, words }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Whether some seed is a subset of `u`.
    pub fn reaches(&self, u: u32) -> bool {
        self.words[u as usize >> 6] >> (u & 63) & 1 == 1
    }
}
