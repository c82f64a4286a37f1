//! Exact group-ring products as integer count vectors.
//!
//! Pair loops are split into fixed-size chunks of the left operand; each rayon
//! split accumulates its own vector and the vectors are summed, so the result
//! does not depend on the number of threads.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groups::{ElementSet, GroupHandle};

const CHUNK: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    owner: GroupHandle,
    counts: Vec<u32>,
}

impl Census {
    pub fn owner(&self) -> &GroupHandle {
        &self.owner
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    #[inline]
    pub fn get(&self, idx: u32) -> u64 {
        self.counts[idx as usize] as u64
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// SHA-256 over the counts as little-endian u64 values, hex encoded.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        for &c in &self.counts {
            h.update((c as u64).to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn add(&self, other: &Census) -> Census {
        let counts = self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect();
        Census { owner: self.owner.clone(), counts }
    }

    /// The counts as signed integers, for identities with negative coefficients.
    pub fn signed(&self) -> Vec<i64> {
        self.counts.iter().map(|&c| c as i64).collect()
    }
}

fn check_owner(g: &GroupHandle, s: &ElementSet) -> Result<()> {
    if s.owner() != g {
        return Err(Error::HandleMismatch {
            expected: g.descriptor().to_string(),
            found: s.owner().descriptor().to_string(),
        });
    }
    Ok(())
}

fn pair_counts<F>(v: usize, left: &[u32], right: &[u32], f: F) -> Vec<u32>
where
    F: Fn(u32, u32) -> Option<u32> + Sync,
{
    left.par_chunks(CHUNK)
        .fold(
            || vec![0u32; v],
            |mut acc, chunk| {
                for &a in chunk {
                    for &b in right {
                        if let Some(g) = f(a, b) {
                            acc[g as usize] += 1;
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u32; v],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// `counts[g] = #{(d1, d2) ∈ S × S : d1 ≠ d2, d1 d2^{-1} = g}`.
pub fn difference_census(g: &GroupHandle, s: &ElementSet) -> Result<Census> {
    check_owner(g, s)?;
    let members = s.to_vec();
    let inverses: Vec<u32> = members.iter().map(|&d| g.inv_idx(d)).collect();
    let mut counts = pair_counts(g.order() as usize, &members, &inverses, |a, b| Some(g.mul_idx(a, b)));
    // d1 d2^{-1} = 1 exactly when d1 = d2.
    counts[0] = 0;
    Ok(Census { owner: g.clone(), counts })
}

/// `counts[g] = #{(a, b) ∈ A × B : ab = g}`.
pub fn convolution(g: &GroupHandle, a: &ElementSet, b: &ElementSet) -> Result<Census> {
    check_owner(g, a)?;
    check_owner(g, b)?;
    let left = a.to_vec();
    let right = b.to_vec();
    let counts = pair_counts(g.order() as usize, &left, &right, |x, y| Some(g.mul_idx(x, y)));
    Ok(Census { owner: g.clone(), counts })
}

/// Runs `f` on a dedicated pool with `threads` workers, or on the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
        _ => f(),
    }
}
