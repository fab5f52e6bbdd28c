//! Shared fixtures for the benchmarks.

use mvbessel_core::{enumerate_partitions, Partition};

/// Every partition of weight at most `max_weight` with at most `n` parts,
/// paired with `n`.
pub fn budget(n: usize, max_weight: u32) -> Vec<(usize, Partition)> {
    enumerate_partitions(max_weight, n)
        .into_iter()
        .map(|l| (n, l))
        .collect()
}

pub fn partition(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("benchmark partitions are valid")
}
