//! Radical-inverse helpers for the Halton-type deterministic sweep.

/// Radical inverse of `index` in `base`; index 1 in base 2 is 0.5.
pub(super) fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut denom = 1.0;
    let mut result = 0.0;
    while index > 0 {
        denom /= base as f64;
        result += denom * (index % base) as f64;
        index /= base;
    }
    result
}

/// The first `count` primes, one Halton base per decision variable.
pub(super) fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}
