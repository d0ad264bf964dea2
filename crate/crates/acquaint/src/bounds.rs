//! Closed-form bounds: the barbell counting lower bound and the 20Δn
//! upper bound certified by the contour strategy.

use serde::Serialize;

/// The counting argument on a barbell graph, evaluated over every integer
/// number of bridge crossings `k`.
///
/// A strategy of `m` rounds that lets each of the good agents cross the
/// bridge `k` times must satisfy `m + 1 >= 2k + (ceil(n/2)-k)(floor(n/2)-k)`
/// for some `k`: crossings cost 2 rounds each, and agents that never meet
/// at the bridge must pair up across it one at a time. Minimizing over `k`
/// gives `m >= n - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarbellBound {
    pub n: usize,
    /// `per_k[k] = 2k + (ceil(n/2) - k)(floor(n/2) - k)` for `k` in
    /// `0..=floor(n/2)`.
    pub per_k: Vec<usize>,
    pub min_over_k: usize,
    /// Lower bound on the number of rounds: `min_over_k - 1`, which always
    /// equals `n - 2`.
    pub lower_bound: usize,
}

/// Evaluates the barbell counting bound for `n >= 2` and asserts the
/// closed-form value `n - 2`.
pub fn barbell_lower_bound(n: usize) -> BarbellBound {
    assert!(n >= 2, "barbell bound needs n >= 2, got {n}");
    let hi = n.div_ceil(2);
    let lo = n / 2;
    let per_k: Vec<usize> = (0..=lo).map(|k| 2 * k + (hi - k) * (lo - k)).collect();
    let min_over_k = *per_k.iter().min().expect("k = 0 always present");
    let lower_bound = min_over_k - 1;
    assert_eq!(
        lower_bound,
        n - 2,
        "integer minimization must reproduce n - 2"
    );
    BarbellBound {
        n,
        per_k,
        min_over_k,
        lower_bound,
    }
}

/// The upper bound `20 * Δ * n` achieved by the contour strategy.
pub fn contour_bound(n: usize, delta: usize) -> usize {
    20 * delta * n
}
