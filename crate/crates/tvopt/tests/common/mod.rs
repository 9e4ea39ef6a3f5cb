//! Shared fixtures for the integration suites: the three reference instances
//! and a deterministic random-instance generator.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tvopt::{PayoffVector, ProbabilityVector, ProblemKind};

/// Deterministic generator so every suite replays identically.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Eight symbols, payoff with three tied pairs, weights over 72.
///
/// Level sets (0-based indices):
/// argmax `{0, 1}`, argmin `{7}`, ascending middles
/// `{5, 6} @ 0.4`, `{4} @ 0.6`, `{2, 3} @ 0.8`.
pub fn eight_tied() -> (PayoffVector, ProbabilityVector) {
    let ell = PayoffVector::new(vec![1.0, 1.0, 0.8, 0.8, 0.6, 0.4, 0.4, 0.2]).unwrap();
    (ell, weights_over_72())
}

/// Eight symbols, strictly decreasing payoff, same weights as [`eight_tied`].
/// Every middle level set is a singleton.
pub fn eight_strict() -> (PayoffVector, ProbabilityVector) {
    let ell = PayoffVector::new(vec![1.0, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2]).unwrap();
    (ell, weights_over_72())
}

fn weights_over_72() -> ProbabilityVector {
    ProbabilityVector::new(
        [23.0, 13.0, 10.0, 9.0, 8.0, 4.0, 3.0, 2.0]
            .iter()
            .map(|w| w / 72.0)
            .collect(),
    )
    .unwrap()
}

/// Fifty symbols, eighteen distinct integer payoff levels from 20 down to 1.
pub fn fifty_symbols() -> (PayoffVector, ProbabilityVector) {
    let ell = PayoffVector::new(vec![
        20.0, 20.0, 20.0, 20.0, 19.0, 19.0, 19.0, 18.0, 17.0, 17.0, //
        16.0, 14.0, 14.0, 13.0, 13.0, 13.0, 13.0, 12.0, 10.0, 10.0, //
        10.0, 10.0, 10.0, 9.0, 9.0, 9.0, 8.0, 8.0, 8.0, 8.0, //
        8.0, 8.0, 8.0, 7.0, 7.0, 6.0, 5.0, 4.0, 3.0, 3.0, //
        3.0, 3.0, 3.0, 3.0, 2.0, 2.0, 2.0, 2.0, 1.0, 1.0,
    ])
    .unwrap();
    let mu = ProbabilityVector::new(vec![
        0.052, 0.002, 0.010, 0.006, 0.004, 0.038, 0.032, 0.028, 0.026, 0.008, //
        0.012, 0.010, 0.008, 0.026, 0.050, 0.044, 0.030, 0.032, 0.024, 0.010, //
        0.020, 0.030, 0.014, 0.024, 0.004, 0.006, 0.024, 0.010, 0.022, 0.012, //
        0.016, 0.042, 0.014, 0.016, 0.010, 0.024, 0.020, 0.008, 0.014, 0.032, //
        0.018, 0.012, 0.010, 0.040, 0.036, 0.018, 0.002, 0.022, 0.012, 0.016,
    ])
    .unwrap();
    (ell, mu)
}

/// The fifty-symbol level sets in ascending payoff order, argmin first and
/// argmax last (0-based indices, ascending within each set).
pub fn fifty_symbol_level_sets() -> Vec<(f64, Vec<usize>)> {
    vec![
        (1.0, vec![48, 49]),
        (2.0, vec![44, 45, 46, 47]),
        (3.0, vec![38, 39, 40, 41, 42, 43]),
        (4.0, vec![37]),
        (5.0, vec![36]),
        (6.0, vec![35]),
        (7.0, vec![33, 34]),
        (8.0, vec![26, 27, 28, 29, 30, 31, 32]),
        (9.0, vec![23, 24, 25]),
        (10.0, vec![18, 19, 20, 21, 22]),
        (12.0, vec![17]),
        (13.0, vec![13, 14, 15, 16]),
        (14.0, vec![11, 12]),
        (16.0, vec![10]),
        (17.0, vec![8, 9]),
        (18.0, vec![7]),
        (19.0, vec![4, 5, 6]),
        (20.0, vec![0, 1, 2, 3]),
    ]
}

/// Draws a random point of the probability simplex (normalised exponentials,
/// so the distribution is uniform on the simplex). With probability 0.2 one
/// coordinate is zeroed first, to exercise empty-support symbols.
pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> ProbabilityVector {
    loop {
        let mut weights: Vec<f64> = (0..n)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        if n >= 2 && rng.random_bool(0.2) {
            let victim = rng.random_range(0..n);
            weights[victim] = 0.0;
        }
        let total: f64 = weights.iter().sum();
        if total > 1e-12 {
            return ProbabilityVector::new(weights.iter().map(|w| w / total).collect())
                .expect("normalised weights form a probability vector");
        }
    }
}

/// Draws a payoff on `[0, 1]` in which roughly a fifth of the entries repeat
/// an earlier value exactly, forcing nontrivial level sets.
pub fn random_payoff(rng: &mut ChaCha8Rng, n: usize) -> PayoffVector {
    let mut values: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 && rng.random_bool(0.2) {
            let copied = values[rng.random_range(0..i)];
            values.push(copied);
        } else {
            values.push(rng.random::<f64>());
        }
    }
    PayoffVector::new(values).unwrap()
}

/// Draws a budget in the valid domain of `kind` for the given instance:
/// a radius in `[0, 2]`, a cap in `[ℓ_min, ℓ_max]`, or a floor in
/// `[E, ℓ_max]`.
pub fn random_budget(
    rng: &mut ChaCha8Rng,
    kind: ProblemKind,
    ell: &PayoffVector,
    mu: &ProbabilityVector,
) -> f64 {
    let lo = ell.entries().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ell.entries().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let nominal = tvopt::expectation(ell, mu).unwrap();
    let u = rng.random::<f64>();
    match kind {
        ProblemKind::DPlus | ProblemKind::DMinus => 2.0 * u,
        ProblemKind::RMinus => lo + u * (hi - lo),
        ProblemKind::RPlus => nominal + u * (hi - nominal).max(0.0),
    }
}

/// A reproducible batch of `(ell, mu)` instances with alphabet sizes drawn
/// from `sizes`.
pub fn random_instances(
    rng: &mut ChaCha8Rng,
    count: usize,
    sizes: core::ops::RangeInclusive<usize>,
) -> Vec<(PayoffVector, ProbabilityVector)> {
    (0..count)
        .map(|_| {
            let n = rng.random_range(sizes.clone());
            (random_payoff(rng, n), random_simplex(rng, n))
        })
        .collect()
}
