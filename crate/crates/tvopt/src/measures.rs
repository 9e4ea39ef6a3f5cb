//! Probability vectors, zero-sum signed vectors, and payoff vectors.
//!
//! The three value types validate their invariants eagerly and are immutable
//! afterwards, so every downstream computation can rely on them:
//!
//! * [`ProbabilityVector`] — entries in `[0, 1]` summing to one,
//! * [`SignedMeasureVector`] — finite entries summing to zero (differences of
//!   probability vectors live here),
//! * [`PayoffVector`] — finite nonnegative entries.
//!
//! Sums are checked against the absolute tolerance [`MASS_TOLERANCE`]; inputs
//! that miss it are rejected, never renormalised.

use crate::{Error, Result};

/// Absolute tolerance for "sums to 1" and "sums to 0" checks.
pub const MASS_TOLERANCE: f64 = 1e-9;

fn ensure_finite(entries: &[f64]) -> Result<()> {
    if entries.is_empty() {
        return Err(Error::Empty);
    }
    for (index, &value) in entries.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value });
        }
    }
    Ok(())
}

fn ensure_same_length(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}

/// A probability vector on a finite alphabet: nonnegative entries, each at
/// most one, summing to one within [`MASS_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Validates and wraps `entries`.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        ensure_finite(&entries)?;
        for (index, &value) in entries.iter().enumerate() {
            if value < 0.0 {
                return Err(Error::Negative { index, value });
            }
            if value > 1.0 {
                return Err(Error::ExceedsOne { index, value });
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: MASS_TOLERANCE,
            });
        }
        Ok(Self(entries))
    }

    /// The uniform distribution on `n` symbols.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    /// The point mass sitting on `index` in an alphabet of `n` symbols.
    pub fn point_mass(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::LengthMismatch {
                left: n,
                right: index,
            });
        }
        let mut entries = vec![0.0; n];
        entries[index] = 1.0;
        Self::new(entries)
    }

    /// Number of symbols in the alphabet.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: construction rejects empty vectors.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The underlying masses.
    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    /// Total mass carried by the given indices.
    pub fn mass_on(&self, indices: &[usize]) -> f64 {
        indices.iter().map(|&i| self.0[i]).sum()
    }
}

impl std::ops::Index<usize> for ProbabilityVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

/// A zero-sum vector of finite reals: the difference `ν − μ` of two
/// probability vectors, or any perturbation that conserves total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMeasureVector(Vec<f64>);

impl SignedMeasureVector {
    /// Validates that `entries` are finite and sum to zero within
    /// [`MASS_TOLERANCE`].
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        ensure_finite(&entries)?;
        let sum: f64 = entries.iter().sum();
        if sum.abs() > MASS_TOLERANCE {
            return Err(Error::NotZeroSum {
                sum,
                tolerance: MASS_TOLERANCE,
            });
        }
        Ok(Self(entries))
    }

    /// The signed difference `nu − mu`.
    pub fn between(nu: &ProbabilityVector, mu: &ProbabilityVector) -> Result<Self> {
        ensure_same_length(nu.len(), mu.len())?;
        let entries = nu
            .entries()
            .iter()
            .zip(mu.entries())
            .map(|(n, m)| n - m)
            .collect();
        Self::new(entries)
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: construction rejects empty vectors.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The underlying signed entries.
    pub fn entries(&self) -> &[f64] {
        &self.0
    }
}

/// A finite nonnegative payoff (or loss) attached to each symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffVector(Vec<f64>);

impl PayoffVector {
    /// Validates that `entries` are finite and nonnegative.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        ensure_finite(&entries)?;
        for (index, &value) in entries.iter().enumerate() {
            if value < 0.0 {
                return Err(Error::Negative { index, value });
            }
        }
        Ok(Self(entries))
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: construction rejects empty vectors.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The underlying payoffs.
    pub fn entries(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Index<usize> for PayoffVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

/// The split of a signed vector into its positive and negative variations.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanDecomposition {
    /// Entrywise positive part `max(ξᵢ, 0)`.
    pub positive: Vec<f64>,
    /// Entrywise negative part `max(−ξᵢ, 0)`.
    pub negative: Vec<f64>,
    /// Total variation `α = Σᵢ |ξᵢ|`; each part carries mass `α / 2`.
    pub alpha: f64,
}

/// Total-variation distance `Σᵢ |pᵢ − qᵢ|`, ranging over `[0, 2]`.
pub fn tv_distance(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    ensure_same_length(p.len(), q.len())?;
    Ok(p.entries()
        .iter()
        .zip(q.entries())
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// Splits a zero-sum vector into positive part, negative part, and total
/// variation. The parts satisfy `ξ = ξ⁺ − ξ⁻`, `ξ⁺ᵢ ξ⁻ᵢ = 0`, and
/// `Σ ξ⁺ = Σ ξ⁻ = α / 2`.
pub fn jordan_decompose(xi: &SignedMeasureVector) -> JordanDecomposition {
    let positive: Vec<f64> = xi.entries().iter().map(|&v| v.max(0.0)).collect();
    let negative: Vec<f64> = xi.entries().iter().map(|&v| (-v).max(0.0)).collect();
    let alpha = xi.entries().iter().map(|v| v.abs()).sum();
    JordanDecomposition {
        positive,
        negative,
        alpha,
    }
}

/// Expected payoff `Σᵢ ℓᵢ pᵢ`.
pub fn expectation(ell: &PayoffVector, p: &ProbabilityVector) -> Result<f64> {
    ensure_same_length(ell.len(), p.len())?;
    Ok(ell
        .entries()
        .iter()
        .zip(p.entries())
        .map(|(l, m)| l * m)
        .sum())
}
