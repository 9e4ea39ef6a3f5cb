//! Companion divergences (Kullback–Leibler, Hellinger) and the classical
//! two-sided bounds tying them to the total-variation distance.
//!
//! With `TV = Σ |νᵢ − μᵢ|` (range `[0, 2]`), `KL` in nats, the Hellinger
//! integral `H = Σ √(νᵢ μᵢ) ∈ [0, 1]` and the Kakutani–Hellinger distance
//! `d = √(1 − H) ∈ [0, 1]`, the report checks:
//!
//! * `pinsker`            — `TV ≤ √(2 KL)` (vacuous when `KL = +∞`),
//! * `hellinger-lower`    — `2 (1 − H) ≤ TV`,
//! * `hellinger-upper`    — `TV ≤ √(8 (1 − H))`,
//! * `hellinger-squared`  — `TV ≤ 2 √(1 − H²)`,
//! * `kh-lower`           — `2 d² ≤ TV`,
//! * `kh-upper`           — `TV ≤ √8 · d`.
//!
//! Each check reports its slack (constraint margin, nonnegative when the
//! inequality holds exactly); `holds` tolerates rounding down to
//! [`SLACK_TOLERANCE`].

use crate::measures::{tv_distance, ProbabilityVector};
use crate::Result;

/// How far below zero a bound's slack may fall before it counts as violated.
pub const SLACK_TOLERANCE: f64 = 1e-12;

/// One inequality between divergences, evaluated on a pair of measures.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    /// Stable identifier of the inequality (see module docs).
    pub name: &'static str,
    /// Whether the inequality holds up to [`SLACK_TOLERANCE`].
    pub holds: bool,
    /// Margin by which it holds: upper side minus lower side.
    pub slack: f64,
}

/// All divergences between a pair of measures plus the bound checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    /// Total-variation distance `Σ |νᵢ − μᵢ| ∈ [0, 2]`.
    pub tv: f64,
    /// Kullback–Leibler divergence `KL(ν ‖ μ)` in nats; `+∞` if `ν` has mass
    /// where `μ` has none.
    pub kl: f64,
    /// Hellinger integral `Σ √(νᵢ μᵢ) ∈ [0, 1]`.
    pub hellinger_integral: f64,
    /// Kakutani–Hellinger distance `√(1 − H) ∈ [0, 1]`.
    pub kh_distance: f64,
    /// The six inequality checks, in the order listed in the module docs.
    pub bounds: Vec<BoundCheck>,
}

/// `KL(ν ‖ μ) = Σ νᵢ ln(νᵢ / μᵢ)` in nats.
///
/// Terms with `νᵢ = 0` contribute zero; any symbol with `νᵢ > 0 = μᵢ` makes
/// the divergence `+∞`.
pub fn kl_divergence(nu: &ProbabilityVector, mu: &ProbabilityVector) -> Result<f64> {
    ensure_same_length(nu, mu)?;
    let mut sum = 0.0;
    for (&n, &m) in nu.entries().iter().zip(mu.entries()) {
        if n == 0.0 {
            continue;
        }
        if m == 0.0 {
            return Ok(f64::INFINITY);
        }
        sum += n * (n / m).ln();
    }
    Ok(sum)
}

/// Hellinger integral `H(ν, μ) = Σ √(νᵢ μᵢ)`, one when the measures agree
/// and zero when their supports are disjoint.
pub fn hellinger_integral(nu: &ProbabilityVector, mu: &ProbabilityVector) -> Result<f64> {
    ensure_same_length(nu, mu)?;
    Ok(nu
        .entries()
        .iter()
        .zip(mu.entries())
        .map(|(&n, &m)| (n * m).sqrt())
        .sum())
}

/// Kakutani–Hellinger distance `d(ν, μ) = √(1 − H(ν, μ))`, equivalently
/// `d² = ½ Σ (√νᵢ − √μᵢ)²`.
pub fn kh_distance(nu: &ProbabilityVector, mu: &ProbabilityVector) -> Result<f64> {
    let h = hellinger_integral(nu, mu)?;
    Ok((1.0 - h).max(0.0).sqrt())
}

/// Computes all divergences between `nu` and `mu` and evaluates the six
/// classical bounds.
pub fn check_bounds(nu: &ProbabilityVector, mu: &ProbabilityVector) -> Result<DivergenceReport> {
    let tv = tv_distance(nu, mu)?;
    let kl = kl_divergence(nu, mu)?;
    let h = hellinger_integral(nu, mu)?;
    let kh = kh_distance(nu, mu)?;

    let one_minus_h = (1.0 - h).max(0.0);
    let one_minus_h2 = (1.0 - h * h).max(0.0);
    let check = |name: &'static str, slack: f64| BoundCheck {
        name,
        holds: slack >= -SLACK_TOLERANCE,
        slack,
    };
    let bounds = vec![
        check("pinsker", (2.0 * kl).sqrt() - tv),
        check("hellinger-lower", tv - 2.0 * one_minus_h),
        check("hellinger-upper", (8.0 * one_minus_h).sqrt() - tv),
        check("hellinger-squared", 2.0 * one_minus_h2.sqrt() - tv),
        check("kh-lower", tv - 2.0 * kh * kh),
        check("kh-upper", 8.0_f64.sqrt() * kh - tv),
    ];

    Ok(DivergenceReport {
        tv,
        kl,
        hellinger_integral: h,
        kh_distance: kh,
        bounds,
    })
}

fn ensure_same_length(nu: &ProbabilityVector, mu: &ProbabilityVector) -> Result<()> {
    if nu.len() != mu.len() {
        return Err(crate::Error::LengthMismatch {
            left: nu.len(),
            right: mu.len(),
        });
    }
    Ok(())
}
