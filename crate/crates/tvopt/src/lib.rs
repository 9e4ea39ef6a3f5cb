//! Closed-form extremum solvers for linear payoffs over total-variation
//! neighbourhoods on finite alphabets.
//!
//! Given a nominal probability vector `μ` on `{1, …, n}` and a nonnegative
//! payoff vector `ℓ`, four extremum problems are solved exactly:
//!
//! * `D⁺(R) = max { Σᵢ ℓᵢ νᵢ : ‖ν − μ‖_TV ≤ R }` — best payoff over a TV ball,
//! * `D⁻(R) = min { Σᵢ ℓᵢ νᵢ : ‖ν − μ‖_TV ≤ R }` — worst payoff over a TV ball,
//! * `R⁻(D) = min { ‖ν − μ‖_TV : Σᵢ ℓᵢ νᵢ ≤ D }` — cheapest move that caps the payoff,
//! * `R⁺(D)` — the inverse map of `D⁺`: the radius at which the best payoff
//!   first reaches `D`,
//!
//! where `‖ν − μ‖_TV = Σᵢ |νᵢ − μᵢ| ∈ [0, 2]`.
//!
//! Every optimum is attained by transferring probability mass between *level
//! sets* of the payoff: the argmax set gains mass while the argmin set and the
//! successive next-cheapest sets are drained (or the mirror image of that for
//! minimisation). The [`partition`] module builds the level-set ordering, the
//! [`solvers`] module applies the closed-form mass schedule, and the
//! [`oracle`] module re-solves the same problems as explicit linear programs
//! with a dense simplex method so the closed forms can be certified
//! independently. The [`metrics`] module computes companion divergences
//! (relative entropy, Hellinger integral, Kakutani–Hellinger distance) and
//! checks the standard inequalities tying them to total variation.
//!
//! # Example
//!
//! ```
//! use tvopt::{PayoffVector, ProbabilityVector, solvers};
//!
//! let ell = PayoffVector::new(vec![1.0, 0.5, 0.0])?;
//! let mu = ProbabilityVector::new(vec![0.2, 0.5, 0.3])?;
//!
//! // Best expected payoff when the true distribution may deviate from mu
//! // by at most 0.4 in total variation.
//! let best = solvers::solve_d_plus(&ell, &mu, 0.4)?;
//! assert!((best.value - 0.65).abs() < 1e-12);
//! # Ok::<(), tvopt::Error>(())
//! ```

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod measures;
pub mod metrics;
pub mod oracle;
pub mod partition;
pub mod solvers;

pub use measures::{
    expectation, jordan_decompose, tv_distance, JordanDecomposition, PayoffVector,
    ProbabilityVector, SignedMeasureVector,
};
pub use metrics::{check_bounds, hellinger_integral, kh_distance, kl_divergence, DivergenceReport};
pub use partition::{build_partition, oscillation, Direction, LevelPartition};
pub use solvers::{
    d_max, r_max, solve, solve_d_minus, solve_d_plus, solve_r_minus, solve_r_plus, sweep,
    ExtremumSolution, ProblemInstance, ProblemKind, SetMass, SweepPoint,
};

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A vector argument was empty; every operation needs at least one entry.
    #[error("input vectors must contain at least one entry")]
    Empty,

    /// Two paired vectors disagree in length.
    #[error("length mismatch: {left} entries vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// An entry was NaN or infinite.
    #[error("entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    /// An entry of a nonnegative vector was negative.
    #[error("entry {index} is negative ({value})")]
    Negative { index: usize, value: f64 },

    /// A probability entry exceeded one.
    #[error("entry {index} exceeds one ({value})")]
    ExceedsOne { index: usize, value: f64 },

    /// Probability masses did not sum to one. Inputs are rejected rather than
    /// renormalised so that every downstream number is traceable to the input.
    #[error("entries sum to {sum:.17}, not 1 (tolerance {tolerance:e})")]
    NotNormalized { sum: f64, tolerance: f64 },

    /// A signed measure's entries did not sum to zero.
    #[error("entries sum to {sum:.17}, not 0 (tolerance {tolerance:e})")]
    NotZeroSum { sum: f64, tolerance: f64 },

    /// A total-variation radius lay outside the metric's range `[0, 2]`.
    #[error("radius {radius} lies outside the total-variation range [0, 2]")]
    RadiusOutOfRange { radius: f64 },

    /// A payoff budget was negative or not finite.
    #[error("budget {budget} must be a finite nonnegative number")]
    BudgetOutOfRange { budget: f64 },

    /// No probability vector satisfies `Σ ℓᵢ νᵢ ≤ target`: even the measure
    /// concentrated on the cheapest symbols pays `minimum`.
    #[error(
        "target {target} is infeasible: every probability vector has expected payoff \
         at least {minimum}"
    )]
    TargetBelowMinimum { target: f64, minimum: f64 },

    /// The radius-to-reach-a-payoff map is defined only from the nominal
    /// expectation upward; below it no sphere radius is a witness.
    #[error(
        "target {target} lies below the nominal expected payoff {nominal}; \
         the minimal-radius curve is defined on [{nominal}, max payoff]"
    )]
    TargetBelowNominal { target: f64, nominal: f64 },

    /// A sweep failed at one grid point; the offending budget is attached.
    #[error("sweep failed at budget {budget}: {source}")]
    AtBudget {
        budget: f64,
        #[source]
        source: Box<Error>,
    },

    /// A linear program had inconsistent dimensions or non-finite data.
    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    /// The simplex iteration cap was reached without convergence.
    #[error("simplex did not terminate within {0} pivots")]
    PivotLimit(u64),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
