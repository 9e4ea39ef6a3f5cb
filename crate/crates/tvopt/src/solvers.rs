//! The four closed-form extremum solvers and their saturation constants.
//!
//! All four problems share one mechanism: move probability mass of total
//! variation `2α` from the cheap end of the payoff onto the expensive end (or
//! the mirror image). The gaining extreme set receives `α`; the opposite
//! extreme set is drained first, then the next level sets in order, each
//! clipped at zero — a waterfall schedule
//! `ν*(set_k) = (μ(set_k) − (α − mass drained before)⁺)⁺`.
//!
//! * [`solve_d_plus`] — `D⁺(R) = max Σ ℓᵢνᵢ` over `‖ν − μ‖_TV ≤ R`;
//!   `α = min(R/2, 1 − μ(S⁰))`, mass flows onto the argmax set `S⁰`.
//! * [`solve_d_minus`] — the minimum over the same ball; mass flows onto the
//!   argmin set `S₀`, draining from the top down, `α = min(R/2, 1 − μ(S₀))`.
//! * [`solve_r_minus`] — `R⁻(D) = min ‖ν − μ‖_TV` subject to `Σ ℓᵢνᵢ ≤ D`:
//!   the radius follows from solving the payoff-vs-budget line for the level
//!   bracket containing `D`; infeasible below `ℓ_min`, identically zero at or
//!   above the nominal expectation `D_max`.
//! * [`solve_r_plus`] — the inverse map of `D⁺`: the smallest radius whose
//!   best payoff reaches `D`. Defined for `D` between the nominal expectation
//!   and `ℓ_max`; targets above `ℓ_max` clamp to the `ℓ_max` answer with the
//!   `saturated` flag set.
//!
//! The saturation constants are [`r_max`]`= 2(1 − μ(S⁰))` (the radius beyond
//! which the TV ball stops binding for `D⁺`) and [`d_max`]`= Σ ℓᵢμᵢ` (the
//! nominal expectation, at or above which `R⁻` vanishes). A budget exactly at
//! the threshold counts as *unsaturated*; strictly beyond sets `saturated`.
//!
//! Inside a level set the paper-level optimum only pins the set's total mass;
//! this implementation distributes a gain proportionally to `μ` restricted to
//! the set (uniformly if the set has no nominal mass) and scales drained sets
//! by `ν(set)/μ(set)`, which keeps `Σ |νᵢ − μᵢ| = 2α` exact and the output
//! deterministic.

use crate::measures::{expectation, PayoffVector, ProbabilityVector};
use crate::partition::{build_partition, Direction, LevelPartition};
use crate::{Error, Result};

/// Tolerance used by tests for "the optimum meets its constraint" checks
/// (for example `Σ ℓᵢ νᵢ* = D` after a radius solve).
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;

/// Which of the four extremum problems to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    /// Maximise the expected payoff over a TV ball of radius `R`.
    DPlus,
    /// Minimise the expected payoff over a TV ball of radius `R`.
    DMinus,
    /// Smallest radius whose best payoff reaches the target `D`.
    RPlus,
    /// Smallest TV distance subject to expected payoff at most `D`.
    RMinus,
}

impl ProblemKind {
    /// All four kinds, handy for exhaustive sweeps in tests.
    pub const ALL: [ProblemKind; 4] = [
        ProblemKind::DPlus,
        ProblemKind::DMinus,
        ProblemKind::RPlus,
        ProblemKind::RMinus,
    ];

    /// True when the budget is a TV radius `R` (rather than a payoff target).
    pub fn takes_radius(self) -> bool {
        matches!(self, ProblemKind::DPlus | ProblemKind::DMinus)
    }

    /// Stable hyphenated name (`d-plus`, `d-minus`, `r-plus`, `r-minus`).
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::DPlus => "d-plus",
            ProblemKind::DMinus => "d-minus",
            ProblemKind::RPlus => "r-plus",
            ProblemKind::RMinus => "r-minus",
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        match s {
            "d-plus" => Ok(ProblemKind::DPlus),
            "d-minus" => Ok(ProblemKind::DMinus),
            "r-plus" => Ok(ProblemKind::RPlus),
            "r-minus" => Ok(ProblemKind::RMinus),
            other => Err(format!(
                "unknown problem kind {other:?}; expected d-plus, d-minus, r-plus or r-minus"
            )),
        }
    }
}

/// Mass assigned to one level set by an extremum solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SetMass {
    /// Display label: `S^0` (argmax), `S_0` (argmin), `S_k`/`S^k` (middles).
    pub label: String,
    /// Total optimal mass `ν*(set)`.
    pub mass: f64,
}

/// An optimal value together with a witnessing probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremumSolution {
    /// Optimal payoff (`d-plus`/`d-minus`, payoff units) or optimal radius
    /// (`r-plus`/`r-minus`, TV units).
    pub value: f64,
    /// An extremising probability vector.
    pub nu_star: ProbabilityVector,
    /// Per-set masses in canonical order: `S^0`, `S_0`, then middles.
    pub set_masses: Vec<SetMass>,
    /// Active half-budget: the amount of mass actually transferred.
    pub alpha: f64,
    /// The level partition the schedule ran on.
    pub partition: LevelPartition,
    /// True iff the budget exceeded the saturation threshold strictly, so the
    /// nominal constraint is slack at the optimum.
    pub saturated: bool,
}

/// One evaluated budget of a [`sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    /// The grid budget this point was solved at.
    pub budget: f64,
    /// Optimal value at that budget.
    pub value: f64,
    /// Saturation flag at that budget.
    pub saturated: bool,
    /// Active half-budget.
    pub alpha: f64,
    /// The extremising probability vector.
    pub nu_star: ProbabilityVector,
}

/// A validated payoff/nominal pair with a budget, ready to solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    ell: PayoffVector,
    mu: ProbabilityVector,
    budget: f64,
}

impl ProblemInstance {
    /// Validates equal lengths and a finite, nonnegative budget.
    ///
    /// Radius budgets are additionally checked against the TV range `[0, 2]`
    /// by the radius solvers themselves.
    pub fn new(ell: PayoffVector, mu: ProbabilityVector, budget: f64) -> Result<Self> {
        ensure_pair(&ell, &mu)?;
        if !budget.is_finite() || budget < 0.0 {
            return Err(Error::BudgetOutOfRange { budget });
        }
        Ok(Self { ell, mu, budget })
    }

    /// The payoff vector.
    pub fn ell(&self) -> &PayoffVector {
        &self.ell
    }

    /// The nominal probability vector.
    pub fn mu(&self) -> &ProbabilityVector {
        &self.mu
    }

    /// The budget (a radius `R` or payoff target `D` depending on the kind).
    pub fn budget(&self) -> f64 {
        self.budget
    }

    /// Alphabet size.
    pub fn len(&self) -> usize {
        self.mu.len()
    }

    /// Always false: construction validates non-empty vectors.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Solves this instance for the given problem kind.
    pub fn solve(&self, kind: ProblemKind) -> Result<ExtremumSolution> {
        solve(kind, &self.ell, &self.mu, self.budget)
    }
}

/// Dispatches to the solver matching `kind`.
pub fn solve(
    kind: ProblemKind,
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    budget: f64,
) -> Result<ExtremumSolution> {
    match kind {
        ProblemKind::DPlus => solve_d_plus(ell, mu, budget),
        ProblemKind::DMinus => solve_d_minus(ell, mu, budget),
        ProblemKind::RPlus => solve_r_plus(ell, mu, budget),
        ProblemKind::RMinus => solve_r_minus(ell, mu, budget),
    }
}

/// The radius beyond which the TV ball stops binding for the maximisation:
/// `R_max = 2 (1 − μ(S⁰))`.
pub fn r_max(ell: &PayoffVector, mu: &ProbabilityVector) -> Result<f64> {
    ensure_pair(ell, mu)?;
    let partition = build_partition(ell, Direction::FromMin);
    Ok(2.0 * (1.0 - mu.mass_on(partition.sigma_max())))
}

/// The nominal expected payoff `D_max = Σ ℓᵢ μᵢ`; at or above it the
/// payoff-capping problem is satisfied by `μ` itself.
pub fn d_max(ell: &PayoffVector, mu: &ProbabilityVector) -> Result<f64> {
    expectation(ell, mu)
}

/// Best payoff over the TV ball: `D⁺(R) = max { Σ ℓᵢνᵢ : ‖ν − μ‖_TV ≤ R }`.
pub fn solve_d_plus(
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    radius: f64,
) -> Result<ExtremumSolution> {
    ensure_pair(ell, mu)?;
    ensure_radius(radius)?;
    let partition = build_partition(ell, Direction::FromMin);
    if partition.is_degenerate() {
        return Ok(constant_payoff_solution(ell, mu, partition, radius > 0.0));
    }
    let cap = 1.0 - mu.mass_on(partition.sigma_max());
    let alpha = (radius / 2.0).min(cap);
    let saturated = radius / 2.0 > cap;
    let (payoff, nu_star, set_masses) = run_schedule(mu, &partition, GainEnd::Max, alpha)?;
    // At α = 0 the grouped sum above and the elementwise expectation can
    // disagree by an ulp; report the expectation so that a zero-radius value
    // compares equal to the nominal everywhere else in the crate.
    let value = if alpha == 0.0 {
        expectation(ell, mu)?
    } else {
        payoff
    };
    Ok(ExtremumSolution {
        value,
        nu_star,
        set_masses,
        alpha,
        partition,
        saturated,
    })
}

/// Worst payoff over the TV ball: `D⁻(R) = min { Σ ℓᵢνᵢ : ‖ν − μ‖_TV ≤ R }`.
pub fn solve_d_minus(
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    radius: f64,
) -> Result<ExtremumSolution> {
    ensure_pair(ell, mu)?;
    ensure_radius(radius)?;
    let partition = build_partition(ell, Direction::FromMax);
    if partition.is_degenerate() {
        return Ok(constant_payoff_solution(ell, mu, partition, radius > 0.0));
    }
    let cap = 1.0 - mu.mass_on(partition.sigma_min());
    let alpha = (radius / 2.0).min(cap);
    let saturated = radius / 2.0 > cap;
    let (payoff, nu_star, set_masses) = run_schedule(mu, &partition, GainEnd::Min, alpha)?;
    // Same ulp guard as the maximising solver: a zero-radius value must equal
    // the elementwise nominal expectation exactly.
    let value = if alpha == 0.0 {
        expectation(ell, mu)?
    } else {
        payoff
    };
    Ok(ExtremumSolution {
        value,
        nu_star,
        set_masses,
        alpha,
        partition,
        saturated,
    })
}

/// Cheapest move that caps the payoff:
/// `R⁻(D) = min { ‖ν − μ‖_TV : Σ ℓᵢνᵢ ≤ D }`.
///
/// Errors with [`Error::TargetBelowMinimum`] when `D < ℓ_min`, since every
/// probability vector pays at least `ℓ_min`. Returns radius `0` with
/// `ν* = μ` when `D` is at or above the nominal expectation [`d_max`].
pub fn solve_r_minus(
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    target: f64,
) -> Result<ExtremumSolution> {
    ensure_pair(ell, mu)?;
    ensure_target(target)?;
    let partition = build_partition(ell, Direction::FromMax);
    let ell_min = partition.ell_min();
    let nominal = expectation(ell, mu)?;
    if partition.is_degenerate() {
        // Constant payoff: rounding may place the computed expectation a few
        // ulps to either side of the constant, so accept a target at either
        // one and only call strictly-beyond-both saturated.
        if target < nominal.min(ell_min) {
            return Err(Error::TargetBelowMinimum {
                target,
                minimum: ell_min,
            });
        }
        let saturated = target > nominal.max(ell_min);
        let mut solution = constant_payoff_solution(ell, mu, partition, saturated);
        solution.value = 0.0;
        return Ok(solution);
    }
    if target >= nominal {
        // The nominal measure already satisfies the cap.
        let (_, nu_star, set_masses) = run_schedule(mu, &partition, GainEnd::Min, 0.0)?;
        return Ok(ExtremumSolution {
            value: 0.0,
            nu_star,
            set_masses,
            alpha: 0.0,
            partition,
            saturated: target > nominal,
        });
    }
    if target < ell_min {
        return Err(Error::TargetBelowMinimum {
            target,
            minimum: ell_min,
        });
    }

    let mu_min = mu.mass_on(partition.sigma_min());
    let drain = DrainProfile::new(mu, &partition, GainEnd::Min);
    // Thresholds u(k) decrease from the nominal expectation (k = 0) down to
    // ℓ_min (k = r + 1); pick the smallest bracket k with D ≥ u(k + 1).
    let k = drain.select_bracket(|mass, before, tail_after| {
        target >= ell_min * (mu_min + before + mass) + tail_after
    });
    let radius = 2.0
        * (target - ell_min * mu_min - drain.levels[k] * drain.before[k] - drain.tail[k])
        / (ell_min - drain.levels[k]);
    let radius = radius.max(0.0);
    let alpha = (radius / 2.0).min(1.0 - mu_min);
    let (_, nu_star, set_masses) = run_schedule(mu, &partition, GainEnd::Min, alpha)?;
    Ok(ExtremumSolution {
        value: radius,
        nu_star,
        set_masses,
        alpha,
        partition,
        saturated: false,
    })
}

/// Smallest radius whose best payoff reaches the target: the inverse map of
/// [`solve_d_plus`], so `R⁺(D⁺(R)) = R` for `R ≤ R_max`.
///
/// Defined for targets from the nominal expectation up to `ℓ_max`; below the
/// nominal expectation there is no radius to find and
/// [`Error::TargetBelowNominal`] is returned. Targets above `ℓ_max` clamp to
/// the `ℓ_max` answer (`R⁺ = R_max`) with `saturated` set.
pub fn solve_r_plus(
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    target: f64,
) -> Result<ExtremumSolution> {
    ensure_pair(ell, mu)?;
    ensure_target(target)?;
    let partition = build_partition(ell, Direction::FromMin);
    let nominal = expectation(ell, mu)?;
    let ell_max = partition.ell_max();
    if partition.is_degenerate() {
        // Constant payoff: rounding may place the computed expectation a few
        // ulps to either side of the constant, so accept a target at either
        // one and only call strictly-beyond-both saturated.
        if target < nominal.min(ell_max) {
            return Err(Error::TargetBelowNominal { target, nominal });
        }
        let saturated = target > nominal.max(ell_max);
        let mut solution = constant_payoff_solution(ell, mu, partition, saturated);
        solution.value = 0.0;
        return Ok(solution);
    }
    if target < nominal {
        return Err(Error::TargetBelowNominal { target, nominal });
    }
    let (effective, saturated) = if target > ell_max {
        (ell_max, true)
    } else {
        (target, false)
    };

    let mu_max = mu.mass_on(partition.sigma_max());
    let drain = DrainProfile::new(mu, &partition, GainEnd::Max);
    // Thresholds v(k) increase from the nominal expectation (k = 0) up to
    // ℓ_max (k = r + 1); pick the smallest bracket k with D ≤ v(k + 1).
    let k = drain.select_bracket(|mass, before, tail_after| {
        effective <= ell_max * (mu_max + before + mass) + tail_after
    });
    let radius = 2.0
        * (effective - ell_max * mu_max - drain.levels[k] * drain.before[k] - drain.tail[k])
        / (ell_max - drain.levels[k]);
    let radius = radius.clamp(0.0, 2.0);
    let alpha = (radius / 2.0).min(1.0 - mu_max);
    let (_, nu_star, set_masses) = run_schedule(mu, &partition, GainEnd::Max, alpha)?;
    Ok(ExtremumSolution {
        value: radius,
        nu_star,
        set_masses,
        alpha,
        partition,
        saturated,
    })
}

/// Applies the solver for `kind` to every budget in `grid`, in order.
///
/// A failure at any grid point aborts the sweep with the offending budget
/// attached ([`Error::AtBudget`]); infeasible points are never dropped
/// silently.
pub fn sweep(
    kind: ProblemKind,
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    grid: &[f64],
) -> Result<Vec<SweepPoint>> {
    grid.iter()
        .map(|&budget| {
            solve(kind, ell, mu, budget)
                .map(|s| SweepPoint {
                    budget,
                    value: s.value,
                    saturated: s.saturated,
                    alpha: s.alpha,
                    nu_star: s.nu_star,
                })
                .map_err(|e| Error::AtBudget {
                    budget,
                    source: Box::new(e),
                })
        })
        .collect()
}

/// Which extreme of the payoff receives mass.
#[derive(Clone, Copy, PartialEq, Eq)]
enum GainEnd {
    /// The argmax set gains; the argmin set drains first (maximisation and
    /// its inverse map).
    Max,
    /// The argmin set gains; the argmax set drains first (minimisation and
    /// the payoff cap).
    Min,
}

fn ensure_pair(ell: &PayoffVector, mu: &ProbabilityVector) -> Result<()> {
    if ell.len() != mu.len() {
        return Err(Error::LengthMismatch {
            left: ell.len(),
            right: mu.len(),
        });
    }
    Ok(())
}

fn ensure_radius(radius: f64) -> Result<()> {
    if !radius.is_finite() || !(0.0..=2.0).contains(&radius) {
        return Err(Error::RadiusOutOfRange { radius });
    }
    Ok(())
}

fn ensure_target(target: f64) -> Result<()> {
    if target.is_nan() || target == f64::NEG_INFINITY {
        return Err(Error::BudgetOutOfRange { budget: target });
    }
    Ok(())
}

/// With a constant payoff every distribution is optimal; return the nominal
/// one and the nominal expectation.
fn constant_payoff_solution(
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    partition: LevelPartition,
    saturated: bool,
) -> ExtremumSolution {
    let value = expectation(ell, mu).expect("lengths were checked");
    ExtremumSolution {
        value,
        nu_star: mu.clone(),
        set_masses: vec![SetMass {
            label: "S^0".to_owned(),
            mass: 1.0,
        }],
        alpha: 0.0,
        partition,
        saturated,
    }
}

/// The drain sequence of a schedule: the extreme set opposite the gain,
/// followed by the middle sets in partition order. Caches the per-set levels,
/// nominal masses, prefix masses and weighted tails that the radius-bracket
/// formulas need.
struct DrainProfile {
    /// Payoff level of each drain set.
    levels: Vec<f64>,
    /// Nominal mass of each drain set.
    masses: Vec<f64>,
    /// `before[d] = Σ_{j<d} masses[j]`.
    before: Vec<f64>,
    /// `tail[d] = Σ_{j≥d} levels[j]·masses[j]`.
    tail: Vec<f64>,
}

impl DrainProfile {
    fn new(mu: &ProbabilityVector, partition: &LevelPartition, gain: GainEnd) -> Self {
        let (first_set, first_level) = match gain {
            GainEnd::Max => (partition.sigma_min(), partition.ell_min()),
            GainEnd::Min => (partition.sigma_max(), partition.ell_max()),
        };
        let mut levels = Vec::with_capacity(1 + partition.middle_count());
        let mut masses = Vec::with_capacity(1 + partition.middle_count());
        levels.push(first_level);
        masses.push(mu.mass_on(first_set));
        for (set, &level) in partition.middle_sets().iter().zip(partition.level_values()) {
            levels.push(level);
            masses.push(mu.mass_on(set));
        }

        let len = levels.len();
        let mut before = vec![0.0; len];
        for d in 1..len {
            before[d] = before[d - 1] + masses[d - 1];
        }
        let mut tail = vec![0.0; len + 1];
        for d in (0..len).rev() {
            tail[d] = tail[d + 1] + levels[d] * masses[d];
        }
        Self {
            levels,
            masses,
            before,
            tail,
        }
    }

    /// Smallest bracket index `k` whose far threshold admits the target; the
    /// predicate receives `(mass of set k, prefix mass before k, weighted
    /// tail after k)`, the ingredients of threshold `k + 1`. Falls back to
    /// the last bracket when rounding leaves the target in no bracket.
    fn select_bracket(&self, admits: impl Fn(f64, f64, f64) -> bool) -> usize {
        let len = self.levels.len();
        for k in 0..len {
            if admits(self.masses[k], self.before[k], self.tail[k + 1]) {
                return k;
            }
        }
        len - 1
    }
}

/// Executes the waterfall: the gaining extreme set receives `alpha`, the
/// drain sequence loses `alpha` in order. Returns the resulting payoff, the
/// per-element optimal vector, and the per-set masses in canonical order
/// (`S^0`, `S_0`, then middles).
fn run_schedule(
    mu: &ProbabilityVector,
    partition: &LevelPartition,
    gain: GainEnd,
    alpha: f64,
) -> Result<(f64, ProbabilityVector, Vec<SetMass>)> {
    let (gain_set, drain_first) = match gain {
        GainEnd::Max => (partition.sigma_max(), partition.sigma_min()),
        GainEnd::Min => (partition.sigma_min(), partition.sigma_max()),
    };

    let mut nu: Vec<f64> = mu.entries().to_vec();

    // Gain set: proportional to μ on the set, uniform when the set has no
    // nominal mass.
    let gain_mu = mu.mass_on(gain_set);
    let gain_mass = gain_mu + alpha;
    if alpha > 0.0 {
        if gain_mu > 0.0 {
            let scale = gain_mass / gain_mu;
            for &i in gain_set {
                nu[i] = (mu[i] * scale).clamp(0.0, 1.0);
            }
        } else {
            let share = alpha / gain_set.len() as f64;
            for &i in gain_set {
                nu[i] = (mu[i] + share).clamp(0.0, 1.0);
            }
        }
    }

    // Drain sequence: opposite extreme first, then the middles in partition
    // order, each clipped at zero once `alpha` is used up.
    let mut emptied_before = 0.0;
    let mut drain_one = |set: &[usize], nu: &mut Vec<f64>| {
        let set_mu = mu.mass_on(set);
        let removal = (alpha - emptied_before).clamp(0.0, set_mu);
        let mass = set_mu - removal;
        if removal > 0.0 && set_mu > 0.0 {
            let scale = mass / set_mu;
            for &i in set {
                nu[i] = (mu[i] * scale).clamp(0.0, 1.0);
            }
        }
        emptied_before += set_mu;
        mass
    };

    let opposite_mass = drain_one(drain_first, &mut nu);
    let middle_masses: Vec<f64> = partition
        .middle_sets()
        .iter()
        .map(|set| drain_one(set, &mut nu))
        .collect();

    // Payoff value of the schedule, grouped by level set.
    let (top_mass, bottom_mass) = match gain {
        GainEnd::Max => (gain_mass, opposite_mass),
        GainEnd::Min => (opposite_mass, gain_mass),
    };
    let mut payoff = partition.ell_max() * top_mass + partition.ell_min() * bottom_mass;
    for (level, mass) in partition.level_values().iter().zip(&middle_masses) {
        payoff += level * mass;
    }

    // Per-set masses in canonical display order.
    let mut set_masses = Vec::with_capacity(2 + partition.middle_count());
    set_masses.push(SetMass {
        label: "S^0".to_owned(),
        mass: top_mass,
    });
    set_masses.push(SetMass {
        label: "S_0".to_owned(),
        mass: bottom_mass,
    });
    for (k, &mass) in middle_masses.iter().enumerate() {
        set_masses.push(SetMass {
            label: partition.middle_label(k),
            mass,
        });
    }

    let nu_star = ProbabilityVector::new(nu)?;
    Ok((payoff, nu_star, set_masses))
}
