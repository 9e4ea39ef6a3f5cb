//! Brute-force linear-programming oracle used to cross-check the closed-form
//! solvers.
//!
//! Every one of the four extremum problems is a small linear program in the
//! split perturbation `ξ = ν − μ = ξ⁺ − ξ⁻` with `ξ⁺, ξ⁻ ≥ 0`:
//!
//! * box bounds `0 ≤ ξ⁺ᵢ ≤ 1 − μᵢ` and `0 ≤ ξ⁻ᵢ ≤ μᵢ` keep `ν` a probability
//!   vector entrywise,
//! * the zero-sum row `Σᵢ (ξ⁺ᵢ − ξ⁻ᵢ) = 0` keeps the total mass at one,
//! * `Σᵢ (ξ⁺ᵢ + ξ⁻ᵢ)` is an upper bound for the TV distance `Σᵢ |νᵢ − μᵢ|`,
//!   with equality whenever no symbol is raised and lowered at once — which
//!   every optimal basic solution satisfies, so optima are unaffected,
//! * `Σᵢ ℓᵢ (ξ⁺ᵢ − ξ⁻ᵢ)` is the payoff change against the nominal.
//!
//! [`encode`] builds the program for a problem kind, [`solve_lp`] runs a
//! plain two-phase dense simplex with Bland's anti-cycling rule (smallest
//! eligible index enters; ratio ties leave by smallest basic index), and
//! [`solve`] wraps both and translates back to measure language. The
//! implementation is deliberately naive — independent of the closed forms it
//! audits — and sized for the test alphabets (at most [`MAX_VARIABLES`]
//! variables).

use crate::measures::{expectation, PayoffVector, ProbabilityVector};
use crate::solvers::ProblemKind;
use crate::{Error, Result};

/// Hard cap on simplex pivots before giving up with [`Error::PivotLimit`].
pub const PIVOT_LIMIT: u64 = 1_000_000;

/// Largest number of variables [`solve_lp`] accepts.
pub const MAX_VARIABLES: usize = 50;

/// Reduced costs below this threshold count as non-improving.
const COST_EPS: f64 = 1e-9;
/// Pivot candidates need at least this magnitude.
const PIVOT_EPS: f64 = 1e-9;
/// Ratio-test ties within this tolerance are broken by Bland's rule.
const RATIO_EPS: f64 = 1e-12;
/// Residual artificial mass tolerated when declaring phase one feasible.
const FEAS_EPS: f64 = 1e-8;

/// Optimisation sense of a [`LinearProgram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizationDirection {
    Minimize,
    Maximize,
}

/// Relation between a constraint row and its right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    /// `row · x ≤ rhs`
    Le,
    /// `row · x = rhs`
    Eq,
    /// `row · x ≥ rhs`
    Ge,
}

/// A dense linear program with per-variable box bounds.
///
/// Lower bounds must be finite; an upper bound of `f64::INFINITY` means the
/// variable is unbounded above.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub direction: OptimizationDirection,
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub senses: Vec<RowSense>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// Terminal status of a simplex run.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// An optimal basic solution and its objective value (recomputed from
    /// the original objective, not read off the tableau).
    Optimal { objective: f64, x: Vec<f64> },
    /// No point satisfies all constraints and bounds.
    Infeasible,
    /// The objective improves without limit within the feasible set.
    Unbounded,
}

/// Oracle verdict in measure language.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    /// Optimal value of the extremum problem and an optimal measure.
    Optimal { value: f64, nu: Vec<f64> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if n == 0 {
            return Err(Error::MalformedProgram("no variables".into()));
        }
        if n > MAX_VARIABLES {
            return Err(Error::MalformedProgram(format!(
                "{n} variables exceed the supported maximum of {MAX_VARIABLES}"
            )));
        }
        if self.rows.len() != self.senses.len() || self.rows.len() != self.rhs.len() {
            return Err(Error::MalformedProgram(format!(
                "{} rows, {} senses, {} right-hand sides",
                self.rows.len(),
                self.senses.len(),
                self.rhs.len()
            )));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::MalformedProgram(format!(
                "bounds for {}/{} variables, objective has {n}",
                self.lower.len(),
                self.upper.len()
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedProgram(format!(
                    "row {i} has {} coefficients, expected {n}",
                    row.len()
                )));
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::MalformedProgram(format!(
                    "row {i} has a non-finite coefficient"
                )));
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::MalformedProgram(
                "objective has a non-finite coefficient".into(),
            ));
        }
        if self.rhs.iter().any(|c| !c.is_finite()) {
            return Err(Error::MalformedProgram(
                "right-hand side has a non-finite entry".into(),
            ));
        }
        for j in 0..n {
            if !self.lower[j].is_finite() {
                return Err(Error::MalformedProgram(format!(
                    "variable {j} has a non-finite lower bound"
                )));
            }
            if self.upper[j].is_nan() || self.upper[j] == f64::NEG_INFINITY {
                return Err(Error::MalformedProgram(format!(
                    "variable {j} has an invalid upper bound"
                )));
            }
            if self.lower[j] > self.upper[j] {
                return Err(Error::MalformedProgram(format!(
                    "variable {j} has lower bound {} above upper bound {}",
                    self.lower[j], self.upper[j]
                )));
            }
        }
        Ok(())
    }
}

/// Builds the split-variable linear program for `kind` at the given budget.
///
/// Variables are ordered `ξ⁺₀ … ξ⁺ₙ₋₁, ξ⁻₀ … ξ⁻ₙ₋₁`. The first row is always
/// the zero-sum equality; budget-constrained kinds add their single coupling
/// row after it.
pub fn encode(
    kind: ProblemKind,
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    budget: f64,
) -> Result<LinearProgram> {
    if ell.len() != mu.len() {
        return Err(Error::LengthMismatch {
            left: ell.len(),
            right: mu.len(),
        });
    }
    if !budget.is_finite() {
        return Err(Error::BudgetOutOfRange { budget });
    }
    let n = mu.len();
    let signed = |i: usize| if i < n { ell[i] } else { -ell[i - n] };
    let payoff_row: Vec<f64> = (0..2 * n).map(signed).collect();
    let tv_row: Vec<f64> = vec![1.0; 2 * n];
    let zero_sum: Vec<f64> = (0..2 * n).map(|i| if i < n { 1.0 } else { -1.0 }).collect();

    let lower = vec![0.0; 2 * n];
    let upper: Vec<f64> = (0..2 * n)
        .map(|i| if i < n { 1.0 - mu[i] } else { mu[i - n] })
        .collect();

    let (direction, objective, extra_row, extra_sense, extra_rhs) = match kind {
        ProblemKind::DPlus => (
            OptimizationDirection::Maximize,
            payoff_row.clone(),
            tv_row,
            RowSense::Le,
            budget,
        ),
        ProblemKind::DMinus => (
            OptimizationDirection::Minimize,
            payoff_row.clone(),
            tv_row,
            RowSense::Le,
            budget,
        ),
        ProblemKind::RMinus => (
            OptimizationDirection::Minimize,
            tv_row,
            payoff_row.clone(),
            RowSense::Le,
            budget - expectation(ell, mu)?,
        ),
        ProblemKind::RPlus => (
            OptimizationDirection::Minimize,
            tv_row,
            payoff_row.clone(),
            RowSense::Ge,
            budget - expectation(ell, mu)?,
        ),
    };

    Ok(LinearProgram {
        direction,
        objective,
        rows: vec![zero_sum, extra_row],
        senses: vec![RowSense::Eq, extra_sense],
        rhs: vec![0.0, extra_rhs],
        lower,
        upper,
    })
}

/// Solves the extremum problem by brute force and reports in measure terms.
///
/// For the payoff kinds the reported value is `Σ ℓᵢμᵢ` plus the LP optimum;
/// for the radius kinds it is the LP optimum itself. The witness measure is
/// `νᵢ = μᵢ + ξ⁺ᵢ − ξ⁻ᵢ`.
pub fn solve(
    kind: ProblemKind,
    ell: &PayoffVector,
    mu: &ProbabilityVector,
    budget: f64,
) -> Result<OracleOutcome> {
    let lp = encode(kind, ell, mu, budget)?;
    match solve_lp(&lp)? {
        LpOutcome::Optimal { objective, x } => {
            let n = mu.len();
            let nu: Vec<f64> = (0..n).map(|i| mu[i] + x[i] - x[n + i]).collect();
            let value = if kind.takes_radius() {
                expectation(ell, mu)? + objective
            } else {
                objective
            };
            Ok(OracleOutcome::Optimal { value, nu })
        }
        LpOutcome::Infeasible => Ok(OracleOutcome::Infeasible),
        LpOutcome::Unbounded => Ok(OracleOutcome::Unbounded),
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

/// Dense simplex tableau over the standard-form columns. Row operations keep
/// the right-hand side nonnegative and basic columns exactly unit.
struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    pivots: u64,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > PIVOT_LIMIT {
            return Err(Error::PivotLimit(self.pivots));
        }
        let inv = 1.0 / self.rows[row][col];
        for entry in self.rows[row].iter_mut() {
            *entry *= inv;
        }
        self.rhs[row] *= inv;
        self.rows[row][col] = 1.0;
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col];
            if factor == 0.0 {
                continue;
            }
            let (pivot_row, other_row) = if i < row {
                let (head, tail) = self.rows.split_at_mut(row);
                (&tail[0], &mut head[i])
            } else {
                let (head, tail) = self.rows.split_at_mut(i);
                (&head[row], &mut tail[0])
            };
            for (o, p) in other_row.iter_mut().zip(pivot_row.iter()) {
                *o -= factor * p;
            }
            other_row[col] = 0.0;
            self.rhs[i] -= factor * self.rhs[row];
            // The ratio test keeps the right-hand side nonnegative; shave off
            // rounding dust so later ratio tests see clean zeros.
            if self.rhs[i] < 0.0 && self.rhs[i] > -1e-11 {
                self.rhs[i] = 0.0;
            }
        }
        self.basis[row] = col;
        Ok(())
    }

    /// Maximises `costs · column_values` over columns where `allowed` holds,
    /// using Bland's rule for both the entering and the leaving choice.
    fn run(&mut self, costs: &[f64], allowed: impl Fn(usize) -> bool) -> Result<SimplexEnd> {
        let n = costs.len();
        loop {
            let mut entering = None;
            for j in 0..n {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = costs[j];
                for (i, &bj) in self.basis.iter().enumerate() {
                    if costs[bj] != 0.0 {
                        reduced -= costs[bj] * self.rows[i][j];
                    }
                }
                if reduced > COST_EPS {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Ok(SimplexEnd::Optimal);
            };

            let mut leaving: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let coeff = self.rows[i][col];
                if coeff > PIVOT_EPS {
                    let ratio = self.rhs[i] / coeff;
                    let better = match leaving {
                        None => true,
                        Some((best_row, best_ratio)) => {
                            ratio < best_ratio - RATIO_EPS
                                || ((ratio - best_ratio).abs() <= RATIO_EPS
                                    && self.basis[i] < self.basis[best_row])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Ok(SimplexEnd::Unbounded);
            };
            self.pivot(row, col)?;
        }
    }
}

/// Solves a validated [`LinearProgram`] with a two-phase dense simplex.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.objective.len();

    // Shift to y = x − lower ≥ 0 and collect every constraint, including the
    // finite upper bounds, as (coefficients, sense, rhs) over y.
    let mut coeffs: Vec<Vec<f64>> = Vec::new();
    let mut senses: Vec<RowSense> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    for (i, row) in lp.rows.iter().enumerate() {
        let shift: f64 = row.iter().zip(&lp.lower).map(|(c, l)| c * l).sum();
        coeffs.push(row.clone());
        senses.push(lp.senses[i]);
        rhs.push(lp.rhs[i] - shift);
    }
    for j in 0..n {
        if lp.upper[j].is_finite() {
            let mut row = vec![0.0; n];
            row[j] = 1.0;
            coeffs.push(row);
            senses.push(RowSense::Le);
            rhs.push(lp.upper[j] - lp.lower[j]);
        }
    }
    // Normalise right-hand sides to be nonnegative (flipping inequalities).
    for i in 0..coeffs.len() {
        if rhs[i] < 0.0 {
            for c in coeffs[i].iter_mut() {
                *c = -*c;
            }
            rhs[i] = -rhs[i];
            senses[i] = match senses[i] {
                RowSense::Le => RowSense::Ge,
                RowSense::Ge => RowSense::Le,
                RowSense::Eq => RowSense::Eq,
            };
        }
    }

    // Column layout: structurals, then one slack or surplus per inequality,
    // then one artificial per Ge/Eq row.
    let m = coeffs.len();
    let slack_count = senses
        .iter()
        .filter(|s| matches!(s, RowSense::Le | RowSense::Ge))
        .count();
    let art_count = senses
        .iter()
        .filter(|s| matches!(s, RowSense::Ge | RowSense::Eq))
        .count();
    let total = n + slack_count + art_count;
    let art_start = n + slack_count;

    let mut rows = vec![vec![0.0; total]; m];
    let mut basis = vec![usize::MAX; m];
    let mut next_slack = n;
    let mut next_art = art_start;
    for i in 0..m {
        rows[i][..n].copy_from_slice(&coeffs[i]);
        match senses[i] {
            RowSense::Le => {
                rows[i][next_slack] = 1.0;
                basis[i] = next_slack;
                next_slack += 1;
            }
            RowSense::Ge => {
                rows[i][next_slack] = -1.0;
                next_slack += 1;
                rows[i][next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
            RowSense::Eq => {
                rows[i][next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
        }
    }

    let mut tableau = Tableau {
        rows,
        rhs,
        basis,
        pivots: 0,
    };

    // Phase one: drive the artificial variables to zero.
    if art_count > 0 {
        let mut phase_one = vec![0.0; total];
        for cost in phase_one.iter_mut().skip(art_start) {
            *cost = -1.0;
        }
        match tableau.run(&phase_one, |_| true)? {
            SimplexEnd::Optimal => {}
            SimplexEnd::Unbounded => {
                return Err(Error::MalformedProgram(
                    "phase one cannot be unbounded".into(),
                ));
            }
        }
        let residual: f64 = tableau
            .basis
            .iter()
            .zip(&tableau.rhs)
            .filter(|(&bj, _)| bj >= art_start)
            .map(|(_, &v)| v)
            .sum();
        if residual > FEAS_EPS {
            return Ok(LpOutcome::Infeasible);
        }
        // Pivot leftover artificials out of the basis where possible; rows
        // that cannot be pivoted are redundant and stay inert at zero. Any
        // value still carried by a basic artificial is bounded by the
        // residual check above, so it is zeroed first: the pivot is then
        // degenerate (safe on a coefficient of either sign), and a basic
        // artificial left behind can no longer be re-inflated by phase two.
        for i in 0..m {
            if tableau.basis[i] >= art_start {
                tableau.rhs[i] = 0.0;
                let eligible = |j: &usize| tableau.rows[i][*j].abs() > PIVOT_EPS;
                if let Some(col) = (0..art_start).find(eligible) {
                    tableau.pivot(i, col)?;
                }
            }
        }
    }

    // Phase two: the real objective, artificials banned from re-entering.
    let mut phase_two = vec![0.0; total];
    let sign = match lp.direction {
        OptimizationDirection::Maximize => 1.0,
        OptimizationDirection::Minimize => -1.0,
    };
    for (cost, &c) in phase_two.iter_mut().zip(&lp.objective) {
        *cost = sign * c;
    }
    let end = tableau.run(&phase_two, |j| j < art_start)?;
    if matches!(end, SimplexEnd::Unbounded) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x = lp.lower.clone();
    for (i, &bj) in tableau.basis.iter().enumerate() {
        if bj < n {
            x[bj] += tableau.rhs[i];
        }
    }
    let objective = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpOutcome::Optimal { objective, x })
}
