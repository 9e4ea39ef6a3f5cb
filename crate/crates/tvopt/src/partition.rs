//! Ordered level-set partitions of the alphabet.
//!
//! Every solver in this crate moves probability mass between groups of
//! symbols that share a payoff value. [`build_partition`] produces that
//! grouping: the argmax set `S⁰`, the argmin set `S₀`, and the remaining
//! *middle* level sets ordered either ascending from the minimum
//! ([`Direction::FromMin`]: `S_1, S_2, …, S_r` with strictly increasing
//! values) or descending from the maximum ([`Direction::FromMax`]:
//! `S¹, S², …, Sʳ` with strictly decreasing values).
//!
//! Two payoffs belong to the same level iff they differ by at most
//! [`LEVEL_TOLERANCE`] relative to the group's first value; the paper-exact
//! case of identical floats always groups exactly. When every payoff is equal
//! the whole alphabet is assigned to `S⁰` and `S₀` is empty, which keeps the
//! downstream solvers total: a constant payoff makes every distribution
//! optimal and the solvers simply return the nominal one.

use crate::measures::PayoffVector;

/// Relative tolerance under which two payoff values share a level set.
pub const LEVEL_TOLERANCE: f64 = 1e-12;

/// Which end of the payoff range the middle sets are ordered from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Middle sets ascend from just above the minimum: `S_1, S_2, …`.
    FromMin,
    /// Middle sets descend from just below the maximum: `S¹, S², …`.
    FromMax,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::FromMin => write!(f, "from-min"),
            Direction::FromMax => write!(f, "from-max"),
        }
    }
}

/// The level-set decomposition of an alphabet under a payoff vector.
///
/// `sigma_max ∪ sigma_min ∪ middle_sets` is a disjoint cover of `{0, …, n−1}`;
/// each set stores its indices in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelPartition {
    direction: Direction,
    sigma_max: Vec<usize>,
    sigma_min: Vec<usize>,
    middle_sets: Vec<Vec<usize>>,
    level_values: Vec<f64>,
    ell_max: f64,
    ell_min: f64,
    len: usize,
}

impl LevelPartition {
    /// Ordering direction of the middle sets.
    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Indices attaining the maximal payoff (`S⁰`).
    pub fn sigma_max(&self) -> &[usize] {
        &self.sigma_max
    }

    /// Indices attaining the minimal payoff (`S₀`); empty iff the payoff is
    /// constant.
    pub fn sigma_min(&self) -> &[usize] {
        &self.sigma_min
    }

    /// The middle level sets in this partition's direction order.
    pub fn middle_sets(&self) -> &[Vec<usize>] {
        &self.middle_sets
    }

    /// Payoff value of each middle set, parallel to [`middle_sets`].
    ///
    /// [`middle_sets`]: LevelPartition::middle_sets
    pub fn level_values(&self) -> &[f64] {
        &self.level_values
    }

    /// Largest payoff value.
    pub fn ell_max(&self) -> f64 {
        self.ell_max
    }

    /// Smallest payoff value.
    pub fn ell_min(&self) -> f64 {
        self.ell_min
    }

    /// Number of middle sets (`r`).
    pub fn middle_count(&self) -> usize {
        self.middle_sets.len()
    }

    /// Alphabet size.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: partitions are built from non-empty payoff vectors.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// True iff the payoff is constant, i.e. `sigma_min` is empty and the
    /// whole alphabet sits in `sigma_max`.
    pub fn is_degenerate(&self) -> bool {
        self.sigma_min.is_empty()
    }

    /// Display label of the middle set at position `k` (0-based):
    /// `S_1, S_2, …` for [`Direction::FromMin`], `S^1, S^2, …` for
    /// [`Direction::FromMax`].
    pub fn middle_label(&self, k: usize) -> String {
        match self.direction {
            Direction::FromMin => format!("S_{}", k + 1),
            Direction::FromMax => format!("S^{}", k + 1),
        }
    }

    /// All sets with display labels and values, in the canonical output
    /// order: `S⁰`, then `S₀`, then the middle sets in direction order.
    pub fn labelled_sets(&self) -> Vec<(String, &[usize], f64)> {
        let mut out: Vec<(String, &[usize], f64)> = Vec::with_capacity(2 + self.middle_count());
        out.push(("S^0".to_owned(), self.sigma_max.as_slice(), self.ell_max));
        if !self.sigma_min.is_empty() {
            out.push(("S_0".to_owned(), self.sigma_min.as_slice(), self.ell_min));
        }
        for (k, set) in self.middle_sets.iter().enumerate() {
            out.push((self.middle_label(k), set.as_slice(), self.level_values[k]));
        }
        out
    }
}

/// Groups indices by payoff value and orders the groups.
///
/// Ties within [`LEVEL_TOLERANCE`] (relative to the group's first value)
/// collapse into one set. With a constant payoff everything lands in
/// `sigma_max` and there are no middle sets.
pub fn build_partition(ell: &PayoffVector, direction: Direction) -> LevelPartition {
    let values = ell.entries();
    let n = values.len();

    // Sort indices by (value, index); group while within tolerance of the
    // group's representative (its first, i.e. smallest, value).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .expect("payoff entries are finite")
            .then(a.cmp(&b))
    });

    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some((rep, members)) if values[i] - *rep <= LEVEL_TOLERANCE * rep.abs().max(1.0) => {
                members.push(i)
            }
            _ => groups.push((values[i], vec![i])),
        }
    }
    for (_, members) in &mut groups {
        members.sort_unstable();
    }

    let ell_min = values[order[0]];
    let ell_max = values[order[n - 1]];

    if groups.len() == 1 {
        // Constant payoff: the tie goes to sigma_max, sigma_min stays empty.
        let (_, members) = groups.pop().expect("non-empty payoff has one group");
        return LevelPartition {
            direction,
            sigma_max: members,
            sigma_min: Vec::new(),
            middle_sets: Vec::new(),
            level_values: Vec::new(),
            ell_max,
            ell_min,
            len: n,
        };
    }

    let (_, sigma_max) = groups.pop().expect("at least two groups");
    let (_, sigma_min) = groups.remove(0);
    let (mut level_values, mut middle_sets): (Vec<f64>, Vec<Vec<usize>>) =
        groups.into_iter().unzip();
    if direction == Direction::FromMax {
        level_values.reverse();
        middle_sets.reverse();
    }

    LevelPartition {
        direction,
        sigma_max,
        sigma_min,
        middle_sets,
        level_values,
        ell_max,
        ell_min,
        len: n,
    }
}

/// The payoff's oscillation `ℓ_max − ℓ_min`.
pub fn oscillation(ell: &PayoffVector) -> f64 {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in ell.entries() {
        min = min.min(v);
        max = max.max(v);
    }
    max - min
}
