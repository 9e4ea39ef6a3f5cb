//! Property tests for the closed-form solvers: budget activity, value
//! ordering, the waterfall depletion pattern, inverse-map identity, sweep
//! consistency and invariance under within-level reshuffles.

mod common;

use proptest::prelude::*;
use tvopt::solvers::FEASIBILITY_TOLERANCE;
use tvopt::{
    expectation, r_max, solve_d_minus, solve_d_plus, solve_r_minus, solve_r_plus, solvers, sweep,
    tv_distance, ExtremumSolution, PayoffVector, ProbabilityVector, ProblemKind,
};

prop_compose! {
    /// Alphabets of 2..=max_n symbols; roughly a quarter of payoff entries
    /// duplicate their left neighbour to force ties, and weights may contain
    /// a zero.
    fn instances(max_n: usize)
        (n in 2..=max_n)
        (values in prop::collection::vec(0.0..1.0f64, n),
         weights in prop::collection::vec(0.05..1.0f64, n),
         ties in prop::collection::vec(prop::bool::weighted(0.25), n),
         zero_at in prop::option::of(0..n))
        -> (PayoffVector, ProbabilityVector)
    {
        let mut values = values;
        for i in 1..values.len() {
            if ties[i] {
                values[i] = values[i - 1];
            }
        }
        let mut weights = weights;
        if let Some(j) = zero_at {
            weights[j] = 0.0;
        }
        let total: f64 = weights.iter().sum();
        let mu: Vec<f64> = weights.iter().map(|w| w / total).collect();
        (
            PayoffVector::new(values).unwrap(),
            ProbabilityVector::new(mu).unwrap(),
        )
    }
}

/// Final drain-set masses in depletion order, paired with their nominal
/// masses: the opposite extreme first, then the middle sets.
fn depletion_pattern(
    mu: &ProbabilityVector,
    solution: &ExtremumSolution,
    gain_is_max: bool,
) -> Vec<(f64, f64)> {
    let partition = &solution.partition;
    let (first_set, first_mass) = if gain_is_max {
        (partition.sigma_min(), solution.set_masses[1].mass)
    } else {
        (partition.sigma_max(), solution.set_masses[0].mass)
    };
    let mut pattern = vec![(mu.mass_on(first_set), first_mass)];
    for (set, entry) in partition
        .middle_sets()
        .iter()
        .zip(&solution.set_masses[2..])
    {
        pattern.push((mu.mass_on(set), entry.mass));
    }
    pattern
}

/// Asserts the waterfall shape: emptied sets form a prefix, at most one set
/// is partially drained, and everything after it keeps its nominal mass.
fn assert_waterfall(pattern: &[(f64, f64)]) -> Result<(), TestCaseError> {
    let mut draining = true;
    for &(nominal, fin) in pattern {
        prop_assert!(fin >= -1e-15 && fin <= nominal + 1e-12);
        if draining {
            if fin > 1e-12 {
                draining = false;
            }
        } else {
            prop_assert!(
                (fin - nominal).abs() <= 1e-12,
                "set touched after the drain front passed: kept {fin} of {nominal}"
            );
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn ball_solutions_sit_on_the_sphere_until_saturation(
        ((ell, mu), radius) in (instances(8), 0.0..=2.0f64)
    ) {
        for kind in [ProblemKind::DPlus, ProblemKind::DMinus] {
            let s = solvers::solve(kind, &ell, &mu, radius).unwrap();
            let tv = tv_distance(&s.nu_star, &mu).unwrap();
            prop_assert!((tv - 2.0 * s.alpha).abs() <= FEASIBILITY_TOLERANCE);

            let gain = if kind == ProblemKind::DPlus {
                s.partition.sigma_max()
            } else {
                s.partition.sigma_min()
            };
            let active = if s.partition.is_degenerate() {
                0.0
            } else {
                radius.min(2.0 * (1.0 - mu.mass_on(gain)))
            };
            prop_assert!(
                (tv - active).abs() <= FEASIBILITY_TOLERANCE,
                "{kind}: budget should be active up to its cap, tv {tv} vs {active}"
            );
            // Exactly at the cap counts as unsaturated, strictly beyond as
            // saturated (any positive radius is slack on a constant payoff).
            let expected = if s.partition.is_degenerate() {
                radius > 0.0
            } else {
                radius / 2.0 > 1.0 - mu.mass_on(gain)
            };
            prop_assert_eq!(s.saturated, expected);
        }
    }

    #[test]
    fn values_are_ordered_between_the_extremes(
        ((ell, mu), radius) in (instances(8), 0.0..=2.0f64)
    ) {
        let nominal = expectation(&ell, &mu).unwrap();
        let lo = ell.entries().iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ell.entries().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let best = solve_d_plus(&ell, &mu, radius).unwrap().value;
        let worst = solve_d_minus(&ell, &mu, radius).unwrap().value;
        prop_assert!(worst <= nominal + 1e-12);
        prop_assert!(nominal <= best + 1e-12);
        prop_assert!(best <= hi + 1e-12);
        prop_assert!(worst >= lo - 1e-12);
    }

    #[test]
    fn drained_sets_follow_the_waterfall_pattern(
        ((ell, mu), radius) in (instances(8), 0.0..=2.0f64)
    ) {
        let best = solve_d_plus(&ell, &mu, radius).unwrap();
        if !best.partition.is_degenerate() {
            assert_waterfall(&depletion_pattern(&mu, &best, true))?;
        }
        let worst = solve_d_minus(&ell, &mu, radius).unwrap();
        if !worst.partition.is_degenerate() {
            assert_waterfall(&depletion_pattern(&mu, &worst, false))?;
        }
    }

    #[test]
    fn set_masses_sum_to_one_and_match_nu_star(
        ((ell, mu), radius) in (instances(8), 0.0..=2.0f64)
    ) {
        for kind in ProblemKind::ALL {
            let budget = match kind {
                ProblemKind::DPlus | ProblemKind::DMinus => radius,
                // Midpoints of the valid target ranges.
                ProblemKind::RMinus => {
                    let lo = ell.entries().iter().cloned().fold(f64::INFINITY, f64::min);
                    (lo + expectation(&ell, &mu).unwrap()) / 2.0
                }
                ProblemKind::RPlus => {
                    let hi = ell.entries().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    (hi + expectation(&ell, &mu).unwrap()) / 2.0
                }
            };
            let s = solvers::solve(kind, &ell, &mu, budget).unwrap();
            let total: f64 = s.set_masses.iter().map(|m| m.mass).sum();
            prop_assert!((total - 1.0).abs() <= 1e-9, "{kind}: set masses sum to {total}");

            if !s.partition.is_degenerate() {
                // Each labelled mass equals nu_star restricted to its set.
                let labelled = s.partition.labelled_sets();
                prop_assert_eq!(labelled.len(), s.set_masses.len());
                for ((_, indices, _), mass) in labelled.iter().zip(&s.set_masses) {
                    let from_nu = s.nu_star.mass_on(indices);
                    prop_assert!((from_nu - mass.mass).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn reaching_the_best_payoff_costs_the_original_radius(
        ((ell, mu), fraction) in (instances(8), 0.0..=1.0f64)
    ) {
        let radius = fraction * r_max(&ell, &mu).unwrap();
        let reached = solve_d_plus(&ell, &mu, radius).unwrap().value;
        let back = solve_r_plus(&ell, &mu, reached).unwrap().value;
        prop_assert!(
            (back - radius).abs() <= 1e-8,
            "radius {radius} reached {reached}, inverted to {back}"
        );
    }

    #[test]
    fn capping_at_the_cheapest_radius_is_feasible(
        ((ell, mu), fraction) in (instances(8), 0.0..=1.0f64)
    ) {
        let lo = ell.entries().iter().cloned().fold(f64::INFINITY, f64::min);
        let nominal = expectation(&ell, &mu).unwrap();
        let target = lo + fraction * (nominal - lo);
        let s = solve_r_minus(&ell, &mu, target).unwrap();
        let payoff = expectation(&ell, &s.nu_star).unwrap();
        prop_assert!(payoff <= target + FEASIBILITY_TOLERANCE);
        let tv = tv_distance(&s.nu_star, &mu).unwrap();
        prop_assert!((tv - s.value).abs() <= FEASIBILITY_TOLERANCE);
    }

    #[test]
    fn sweeps_match_individual_solves(
        ((ell, mu), count) in (instances(6), 2usize..12)
    ) {
        let grid: Vec<f64> = (0..count)
            .map(|i| 2.0 * i as f64 / (count - 1) as f64)
            .collect();
        let points = sweep(ProblemKind::DPlus, &ell, &mu, &grid).unwrap();
        prop_assert_eq!(points.len(), grid.len());
        for (point, &budget) in points.iter().zip(&grid) {
            prop_assert_eq!(point.budget, budget);
            let single = solve_d_plus(&ell, &mu, budget).unwrap();
            prop_assert_eq!(point.value, single.value);
            prop_assert_eq!(point.alpha, single.alpha);
            prop_assert_eq!(point.saturated, single.saturated);
            prop_assert_eq!(&point.nu_star, &single.nu_star);
        }
    }

    #[test]
    fn swapping_weights_within_a_level_set_changes_nothing(
        ((ell, mu), radius, pick) in (instances(8), 0.0..=2.0f64, any::<prop::sample::Index>())
    ) {
        // Collect all index pairs with exactly equal payoff entries.
        let e = ell.entries();
        let mut pairs = Vec::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] == e[j] {
                    pairs.push((i, j));
                }
            }
        }
        prop_assume!(!pairs.is_empty());
        let (i, j) = pairs[pick.index(pairs.len())];
        let mut swapped = mu.entries().to_vec();
        swapped.swap(i, j);
        let swapped = ProbabilityVector::new(swapped).unwrap();

        for kind in [ProblemKind::DPlus, ProblemKind::DMinus] {
            let original = solvers::solve(kind, &ell, &mu, radius).unwrap();
            let reshuffled = solvers::solve(kind, &ell, &swapped, radius).unwrap();
            prop_assert!((original.value - reshuffled.value).abs() <= 1e-12);
            prop_assert!((original.alpha - reshuffled.alpha).abs() <= 1e-12);
            // The witness is the same measure with the two symbols swapped.
            let mut mirror = reshuffled.nu_star.entries().to_vec();
            mirror.swap(i, j);
            for (a, b) in original.nu_star.entries().iter().zip(&mirror) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn gaining_set_without_nominal_mass_shares_uniformly() {
    let ell = PayoffVector::new(vec![0.0, 0.5, 1.0, 1.0]).unwrap();
    let mu = ProbabilityVector::new(vec![0.5, 0.5, 0.0, 0.0]).unwrap();
    let s = solve_d_plus(&ell, &mu, 0.4).unwrap();
    // Half the budget lands on each of the two massless argmax symbols.
    assert!((s.nu_star[2] - 0.1).abs() <= 1e-15);
    assert!((s.nu_star[3] - 0.1).abs() <= 1e-15);
    assert!((s.nu_star[0] - 0.3).abs() <= 1e-15);
    assert!((s.value - (0.2 + 0.25)).abs() <= 1e-12);
}
