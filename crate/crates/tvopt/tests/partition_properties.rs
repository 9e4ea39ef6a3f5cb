//! Property checks for level partitions: disjoint covering, monotone level
//! values, direction reversal, and stability under symbol permutations.

mod common;

use rand::seq::SliceRandom;
use rand::Rng;
use tvopt::{build_partition, oscillation, Direction, PayoffVector};

#[test]
fn a_thousand_random_payoffs_partition_cleanly() {
    let mut rng = common::rng(0xBA5E_0001);
    for trial in 0..1000 {
        let n = 1 + trial % 12;
        let ell = common::random_payoff(&mut rng, n);
        let values = ell.entries();
        let top = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let bottom = values.iter().cloned().fold(f64::INFINITY, f64::min);

        for direction in [Direction::FromMin, Direction::FromMax] {
            let p = build_partition(&ell, direction);

            // Every index appears exactly once, and sets list indices in
            // ascending order.
            let mut appearances = vec![0usize; n];
            let mut all_sets: Vec<&[usize]> = vec![p.sigma_max(), p.sigma_min()];
            all_sets.extend(p.middle_sets().iter().map(|s| s.as_slice()));
            for set in all_sets {
                for &i in set {
                    appearances[i] += 1;
                }
                assert!(set.windows(2).all(|w| w[0] < w[1]), "trial {trial}: unsorted set");
            }
            assert!(
                appearances.iter().all(|&c| c == 1),
                "trial {trial}: not a disjoint cover: {appearances:?}"
            );

            // Extremes carry the extreme values; members match their set's
            // level exactly (ties are injected as exact copies).
            assert_eq!(p.ell_max(), top);
            assert_eq!(p.ell_min(), bottom);
            for &i in p.sigma_max() {
                assert_eq!(values[i], top);
            }
            if p.is_degenerate() {
                assert!(p.sigma_min().is_empty());
                assert_eq!(p.middle_count(), 0);
                continue;
            }
            for &i in p.sigma_min() {
                assert_eq!(values[i], bottom);
            }
            for (set, &level) in p.middle_sets().iter().zip(p.level_values()) {
                for &i in set {
                    assert_eq!(values[i], level, "trial {trial}: member off its level");
                }
                assert!(level > bottom && level < top);
            }

            // Level values are strictly monotone in the listing direction.
            let monotone = p.level_values().windows(2).all(|w| match direction {
                Direction::FromMin => w[0] < w[1],
                Direction::FromMax => w[0] > w[1],
            });
            assert!(monotone, "trial {trial}: middle levels not strictly monotone");

            // Middle-set count respects the alphabet size.
            assert!(p.middle_count() <= n - p.sigma_max().len() - p.sigma_min().len());
        }
        assert_eq!(oscillation(&ell), top - bottom);
    }
}

#[test]
fn both_directions_share_the_same_groupings_reversed() {
    let mut rng = common::rng(0xBA5E_0002);
    for _ in 0..200 {
        let n = 2 + rng.random_range(0..10);
        let ell = common::random_payoff(&mut rng, n);
        let up = build_partition(&ell, Direction::FromMin);
        let down = build_partition(&ell, Direction::FromMax);

        assert_eq!(up.sigma_max(), down.sigma_max());
        assert_eq!(up.sigma_min(), down.sigma_min());
        assert_eq!(up.middle_count(), down.middle_count());
        let reversed_sets: Vec<_> = down.middle_sets().iter().rev().cloned().collect();
        assert_eq!(up.middle_sets(), reversed_sets.as_slice());
        let reversed_levels: Vec<f64> = down.level_values().iter().rev().copied().collect();
        assert_eq!(up.level_values(), reversed_levels.as_slice());
    }
}

#[test]
fn permuting_symbols_permutes_the_partition() {
    let mut rng = common::rng(0xBA5E_0003);
    for _ in 0..300 {
        let n = 2 + rng.random_range(0..10);
        let ell = common::random_payoff(&mut rng, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        // Symbol i of the original becomes symbol perm[i] of the image.
        let mut image = vec![0.0; n];
        for (i, &target) in perm.iter().enumerate() {
            image[target] = ell[i];
        }
        let image = PayoffVector::new(image).unwrap();

        let original = build_partition(&ell, Direction::FromMin);
        let mapped = build_partition(&image, Direction::FromMin);

        let map_set = |set: &[usize]| -> Vec<usize> {
            let mut out: Vec<usize> = set.iter().map(|&i| perm[i]).collect();
            out.sort_unstable();
            out
        };
        assert_eq!(mapped.sigma_max(), map_set(original.sigma_max()));
        assert_eq!(mapped.sigma_min(), map_set(original.sigma_min()));
        assert_eq!(mapped.middle_count(), original.middle_count());
        for (set, mapped_set) in original.middle_sets().iter().zip(mapped.middle_sets()) {
            assert_eq!(*mapped_set, map_set(set));
        }
        assert_eq!(mapped.level_values(), original.level_values());
    }
}
