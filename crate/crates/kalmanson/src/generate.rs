//! Seeded random instances for exercising the rest of the crate.
//!
//! Everything here is deterministic in the seed: the same seed and
//! parameters produce the same splits, systems, and metrics on every run
//! and platform, which keeps randomized test suites and CLI output
//! reproducible.

use num::{BigInt, BigRational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{split_metric, Metric};
use crate::splits::{CircularOrdering, Split, SplitSystem};

/// The deterministic generator all functions here expect.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random non-trivial split of `{1, …, n}`, by rejection
/// over the blocks avoiding element 1.
pub fn random_split(rng: &mut ChaCha8Rng, n: usize) -> Split {
    assert!((4..=60).contains(&n), "ground set size out of range: {n}");
    loop {
        let mask: u64 = rng.random_range(0..1u64 << (n - 1));
        let size = mask.count_ones() as usize;
        if (2..=n - 2).contains(&size) {
            let block: Vec<usize> =
                (2..=n).filter(|e| mask >> (e - 2) & 1 == 1).collect();
            return Split::new(n, &block).expect("block sizes are in range");
        }
    }
}

/// A random split system of exactly `k` distinct non-trivial splits.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize, k: usize) -> SplitSystem {
    let max = (1usize << (n - 1)) - n - 1;
    assert!(k <= max, "only {max} non-trivial splits exist for n = {n}");
    let mut ss = SplitSystem::empty(n).expect("validated size");
    while ss.len() < k {
        ss.insert(random_split(rng, n));
    }
    ss
}

/// A random permutation of `1..=n`.
pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    perm
}

/// A random circular ordering (the canonical representative of a random
/// permutation).
pub fn random_ordering(rng: &mut ChaCha8Rng, n: usize) -> CircularOrdering {
    CircularOrdering::new(&random_permutation(rng, n))
        .expect("a permutation is a valid arrangement")
}

/// An unconstrained random metric: symmetric, zero diagonal, entries
/// `p/q` with `0 <= p <= 12` and `1 <= q <= 3`. Dense enough in small
/// cases that both members and non-members of the circular-decomposable
/// cone appear.
pub fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> Metric {
    Metric::from_fn(n, |_, _| {
        BigRational::new(
            BigInt::from(rng.random_range(0..=12u32)),
            BigInt::from(rng.random_range(1..=3u32)),
        )
    })
    .expect("generated entries are nonnegative")
}

/// A metric built as an explicit nonnegative combination over the arcs of
/// a circular ordering — by construction circular decomposable, with the
/// ordering returned alongside. Point terms `alpha` are nonnegative
/// integers, arc weights are nonnegative halves (`k/2`), and at least one
/// arc weight is forced positive so the metric is never purely trivial.
pub fn random_circular_metric(
    rng: &mut ChaCha8Rng,
    n: usize,
    scrambled: bool,
) -> (CircularOrdering, Metric) {
    let ordering = if scrambled {
        random_ordering(rng, n)
    } else {
        CircularOrdering::identity(n)
    };
    let o = ordering.order();
    let alpha: Vec<BigRational> = (0..n)
        .map(|_| BigRational::from(BigInt::from(rng.random_range(0..=4u32))))
        .collect();

    let mut parts: Vec<(BigRational, Metric)> = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let len = q - p;
            if len == 1 || len == n - 1 {
                continue;
            }
            let w = rng.random_range(0..=6u32);
            if w == 0 {
                continue;
            }
            let weight =
                BigRational::new(BigInt::from(w), BigInt::from(2u32));
            let block: Vec<usize> = o[p + 1..=q].to_vec();
            let split = Split::new(n, &block).expect("arcs are non-trivial");
            parts.push((weight, split_metric(&split)));
        }
    }
    if parts.is_empty() {
        // Force one arc so the cone part is never empty.
        let block: Vec<usize> = o[1..=2].to_vec();
        let split = Split::new(n, &block).expect("arcs are non-trivial");
        (parts).push((BigRational::from(BigInt::from(1)), split_metric(&split)));
    }

    let metric = Metric::from_fn(n, |i, j| {
        let mut v = alpha[o.iter().position(|&e| e == i).unwrap()].clone()
            + &alpha[o.iter().position(|&e| e == j).unwrap()];
        for (w, m) in &parts {
            v += w * m.get(i, j);
        }
        v
    })
    .expect("nonnegative combinations are metrics");
    (ordering, metric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{decompose, is_kalmanson_under, recognize};

    #[test]
    fn generation_is_seed_deterministic() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..20 {
            assert_eq!(random_split(&mut a, 8), random_split(&mut b, 8));
        }
        let mut a = rng(11);
        let mut b = rng(11);
        assert_eq!(random_metric(&mut a, 6), random_metric(&mut b, 6));
        assert_eq!(
            random_circular_metric(&mut a, 7, true),
            random_circular_metric(&mut b, 7, true)
        );
        // Different seeds diverge (with overwhelming probability).
        let mut c = rng(12);
        assert_ne!(random_metric(&mut a, 6), random_metric(&mut c, 6));
    }

    #[test]
    fn random_splits_are_nontrivial_and_cover() {
        let mut r = rng(3);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..400 {
            let s = random_split(&mut r, 5);
            assert!(!s.is_trivial());
            assert_eq!(s.n(), 5);
            seen.insert(s);
        }
        // All 10 non-trivial splits of a 5-set should appear in 400 draws.
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn random_systems_have_requested_size() {
        let mut r = rng(5);
        for k in 0..=6 {
            let ss = random_system(&mut r, 7, k);
            assert_eq!(ss.len(), k);
        }
    }

    #[test]
    fn circular_instances_are_members() {
        let mut r = rng(42);
        for n in 5..=7 {
            for case in 0..10 {
                let scrambled = case % 2 == 0;
                let (ordering, metric) =
                    random_circular_metric(&mut r, n, scrambled);
                assert!(
                    is_kalmanson_under(&metric, &ordering),
                    "built instance must pass its own ordering"
                );
                let dec = decompose(&metric, &ordering)
                    .expect("built instance decomposes");
                assert_eq!(dec.reconstruct(), metric);
                let (_, found) =
                    recognize(&metric).unwrap().expect("must be recognized");
                assert_eq!(found.reconstruct(), metric);
            }
        }
    }

    #[test]
    fn unscrambled_instances_use_the_identity() {
        let mut r = rng(9);
        let (ordering, _) = random_circular_metric(&mut r, 6, false);
        assert_eq!(ordering, CircularOrdering::identity(6));
    }
}
