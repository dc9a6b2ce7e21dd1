//! Small named rules that exhibit the different kinds of optima.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{FeatureSpace, Outcome, SocialRule};
use crate::Tournament;

/// Preferences fixed in the three-binary-feature example, as
/// `(winner, loser)` value strings.
pub const EXAMPLE_ARCS: [(&str, &str); 18] = [
    ("000", "100"),
    ("000", "010"),
    ("000", "001"),
    ("000", "101"),
    ("000", "011"),
    ("110", "000"),
    ("110", "100"),
    ("110", "010"),
    ("110", "101"),
    ("110", "011"),
    ("101", "100"),
    ("101", "001"),
    ("101", "111"),
    ("011", "010"),
    ("011", "001"),
    ("011", "101"),
    ("011", "111"),
    ("111", "110"),
];

fn binary_index(bits: &str) -> usize {
    usize::from_str_radix(bits, 2).expect("binary outcome literal")
}

/// The ten pairs `(i, j)`, `i < j`, left open by [`EXAMPLE_ARCS`].
pub fn example_free_pairs() -> Vec<(usize, usize)> {
    let fixed: Vec<(usize, usize)> = EXAMPLE_ARCS
        .iter()
        .map(|(a, b)| {
            let (a, b) = (binary_index(a), binary_index(b));
            (a.min(b), a.max(b))
        })
        .collect();
    (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).filter(|p| !fixed.contains(p)).collect()
}

/// The example rule with the open pairs oriented by `lower_wins(i, j)`
/// (`true` means `i ≻ j`).
pub fn example_rule_with<F: FnMut(usize, usize) -> bool>(mut lower_wins: F) -> SocialRule {
    let arcs: Vec<(usize, usize)> = EXAMPLE_ARCS.iter().map(|(a, b)| (binary_index(a), binary_index(b))).collect();
    let space = FeatureSpace::binary(3).expect("binary cube");
    SocialRule::from_fn(space, |x, y| {
        let (i, j) = (x.0, y.0);
        if arcs.contains(&(i, j)) {
            true
        } else if arcs.contains(&(j, i)) {
            false
        } else {
            lower_wins(i, j)
        }
    })
}

/// Canonical completion: in every open pair the lower index wins.
pub fn example_rule() -> SocialRule {
    example_rule_with(|_, _| true)
}

/// Completion with each open pair oriented by a seeded fair coin.
pub fn example_rule_seeded(seed: u64) -> SocialRule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    example_rule_with(|_, _| rng.gen::<bool>())
}

/// `g = 011`, `u = 000` and `l = 101` of the example.
pub fn example_points() -> (Outcome, Outcome, Outcome) {
    (Outcome(binary_index("011")), Outcome(binary_index("000")), Outcome(binary_index("101")))
}

/// One feature with three values and the cycle `0 ≻ 1 ≻ 2 ≻ 0`.
pub fn three_cycle_rule() -> SocialRule {
    let space = FeatureSpace::new(&[3]).expect("three values");
    SocialRule::from_fn(space, |x, y| (x.0, y.0) != (0, 2))
}

/// Two binary features where `00` is a local optimum for the singleton
/// scheme while `11` alone forms the top component.
pub fn local_not_max_rule() -> SocialRule {
    // 00 = 0, 01 = 1, 10 = 2, 11 = 3
    let arcs = [(2, 1), (3, 1), (3, 2), (3, 0), (0, 1), (0, 2)];
    let space = FeatureSpace::binary(2).expect("square");
    SocialRule::from_fn(space, |x, y| arcs.contains(&(x.0, y.0)))
}

/// Five outcomes of a single feature: `p5` beats all, `p2 ≻ p3 ≻ p4 ≻ p2`,
/// and `p2, p3, p4` beat `p1` (outcome `k` is `p_{k+1}`).
pub fn condensation_rule() -> SocialRule {
    let arcs = [(4, 0), (4, 1), (4, 2), (4, 3), (1, 2), (2, 3), (3, 1), (1, 0), (2, 0), (3, 0)];
    let space = FeatureSpace::new(&[5]).expect("five values");
    SocialRule::new(space, Tournament::from_fn(5, |i, j| arcs.contains(&(i, j)))).expect("sizes agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_has_ten_open_pairs() {
        assert_eq!(example_free_pairs().len(), 10);
        let r = example_rule();
        for (a, b) in EXAMPLE_ARCS {
            assert!(r.prefers(Outcome(binary_index(a)), Outcome(binary_index(b))));
        }
        let s = example_rule_seeded(3);
        for (a, b) in EXAMPLE_ARCS {
            assert!(s.prefers(Outcome(binary_index(a)), Outcome(binary_index(b))));
        }
    }

    #[test]
    fn seeded_completions_differ() {
        let rules: Vec<String> = (0..32).map(|s| example_rule_seeded(s).serialize()).collect();
        let mut distinct = rules.clone();
        distinct.sort();
        distinct.dedup();
        assert!(distinct.len() > 20);
    }
}
