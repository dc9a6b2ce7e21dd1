use crate::dynamics::neighbors::best_in;
use crate::model::{ObjectsScheme, Outcome, SocialRule};
use crate::Condensation;

/// True when some object of `scheme` moves `x` to a strictly higher
/// component of `condensation`.
pub fn is_lifting(rule: &SocialRule, x: Outcome, scheme: &ObjectsScheme, condensation: &Condensation) -> bool {
    let rank = condensation.rank_of(x.0);
    scheme.objects().iter().filter_map(|o| best_in(rule, x, o.features())).any(|y| condensation.rank_of(y.0) > rank)
}

/// Searches for an outcome `y` in a higher component that no dominator of
/// `y` can displace inside the features separating `x` and `y`. Such a `y`
/// exists iff `x` is lifting for some scheme; the smallest one is returned.
pub fn exists_lifting_scheme(rule: &SocialRule, x: Outcome, condensation: &Condensation) -> Option<Outcome> {
    let space = rule.space();
    let rank = condensation.rank_of(x.0);
    space.outcomes().filter(|&y| condensation.rank_of(y.0) > rank).find(|&y| {
        let sep = space.separating(x, y);
        rule.dominators(y).all(|w| !space.separating(w, y).is_subset_of(sep))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::tournament::irreducible_components;
    use crate::{FeatureObject, FeatureSet};

    #[test]
    fn max_component_never_lifts() {
        for seed in 0..8 {
            let r = example_rule_seeded(seed);
            let c = irreducible_components(r.tournament());
            let scheme = ObjectsScheme::new(vec![FeatureObject::new(FeatureSet::all(3), 3).unwrap()], 3).unwrap();
            for &x in c.max_component() {
                assert!(!is_lifting(&r, Outcome(x), &scheme, &c));
                assert_eq!(exists_lifting_scheme(&r, Outcome(x), &c), None);
            }
        }
    }

    #[test]
    fn bottom_of_condensation_fixture_lifts() {
        let r = condensation_rule();
        let c = irreducible_components(r.tournament());
        let whole = ObjectsScheme::singletons(1);
        // p5 beats everyone, so it is the best neighbor of p1
        assert!(is_lifting(&r, Outcome(0), &whole, &c));
        assert_eq!(exists_lifting_scheme(&r, Outcome(0), &c), Some(Outcome(4)));
        // p2 moves straight to p5 as well
        assert!(is_lifting(&r, Outcome(1), &whole, &c));
        assert!(!is_lifting(&r, Outcome(4), &whole, &c));
    }

    #[test]
    fn lifting_agrees_with_witness_over_schemes() {
        let r = example_rule_seeded(11);
        let c = irreducible_components(r.tournament());
        let objects: Vec<FeatureObject> = (1..8u64).map(|b| FeatureObject::new(FeatureSet(b), 3).unwrap()).collect();
        for x in r.space().outcomes() {
            let mut any = false;
            for mask in 1u32..(1 << 7) {
                let chosen: Vec<FeatureObject> = (0..7).filter(|i| mask >> i & 1 == 1).map(|i| objects[i]).collect();
                if let Ok(s) = ObjectsScheme::new(chosen, 3) {
                    any |= is_lifting(&r, x, &s, &c);
                }
            }
            assert_eq!(any, exists_lifting_scheme(&r, x, &c).is_some(), "x = {x:?}");
        }
    }
}
