use crate::model::{FeatureSpace, Outcome, SocialRule};

/// A rule with the largest possible number of free outcomes, `prod_{i>=2} mi`
/// with the counts sorted nonincreasingly.
pub fn construct_extremal_rule(space: &FeatureSpace) -> SocialRule {
    construct_extremal_rule_shifted(space, 0)
}

/// Variant `l` of the extremal construction. Let `a` be a feature with the
/// most values. The free outcomes are those with
/// `v_a = (l + sum_{i != a} v_i) mod m_a`: any two differ in at least two
/// features, and every other outcome is one step from one of them. They are
/// placed on top of a transitive order, so each beats its unit neighbors.
/// Different shifts `l < min mi` give disjoint free sets.
pub fn construct_extremal_rule_shifted(space: &FeatureSpace, shift: usize) -> SocialRule {
    let counts = space.counts();
    let anchor = (0..counts.len()).max_by_key(|&f| (counts[f], std::cmp::Reverse(f))).unwrap_or(0);
    let is_code = |x: Outcome| {
        let v = space.decode(x);
        let rest: usize = v.iter().enumerate().filter(|&(f, _)| f != anchor).map(|(_, &d)| d).sum();
        v[anchor] == (shift + rest) % counts[anchor]
    };
    let code: Vec<bool> = space.outcomes().map(is_code).collect();
    SocialRule::from_fn(space.clone(), |x, y| code[x.0] || !code[y.0])
}
