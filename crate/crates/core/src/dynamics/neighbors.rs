use crate::model::{FeatureObject, FeatureSet, ObjectsScheme, Outcome, SocialRule};

/// Features on which `x` and `y` differ.
pub fn separating_features(rule: &SocialRule, x: Outcome, y: Outcome) -> FeatureSet {
    rule.space().separating(x, y)
}

/// Number of features separating `x` and `y`.
pub fn prominent_distance(rule: &SocialRule, x: Outcome, y: Outcome) -> usize {
    separating_features(rule, x, y).len()
}

/// Minimum number of walls separating `x` and `y`, `sum |vi - wi|`.
pub fn hyperplane_distance(rule: &SocialRule, x: Outcome, y: Outcome) -> usize {
    rule.space().wall_distance(x, y)
}

/// `Φ(x, I)`: outcomes preferred to `x` that agree with it outside `I`.
pub fn preferred_neighbors(rule: &SocialRule, x: Outcome, object: FeatureObject) -> Vec<Outcome> {
    preferred_in(rule, x, object.features())
}

pub(crate) fn preferred_in(rule: &SocialRule, x: Outcome, features: FeatureSet) -> Vec<Outcome> {
    rule.space().fiber(x, features).filter(|&y| y != x && rule.prefers(y, x)).collect()
}

/// The preferred neighbor dominating every other preferred neighbor.
///
/// Absent when `Φ(x, I)` is empty, and also when the preferred neighbors
/// contain a cycle and so have no top element.
pub fn best_neighbor(rule: &SocialRule, x: Outcome, object: FeatureObject) -> Option<Outcome> {
    best_in(rule, x, object.features())
}

pub(crate) fn best_in(rule: &SocialRule, x: Outcome, features: FeatureSet) -> Option<Outcome> {
    let preferred = preferred_in(rule, x, features);
    let mut candidate = *preferred.first()?;
    for &y in &preferred[1..] {
        if rule.prefers(y, candidate) {
            candidate = y;
        }
    }
    preferred.iter().all(|&y| y == candidate || rule.prefers(candidate, y)).then_some(candidate)
}

/// True iff no outcome at prominent distance 1 is preferred to `z`; exactly
/// the outcomes that are local optima for some objects scheme.
pub fn is_free(rule: &SocialRule, z: Outcome) -> bool {
    rule.space().unit_neighbors(z).all(|w| !rule.prefers(w, z))
}

/// True iff `Φ(z, A)` is empty.
pub fn is_local_optimum(rule: &SocialRule, z: Outcome, scheme: &ObjectsScheme) -> bool {
    is_local_for(rule, z, scheme.objects().iter().map(|o| o.features()))
}

pub(crate) fn is_local_for<I>(rule: &SocialRule, z: Outcome, objects: I) -> bool
where
    I: IntoIterator<Item = FeatureSet> + Clone,
{
    let space = rule.space();
    rule.dominators(z).all(|w| {
        let sep = space.separating(w, z);
        objects.clone().into_iter().all(|o| !sep.is_subset_of(o))
    })
}
