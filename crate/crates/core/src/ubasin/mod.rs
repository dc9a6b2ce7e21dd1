//! Universal basins of attraction.
//!
//! `x` reaches a free `z` through some objects scheme iff there is a chain
//! `x = x_d -> ... -> x_0 = z` in which every hop `x_j -> x_{j-1}` is the best
//! neighbor of `x_j` inside the features separating them, and that feature
//! set is *admissible*: it contains no `sep(w, z)` with `w ≻ z`. The strata
//! `E^z_d` are the BFS layers of this relation run backwards from `z`.

mod oracle;
mod witness;

use serde::Serialize;

use crate::dynamics::is_free;
use crate::model::{FeatureSet, Outcome, SocialRule};
use crate::tournament::irreducible_components;
use crate::Condensation;

pub use oracle::{oracle_universal_basin, OracleBasin, ORACLE_MAX_FEATURES};
pub use witness::{witness_scheme, WitnessResult};

/// Stratified universal basin of `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasinReport {
    pub z: Outcome,
    /// `E^z_0 = {z}, E^z_1, ..., E^z_h`, each sorted ascending. Empty when
    /// `z` is not free.
    pub strata: Vec<Vec<Outcome>>,
    /// Stratum index of each outcome, `None` for outcomes outside the basin.
    pub deepness: Vec<Option<usize>>,
}

impl BasinReport {
    /// Index of the last nonempty stratum; `None` stands for `-∞`.
    pub fn u_deepness(&self) -> Option<usize> {
        self.strata.len().checked_sub(1)
    }

    /// `Ψ(z)` sorted ascending.
    pub fn members(&self) -> Vec<Outcome> {
        let mut all: Vec<Outcome> = self.strata.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn len(&self) -> usize {
        self.strata.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn is_u_local(&self) -> bool {
        self.len() == self.deepness.len()
    }
}

/// Separations `sep(w, z)` for the dominators `w` of `z`, used to decide
/// which objects leave `z` without a preferred neighbor.
pub(crate) struct Admissibility {
    blocking: Vec<FeatureSet>,
}

impl Admissibility {
    pub(crate) fn new(rule: &SocialRule, z: Outcome) -> Self {
        let space = rule.space();
        let mut blocking: Vec<FeatureSet> = rule.dominators(z).map(|w| space.separating(w, z)).collect();
        blocking.sort_unstable();
        blocking.dedup();
        // drop supersets, they never decide anything
        let minimal: Vec<FeatureSet> =
            blocking.iter().copied().filter(|&s| !blocking.iter().any(|&t| t != s && t.is_subset_of(s))).collect();
        Admissibility { blocking: minimal }
    }

    /// `Φ(z, J) = ∅`.
    pub(crate) fn allows(&self, features: FeatureSet) -> bool {
        self.blocking.iter().all(|&s| !s.is_subset_of(features))
    }
}

/// True when `y` is the best neighbor of `x` inside `sep(x, y)`: `y ≻ x`
/// and no common dominator of `x` and `y` differs from them only there.
pub(crate) fn is_best_hop(rule: &SocialRule, x: Outcome, y: Outcome, sep: FeatureSet) -> bool {
    if !rule.prefers(y, x) {
        return false;
    }
    let space = rule.space();
    rule.tournament().common_dominators(y.0, x.0).all(|w| !space.separating(Outcome(w), y).is_subset_of(sep))
}

/// Which hop test the stratification uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HopRule {
    /// `y = B(x, sep(x, y))`.
    BestNeighbor,
    /// The literal listing test: `z` seeds its layer with every admissible
    /// `y ≺ z`; later layers require `sep(y, x) ⊉ sep(w, y)` for every
    /// `w ≻ y`.
    Literal,
}

struct Search<'a> {
    rule: &'a SocialRule,
    z: Outcome,
    hop: HopRule,
    stop_at: Option<Outcome>,
}

impl Search<'_> {
    /// Layers and, for each member, the outcome of the previous layer it
    /// hops to.
    fn run(&self, condensation: &Condensation) -> (Vec<Vec<Outcome>>, Vec<Option<Outcome>>) {
        let rule = self.rule;
        let space = rule.space();
        let m = space.size();
        let z = self.z;
        let mut parent = vec![None; m];
        if !is_free(rule, z) {
            return (Vec::new(), parent);
        }
        let top = condensation.rank_of(z.0);
        let mut open: Vec<bool> = (0..m).map(|x| condensation.rank_of(x) <= top).collect();
        let admissible = Admissibility::new(rule, z);
        open[z.0] = false;
        let mut strata = vec![vec![z]];
        if self.stop_at == Some(z) {
            return (strata, parent);
        }
        loop {
            let current = strata.last().expect("nonempty");
            let mut next = Vec::new();
            for &y in current {
                let blocking_y = (self.hop == HopRule::Literal && y != z).then(|| Admissibility::new(rule, y));
                for x in rule.tournament().dominated_by(y.0).map(Outcome) {
                    if !open[x.0] {
                        continue;
                    }
                    let sep = space.separating(x, y);
                    if !admissible.allows(sep) {
                        continue;
                    }
                    let ok = match (&self.hop, &blocking_y) {
                        (HopRule::BestNeighbor, _) => is_best_hop(rule, x, y, sep),
                        (HopRule::Literal, None) => true,
                        (HopRule::Literal, Some(b)) => b.allows(sep),
                    };
                    if ok {
                        open[x.0] = false;
                        parent[x.0] = Some(y);
                        next.push(x);
                        if self.stop_at == Some(x) {
                            strata.push(next);
                            return (strata, parent);
                        }
                    }
                }
            }
            if next.is_empty() {
                return (strata, parent);
            }
            next.sort_unstable();
            strata.push(next);
        }
    }
}

fn report(rule: &SocialRule, z: Outcome, strata: Vec<Vec<Outcome>>) -> BasinReport {
    let mut deepness = vec![None; rule.space().size()];
    for (d, layer) in strata.iter().enumerate() {
        for x in layer {
            deepness[x.0] = Some(d);
        }
    }
    BasinReport { z, strata, deepness }
}

/// Universal basin of `z` with its strata. Components ranked above the
/// component of `z` are discarded first, as nothing there can reach `z`.
pub fn universal_basin(rule: &SocialRule, z: Outcome) -> BasinReport {
    universal_basin_with(rule, z, &irreducible_components(rule.tournament()))
}

/// As [`universal_basin`], reusing a precomputed condensation.
pub fn universal_basin_with(rule: &SocialRule, z: Outcome, condensation: &Condensation) -> BasinReport {
    let search = Search { rule, z, hop: HopRule::BestNeighbor, stop_at: None };
    report(rule, z, search.run(condensation).0)
}

/// The stratification with the literal listing test for later layers.
///
/// That test asks that no dominator of `y` differs from `y` only inside
/// `sep(x, y)`, even one that `x` beats. It is stricter than the best-hop
/// test and can miss outcomes of the universal basin.
pub fn universal_basin_literal(rule: &SocialRule, z: Outcome) -> BasinReport {
    universal_basin_literal_with(rule, z, &irreducible_components(rule.tournament()))
}

pub fn universal_basin_literal_with(rule: &SocialRule, z: Outcome, condensation: &Condensation) -> BasinReport {
    let search = Search { rule, z, hop: HopRule::Literal, stop_at: None };
    report(rule, z, search.run(condensation).0)
}

/// `Ψ(z) = X`.
pub fn is_u_local_optimum(rule: &SocialRule, z: Outcome) -> bool {
    universal_basin(rule, z).is_u_local()
}

/// Whether `x ∈ Ψ(z)`, stopping as soon as `x` is placed.
pub fn in_universal_basin(rule: &SocialRule, x: Outcome, z: Outcome) -> bool {
    deepness(rule, x, z).is_some()
}

/// Stratum of `x` in the basin of `z`; `None` stands for `∞`.
pub fn deepness(rule: &SocialRule, x: Outcome, z: Outcome) -> Option<usize> {
    let search = Search { rule, z, hop: HopRule::BestNeighbor, stop_at: Some(x) };
    let (strata, _) = search.run(&irreducible_components(rule.tournament()));
    strata.iter().position(|layer| layer.contains(&x))
}

pub(crate) fn basin_with_parents(rule: &SocialRule, z: Outcome, x: Outcome) -> (bool, Vec<Option<Outcome>>) {
    let search = Search { rule, z, hop: HopRule::BestNeighbor, stop_at: Some(x) };
    let (strata, parent) = search.run(&irreducible_components(rule.tournament()));
    (strata.iter().any(|layer| layer.contains(&x)), parent)
}

/// Outcomes whose universal basin is all of `X`. Only free members of the
/// top component are tried, since no other outcome can qualify.
pub fn u_local_optima(rule: &SocialRule) -> Vec<Outcome> {
    let condensation = irreducible_components(rule.tournament());
    condensation
        .max_component()
        .iter()
        .map(|&z| Outcome(z))
        .filter(|&z| is_free(rule, z))
        .filter(|&z| universal_basin_with(rule, z, &condensation).is_u_local())
        .collect()
}

/// `G^z_x`: outcomes `y ≻ x` whose separating features are admissible for
/// `z` and leave `x` a best neighbor. Empty when `z` is not free.
pub fn g_set(rule: &SocialRule, x: Outcome, z: Outcome) -> Vec<Outcome> {
    if !is_free(rule, z) {
        return Vec::new();
    }
    let admissible = Admissibility::new(rule, z);
    let space = rule.space();
    rule.dominators(x)
        .filter(|&y| {
            let sep = space.separating(x, y);
            admissible.allows(sep) && crate::dynamics::best_in(rule, x, sep).is_some()
        })
        .collect()
}

/// `S^z_i`: members `x` of component `i` with `G^z_x` inside component `i`,
/// i.e. outcomes that no scheme keeping `z` local can lift.
///
/// With `z` not free every `G^z_x` is empty, so the whole component is
/// returned.
pub fn s_set(rule: &SocialRule, z: Outcome, component: usize, condensation: &Condensation) -> Vec<Outcome> {
    condensation.components()[component]
        .iter()
        .map(|&x| Outcome(x))
        .filter(|&x| g_set(rule, x, z).iter().all(|y| condensation.rank_of(y.0) == component))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn example_basins() {
        for seed in (0..32).map(Some).chain([None]) {
            let r = seed.map_or_else(example_rule, example_rule_seeded);
            let (g, u, l) = example_points();
            assert!(is_u_local_optimum(&r, u), "seed {seed:?}");
            assert!(is_u_local_optimum(&r, g), "seed {seed:?}");
            let basin_l = universal_basin(&r, l);
            assert!(!basin_l.is_u_local());
            assert_eq!(basin_l.deepness[u.0], None);
            assert!(in_universal_basin(&r, l, u));
        }
    }

    #[test]
    fn report_shape() {
        let r = example_rule();
        let (_, u, _) = example_points();
        let b = universal_basin(&r, u);
        assert_eq!(b.strata[0], vec![u]);
        assert_eq!(b.members().len(), 8);
        for (d, layer) in b.strata.iter().enumerate() {
            for x in layer {
                assert_eq!(b.deepness[x.0], Some(d));
                assert_eq!(deepness(&r, *x, u), Some(d));
            }
        }
        assert_eq!(b.u_deepness(), Some(b.strata.len() - 1));
        // 110 beats u and differs in two features, it needs a longer route
        let t = r.space().parse_tuple("1,1,0").unwrap();
        assert!(b.deepness[t.0].unwrap() >= 2);
    }

    #[test]
    fn non_free_and_cycle() {
        let r = example_rule();
        let non_free = r.space().parse_tuple("1,0,0").unwrap();
        let b = universal_basin(&r, non_free);
        assert!(b.is_empty());
        assert_eq!(b.u_deepness(), None);
        let c = three_cycle_rule();
        for z in c.space().outcomes() {
            assert!(universal_basin(&c, z).is_empty());
        }
    }

    #[test]
    fn outcomes_above_z_are_excluded() {
        let r = condensation_rule();
        let c = irreducible_components(r.tournament());
        for z in r.space().outcomes() {
            for x in universal_basin(&r, z).members() {
                assert!(c.rank_of(x.0) <= c.rank_of(z.0));
            }
        }
    }

    #[test]
    fn s_sets() {
        let r = example_rule();
        let c = irreducible_components(r.tournament());
        let (_, u, _) = example_points();
        let non_free = r.space().parse_tuple("1,0,0").unwrap();
        for i in 0..c.len() {
            assert_eq!(s_set(&r, non_free, i, &c).len(), c.components()[i].len());
            if i != c.max_rank() {
                assert_ne!(s_set(&r, u, i, &c).len(), c.components()[i].len());
            }
        }
    }
}
