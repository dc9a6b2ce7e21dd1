use serde::Serialize;

use crate::dynamics::{default_step_budget, MoveTable, PathTrace};
use crate::model::{Agenda, FeatureObject, FeatureSet, ObjectsScheme, Outcome, SocialRule};
use crate::ubasin::basin_with_parents;
use crate::{Error, Result};

/// An objects scheme keeping `z` local, an agenda, and the replayed run
/// from `x` that ends at `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessResult {
    #[serde(serialize_with = "as_text")]
    pub scheme: ObjectsScheme,
    #[serde(serialize_with = "as_text")]
    pub agenda: Agenda,
    pub trace: PathTrace,
}

fn as_text<T: std::fmt::Display, S: serde::Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

/// Builds a scheme through which `x` reaches `z`, if `x ∈ Ψ(z)`.
///
/// Each hop of a shortest chain `x -> ... -> z` contributes the features it
/// changes as an object; features left uncovered get singleton objects.
/// Singletons never give a free `z` a preferred neighbor, so the scheme
/// keeps `z` local. The agenda lists the hop objects in chain order, then
/// the padding, and the returned trace is its replay.
pub fn witness_scheme(rule: &SocialRule, x: Outcome, z: Outcome) -> Result<Option<WitnessResult>> {
    let space = rule.space();
    let n = space.num_features();
    let (found, parent) = basin_with_parents(rule, z, x);
    if !found {
        return Ok(None);
    }
    let mut hops = Vec::new();
    let mut at = x;
    while at != z {
        let next = parent[at.0].ok_or_else(|| Error::Invariant(format!("broken chain at {at:?}")))?;
        hops.push(space.separating(at, next));
        at = next;
    }
    let mut objects: Vec<FeatureSet> = Vec::new();
    let mut order = Vec::new();
    for hop in &hops {
        let index = objects.iter().position(|o| o == hop).unwrap_or_else(|| {
            objects.push(*hop);
            objects.len() - 1
        });
        order.push(index);
    }
    let covered = objects.iter().fold(FeatureSet::EMPTY, |acc, &o| acc.union(o));
    for f in (0..n).filter(|&f| !covered.contains(f)) {
        objects.push(FeatureSet::singleton(f));
        order.push(objects.len() - 1);
    }
    let scheme = ObjectsScheme::new(objects.iter().map(|&o| FeatureObject::new(o, n)).collect::<Result<Vec<_>>>()?, n)?;
    let agenda = Agenda::new(order, &scheme)?;
    let trace = MoveTable::new(rule, &scheme).run(x, &agenda, default_step_budget(space.size(), agenda.len()))?;
    if !trace.ends_at(z) || trace.moves() != hops.len() {
        return Err(Error::Invariant(format!("witness replay from {x:?} did not end at {z:?}: {:?}", trace.terminal)));
    }
    Ok(Some(WitnessResult { scheme, agenda, trace }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::is_local_optimum;
    use crate::fixtures::*;
    use crate::ubasin::universal_basin;

    #[test]
    fn witnesses_on_example() {
        let r = example_rule();
        let (_, u, l) = example_points();
        let w = witness_scheme(&r, l, u).unwrap().unwrap();
        assert!(is_local_optimum(&r, u, &w.scheme));
        assert_eq!(w.trace.states, vec![l, u]);
        assert_eq!(w.scheme.objects()[0].features(), FeatureSet::from_features([0, 2]));
        let own = witness_scheme(&r, u, u).unwrap().unwrap();
        assert_eq!(own.scheme, ObjectsScheme::singletons(3));
        assert_eq!(own.trace.states, vec![u]);
        assert_eq!(witness_scheme(&r, u, l).unwrap(), None);
    }

    #[test]
    fn every_basin_member_has_a_witness() {
        for seed in 0..16 {
            let r = example_rule_seeded(seed);
            for z in r.space().outcomes() {
                let basin = universal_basin(&r, z);
                for x in r.space().outcomes() {
                    let w = witness_scheme(&r, x, z).unwrap();
                    assert_eq!(w.is_some(), basin.deepness[x.0].is_some());
                    if let Some(w) = w {
                        assert_eq!(Some(w.trace.moves()), basin.deepness[x.0]);
                    }
                }
            }
        }
    }
}
