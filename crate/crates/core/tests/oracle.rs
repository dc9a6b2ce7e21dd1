use socrule::stats::{random_rule, repetition_rng};
use socrule::ubasin::*;
use socrule::*;

fn assert_agrees(rule: &SocialRule) {
    for z in rule.space().outcomes() {
        let fast = universal_basin(rule, z);
        let slow = oracle_universal_basin(rule, z).unwrap();
        assert_eq!(fast.members(), slow.members, "z {z:?} in\n{}", rule.serialize());
        assert_eq!(fast.deepness, slow.deepness, "z {z:?} in\n{}", rule.serialize());
    }
}

#[test]
fn every_square_rule() {
    let space = FeatureSpace::binary(2).unwrap();
    for mask in 0u32..64 {
        let mut bit = 0;
        assert_agrees(&SocialRule::from_fn(space.clone(), |_, _| {
            bit += 1;
            mask >> (bit - 1) & 1 == 1
        }));
    }
}

#[test]
fn seeded_cube_rules() {
    let space = FeatureSpace::binary(3).unwrap();
    for rep in 0..500 {
        assert_agrees(&random_rule(&space, &mut repetition_rng(99, rep)));
    }
}

#[test]
fn mixed_radix_rules() {
    for counts in [&[3, 3][..], &[2, 3], &[2, 2, 3], &[2, 2, 2, 2]] {
        let space = FeatureSpace::new(counts).unwrap();
        for rep in 0..60 {
            assert_agrees(&random_rule(&space, &mut repetition_rng(5, rep)));
        }
    }
}

#[test]
fn literal_layer_test_is_a_subset() {
    let space = FeatureSpace::binary(3).unwrap();
    let mut strict = 0;
    for rep in 0..200 {
        let rule = random_rule(&space, &mut repetition_rng(4, rep));
        for z in space.outcomes() {
            let full = universal_basin(&rule, z);
            let literal = universal_basin_literal(&rule, z);
            assert!(literal.members().iter().all(|x| full.deepness[x.0].is_some()));
            strict += (literal.len() < full.len()) as usize;
        }
    }
    assert!(strict > 0);
}
