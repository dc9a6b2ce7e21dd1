use socrule::dynamics::*;
use socrule::fixtures::*;
use socrule::ubasin::*;
use socrule::*;

fn completions() -> impl Iterator<Item = SocialRule> {
    std::iter::once(example_rule()).chain((0..32).map(example_rule_seeded))
}

fn tuple(rule: &SocialRule, text: &str) -> Outcome {
    rule.space().parse_tuple(text).unwrap()
}

#[test]
fn g_is_global_for_its_scheme() {
    let (g, _, _) = example_points();
    let scheme = ObjectsScheme::parse("1-2,3", 3).unwrap();
    for rule in completions() {
        for order in [vec![0, 1], vec![1, 0], vec![0, 1, 1], vec![1, 1, 0, 0], vec![0, 0, 0, 1]] {
            let agenda = Agenda::new(order, &scheme).unwrap();
            assert!(is_global_for_agenda(&rule, g, &scheme, &agenda));
        }
        assert!(matches!(is_global_for_scheme_bounded(&rule, g, &scheme, 4).unwrap(), GlobalVerdict::Yes { .. }));
    }
}

#[test]
fn u_and_l_classification() {
    let (g, u, l) = example_points();
    for rule in completions() {
        assert!(is_u_local_optimum(&rule, u));
        assert!(is_u_local_optimum(&rule, g));
        assert!(is_free(&rule, l));
        assert!(!is_u_local_optimum(&rule, l));
        assert!(!in_universal_basin(&rule, u, l));
        assert!(!is_free(&rule, tuple(&rule, "1,0,0")));
    }
}

#[test]
fn u_is_global_for_a_two_object_scheme() {
    // ({2}, {1,3}) keeps u local and every agenda of it sends X to u
    let (_, u, _) = example_points();
    let rule = example_rule();
    let scheme = ObjectsScheme::parse("2,1-3", 3).unwrap();
    assert!(is_local_optimum(&rule, u, &scheme));
    for order in [vec![0, 1], vec![1, 0]] {
        let agenda = Agenda::new(order, &scheme).unwrap();
        assert!(is_global_for_agenda(&rule, u, &scheme, &agenda));
        let budget = default_step_budget(8, agenda.len());
        assert!(rule.space().outcomes().all(|x| run_agenda(&rule, x, &scheme, &agenda, budget).unwrap().ends_at(u)));
    }
    assert!(!matches!(is_global_for_scheme_bounded(&rule, u, &scheme, 3).unwrap(), GlobalVerdict::No { .. }));
}

#[test]
fn ordered_basins_of_u() {
    let (_, u, l) = example_points();
    let rule = example_rule();
    let scheme = ObjectsScheme::parse("2-3,1,3", 3).unwrap();
    let basin = basin_for_agenda(&rule, u, &scheme, &scheme.default_agenda());
    assert_eq!(basin, rule.space().outcomes().filter(|&x| x != l).collect::<Vec<_>>());
    let scheme = ObjectsScheme::parse("1-3,2", 3).unwrap();
    assert!(basin_for_agenda(&rule, u, &scheme, &scheme.default_agenda()).contains(&l));
    // the object {1,2} gives u the preferred neighbor 110
    for bad in ["1-2,3", "1-2,1-3", "2-3,1-2"] {
        assert!(!is_local_optimum(&rule, u, &ObjectsScheme::parse(bad, 3).unwrap()));
    }
}

#[test]
fn neighbors_on_example() {
    let rule = example_rule();
    let n = 3;
    let x = tuple(&rule, "1,1,0");
    assert_eq!(
        preferred_neighbors(&rule, x, FeatureObject::from_one_based(&[3], n).unwrap()),
        vec![tuple(&rule, "1,1,1")]
    );
    let u = tuple(&rule, "0,0,0");
    let top = FeatureObject::from_one_based(&[1, 2], n).unwrap();
    assert_eq!(preferred_neighbors(&rule, u, top), vec![tuple(&rule, "1,1,0")]);
    assert_eq!(best_neighbor(&rule, u, top), Some(tuple(&rule, "1,1,0")));
    assert_eq!(prominent_distance(&rule, tuple(&rule, "1,1,0"), tuple(&rule, "0,1,1")), 2);
}

#[test]
fn figure_rules() {
    let cycle = three_cycle_rule();
    let scheme = ObjectsScheme::singletons(1);
    assert!(cycle.space().outcomes().all(|z| !is_local_optimum(&cycle, z, &scheme)));
    assert!(cycle.space().outcomes().all(|z| universal_basin(&cycle, z).is_empty()));
    let trace = run_agenda(&cycle, Outcome(0), &scheme, &scheme.default_agenda(), 20).unwrap();
    assert!(matches!(trace.terminal, Terminal::LimitCycle { period: 3, .. }));

    let square = local_not_max_rule();
    let z = tuple(&square, "0,0");
    assert!(is_local_optimum(&square, z, &ObjectsScheme::singletons(2)));
    assert_eq!(socrule::tournament::max_component(square.tournament()), vec![tuple(&square, "1,1").0]);
}
