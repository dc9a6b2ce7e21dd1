use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use socrule::dynamics::{
    basin_for_agenda, basin_for_scheme, construct_extremal_rule_shifted, default_step_budget, is_free,
    is_global_for_agenda, is_global_for_scheme_bounded, is_local_optimum, run_agenda, GlobalVerdict, PathTrace,
    Terminal,
};
use socrule::enumeration::{
    count_rules_with_k_free, count_tournaments, gain_function, max_local_optima, prob_classical_optimum,
    prob_irreducible, prob_k_free, ExactProbability,
};
use socrule::stats::{run_experiment, ExperimentConfig, ExperimentKind};
use socrule::tournament::irreducible_components;
use socrule::ubasin::{
    deepness, u_local_optima, universal_basin, universal_basin_literal, witness_scheme, BasinReport,
};
use socrule::{Agenda, FeatureSpace, ObjectsScheme, Outcome, SocialRule};

use crate::{Command, CountArgs, Failure, Format, KindArg, Output};

pub(crate) fn dispatch(command: &Command, limit: usize, timings: bool) -> Result<Output, Failure> {
    match command {
        Command::Basin { rule, outcome, literal } => {
            let rule = load_rule(&rule.rule, limit)?;
            let z = tuple(&rule, outcome)?;
            let report = if *literal { universal_basin_literal(&rule, z) } else { universal_basin(&rule, z) };
            Ok(Output::Json(basin_json(&rule, &report)))
        }
        Command::Check { rule, outcome, scheme, agenda, max_agenda_len, basin_of } => {
            let rule = load_rule(&rule.rule, limit)?;
            let x = tuple(&rule, outcome)?;
            check(&rule, x, scheme.as_deref(), agenda.as_deref(), *max_agenda_len, basin_of.as_deref())
        }
        Command::Witness { rule, from, to } => {
            let rule = load_rule(&rule.rule, limit)?;
            let (x, z) = (tuple(&rule, from)?, tuple(&rule, to)?);
            let witness = witness_scheme(&rule, x, z)?.map(|w| {
                json!({
                    "scheme": w.scheme.to_string(),
                    "agenda": w.agenda.to_string(),
                    "trace": trace_json(&rule, &w.trace),
                })
            });
            Ok(Output::Json(json!({
                "from": fmt(&rule, x),
                "to": fmt(&rule, z),
                "witness": witness.unwrap_or_else(|| json!("none")),
            })))
        }
        Command::Condense { rule } => {
            let rule = load_rule(&rule.rule, limit)?;
            let c = irreducible_components(rule.tournament());
            Ok(Output::Json(json!({ "components": c.components(), "max": c.max_component() })))
        }
        Command::Optima { rule, scheme } => {
            let rule = load_rule(&rule.rule, limit)?;
            optima(&rule, scheme.as_deref())
        }
        Command::Count { selector, digits } => count(selector, *digits),
        Command::Stats { features, reps, seed, kind, workers, format } => {
            let space = space_within(features, limit)?;
            let kind = match kind {
                KindArg::Local => ExperimentKind::Local,
                KindArg::Ulocal => ExperimentKind::ULocal,
                KindArg::UlocalLiteral => ExperimentKind::ULocalLiteral,
            };
            let config = ExperimentConfig { space, repetitions: *reps, seed: *seed, kind, workers: *workers };
            let mut table = run_experiment(&config)?;
            for w in &table.meta.warnings {
                eprintln!("warning: {w}");
            }
            if !timings {
                table.meta.wall_time_ms = None;
            }
            match format {
                Format::Csv => Ok(Output::Text(table.to_csv())),
                Format::Json => Ok(Output::Json(serde_json::to_value(&table).expect("table serializes"))),
            }
        }
        Command::Extremal { features, shift } => {
            let space = space_within(features, limit)?;
            Ok(Output::Text(construct_extremal_rule_shifted(&space, *shift).serialize()))
        }
    }
}

fn load_rule(path: &Path, limit: usize) -> Result<SocialRule, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    SocialRule::parse_with_limit(&text, limit).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn space_within(features: &[usize], limit: usize) -> Result<FeatureSpace, Failure> {
    let space = FeatureSpace::new(features).map_err(|e| Failure::Usage(e.to_string()))?;
    if space.size() > limit {
        return Err(Failure::Usage(format!(
            "{} outcomes exceed the cap {limit} (set FOSOR_MAX_M to raise it)",
            space.size()
        )));
    }
    Ok(space)
}

fn tuple(rule: &SocialRule, text: &str) -> Result<Outcome, Failure> {
    Ok(rule.space().parse_tuple(text)?)
}

fn fmt(rule: &SocialRule, x: Outcome) -> String {
    rule.space().format_tuple(x)
}

fn list(rule: &SocialRule, xs: &[Outcome]) -> Vec<String> {
    xs.iter().map(|&x| fmt(rule, x)).collect()
}

fn basin_json(rule: &SocialRule, report: &BasinReport) -> Value {
    let strata: Vec<Vec<String>> = report.strata.iter().map(|layer| list(rule, layer)).collect();
    let deepness: BTreeMap<String, Option<usize>> =
        rule.space().outcomes().map(|x| (fmt(rule, x), report.deepness[x.0])).collect();
    json!({
        "outcome": fmt(rule, report.z),
        "strata": strata,
        "u_deepness": report.u_deepness().map_or(json!("-inf"), |h| json!(h)),
        "is_u_local": report.is_u_local(),
        "deepness": deepness,
    })
}

fn trace_json(rule: &SocialRule, trace: &PathTrace) -> Value {
    let terminal = match &trace.terminal {
        Terminal::LocalOptimum(z) => json!({ "local_optimum": fmt(rule, *z) }),
        Terminal::LimitCycle { period, states } => {
            json!({ "limit_cycle": { "period": period, "states": list(rule, states) } })
        }
        Terminal::Stalled(x) => json!({ "stalled": fmt(rule, *x) }),
    };
    json!({
        "states": list(rule, &trace.states),
        "objects": trace.objects_used.iter().map(|h| h + 1).collect::<Vec<_>>(),
        "terminal": terminal,
    })
}

fn check(
    rule: &SocialRule,
    x: Outcome,
    scheme: Option<&str>,
    agenda: Option<&str>,
    max_agenda_len: Option<usize>,
    basin_of: Option<&str>,
) -> Result<Output, Failure> {
    let n = rule.space().num_features();
    let c = irreducible_components(rule.tournament());
    let basin = universal_basin(rule, x);
    let mut out = json!({
        "outcome": fmt(rule, x),
        "free": is_free(rule, x),
        "u_local": basin.is_u_local(),
        "u_deepness": basin.u_deepness().map_or(json!("-inf"), |h| json!(h)),
        "score": rule.score(x),
        "component": c.rank_of(x.0),
        "in_top_component": c.in_max_component(x.0),
    });
    if let Some(text) = scheme {
        let scheme = ObjectsScheme::parse(text, n)?;
        let bound = max_agenda_len.unwrap_or(scheme.len() + 1);
        let verdict = match is_global_for_scheme_bounded(rule, x, &scheme, bound)? {
            GlobalVerdict::Yes { certified } => json!({ "answer": "yes", "certified": certified }),
            GlobalVerdict::No { agenda } => {
                json!({ "answer": "no", "agenda": Agenda::new(agenda, &scheme)?.to_string() })
            }
            GlobalVerdict::UnknownUpToBound => json!({ "answer": "unknown", "max_agenda_len": bound }),
        };
        out["scheme"] = json!({
            "scheme": scheme.to_string(),
            "local": is_local_optimum(rule, x, &scheme),
            "basin": list(rule, &basin_for_scheme(rule, x, &scheme)),
            "global": verdict,
        });
        if let Some(text) = agenda {
            let agenda = Agenda::parse(text, &scheme)?;
            let budget = default_step_budget(rule.space().size(), agenda.len());
            out["agenda"] = json!({
                "agenda": agenda.to_string(),
                "basin": list(rule, &basin_for_agenda(rule, x, &scheme, &agenda)),
                "global": is_global_for_agenda(rule, x, &scheme, &agenda),
                "run": trace_json(rule, &run_agenda(rule, x, &scheme, &agenda, budget)?),
            });
        }
    }
    if let Some(text) = basin_of {
        let z = tuple(rule, text)?;
        let d = deepness(rule, x, z);
        out["basin_of"] = json!({
            "target": fmt(rule, z),
            "member": d.is_some(),
            "deepness": d,
        });
    }
    Ok(Output::Json(out))
}

fn optima(rule: &SocialRule, scheme: Option<&str>) -> Result<Output, Failure> {
    let free: Vec<Outcome> = rule.space().outcomes().filter(|&z| is_free(rule, z)).collect();
    let u_local = u_local_optima(rule);
    let mut out = json!({
        "free": list(rule, &free),
        "free_count": free.len(),
        "bound": max_local_optima(rule.space()),
        "u_local": list(rule, &u_local),
        "u_local_count": u_local.len(),
    });
    if let Some(text) = scheme {
        let scheme = ObjectsScheme::parse(text, rule.space().num_features())?;
        let local: Vec<Outcome> = free.iter().copied().filter(|&z| is_local_optimum(rule, z, &scheme)).collect();
        out["scheme"] =
            json!({ "scheme": scheme.to_string(), "local": list(rule, &local), "local_count": local.len() });
    }
    Ok(Output::Json(out))
}

fn probability(p: &ExactProbability, digits: usize) -> Value {
    json!({ "exact": p.fraction(), "decimal": p.decimal(digits) })
}

fn count(args: &CountArgs, d: usize) -> Result<Output, Failure> {
    let out = if let Some(m) = args.tournaments {
        json!({ "nodes": m, "tournaments": count_tournaments(m)?.to_string() })
    } else if let Some(m) = args.prob_irreducible {
        json!({ "nodes": m, "prob_irreducible": probability(&prob_irreducible(m)?, d) })
    } else if let Some(m) = args.classical {
        json!({ "outcomes": m, "prob_classical_optimum": probability(&prob_classical_optimum(m)?, d) })
    } else if let Some(pair) = &args.free {
        let (m1, m2) = (pair[0], pair[1]);
        let rows = (0..=m1.min(m2))
            .map(|k| {
                Ok(json!({
                    "k": k,
                    "rules": count_rules_with_k_free(m1, m2, k)?.to_string(),
                    "probability": probability(&prob_k_free(m1, m2, k)?, d),
                }))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        json!({ "features": [m1, m2], "rows": rows })
    } else if let Some(values) = &args.gain {
        let (n, counts) = (values[0], &values[1..]);
        if counts.len() != n {
            return Err(Failure::Usage(format!("--gain expects n = {n} value counts, got {}", counts.len())));
        }
        let space = FeatureSpace::new(counts).map_err(|e| Failure::Usage(e.to_string()))?;
        let gain = gain_function(n, space.size(), space.sigma())?;
        json!({ "features": counts, "outcomes": space.size(), "sigma": space.sigma(), "gain": gain.to_string() })
    } else {
        return Err(Failure::Usage("count needs one of its selectors".into()));
    };
    Ok(Output::Json(out))
}
