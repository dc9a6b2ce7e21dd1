//! Seeded Monte Carlo frequency tables over uniformly random rules.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::is_free;
use crate::enumeration::{max_local_optima, ExactProbability};
use crate::model::{FeatureSpace, Outcome, SocialRule};
use crate::tournament::irreducible_components;
use crate::ubasin::{universal_basin_literal_with, universal_basin_with};
use crate::{Error, Result, Tournament};

/// Identifier of the generator written into experiment metadata.
pub const RNG_ID: &str = "chacha8 (rand_chacha 0.3), stream = repetition index, key = seed_from_u64(seed)";

/// From this many features on, only free members of the top component are
/// tried as u-local optima; below it every free outcome is tried and the
/// top-component membership is checked.
pub const PREFILTER_FROM_FEATURES: usize = 6;

/// Rough work units per second used for the scaling warning.
const WORK_UNITS_PER_SECOND: f64 = 2e9;
const WARN_AFTER_SECONDS: f64 = 600.0;

/// Random generator for repetition `rep` of an experiment with `seed`.
pub fn repetition_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

/// A rule with every pair oriented by an independent fair bit. Pairs are
/// visited as `(i, j)`, `i < j`, in lexicographic order, 64 bits per draw.
pub fn random_rule<R: Rng + ?Sized>(space: &FeatureSpace, rng: &mut R) -> SocialRule {
    let mut word = 0u64;
    let mut left = 0;
    SocialRule::from_fn(space.clone(), |_, _| {
        if left == 0 {
            word = rng.next_u64();
            left = 64;
        }
        let bit = word & 1 == 1;
        word >>= 1;
        left -= 1;
        bit
    })
}

/// What is counted per rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    /// Free outcomes, i.e. outcomes that are local optima for some scheme.
    Local,
    /// Outcomes whose universal basin is the whole space.
    ULocal,
    /// As `ULocal`, with the basin from the literal layer test
    /// (`universal_basin_literal`), which can miss members.
    #[serde(rename = "ulocal-literal")]
    ULocalLiteral,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub space: FeatureSpace,
    pub repetitions: u64,
    pub seed: u64,
    pub kind: ExperimentKind,
    /// Worker threads; `0` uses the rayon default.
    pub workers: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentMeta {
    pub features: Vec<usize>,
    pub outcomes: usize,
    pub repetitions: u64,
    pub seed: u64,
    pub kind: ExperimentKind,
    pub workers: usize,
    pub rng: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrequencyRow {
    pub k: usize,
    pub count: u64,
    pub frequency: f64,
}

/// Number of rules with each count of optima.
#[derive(Debug, Clone, Serialize)]
pub struct FrequencyTable {
    pub rows: Vec<FrequencyRow>,
    pub meta: ExperimentMeta,
}

impl FrequencyTable {
    fn from_counts(counts: &BTreeMap<usize, u64>, meta: ExperimentMeta) -> Self {
        let reps = meta.repetitions as f64;
        let rows =
            counts.iter().map(|(&k, &count)| FrequencyRow { k, count, frequency: count as f64 / reps }).collect();
        FrequencyTable { rows, meta }
    }

    pub fn count(&self, k: usize) -> u64 {
        self.rows.iter().find(|r| r.k == k).map_or(0, |r| r.count)
    }

    pub fn frequency(&self, k: usize) -> f64 {
        self.count(k) as f64 / self.meta.repetitions as f64
    }

    /// `k,count,frequency` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,count,frequency\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{:.6}\n", r.k, r.count, r.frequency));
        }
        out
    }
}

/// Counts per rule for one repetition, with the per-rule sanity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleCounts {
    pub free: usize,
    pub u_local: Option<usize>,
}

fn count_rule(rule: &SocialRule, kind: ExperimentKind) -> Result<RuleCounts> {
    let space = rule.space();
    let free: Vec<Outcome> = space.outcomes().filter(|&z| is_free(rule, z)).collect();
    let bound = max_local_optima(space);
    if free.len() > bound {
        return Err(Error::Invariant(format!("{} free outcomes exceed the bound {bound}", free.len())));
    }
    if kind == ExperimentKind::Local {
        return Ok(RuleCounts { free: free.len(), u_local: None });
    }
    let condensation = irreducible_components(rule.tournament());
    let prefilter = space.num_features() >= PREFILTER_FROM_FEATURES;
    let mut u_local = 0;
    for &z in &free {
        let top = condensation.in_max_component(z.0);
        if prefilter && !top {
            continue;
        }
        let basin = match kind {
            ExperimentKind::ULocalLiteral => universal_basin_literal_with(rule, z, &condensation),
            _ => universal_basin_with(rule, z, &condensation),
        };
        if basin.is_u_local() {
            if !top {
                return Err(Error::Invariant(format!("u-local optimum {z:?} outside the top component")));
            }
            u_local += 1;
        }
    }
    Ok(RuleCounts { free: free.len(), u_local: Some(u_local) })
}

/// Per-repetition counts for `rep` of the experiment.
pub fn repetition_counts(config: &ExperimentConfig, rep: u64) -> Result<RuleCounts> {
    let rule = random_rule(&config.space, &mut repetition_rng(config.seed, rep));
    count_rule(&rule, config.kind)
}

fn scaling_warning(config: &ExperimentConfig) -> Option<String> {
    let m = config.space.size() as f64;
    let per_rule = match config.kind {
        ExperimentKind::Local => m * m,
        ExperimentKind::ULocal | ExperimentKind::ULocalLiteral => m * m * m * m.log2().max(1.0),
    };
    let seconds = per_rule * config.repetitions as f64 / WORK_UNITS_PER_SECOND;
    (seconds > WARN_AFTER_SECONDS)
        .then(|| format!("estimated {seconds:.0} s of single-core work ({per_rule:.2e} units per rule)"))
}

/// Runs the experiment. Each repetition draws from its own stream, so the
/// table depends only on `(space, repetitions, seed, kind)`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<FrequencyTable> {
    if config.repetitions == 0 {
        return Err(Error::InvalidArgument("repetitions must be at least 1".into()));
    }
    let started = Instant::now();
    let work = || {
        (0..config.repetitions)
            .into_par_iter()
            .try_fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, rep| {
                let c = repetition_counts(config, rep)?;
                *acc.entry(c.u_local.unwrap_or(c.free)).or_default() += 1;
                Ok::<_, Error>(acc)
            })
            .try_reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                Ok(a)
            })
    };
    let counts = if config.workers == 0 {
        work()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work)?
    };
    let meta = ExperimentMeta {
        features: config.space.counts().to_vec(),
        outcomes: config.space.size(),
        repetitions: config.repetitions,
        seed: config.seed,
        kind: config.kind,
        workers: config.workers,
        rng: RNG_ID,
        wall_time_ms: Some(started.elapsed().as_secs_f64() * 1e3),
        warnings: scaling_warning(config).into_iter().collect(),
    };
    Ok(FrequencyTable::from_counts(&counts, meta))
}

/// Fraction of random tournaments on `m` nodes with a node beating all
/// others.
#[derive(Debug, Clone, Serialize)]
pub struct BaselineEstimate {
    pub outcomes: usize,
    pub repetitions: u64,
    pub hits: u64,
    pub frequency: f64,
    #[serde(skip)]
    pub exact: ExactProbability,
}

pub fn classical_baseline(m: usize, repetitions: u64, seed: u64) -> Result<BaselineEstimate> {
    if m == 0 || repetitions == 0 {
        return Err(Error::InvalidArgument("need at least one node and one repetition".into()));
    }
    let hits = (0..repetitions)
        .into_par_iter()
        .filter(|&rep| {
            let mut rng = repetition_rng(seed, rep);
            let t = Tournament::from_fn(m, |_, _| rng.gen::<bool>());
            (0..m).any(|i| t.score(i) == m - 1)
        })
        .count() as u64;
    let exact = ExactProbability(Ratio::new(BigInt::from(hits), BigInt::from(repetitions)));
    Ok(BaselineEstimate { outcomes: m, repetitions, hits, frequency: hits as f64 / repetitions as f64, exact })
}
