use std::collections::VecDeque;

use serde::Serialize;

use crate::dynamics::neighbors::{best_in, is_local_for};
use crate::model::{Agenda, FeatureSet, ObjectsScheme, Outcome, SocialRule};
use crate::{Error, Result};

/// How a maximal domination path ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Terminal {
    /// The last state has no preferred neighbor for any object.
    LocalOptimum(Outcome),
    /// A `(state, agenda position)` pair repeated. `states` lists one lap of
    /// the cycle starting and ending at the same outcome.
    LimitCycle { period: usize, states: Vec<Outcome> },
    /// The last state has preferred neighbors but no object offers a best
    /// one, so a full agenda pass makes no move without the state being a
    /// local optimum.
    Stalled(Outcome),
}

/// The run of an agenda from a starting outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathTrace {
    /// `x0, x1, ..., xs`; every state is preferred to its predecessor.
    pub states: Vec<Outcome>,
    /// Scheme object index used for each move, `states.len() - 1` entries.
    pub objects_used: Vec<usize>,
    pub terminal: Terminal,
}

impl PathTrace {
    pub fn ends_at(&self, z: Outcome) -> bool {
        self.terminal == Terminal::LocalOptimum(z)
    }

    pub fn moves(&self) -> usize {
        self.objects_used.len()
    }
}

const UNKNOWN: u32 = u32::MAX;
const NO_MOVE: u32 = u32::MAX - 1;

/// Best-neighbor moves of every outcome for each object of a scheme,
/// filled lazily.
pub struct MoveTable<'a> {
    rule: &'a SocialRule,
    objects: Vec<FeatureSet>,
    best: Vec<u32>,
    local: Vec<u8>,
}

impl<'a> MoveTable<'a> {
    pub fn new(rule: &'a SocialRule, scheme: &ObjectsScheme) -> Self {
        Self::from_objects(rule, scheme.objects().iter().map(|o| o.features()).collect())
    }

    pub(crate) fn from_objects(rule: &'a SocialRule, objects: Vec<FeatureSet>) -> Self {
        let m = rule.space().size();
        let k = objects.len();
        MoveTable { rule, objects, best: vec![UNKNOWN; m * k], local: vec![2; m] }
    }

    pub fn rule(&self) -> &SocialRule {
        self.rule
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// `B(x, A_h)`.
    pub fn best(&mut self, x: Outcome, object: usize) -> Option<Outcome> {
        let slot = x.0 * self.objects.len() + object;
        if self.best[slot] == UNKNOWN {
            self.best[slot] = match best_in(self.rule, x, self.objects[object]) {
                Some(y) => y.0 as u32,
                None => NO_MOVE,
            };
        }
        match self.best[slot] {
            NO_MOVE => None,
            y => Some(Outcome(y as usize)),
        }
    }

    /// `Φ(x, A) = ∅`.
    pub fn is_local(&mut self, x: Outcome) -> bool {
        if self.local[x.0] == 2 {
            self.local[x.0] = is_local_for(self.rule, x, self.objects.iter().copied()) as u8;
        }
        self.local[x.0] == 1
    }

    /// Distinct best-neighbor successors of `x` over all objects.
    pub fn successors(&mut self, x: Outcome) -> Vec<Outcome> {
        let mut out: Vec<Outcome> = (0..self.objects.len()).filter_map(|h| self.best(x, h)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Repeats `agenda` from `start`. At each agenda position the state moves
    /// to its best neighbor for that object, or stays put when there is none.
    pub fn run(&mut self, start: Outcome, agenda: &Agenda, step_budget: usize) -> Result<PathTrace> {
        self.run_from_phase(start, agenda, 0, step_budget)
    }

    /// As [`MoveTable::run`], entering the agenda cycle at position `phase`.
    pub fn run_from_phase(
        &mut self,
        start: Outcome,
        agenda: &Agenda,
        phase: usize,
        step_budget: usize,
    ) -> Result<PathTrace> {
        let m = self.rule.space().size();
        let t = agenda.len();
        let mut phase = phase % t;
        let mut states = vec![start];
        let mut objects_used = Vec::new();
        if self.is_local(start) {
            return Ok(PathTrace { states, objects_used, terminal: Terminal::LocalOptimum(start) });
        }
        // first index into `states` at which (state, phase) was seen
        let mut seen = vec![usize::MAX; m * t];
        let mut state = start;
        let mut idle = 0;
        seen[state.0 * t + phase] = 0;
        for _ in 0..step_budget {
            let object = agenda.order()[phase];
            phase = (phase + 1) % t;
            match self.best(state, object) {
                Some(y) => {
                    states.push(y);
                    objects_used.push(object);
                    state = y;
                    idle = 0;
                    if self.is_local(y) {
                        return Ok(PathTrace { states, objects_used, terminal: Terminal::LocalOptimum(y) });
                    }
                }
                None => {
                    idle += 1;
                    if idle == t {
                        return Ok(PathTrace { states, objects_used, terminal: Terminal::Stalled(state) });
                    }
                }
            }
            let key = state.0 * t + phase;
            let last = states.len() - 1;
            if seen[key] == usize::MAX {
                seen[key] = last;
            } else if seen[key] < last {
                let lap = states[seen[key]..].to_vec();
                let terminal = Terminal::LimitCycle { period: lap.len() - 1, states: lap };
                return Ok(PathTrace { states, objects_used, terminal });
            }
        }
        Err(Error::StepBudgetExhausted { budget: step_budget })
    }
}

/// A step budget that no run can exhaust: there are `M * t` distinct
/// `(state, agenda position)` pairs.
pub fn default_step_budget(outcomes: usize, agenda_len: usize) -> usize {
    outcomes * agenda_len + agenda_len + 1
}

/// Runs `agenda` over `scheme` from `start`, beginning with its first
/// object, until it reaches a local optimum, closes a limit cycle or stalls.
pub fn run_agenda(
    rule: &SocialRule,
    start: Outcome,
    scheme: &ObjectsScheme,
    agenda: &Agenda,
    step_budget: usize,
) -> Result<PathTrace> {
    MoveTable::new(rule, scheme).run(start, agenda, step_budget)
}

fn agenda_basin(table: &mut MoveTable<'_>, z: Outcome, agenda: &Agenda) -> Vec<Outcome> {
    let m = table.rule().space().size();
    if !table.is_local(z) {
        return Vec::new();
    }
    let budget = default_step_budget(m, agenda.len());
    (0..m)
        .map(Outcome)
        .filter(|&y| {
            (0..agenda.len()).any(|phase| {
                table
                    .run_from_phase(y, agenda, phase, budget)
                    .expect("budget covers all (state, phase) pairs")
                    .ends_at(z)
            })
        })
        .collect()
}

/// `Ψ(z, A_α)`: outcomes whose agenda run ends at `z` when entering the
/// repeated agenda at some position.
pub fn basin_for_agenda(rule: &SocialRule, z: Outcome, scheme: &ObjectsScheme, agenda: &Agenda) -> Vec<Outcome> {
    agenda_basin(&mut MoveTable::new(rule, scheme), z, agenda)
}

/// Outcomes that reach `z` along best-neighbor moves, closest first.
fn reverse_reach(table: &mut MoveTable<'_>, z: Outcome) -> Vec<(Outcome, usize)> {
    let m = table.rule().space().size();
    let mut preds: Vec<Vec<Outcome>> = vec![Vec::new(); m];
    for x in 0..m {
        for y in table.successors(Outcome(x)) {
            preds[y.0].push(Outcome(x));
        }
    }
    let mut dist = vec![usize::MAX; m];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([z]);
    dist[z.0] = 0;
    while let Some(y) = queue.pop_front() {
        order.push((y, dist[y.0]));
        for &x in &preds[y.0] {
            if dist[x.0] == usize::MAX {
                dist[x.0] = dist[y.0] + 1;
                queue.push_back(x);
            }
        }
    }
    order
}

/// `Ψ(z, A)`: the union of the agenda basins, i.e. every outcome with a
/// best-neighbor path through the scheme ending at `z`. Empty unless `z` is
/// a local optimum for the scheme.
pub fn basin_for_scheme(rule: &SocialRule, z: Outcome, scheme: &ObjectsScheme) -> Vec<Outcome> {
    let mut table = MoveTable::new(rule, scheme);
    if !table.is_local(z) {
        return Vec::new();
    }
    let mut basin: Vec<Outcome> = reverse_reach(&mut table, z).into_iter().map(|(x, _)| x).collect();
    basin.sort_unstable();
    basin
}

/// `Ψ(z, A_α) = X`.
pub fn is_global_for_agenda(rule: &SocialRule, z: Outcome, scheme: &ObjectsScheme, agenda: &Agenda) -> bool {
    basin_for_agenda(rule, z, scheme, agenda).len() == rule.space().size()
}

/// Outcome of the bounded search for a global optimum over all agendas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GlobalVerdict {
    /// `certified` is true when the move graph of the scheme is acyclic with
    /// `z` as its only sink, which settles every agenda of any length.
    /// Otherwise all agendas up to the length bound succeeded and the bound
    /// reached the `k * M` threshold.
    Yes { certified: bool },
    /// This agenda leaves some outcome outside the basin.
    No { agenda: Vec<usize> },
    /// All agendas up to the bound succeeded, but the bound is below `k * M`.
    UnknownUpToBound,
}

/// Checks every agenda of the scheme of length at most `max_agenda_len`.
pub fn is_global_for_scheme_bounded(
    rule: &SocialRule,
    z: Outcome,
    scheme: &ObjectsScheme,
    max_agenda_len: usize,
) -> Result<GlobalVerdict> {
    let k = scheme.len();
    if max_agenda_len < k {
        return Err(Error::AgendaBoundTooSmall { bound: max_agenda_len, objects: k });
    }
    let m = rule.space().size();
    let mut table = MoveTable::new(rule, scheme);
    if !table.is_local(z) {
        return Ok(GlobalVerdict::No { agenda: scheme.default_agenda().order().to_vec() });
    }
    if sole_sink_acyclic(&mut table, z) {
        return Ok(GlobalVerdict::Yes { certified: true });
    }
    for len in k..=max_agenda_len {
        let mut order = vec![0usize; len];
        loop {
            if covers_all(&order, k) {
                let agenda = Agenda::new(order.clone(), scheme)?;
                if agenda_basin(&mut table, z, &agenda).len() != m {
                    return Ok(GlobalVerdict::No { agenda: order });
                }
            }
            if !next_sequence(&mut order, k) {
                break;
            }
        }
    }
    if max_agenda_len >= k * m {
        Ok(GlobalVerdict::Yes { certified: false })
    } else {
        Ok(GlobalVerdict::UnknownUpToBound)
    }
}

fn covers_all(order: &[usize], k: usize) -> bool {
    let mut mask = vec![false; k];
    order.iter().for_each(|&h| mask[h] = true);
    mask.iter().all(|&b| b)
}

fn next_sequence(order: &mut [usize], k: usize) -> bool {
    for slot in order.iter_mut().rev() {
        *slot += 1;
        if *slot < k {
            return true;
        }
        *slot = 0;
    }
    false
}

/// True when `z` is the only outcome without a best-neighbor move and the
/// move graph has no cycle, so every agenda run must end at `z`.
fn sole_sink_acyclic(table: &mut MoveTable<'_>, z: Outcome) -> bool {
    let m = table.rule().space().size();
    let succ: Vec<Vec<Outcome>> = (0..m).map(|x| table.successors(Outcome(x))).collect();
    if (0..m).any(|x| succ[x].is_empty() != (x == z.0)) {
        return false;
    }
    // Kahn's algorithm on the move graph
    let mut indeg = vec![0usize; m];
    for s in &succ {
        for y in s {
            indeg[y.0] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..m).filter(|&x| indeg[x] == 0).collect();
    let mut removed = 0;
    while let Some(x) = stack.pop() {
        removed += 1;
        for y in &succ[x] {
            indeg[y.0] -= 1;
            if indeg[y.0] == 0 {
                stack.push(y.0);
            }
        }
    }
    removed == m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn scheme(text: &str) -> ObjectsScheme {
        ObjectsScheme::parse(text, 3).unwrap()
    }

    #[test]
    fn run_from_local_optimum_is_empty() {
        let r = example_rule();
        let (_, u, _) = example_points();
        let s = scheme("1-3,2-3");
        let trace = run_agenda(&r, u, &s, &s.default_agenda(), 100).unwrap();
        assert_eq!(trace.states, vec![u]);
        assert_eq!(trace.terminal, Terminal::LocalOptimum(u));
    }

    #[test]
    fn example_run_reaches_g() {
        let r = example_rule();
        let (g, _, _) = example_points();
        let s = scheme("1-2,3");
        let start = r.space().parse_tuple("1,0,0").unwrap();
        let trace = run_agenda(&r, start, &s, &Agenda::parse("1,2", &s).unwrap(), 100).unwrap();
        assert_eq!(trace.terminal, Terminal::LocalOptimum(g));
        for (w, &h) in trace.states.windows(2).zip(&trace.objects_used) {
            assert!(r.prefers(w[1], w[0]));
            assert!(r.space().separating(w[0], w[1]).is_subset_of(s.objects()[h].features()));
        }
    }

    #[test]
    fn three_cycle_gives_limit_cycle() {
        let r = three_cycle_rule();
        let s = ObjectsScheme::singletons(1);
        let trace = run_agenda(&r, Outcome(0), &s, &s.default_agenda(), 100).unwrap();
        match &trace.terminal {
            Terminal::LimitCycle { period, states } => {
                assert_eq!(*period, 3);
                assert_eq!(states.first(), states.last());
                let mut lap = states[..3].to_vec();
                lap.sort();
                assert_eq!(lap, vec![Outcome(0), Outcome(1), Outcome(2)]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(trace.states[..4], [Outcome(0), Outcome(2), Outcome(1), Outcome(0)]);
        assert!(matches!(
            run_agenda(&r, Outcome(0), &s, &s.default_agenda(), 2),
            Err(Error::StepBudgetExhausted { budget: 2 })
        ));
    }

    #[test]
    fn stalls_without_best_neighbor() {
        // 0 is beaten by 1, 2, 3 which form a cycle
        let space = crate::FeatureSpace::new(&[4]).unwrap();
        let r = SocialRule::from_fn(space, |x, y| !matches!((x.0, y.0), (0, _) | (1, 3)));
        let s = ObjectsScheme::singletons(1);
        let trace = run_agenda(&r, Outcome(0), &s, &s.default_agenda(), 100).unwrap();
        assert_eq!(trace.terminal, Terminal::Stalled(Outcome(0)));
    }

    #[test]
    fn example_agenda_basins() {
        let r = example_rule();
        let (_, u, l) = example_points();
        let s = scheme("2-3,1,3");
        let basin = basin_for_agenda(&r, u, &s, &s.default_agenda());
        let expected: Vec<Outcome> = r.space().outcomes().filter(|&x| x != l).collect();
        assert_eq!(basin, expected);
        let s = scheme("1-3,2");
        assert!(basin_for_agenda(&r, u, &s, &s.default_agenda()).contains(&l));
        // not a local optimum: empty basin
        let s = scheme("1-2,3");
        assert!(basin_for_agenda(&r, u, &s, &s.default_agenda()).is_empty());
        assert!(basin_for_scheme(&r, u, &s).is_empty());
    }

    #[test]
    fn scheme_basin_contains_agenda_basins() {
        let r = example_rule();
        let (_, u, _) = example_points();
        let s = scheme("1-3,2-3,1,2,3");
        let whole = basin_for_scheme(&r, u, &s);
        assert_eq!(whole.len(), 8);
        for order in [vec![0, 1, 2, 3, 4], vec![1, 0, 4], vec![4, 3, 2, 1, 0, 0]] {
            let a = Agenda::new(order, &s).unwrap_or_else(|_| s.default_agenda());
            for x in basin_for_agenda(&r, u, &s, &a) {
                assert!(whole.contains(&x));
            }
        }
        let non_free = r.space().parse_tuple("1,0,0").unwrap();
        assert!(basin_for_scheme(&r, non_free, &ObjectsScheme::singletons(3)).is_empty());
    }

    #[test]
    fn global_verdicts_on_example() {
        let r = example_rule();
        let (g, u, _) = example_points();
        let ag = scheme("1-2,3");
        for order in [vec![0, 1], vec![1, 0], vec![0, 1, 0, 1], vec![1, 1, 0]] {
            assert!(is_global_for_agenda(&r, g, &ag, &Agenda::new(order, &ag).unwrap()));
        }
        assert_eq!(is_global_for_scheme_bounded(&r, g, &ag, 4).unwrap(), GlobalVerdict::Yes { certified: true });
        assert!(matches!(
            is_global_for_scheme_bounded(&r, u, &scheme("1-3,2-3,1,2,3"), 6).unwrap(),
            GlobalVerdict::No { .. }
        ));
        assert!(matches!(
            is_global_for_scheme_bounded(&r, g, &ag, 1),
            Err(Error::AgendaBoundTooSmall { bound: 1, objects: 2 })
        ));
    }
}
