//! Structure of the dominance tournament: scores, irreducible components,
//! condensation, 3-cycles and hamiltonian paths.

mod matrix;

pub use matrix::Tournament;

use serde::Serialize;

/// Irreducible components ordered from the bottom (rank 0) to the top.
///
/// If `a > b` every member of `components[a]` dominates every member of
/// `components[b]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condensation {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl Condensation {
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Rank of the component holding `node`.
    pub fn rank_of(&self, node: usize) -> usize {
        self.component_of[node]
    }

    pub fn max_rank(&self) -> usize {
        self.components.len() - 1
    }

    /// The top component.
    pub fn max_component(&self) -> &[usize] {
        &self.components[self.components.len() - 1]
    }

    pub fn in_max_component(&self, node: usize) -> bool {
        self.component_of[node] == self.max_rank()
    }
}

/// Nodes sorted by `(key, index)`.
fn sorted_by_key(keys: &[usize]) -> Vec<usize> {
    let mut nodes: Vec<usize> = (0..keys.len()).collect();
    nodes.sort_by_key(|&v| (keys[v], v));
    nodes
}

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Sorted out-degrees.
pub fn score_sequence(t: &Tournament) -> Vec<usize> {
    let mut s = t.scores();
    s.sort_unstable();
    s
}

/// Peels irreducible components off from below.
///
/// The lowest component is the shortest prefix of the score-sorted nodes
/// whose scores sum to `C(k, 2)`. Those `k` nodes are beaten by every other
/// node, so the residual scores are the old ones minus `k`.
pub fn irreducible_components(t: &Tournament) -> Condensation {
    let m = t.size();
    let mut scores = t.scores();
    let mut remaining = sorted_by_key(&scores);
    let mut components = Vec::new();
    while !remaining.is_empty() {
        let mut sum = 0;
        let mut k = 0;
        for (pos, &v) in remaining.iter().enumerate() {
            sum += scores[v];
            if sum == choose2(pos + 1) {
                k = pos + 1;
                break;
            }
        }
        debug_assert!(k > 0, "score prefix never closes");
        let mut block: Vec<usize> = remaining.drain(..k).collect();
        for &v in &remaining {
            scores[v] -= k;
        }
        remaining.sort_by_key(|&v| (scores[v], v));
        block.sort_unstable();
        components.push(block);
    }
    let mut component_of = vec![0; m];
    for (rank, c) in components.iter().enumerate() {
        for &v in c {
            component_of[v] = rank;
        }
    }
    Condensation { components, component_of }
}

/// The top component in a single pass over in-degrees `M - 1 - s`.
pub fn max_component(t: &Tournament) -> Vec<usize> {
    let m = t.size();
    if m == 0 {
        return Vec::new();
    }
    let losses: Vec<usize> = t.scores().iter().map(|s| m - 1 - s).collect();
    let order = sorted_by_key(&losses);
    let mut sum = 0;
    for (pos, &v) in order.iter().enumerate() {
        sum += losses[v];
        if sum == choose2(pos + 1) {
            let mut top = order[..=pos].to_vec();
            top.sort_unstable();
            return top;
        }
    }
    unreachable!("loss prefix over all nodes always closes")
}

/// True iff every proper prefix of the score sequence sums to more than `C(k, 2)`.
pub fn is_irreducible(t: &Tournament) -> bool {
    let s = score_sequence(t);
    let mut sum = 0;
    for k in 1..s.len() {
        sum += s[k - 1];
        if sum <= choose2(k) {
            return false;
        }
    }
    true
}

/// True iff the score sequence is `0, 1, ..., M - 1`.
pub fn is_transitive(t: &Tournament) -> bool {
    score_sequence(t).iter().enumerate().all(|(i, &s)| i == s)
}

/// Number of 3-cycles, `C(M, 3) - sum C(s_i, 2)`.
pub fn count_3cycles(t: &Tournament) -> u64 {
    let m = t.size() as u64;
    let all = m * m.saturating_sub(1) * m.saturating_sub(2) / 6;
    let transitive_triples: u64 = t.scores().iter().map(|&s| choose2(s) as u64).sum();
    all - transitive_triples
}

/// A hamiltonian path `p0 -> p1 -> ...` where each node dominates its successor.
///
/// Each new node is inserted in front of the first path node it dominates,
/// or appended when it dominates none.
pub fn hamiltonian_path(t: &Tournament) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::with_capacity(t.size());
    for v in 0..t.size() {
        match path.iter().position(|&p| t.beats(v, p)) {
            Some(pos) => path.insert(pos, v),
            None => path.push(v),
        }
    }
    path
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn brute_3cycles(t: &Tournament) -> u64 {
        let m = t.size();
        let mut count = 0;
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let ab = t.beats(a, b);
                    if ab == t.beats(b, c) && ab == t.beats(c, a) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn score_sequences() {
        assert_eq!(score_sequence(&condensation_figure()), vec![0, 2, 2, 2, 4]);
        assert_eq!(score_sequence(&Tournament::transitive(&[0, 1, 2])), vec![0, 1, 2]);
        assert_eq!(score_sequence(&three_cycle()), vec![1, 1, 1]);
    }

    #[test]
    fn components_of_figure() {
        let c = irreducible_components(&condensation_figure());
        assert_eq!(c.components(), &[vec![0], vec![1, 2, 3], vec![4]]);
        assert_eq!(c.rank_of(2), 1);
        assert_eq!(max_component(&condensation_figure()), vec![4]);
        let c = irreducible_components(&three_cycle());
        assert_eq!(c.components(), &[vec![0, 1, 2]]);
        assert_eq!(max_component(&three_cycle()), vec![0, 1, 2]);
        let c = irreducible_components(&Tournament::transitive(&[3, 1, 0, 2]));
        assert_eq!(c.components(), &[vec![2], vec![0], vec![1], vec![3]]);
    }

    #[test]
    fn irreducible_and_transitive() {
        assert!(is_irreducible(&three_cycle()));
        assert!(!is_irreducible(&Tournament::transitive(&[0, 1, 2])));
        assert!(!is_irreducible(&condensation_figure()));
        assert!(is_transitive(&Tournament::transitive(&[2, 0, 3, 1])));
        assert!(!is_transitive(&three_cycle()));
        assert!(!is_transitive(&condensation_figure()));
    }

    #[test]
    fn three_cycle_counts() {
        assert_eq!(count_3cycles(&three_cycle()), 1);
        assert_eq!(count_3cycles(&Tournament::transitive(&[0, 1, 2, 3, 4])), 0);
        assert_eq!(brute_3cycles(&condensation_figure()), 1);
        assert_eq!(count_3cycles(&condensation_figure()), 1);
    }

    #[test]
    fn hamiltonian_paths() {
        assert_eq!(hamiltonian_path(&Tournament::transitive(&[2, 0, 3, 1])), vec![2, 0, 3, 1]);
        let p = hamiltonian_path(&three_cycle());
        assert!([vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]].contains(&p));
        assert_eq!(hamiltonian_path(&Tournament::from_fn(1, |_, _| true)), vec![0]);
    }

    fn arb_tournament(max: usize) -> impl proptest::strategy::Strategy<Value = Tournament> {
        use proptest::prelude::*;
        (1..=max).prop_flat_map(|m| {
            proptest::collection::vec(any::<bool>(), m * (m - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                Tournament::from_fn(m, |_, _| it.next().unwrap())
            })
        })
    }

    proptest::proptest! {
        #[test]
        fn score_sum_identity(t in arb_tournament(40)) {
            let m = t.size();
            proptest::prop_assert_eq!(t.scores().iter().sum::<usize>(), m * (m - 1) / 2);
        }

        #[test]
        fn three_cycles_match_enumeration(t in arb_tournament(9)) {
            proptest::prop_assert_eq!(count_3cycles(&t), brute_3cycles(&t));
        }

        #[test]
        fn condensation_invariants(t in arb_tournament(30)) {
            let c = irreducible_components(&t);
            let mut seen = vec![false; t.size()];
            for (rank, comp) in c.components().iter().enumerate() {
                proptest::prop_assert!(is_irreducible(&t.induced(comp)));
                for &v in comp {
                    proptest::prop_assert!(!seen[v]);
                    seen[v] = true;
                    proptest::prop_assert_eq!(c.rank_of(v), rank);
                }
            }
            proptest::prop_assert!(seen.iter().all(|&s| s));
            for a in 0..t.size() {
                for b in 0..t.size() {
                    if c.rank_of(a) > c.rank_of(b) {
                        proptest::prop_assert!(t.beats(a, b));
                    }
                }
            }
            proptest::prop_assert_eq!(is_irreducible(&t), c.len() == 1);
            proptest::prop_assert_eq!(max_component(&t), c.max_component().to_vec());
        }

        #[test]
        fn hamiltonian_path_is_valid(t in arb_tournament(40)) {
            let p = hamiltonian_path(&t);
            let mut sorted = p.clone();
            sorted.sort_unstable();
            proptest::prop_assert_eq!(sorted, (0..t.size()).collect::<Vec<_>>());
            for w in p.windows(2) {
                proptest::prop_assert!(t.beats(w[0], w[1]));
            }
        }
    }
}
