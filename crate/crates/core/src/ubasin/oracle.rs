use std::collections::VecDeque;

use crate::model::{FeatureSet, Outcome, SocialRule};
use crate::{Error, Result};

/// Largest feature count the oracle accepts: it enumerates every family of
/// the `2^n - 1` possible objects.
pub const ORACLE_MAX_FEATURES: usize = 4;

/// Union of the scheme basins of `z` over all schemes, with the shortest
/// path length found through any scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBasin {
    pub members: Vec<Outcome>,
    pub deepness: Vec<Option<usize>>,
}

/// Brute-force universal basin, independent of the stratified search.
///
/// Every covering family of objects is tried. Families for which `z` has a
/// preferred neighbor contribute nothing; for the others the outcomes with a
/// best-neighbor path to `z` are collected by backward BFS.
pub fn oracle_universal_basin(rule: &SocialRule, z: Outcome) -> Result<OracleBasin> {
    let space = rule.space();
    let n = space.num_features();
    if n > ORACLE_MAX_FEATURES {
        return Err(Error::LimitExceeded { what: "oracle feature count", value: n, limit: ORACLE_MAX_FEATURES });
    }
    let m = space.size();
    let values: Vec<Vec<usize>> = space.outcomes().map(|x| space.decode(x)).collect();
    let agree_outside =
        |x: usize, y: usize, object: u64| (0..n).all(|f| object >> f & 1 == 1 || values[x][f] == values[y][f]);
    let objects: Vec<u64> = (1..1u64 << n).collect();
    // best[x][o]: the preferred neighbor of x inside object o beating all others
    let best: Vec<Vec<Option<usize>>> = (0..m)
        .map(|x| {
            objects
                .iter()
                .map(|&o| {
                    let better: Vec<usize> = (0..m)
                        .filter(|&y| y != x && agree_outside(x, y, o) && rule.prefers(Outcome(y), Outcome(x)))
                        .collect();
                    better
                        .iter()
                        .copied()
                        .find(|&y| better.iter().all(|&w| w == y || rule.prefers(Outcome(y), Outcome(w))))
                })
                .collect()
        })
        .collect();
    let z_stuck: Vec<bool> = objects
        .iter()
        .map(|&o| (0..m).all(|y| y == z.0 || !agree_outside(z.0, y, o) || rule.prefers(z, Outcome(y))))
        .collect();
    let all = FeatureSet::all(n).0;
    let mut deepness: Vec<Option<usize>> = vec![None; m];
    for family in 1u64..1 << objects.len() {
        let chosen: Vec<usize> = (0..objects.len()).filter(|&i| family >> i & 1 == 1).collect();
        let covered = chosen.iter().fold(0u64, |acc, &i| acc | objects[i]);
        if covered != all || !chosen.iter().all(|&i| z_stuck[i]) {
            continue;
        }
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (x, row) in best.iter().enumerate() {
            for &i in &chosen {
                if let Some(y) = row[i] {
                    preds[y].push(x);
                }
            }
        }
        let mut dist = vec![usize::MAX; m];
        dist[z.0] = 0;
        let mut queue = VecDeque::from([z.0]);
        while let Some(y) = queue.pop_front() {
            for &x in &preds[y] {
                if dist[x] == usize::MAX {
                    dist[x] = dist[y] + 1;
                    queue.push_back(x);
                }
            }
        }
        for x in 0..m {
            if dist[x] != usize::MAX {
                deepness[x] = Some(deepness[x].map_or(dist[x], |d: usize| d.min(dist[x])));
            }
        }
    }
    let members = (0..m).filter(|&x| deepness[x].is_some()).map(Outcome).collect();
    Ok(OracleBasin { members, deepness })
}
