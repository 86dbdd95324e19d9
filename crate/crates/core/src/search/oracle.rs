use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::{triple_is_separated, Codeword, Error, Result};

/// Default largest universe accepted by [`oracle_max`].
pub const ORACLE_CAP: usize = 30;

/// A candidate universe together with every 3-subset that is not trifferent.
/// Trifferent codes inside the universe are exactly the independent sets of
/// this 3-uniform hypergraph.
#[derive(Debug, Clone)]
pub struct BadTripleOracleInstance {
    pub universe: Vec<Codeword>,
    /// Index triples `i < j < k`, lexicographically sorted.
    pub bad_triples: BTreeSet<[usize; 3]>,
}

impl BadTripleOracleInstance {
    pub fn bad_count(&self) -> usize {
        self.bad_triples.len()
    }

    /// True iff `subset` (universe indices) contains no bad triple.
    pub fn is_independent(&self, subset: &[usize]) -> bool {
        let mut s = subset.to_vec();
        s.sort_unstable();
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                for c in b + 1..s.len() {
                    if self.bad_triples.contains(&[s[a], s[b], s[c]]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Lists every non-trifferent triple of a duplicate-free universe.
pub fn enumerate_bad_triples(universe: Vec<Codeword>) -> Result<BadTripleOracleInstance> {
    let mut seen = BTreeSet::new();
    for w in &universe {
        if !seen.insert(w) {
            return Err(Error::DuplicateCodeword(w.to_string()));
        }
        if w.len() != universe[0].len() {
            return Err(Error::LengthMismatch { expected: universe[0].len(), found: w.len() });
        }
    }
    let mut bad_triples = BTreeSet::new();
    let m = universe.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                if !triple_is_separated(&universe[i], &universe[j], &universe[k]) {
                    bad_triples.insert([i, j, k]);
                }
            }
        }
    }
    Ok(BadTripleOracleInstance { universe, bad_triples })
}

/// Maximum independent set size by plain include/exclude recursion, with the
/// default universe cap.
pub fn oracle_max(instance: &BadTripleOracleInstance) -> Result<usize> {
    oracle_max_with_cap(instance, ORACLE_CAP)
}

/// As [`oracle_max`] with an explicit cap. No bounding and no symmetry
/// reduction: every independent set is visited.
pub fn oracle_max_with_cap(instance: &BadTripleOracleInstance, cap: usize) -> Result<usize> {
    let m = instance.universe.len();
    if m > cap {
        return Err(Error::UniverseTooLarge { size: m as u128, cap });
    }
    let mut chosen = Vec::new();
    let mut best = 0;
    explore(instance, 0, &mut chosen, &mut best);
    Ok(best)
}

fn explore(instance: &BadTripleOracleInstance, next: usize, chosen: &mut Vec<usize>, best: &mut usize) {
    if next == instance.universe.len() {
        *best = (*best).max(chosen.len());
        return;
    }
    let fits = (0..chosen.len())
        .all(|a| (a + 1..chosen.len()).all(|b| !instance.bad_triples.contains(&[chosen[a], chosen[b], next])));
    if fits {
        chosen.push(next);
        explore(instance, next + 1, chosen, best);
        chosen.pop();
    }
    explore(instance, next + 1, chosen, best);
}
