//! Exact maximum trifferent and `r`-bounded trifferent codes at small block
//! lengths.
//!
//! The branch-and-bound walks the candidate universe in lexicographic order
//! and keeps, for every node, the bitset of candidates that can still be
//! added without creating a non-trifferent triple. The exhaustive
//! [`oracle`] solves the same instances with no pruning at all.

pub mod oracle;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::hash::Hasher;

use fnv::FnvHasher;

pub use oracle::{
    enumerate_bad_triples, oracle_max, oracle_max_with_cap, BadTripleOracleInstance, ORACLE_CAP,
};

use crate::bits::{self, words_for};
use crate::math::binomial;
use crate::transform::count_a_r;
use crate::{triple_is_separated, Code, Codeword, Error, Result};

/// Node upper bound used for pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRule {
    /// Current size plus the number of remaining compatible candidates.
    Candidates,
    /// As `Candidates`, but at most two candidates are counted per
    /// 2-location set (minus those already chosen): three codewords with the
    /// same 2-locations are never trifferent.
    SupportCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node limit; exhausting it downgrades the result to a lower bound.
    pub budget: u64,
    /// Fix the lexicographically smallest candidate as the first codeword.
    pub symmetry_breaking: bool,
    pub bound: BoundRule,
    /// Largest block length for unrestricted search.
    pub max_n: usize,
    /// Largest universe for restricted search.
    pub universe_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { budget: 200_000_000, symmetry_breaking: true, bound: BoundRule::SupportCap, max_n: 4, universe_cap: 256 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Optimal,
    /// The budget ran out; `best_size` is only a lower bound.
    LowerBound,
}

/// The outcome of an exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchCertificate {
    pub n: usize,
    /// `None` for unrestricted search.
    pub r: Option<usize>,
    pub best_size: usize,
    /// The lexicographically smallest code of size `best_size` found.
    pub best_code: Code,
    pub status: SearchStatus,
    pub nodes_explored: u64,
    pub oracle_checked: bool,
    pub config_hash: u64,
}

impl SearchCertificate {
    pub fn is_optimal(&self) -> bool {
        self.status == SearchStatus::Optimal
    }

    /// Re-solves the instance with [`oracle_max_with_cap`]. Marks the
    /// certificate as checked and returns `true` iff the search was optimal
    /// and the oracle agrees.
    pub fn check_with_oracle(&mut self, cap: usize) -> Result<bool> {
        let instance = enumerate_bad_triples(universe(self.n, self.r)?)?;
        let agrees = self.is_optimal() && oracle_max_with_cap(&instance, cap)? == self.best_size;
        self.oracle_checked = agrees;
        Ok(agrees)
    }
}

/// Stable fingerprint of everything that determines a certificate.
pub fn config_hash(n: usize, r: Option<usize>, config: &SearchConfig) -> u64 {
    let mut h = FnvHasher::default();
    let bound = match config.bound {
        BoundRule::Candidates => "candidates",
        BoundRule::SupportCap => "support-cap",
    };
    let text = format!(
        "n={n};r={r:?};budget={};symmetry={};bound={bound}",
        config.budget, config.symmetry_breaking
    );
    h.write(text.as_bytes());
    h.finish()
}

/// Candidate codewords in lexicographic order: all of `{0,1,2}^n`, or the
/// strings with exactly `r` twos.
pub fn universe(n: usize, r: Option<usize>) -> Result<Vec<Codeword>> {
    if n == 0 {
        return Err(Error::EmptyBlockLength);
    }
    let mut words = Vec::new();
    match r {
        None => {
            let total = crate::math::pow3_exact(n as u32).ok_or(Error::Overflow)?;
            if total > 1 << 24 {
                return Err(Error::UniverseTooLarge { size: total, cap: 1 << 24 });
            }
            let mut digits = vec![0u8; n];
            loop {
                words.push(Codeword::new(&digits)?);
                let Some(pos) = digits.iter().rposition(|&d| d < 2) else { break };
                digits[pos] += 1;
                digits[pos + 1..].fill(0);
            }
        }
        Some(r) => {
            let total = count_a_r(n, r)?;
            if total > 1 << 24 {
                return Err(Error::UniverseTooLarge { size: total, cap: 1 << 24 });
            }
            let mut positions: Vec<usize> = (0..r).collect();
            loop {
                for fill in 0u64..1 << (n - r) {
                    let mut other = 0;
                    let w = Codeword::from_fn(n, |i| {
                        if positions.contains(&i) {
                            2
                        } else {
                            other += 1;
                            (fill >> (n - r - other) & 1) as u8
                        }
                    })?;
                    words.push(w);
                }
                // next r-combination of 0..n
                let Some(k) = (0..r).rev().find(|&k| positions[k] < n - r + k) else { break };
                positions[k] += 1;
                for j in k + 1..r {
                    positions[j] = positions[j - 1] + 1;
                }
            }
            words.sort_unstable();
        }
    }
    Ok(words)
}

/// `T(n)` by branch-and-bound.
pub fn max_trifferent(n: usize, config: &SearchConfig) -> Result<SearchCertificate> {
    if n == 0 {
        return Err(Error::EmptyBlockLength);
    }
    if n > config.max_n {
        return Err(Error::UniverseTooLarge {
            size: crate::math::pow3_exact(n as u32).unwrap_or(u128::MAX),
            cap: crate::math::pow3_exact(config.max_n as u32).map_or(usize::MAX, |v| v as usize),
        });
    }
    solve(n, None, universe(n, None)?, config)
}

/// `T_b(n, r)` by branch-and-bound over the strings with exactly `r` twos.
///
/// `r = 0` returns the two smallest binary strings and `r = n` the all-twos
/// string without searching.
pub fn max_r_bounded(n: usize, r: usize, config: &SearchConfig) -> Result<SearchCertificate> {
    if n == 0 {
        return Err(Error::EmptyBlockLength);
    }
    if r > n {
        return Err(Error::RangeR { n, r });
    }
    let hash = config_hash(n, Some(r), config);
    if r == 0 || r == n {
        let mut words = vec![Codeword::from_fn(n, |_| if r == n { 2 } else { 0 })?];
        if r == 0 {
            words.push(Codeword::from_fn(n, |i| u8::from(i == n - 1))?);
        }
        let best_code = Code::new(n, words)?;
        return Ok(SearchCertificate {
            n,
            r: Some(r),
            best_size: best_code.len(),
            best_code,
            status: SearchStatus::Optimal,
            nodes_explored: 0,
            oracle_checked: false,
            config_hash: hash,
        });
    }
    let size = count_a_r(n, r)?;
    if size > config.universe_cap as u128 {
        return Err(Error::UniverseTooLarge { size, cap: config.universe_cap });
    }
    solve(n, Some(r), universe(n, Some(r))?, config)
}

struct Solver {
    m: usize,
    w: usize,
    // bad[(a·m + b)·w ..][c] set iff {a, b, c} is not trifferent
    bad: Vec<u64>,
    group_of: Vec<usize>,
    group_masks: Vec<Vec<u64>>,
    rule: BoundRule,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best: Vec<usize>,
}

impl Solver {
    fn new(words: &[Codeword], config: &SearchConfig) -> Self {
        let m = words.len();
        let w = words_for(m.max(1));
        let mut bad = vec![0u64; m * m * w];
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    if !triple_is_separated(&words[a], &words[b], &words[c]) {
                        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                            bits::set(&mut bad[(x * m + y) * w..(x * m + y + 1) * w], z);
                            bits::set(&mut bad[(y * m + x) * w..(y * m + x + 1) * w], z);
                        }
                    }
                }
            }
        }
        let mut ids: BTreeMap<&[u64], usize> = BTreeMap::new();
        let mut group_masks: Vec<Vec<u64>> = Vec::new();
        let group_of = words
            .iter()
            .enumerate()
            .map(|(i, word)| {
                let next = ids.len();
                let g = *ids.entry(word.plane(2)).or_insert(next);
                if g == group_masks.len() {
                    group_masks.push(vec![0; w]);
                }
                bits::set(&mut group_masks[g], i);
                g
            })
            .collect();
        Self {
            m,
            w,
            bad,
            group_of,
            group_masks,
            rule: config.bound,
            budget: config.budget,
            nodes: 0,
            aborted: false,
            best: Vec::new(),
        }
    }

    fn bound(&self, cand: &[u64], used: &[u8]) -> usize {
        match self.rule {
            BoundRule::Candidates => bits::count(cand),
            BoundRule::SupportCap => self
                .group_masks
                .iter()
                .zip(used)
                .map(|(mask, &u)| bits::count_and(cand, mask).min(2usize.saturating_sub(u as usize)))
                .sum(),
        }
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, mut cand: Vec<u64>, used: &mut [u8]) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        loop {
            let Some(c) = bits::ones(&cand).next() else { return };
            if chosen.len() + self.bound(&cand, used) <= self.best.len() {
                return;
            }
            bits::clear_through(&mut cand, c);
            let mut child = cand.clone();
            for &x in chosen.iter() {
                let row = &self.bad[(x * self.m + c) * self.w..(x * self.m + c + 1) * self.w];
                for (a, b) in child.iter_mut().zip(row) {
                    *a &= !b;
                }
            }
            let g = self.group_of[c];
            chosen.push(c);
            used[g] += 1;
            self.dfs(chosen, child, used);
            used[g] -= 1;
            chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

fn solve(n: usize, r: Option<usize>, words: Vec<Codeword>, config: &SearchConfig) -> Result<SearchCertificate> {
    let mut solver = Solver::new(&words, config);
    let mut used = vec![0u8; solver.group_masks.len()];
    let mut cand = vec![0u64; solver.w];
    for i in 0..solver.m {
        bits::set(&mut cand, i);
    }
    let mut chosen = Vec::new();
    if config.symmetry_breaking && solver.m > 0 {
        // coordinatewise symbol relabelings (with coordinate permutations for
        // the r-bounded universe) act transitively on the candidates, so some
        // optimal code contains the smallest candidate
        bits::clear_through(&mut cand, 0);
        used[solver.group_of[0]] += 1;
        chosen.push(0);
    }
    solver.dfs(&mut chosen, cand, &mut used);
    let best_code = Code::new(n, solver.best.iter().map(|&i| words[i].clone()).collect())?;
    Ok(SearchCertificate {
        n,
        r,
        best_size: best_code.len(),
        best_code,
        status: if solver.aborted { SearchStatus::LowerBound } else { SearchStatus::Optimal },
        nodes_explored: solver.nodes,
        oracle_checked: false,
        config_hash: config_hash(n, r, config),
    })
}

/// True iff the `r`-bounded universe at block length `n` has at most `cap` strings.
pub fn universe_fits(n: usize, r: usize, cap: usize) -> bool {
    r <= n && binomial(n as u64, r as u64).is_some_and(|b| (n - r) < 64 && b << (n - r) <= cap as u128)
}
