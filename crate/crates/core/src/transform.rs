//! Code transformations from the counting arguments: shifting by a fixed
//! vector, Elias-style pruning and projection onto a coordinate.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::math::{binomial, pow3_exact};
use crate::{verify_trifferent, Code, Codeword, Error, Result};

/// Number of length-`n` ternary strings with exactly `r` twos: `C(n,r)·2^(n−r)`.
pub fn count_a_r(n: usize, r: usize) -> Result<u128> {
    if r > n {
        return Err(Error::RangeR { n, r });
    }
    let b = binomial(n as u64, r as u64).ok_or(Error::Overflow)?;
    let p = 1u128.checked_shl((n - r) as u32).ok_or(Error::Overflow)?;
    b.checked_mul(p).ok_or(Error::Overflow)
}

/// `{x + v : x ∈ C}` with coordinatewise addition modulo 3.
pub fn shift(code: &Code, v: &Codeword) -> Result<Code> {
    if v.len() != code.block_length() {
        return Err(Error::LengthMismatch { expected: code.block_length(), found: v.len() });
    }
    let words = code.iter().map(|x| x.add(v)).collect::<Result<Vec<_>>>()?;
    Code::new(code.block_length(), words)
}

fn hits(code: &Code, v: &Codeword, r: usize) -> usize {
    code.iter().filter(|x| x.add(v).expect("equal lengths").count_twos() == r).count()
}

/// Statistics of `|(C + v) ∩ A_r|` over random shifts `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSample {
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub min: usize,
    pub max: usize,
    /// `|A_r|·|C| / 3^n`.
    pub exact_expectation: f64,
    /// A shift attaining `max`; `(C + best_shift) ∩ A_r` is an `r`-bounded
    /// code of size `max`, so `max` certifies `T_b(n, r) >= max` for trifferent `C`.
    pub best_shift: Codeword,
}

fn exact_expectation(code: &Code, r: usize) -> Result<f64> {
    let n = code.block_length();
    Ok(count_a_r(n, r)? as f64 * code.len() as f64 / crate::math::pow3(n as u64))
}

/// Draws `trials` uniform shifts with a seeded ChaCha8 generator.
pub fn shift_density_sample(code: &Code, r: usize, trials: u64, seed: u64) -> Result<ShiftSample> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let n = code.block_length();
    let exact_expectation = exact_expectation(code, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0u128;
    let (mut min, mut max) = (usize::MAX, 0);
    let mut best_shift = None;
    for _ in 0..trials {
        let v = Codeword::from_fn(n, |_| rng.gen_range(0..3u8))?;
        let h = hits(code, &v, r);
        total += h as u128;
        min = min.min(h);
        if best_shift.is_none() || h > max {
            max = h;
            best_shift = Some(v);
        }
    }
    Ok(ShiftSample {
        trials,
        seed,
        mean: total as f64 / trials as f64,
        min,
        max,
        exact_expectation,
        best_shift: best_shift.expect("trials > 0"),
    })
}

/// Exact totals of `|(C + v) ∩ A_r|` over all `3^n` shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftTotals {
    pub shifts: u128,
    /// Sum over all shifts; equals `|A_r|·|C|`.
    pub total: u128,
    pub max: usize,
    pub best_shift: Codeword,
}

impl ShiftTotals {
    pub fn mean(&self) -> f64 {
        self.total as f64 / self.shifts as f64
    }
}

/// Enumerates every shift. Refuses `n > 16` (43 million shifts).
pub fn shift_density_exhaustive(code: &Code, r: usize) -> Result<ShiftTotals> {
    let n = code.block_length();
    if r > n {
        return Err(Error::RangeR { n, r });
    }
    if n > 16 {
        return Err(Error::UniverseTooLarge { size: pow3_exact(n as u32).unwrap_or(u128::MAX), cap: 43_046_721 });
    }
    let mut digits = vec![0u8; n];
    let mut totals = ShiftTotals { shifts: 0, total: 0, max: 0, best_shift: Codeword::new(&digits)? };
    loop {
        let v = Codeword::new(&digits)?;
        let h = hits(code, &v, r);
        totals.shifts += 1;
        totals.total += h as u128;
        if h > totals.max {
            totals.max = h;
            totals.best_shift = v;
        }
        // odometer increment, last coordinate fastest
        let Some(pos) = digits.iter().rposition(|&d| d < 2) else { break };
        digits[pos] += 1;
        digits[pos + 1..].fill(0);
    }
    Ok(totals)
}

/// The nested codes `C = C_0 ⊇ C_1 ⊇ … ⊇ C_n` produced by pruning.
#[derive(Debug, Clone, PartialEq)]
pub struct PruningChain {
    pub codes: Vec<Code>,
    /// Symbol removed at each coordinate.
    pub removed: Vec<u8>,
}

impl PruningChain {
    pub fn last(&self) -> &Code {
        self.codes.last().expect("chain starts with the input")
    }
}

/// At coordinate `k` drops every codeword carrying a least-occurring symbol
/// of that coordinate (ties go to the smallest symbol).
///
/// A trifferent input ends with at most two codewords. A larger remainder has
/// at most two symbols at every coordinate, so any three of its codewords are
/// reported as the violating triple (indices into `code`).
pub fn prune(code: &Code) -> Result<PruningChain> {
    let n = code.block_length();
    let mut codes = vec![code.clone()];
    let mut removed = Vec::with_capacity(n);
    for k in 0..n {
        let current = codes.last().expect("nonempty");
        let mut counts = [0usize; 3];
        for w in current {
            counts[w.symbol(k) as usize] += 1;
        }
        let least = (0..3u8).min_by_key(|&s| (counts[s as usize], s)).expect("three symbols");
        let kept = current.iter().filter(|w| w.symbol(k) != least).cloned().collect();
        removed.push(least);
        codes.push(Code::new(n, kept)?);
    }
    let last = codes.last().expect("nonempty");
    if last.len() > 2 {
        let idx: Vec<usize> = last.iter().take(3).map(|w| code.index_of(w).expect("subset")).collect();
        return Err(Error::NotTrifferent([idx[0], idx[1], idx[2]]));
    }
    Ok(PruningChain { codes, removed })
}

fn projection_r(code: &Code) -> Result<usize> {
    if code.is_empty() {
        return Err(Error::InvalidParameter("cannot project an empty code"));
    }
    match code.r_bound() {
        None => Err(Error::NotBounded),
        Some(0) => Err(Error::InvalidParameter("projection needs at least one 2 per codeword")),
        Some(r) => Ok(r),
    }
}

/// Keeps the codewords with a 2 at coordinate `i` and deletes that
/// coordinate. An `(r+1)`-bounded input gives an `r`-bounded code of block
/// length `n − 1`.
pub fn project(code: &Code, i: usize) -> Result<Code> {
    let n = code.block_length();
    projection_r(code)?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if n < 2 {
        return Err(Error::InvalidParameter("projection needs block length at least 2"));
    }
    let words = code
        .iter()
        .filter(|w| w.symbol(i) == 2)
        .map(|w| w.remove_coordinate(i))
        .collect::<Result<Vec<_>>>()?;
    Code::new(n - 1, words)
}

/// Number of codewords with a 2 at each coordinate. Sums to `r·|C|`.
pub fn projection_sizes(code: &Code) -> Vec<usize> {
    let mut sizes = vec![0; code.block_length()];
    for w in code {
        for i in w.two_positions() {
            sizes[i] += 1;
        }
    }
    sizes
}

/// The projection with the most codewords (smallest coordinate on ties).
pub fn best_project(code: &Code) -> Result<(usize, Code)> {
    projection_r(code)?;
    let sizes = projection_sizes(code);
    let best = (0..sizes.len()).max_by_key(|&i| (sizes[i], core::cmp::Reverse(i))).expect("n >= 1");
    Ok((best, project(code, best)?))
}

/// Convenience check used by the callers that require a trifferent input.
pub fn require_trifferent(code: &Code) -> Result<()> {
    match verify_trifferent(code).witness() {
        Some(w) => Err(Error::NotTrifferent(w)),
        None => Ok(()),
    }
}
