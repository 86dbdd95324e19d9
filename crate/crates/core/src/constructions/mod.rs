//! Explicit trifferent code families: the 1-bounded family of size `2n` and
//! the recursive flag construction over affine planes, which multiplies the
//! number of twos by 3 at each level.

mod affine;

use alloc::vec::Vec;

pub use affine::{AffineIncidence, Line, Point, SigmaChoice};

use crate::transform::require_trifferent;
use crate::{Code, Codeword, Error, Result};

/// The 1-bounded trifferent code `{u_i, v_i}` of size `2n` (`n >= 2`).
///
/// `u_i` has a 2 at `i`, ones after it and zeros before it; `v_i` has a 2 at
/// `i`, ones before it and zeros after it. For `n = 1` both coincide with
/// `"2"` and the code is that single codeword.
pub fn one_bounded(n: usize) -> Result<Code> {
    if n == 0 {
        return Err(Error::EmptyBlockLength);
    }
    let mut words = Vec::with_capacity(2 * n);
    for i in 0..n {
        let u = Codeword::from_fn(n, |j| match j.cmp(&i) {
            core::cmp::Ordering::Equal => 2,
            core::cmp::Ordering::Greater => 1,
            core::cmp::Ordering::Less => 0,
        })?;
        let v = Codeword::from_fn(n, |j| match j.cmp(&i) {
            core::cmp::Ordering::Equal => 2,
            core::cmp::Ordering::Less => 1,
            core::cmp::Ordering::Greater => 0,
        })?;
        if u != v {
            words.push(v);
        }
        words.push(u);
    }
    Code::new(n, words)
}

/// An injective table from an index set into the codewords of a fixed
/// `r`-bounded trifferent code.
#[derive(Debug, Clone)]
pub struct Encoder<'a> {
    words: &'a [Codeword],
}

impl<'a> Encoder<'a> {
    /// Uses the first `count` codewords of `base` in canonical order.
    pub fn prefix(base: &'a Code, count: usize) -> Result<Self> {
        if base.len() < count {
            return Err(Error::BaseTooSmall { needed: count, have: base.len() });
        }
        Ok(Self { words: &base.words()[..count] })
    }

    pub fn encode(&self, index: usize) -> &'a Codeword {
        &self.words[index]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Encodes every flag `(p, ℓ)` of the plane over `F_q` as
/// `φ(p) ‖ ψ(ℓ) ‖ φ(σ_ℓ(p))`, with `φ` and `ψ` drawn from `base`.
///
/// `base` must be a trifferent `r`-bounded code with at least `q² + q`
/// codewords; the result is `3r`-bounded with block length `3n` and exactly
/// `q³ + q²` codewords.
pub fn triple_construction(q: u64, base: &Code) -> Result<Code> {
    triple_construction_with(&AffineIncidence::new(q)?, base)
}

pub fn triple_construction_with(plane: &AffineIncidence, base: &Code) -> Result<Code> {
    let needed = plane.lines().len().max(plane.point_count());
    if base.len() < needed {
        return Err(Error::BaseTooSmall { needed, have: base.len() });
    }
    if base.r_bound().is_none() {
        return Err(Error::NotBounded);
    }
    require_trifferent(base)?;
    let phi = Encoder::prefix(base, plane.point_count())?;
    let psi = Encoder::prefix(base, plane.lines().len())?;
    let words = plane
        .flags()
        .iter()
        .map(|&(p, l)| Codeword::concat(&[phi.encode(p), psi.encode(l), phi.encode(plane.sigma(l, p))]))
        .collect::<Result<Vec<_>>>()?;
    Code::new(3 * base.block_length(), words)
}

/// A recursively built `3^t`-bounded code and the primes used at each level
/// (innermost first).
#[derive(Debug, Clone)]
pub struct RecursiveCode {
    pub t: u32,
    pub code: Code,
    pub primes: Vec<u64>,
}

/// Smallest prime `q` with `q³ + q² >= target`.
pub fn smallest_prime_for(target: usize) -> u64 {
    (2u64..)
        .filter(|&q| crate::math::is_prime(q))
        .find(|&q| (q * q * q + q * q) as u128 >= target as u128)
        .expect("primes are unbounded")
}

/// A trifferent `3^t`-bounded code with at least `target` codewords.
///
/// Level 0 is `one_bounded(⌈target/2⌉)`. Level `t` picks the smallest prime
/// `q` with `q³ + q² >= target`, builds a level `t − 1` base with at least
/// `q² + q` codewords and applies [`triple_construction`].
pub fn recursive_construction(t: u32, target: usize) -> Result<RecursiveCode> {
    if target == 0 {
        return Err(Error::ZeroTarget);
    }
    if t == 0 {
        return Ok(RecursiveCode { t, code: one_bounded(target.div_ceil(2))?, primes: Vec::new() });
    }
    let q = smallest_prime_for(target);
    let inner = recursive_construction(t - 1, (q * q + q) as usize)?;
    let code = triple_construction(q, &inner.code)?;
    let mut primes = inner.primes;
    primes.push(q);
    Ok(RecursiveCode { t, code, primes })
}
