//! Numeric bounds on `T(n)` and `T_b(n, r)`.
//!
//! Every bound is available as a plain `f64` and in `log2` form; the latter
//! stays finite for block lengths where `(3/2)^n` overflows.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::math::{binomial_f64, log2_binomial, pow3};
use crate::{Code, Error, Result};

/// `log2(3/2)`.
const LOG2_THREE_HALVES: f64 = 0.584_962_500_721_156_2;

pub const KURZ_CONSTANT: f64 = 0.6937;
pub const KURZ_MIN_N: u64 = 10;

/// The forbidden `K_{3,9}` of the 2-bounded graph.
pub const R2_FORBIDDEN: (u64, u64) = (3, 9);
/// The forbidden `K_{5,2^21}` of the 3-bounded graph.
pub const R3_FORBIDDEN: (u64, u64) = (5, 1 << 21);

/// Upper bound on the Zarankiewicz number `z(u, v; s, t)`:
/// `(t−1)^{1/s}·(u−s+1)·v^{1−1/s} + (s−1)·v`.
///
/// Any `u × v` bipartite graph without a `K_{s,t}` (with `s` vertices on the
/// `u` side) has at most this many edges. The bound can be attained: a
/// perfect matching is `K_{1,2}`-free and meets it at `(n, n, 1, 2)`.
pub fn zarankiewicz_bound(u: u64, v: u64, s: u64, t: u64) -> Result<f64> {
    if s == 0 || t == 0 || v == 0 {
        return Err(Error::InvalidParameter("zarankiewicz bound needs s, t, v >= 1"));
    }
    if u < s {
        return Err(Error::InvalidParameter("zarankiewicz bound needs u >= s"));
    }
    let sf = s as f64;
    let lead = libm::pow((t - 1) as f64, 1.0 / sf) * (u - s + 1) as f64 * libm::pow(v as f64, 1.0 - 1.0 / sf);
    Ok(lead + (s - 1) as f64 * v as f64)
}

/// `x·2^e`, with `e` clamped far outside the finite `f64` range.
fn scale2(x: f64, e: i64) -> f64 {
    libm::ldexp(x, e.clamp(-4096, 4096) as i32)
}

/// `2·(3/2)^n`, the pruning bound.
pub fn elias_bound(n: u64) -> f64 {
    scale2(pow3(n), 1 - n as i64)
}

pub fn log2_elias_bound(n: u64) -> f64 {
    1.0 + n as f64 * LOG2_THREE_HALVES
}

/// `0.6937·(3/2)^n`, valid for `n >= 10`.
pub fn kurz_bound(n: u64) -> Option<f64> {
    (n >= KURZ_MIN_N).then(|| KURZ_CONSTANT * scale2(pow3(n), -(n as i64)))
}

pub fn log2_kurz_bound(n: u64) -> Option<f64> {
    (n >= KURZ_MIN_N).then(|| libm::log2(KURZ_CONSTANT) + n as f64 * LOG2_THREE_HALVES)
}

/// An upper bound on `T_b(n, r)` for `r <= 3`.
///
/// * `r = 0`: 2.
/// * `r = 1`: `2n` (1 when `n = 1`).
/// * `r = 2`: `min(2·C(n,2), 4·z(⌈n/2⌉, ⌊n/2⌋; 3, 9))`; the factor 4 pays for
///   the at most two codewords per edge and for passing to an
///   equi-bipartition.
/// * `r = 3`: `min(2·C(n,3), 2·z(n, C(n,2); 5, 2^21))`.
///
/// Returns 0 when `n < r`, since no string has more twos than coordinates.
pub fn tb_upper(n: u64, r: u64) -> Result<f64> {
    if n < r {
        return Ok(0.0);
    }
    let trivial = 2.0 * binomial_f64(n, r);
    Ok(match r {
        0 => 2.0,
        1 => {
            if n == 1 {
                1.0
            } else {
                2.0 * n as f64
            }
        }
        2 => {
            let (s, t) = R2_FORBIDDEN;
            if n.div_ceil(2) >= s && n / 2 >= 1 {
                trivial.min(4.0 * zarankiewicz_bound(n.div_ceil(2), n / 2, s, t)?)
            } else {
                trivial
            }
        }
        3 => {
            let (s, t) = R3_FORBIDDEN;
            if n >= s {
                let pairs = crate::math::binomial(n, 2).ok_or(Error::Overflow)?;
                let pairs = u64::try_from(pairs).map_err(|_| Error::Overflow)?;
                trivial.min(2.0 * zarankiewicz_bound(n, pairs, s, t)?)
            } else {
                trivial
            }
        }
        _ => return Err(Error::UnsupportedR(r as usize)),
    })
}

fn check_density_args(n: u64, r: u64, tb: f64) -> Result<()> {
    if r > n {
        return Err(Error::RangeR { n: n as usize, r: r as usize });
    }
    if tb.is_nan() || tb <= 0.0 {
        return Err(Error::InvalidParameter("T_b value must be positive"));
    }
    Ok(())
}

/// `ρ_b(n, r) = 2^{r−n}·T_b / C(n, r)`.
pub fn rho_b(n: u64, r: u64, tb: f64) -> Result<f64> {
    check_density_args(n, r, tb)?;
    Ok(scale2(tb, r as i64 - n as i64) / binomial_f64(n, r))
}

/// `ρ_b(n, r)·3^n`, an upper bound on `T(n)` whenever `tb >= T_b(n, r)`.
pub fn transfer_bound(n: u64, r: u64, tb: f64) -> Result<f64> {
    Ok(rho_b(n, r, tb)? * pow3(n))
}

pub fn log2_transfer_bound(n: u64, r: u64, tb: f64) -> Result<f64> {
    check_density_args(n, r, tb)?;
    Ok(r as f64 + libm::log2(tb) - log2_binomial(n, r) + n as f64 * (libm::log2(3.0) - 1.0))
}

/// Whether a `T_b` value is known exactly or only bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Exact,
    LowerBound,
    UpperBound,
}

impl ValueKind {
    /// Direction inherited by `r − log(T_b)/log(n)`.
    pub fn reversed(self) -> ValueKind {
        match self {
            ValueKind::Exact => ValueKind::Exact,
            ValueKind::LowerBound => ValueKind::UpperBound,
            ValueKind::UpperBound => ValueKind::LowerBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeficitEstimate {
    pub n: u64,
    pub r: u64,
    pub tb_value: f64,
    pub tb_kind: ValueKind,
    /// `r − ln(tb_value)/ln(n)`.
    pub delta: f64,
}

impl DeficitEstimate {
    /// An upper bound on `T_b` yields a lower bound on the deficit and vice versa.
    pub fn delta_kind(&self) -> ValueKind {
        self.tb_kind.reversed()
    }
}

/// `Δ_r(n) = r − log T_b(n, r) / log n`.
pub fn deficit(n: u64, r: u64, tb: f64, kind: ValueKind) -> Result<DeficitEstimate> {
    if n < 2 {
        return Err(Error::InvalidParameter("deficit needs n >= 2"));
    }
    if tb.is_nan() || tb < 1.0 {
        return Err(Error::InvalidParameter("deficit needs T_b >= 1"));
    }
    let delta = r as f64 - libm::log(tb) / libm::log(n as f64);
    Ok(DeficitEstimate { n, r, tb_value: tb, tb_kind: kind, delta })
}

/// `α = 1 − log_3 2`.
pub fn alpha() -> f64 {
    1.0 - libm::log(2.0) / libm::log(3.0)
}

/// `r − r^α`, the constructive upper bound on `Δ_r` for `r` a power of 3.
///
/// For `r = 3^t`, `r^α = (3/2)^t`, which is evaluated directly.
pub fn deficit_upper(r: u64) -> Result<f64> {
    let (mut x, mut t) = (r, 0);
    while x > 1 && x % 3 == 0 {
        x /= 3;
        t += 1;
    }
    if r == 0 || x != 1 {
        return Err(Error::InvalidParameter("deficit_upper needs r a power of 3"));
    }
    Ok(r as f64 - scale2(pow3(t), -(t as i64)))
}

/// `(1/n)·log2(|C|/2)`; `None` for codes with fewer than 3 codewords.
pub fn rate(code: &Code) -> Option<f64> {
    (code.len() >= 3).then(|| libm::log2(code.len() as f64 / 2.0) / code.block_length() as f64)
}

/// Exact maxima found by search, keyed by `(n, r)` with `r = None` for
/// unrestricted codes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactTable {
    values: BTreeMap<(u64, Option<u64>), u64>,
}

impl ExactTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, n: u64, r: Option<u64>, value: u64) {
        self.values.insert((n, r), value);
    }

    /// Exact `T(n)`.
    pub fn t(&self, n: u64) -> Option<u64> {
        self.values.get(&(n, None)).copied()
    }

    /// Exact `T_b(n, r)`.
    pub fn tb(&self, n: u64, r: u64) -> Option<u64> {
        self.values.get(&(n, Some(r))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, Option<u64>), u64)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub name: String,
    /// May be infinite for very large `n`; compare with `log2_value`.
    pub value: f64,
    pub log2_value: f64,
    pub valid: bool,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateEntry {
    pub label: String,
    pub n: usize,
    pub size: usize,
    pub rate: Option<f64>,
}

/// All bounds on `T(n)` applicable at one block length.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub entries: Vec<BoundEntry>,
    /// Name of the smallest valid entry (first in list order on ties).
    pub best: String,
    /// Smallest grid point from which the 3-bounded KST transfer beats the
    /// pruning bound everywhere on [`default_grid`].
    pub crossover_n0: Option<u64>,
    pub rates: Vec<RateEntry>,
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn best_entry(&self) -> &BoundEntry {
        self.entry(&self.best).expect("best names an entry")
    }

    pub fn add_rate(&mut self, label: impl Into<String>, code: &Code) {
        self.rates.push(RateEntry { label: label.into(), n: code.block_length(), size: code.len(), rate: rate(code) });
    }
}

fn transfer_entry(name: String, n: u64, r: u64, tb: f64, provenance: String) -> Result<BoundEntry> {
    let log2_value = log2_transfer_bound(n, r, tb)?;
    let direct = transfer_bound(n, r, tb)?;
    let value = if direct.is_finite() && direct > 0.0 { direct } else { libm::exp2(log2_value) };
    Ok(BoundEntry { name, value, log2_value, valid: true, provenance })
}

/// Log-spaced block lengths `round(10^{k/8})` from 10 up to `10^9`.
pub fn default_grid() -> Vec<u64> {
    log_grid(1, 9, 8)
}

/// `round(10^{k/per_decade})` for `k` from `from_decade·per_decade` to
/// `to_decade·per_decade`, deduplicated.
pub fn log_grid(from_decade: u32, to_decade: u32, per_decade: u32) -> Vec<u64> {
    let mut grid: Vec<u64> = (from_decade * per_decade..=to_decade * per_decade)
        .map(|k| libm::round(libm::pow(10.0, k as f64 / per_decade as f64)) as u64)
        .collect();
    grid.dedup();
    grid
}

/// `log2` of the 3-bounded KST transfer bound at `n >= 3`.
pub fn log2_kst_r3_transfer(n: u64) -> Result<f64> {
    log2_transfer_bound(n, 3, tb_upper(n, 3)?)
}

/// Smallest grid point `N₀` such that the 3-bounded KST transfer is strictly
/// below the pruning bound at every grid point `>= N₀`.
pub fn kst_r3_crossover(grid: &[u64]) -> Option<u64> {
    let mut n0 = None;
    for &n in grid.iter().rev() {
        if n < 3 {
            break;
        }
        let beats = log2_kst_r3_transfer(n).map(|v| v < log2_elias_bound(n)).unwrap_or(false);
        if !beats {
            break;
        }
        n0 = Some(n);
    }
    n0
}

/// Collects every bound on `T(n)` at block length `n`.
///
/// Entries, in order: `exact-transfer-r{r}` for each exact `T_b(n, r)` in the
/// table, `transfer-r0`, `transfer-r1`, `kst-r2-transfer`, `kst-r3-transfer`
/// (when `r <= n`), `elias`, `kurz` (marked invalid below `n = 10`).
pub fn bound_report(n: u64, exact: Option<&ExactTable>) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::EmptyBlockLength);
    }
    let mut entries = Vec::new();
    if let Some(table) = exact {
        for ((tn, r), value) in table.iter() {
            if let (true, Some(r)) = (tn == n, r) {
                if value > 0 && r <= n {
                    entries.push(transfer_entry(
                        format!("exact-transfer-r{r}"),
                        n,
                        r,
                        value as f64,
                        format!("density transfer with exact T_b({n},{r}) = {value} from search"),
                    )?);
                }
            }
        }
    }
    let formula = [
        ("transfer-r0", 0, "density transfer with T_b(n,0) = 2"),
        ("transfer-r1", 1, "density transfer with T_b(n,1) = 2n"),
        ("kst-r2-transfer", 2, "density transfer with T_b(n,2) <= min(2C(n,2), 4 z(ceil(n/2), floor(n/2); 3, 9))"),
        ("kst-r3-transfer", 3, "density transfer with T_b(n,3) <= min(2C(n,3), 2 z(n, C(n,2); 5, 2^21))"),
    ];
    for (name, r, provenance) in formula {
        if r <= n {
            entries.push(transfer_entry(name.into(), n, r, tb_upper(n, r)?, provenance.into())?);
        }
    }
    entries.push(BoundEntry {
        name: "elias".into(),
        value: elias_bound(n),
        log2_value: log2_elias_bound(n),
        valid: true,
        provenance: "pruning bound 2 (3/2)^n, all n".into(),
    });
    let kurz = KURZ_CONSTANT * libm::exp2(n as f64 * LOG2_THREE_HALVES);
    entries.push(BoundEntry {
        name: "kurz".into(),
        value: kurz_bound(n).unwrap_or(kurz),
        log2_value: libm::log2(KURZ_CONSTANT) + n as f64 * LOG2_THREE_HALVES,
        valid: n >= KURZ_MIN_N,
        provenance: "literature constant 0.6937 (3/2)^n, valid for n >= 10".into(),
    });
    let best = entries
        .iter()
        .filter(|e| e.valid)
        .fold(None::<&BoundEntry>, |acc, e| match acc {
            Some(b) if b.log2_value <= e.log2_value => Some(b),
            _ => Some(e),
        })
        .expect("elias is always valid")
        .name
        .clone();
    Ok(BoundReport { n, entries, best, crossover_n0: kst_r3_crossover(&default_grid()), rates: Vec::new() })
}
