//! Small exact and floating-point combinatorial helpers.

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Binomial coefficient as `f64`; accurate for the small `k` used by the bounds.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    if let Some(exact) = binomial(n, k) {
        return exact as f64;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `log2` of a binomial coefficient; finite for any `k <= n`.
pub fn log2_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    if let Some(exact) = binomial(n, k) {
        return libm::log2(exact as f64);
    }
    (0..k).map(|i| libm::log2((n - i) as f64) - libm::log2((i + 1) as f64)).sum()
}

/// `3^n` as `f64`, exact up to rounding of the integer power.
pub fn pow3(n: u64) -> f64 {
    if n <= 80 {
        3u128.pow(n as u32) as f64
    } else {
        libm::pow(3.0, n as f64)
    }
}

pub fn pow3_exact(n: u32) -> Option<u128> {
    3u128.checked_pow(n)
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
