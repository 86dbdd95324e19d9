use alloc::vec;

use crate::{Code, Codeword, Error, Result};

/// Outcome of checking a whole code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationResult {
    Trifferent,
    /// `witness` is the lexicographically smallest index triple `i < j < k`
    /// whose codewords share no coordinate carrying all three symbols.
    NotTrifferent { witness: [usize; 3] },
}

impl VerificationResult {
    pub fn is_trifferent(&self) -> bool {
        matches!(self, VerificationResult::Trifferent)
    }

    pub fn witness(&self) -> Option<[usize; 3]> {
        match *self {
            VerificationResult::Trifferent => None,
            VerificationResult::NotTrifferent { witness } => Some(witness),
        }
    }
}

/// True iff some coordinate carries `{x(i), y(i), z(i)} = {0, 1, 2}`.
///
/// Pure mask arithmetic over the six assignments of symbols to the three
/// codewords; no distinctness or length checks.
pub fn triple_is_separated(x: &Codeword, y: &Codeword, z: &Codeword) -> bool {
    let (x0, x1, x2) = (x.plane(0), x.plane(1), x.plane(2));
    let (y0, y1, y2) = (y.plane(0), y.plane(1), y.plane(2));
    let (z0, z1, z2) = (z.plane(0), z.plane(1), z.plane(2));
    (0..x0.len()).any(|i| {
        x0[i] & (y1[i] & z2[i] | y2[i] & z1[i])
            | x1[i] & (y0[i] & z2[i] | y2[i] & z0[i])
            | x2[i] & (y0[i] & z1[i] | y1[i] & z0[i])
            != 0
    })
}

/// Checked form of [`triple_is_separated`].
pub fn is_trifferent_triple(x: &Codeword, y: &Codeword, z: &Codeword) -> Result<bool> {
    x.check_len(y)?;
    x.check_len(z)?;
    if x == y {
        return Err(Error::EqualInputs(0, 1));
    }
    if x == z {
        return Err(Error::EqualInputs(0, 2));
    }
    if y == z {
        return Err(Error::EqualInputs(1, 2));
    }
    Ok(triple_is_separated(x, y, z))
}

/// The smallest violating triple `(i, j, k)` with the given leading index.
///
/// For each pair the mask of coordinates where the pair differs is split by
/// the missing third symbol, so each `k` costs three ANDs per word.
pub fn first_violation_with_leading(code: &Code, i: usize) -> Option<[usize; 3]> {
    let words = code.words();
    let x = &words[i];
    let w = x.word_count();
    let mut third = vec![0u64; 3 * w];
    for j in i + 1..words.len() {
        let y = &words[j];
        for b in 0..w {
            let (x0, x1, x2) = (x.plane(0)[b], x.plane(1)[b], x.plane(2)[b]);
            let (y0, y1, y2) = (y.plane(0)[b], y.plane(1)[b], y.plane(2)[b]);
            third[b] = x1 & y2 | x2 & y1;
            third[w + b] = x0 & y2 | x2 & y0;
            third[2 * w + b] = x0 & y1 | x1 & y0;
        }
        for (k, z) in words.iter().enumerate().skip(j + 1) {
            let (z0, z1, z2) = (z.plane(0), z.plane(1), z.plane(2));
            let separated = (0..w).any(|b| third[b] & z0[b] | third[w + b] & z1[b] | third[2 * w + b] & z2[b] != 0);
            if !separated {
                return Some([i, j, k]);
            }
        }
    }
    None
}

/// Checks every triple of distinct codewords.
pub fn verify_trifferent(code: &Code) -> VerificationResult {
    (0..code.len())
        .find_map(|i| first_violation_with_leading(code, i))
        .map_or(VerificationResult::Trifferent, |witness| VerificationResult::NotTrifferent { witness })
}
