use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::bits::words_for;
use crate::{Error, Result};

/// The ternary alphabet.
pub const SYMBOLS: [u8; 3] = [0, 1, 2];

/// A fixed-length string over `{0, 1, 2}` stored as three bitplanes.
///
/// Bit `i` of plane `s` is set iff coordinate `i` holds symbol `s`. The planes
/// are pairwise disjoint and together cover all `len` coordinates; bits beyond
/// `len` are zero in every plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    len: usize,
    // plane 0 words, then plane 1 words, then plane 2 words
    planes: Box<[u64]>,
}

impl Codeword {
    pub fn new(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyBlockLength);
        }
        let words = words_for(symbols.len());
        let mut planes = vec![0u64; 3 * words].into_boxed_slice();
        for (i, &s) in symbols.iter().enumerate() {
            if s > 2 {
                return Err(Error::InvalidSymbol(char::from(b'0'.wrapping_add(s))));
            }
            planes[s as usize * words + i / 64] |= 1 << (i % 64);
        }
        Ok(Self { len: symbols.len(), planes })
    }

    /// Builds a codeword of length `len` from a coordinate function; symbols
    /// are taken modulo 3.
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> u8) -> Result<Self> {
        let symbols: Vec<u8> = (0..len).map(|i| f(i) % 3).collect();
        Self::new(&symbols)
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_fn(len, |_| 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: codewords have positive length.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub(crate) fn word_count(&self) -> usize {
        self.planes.len() / 3
    }

    /// The bitmask of coordinates holding `symbol`.
    pub fn plane(&self, symbol: u8) -> &[u64] {
        let w = self.word_count();
        let s = symbol as usize;
        &self.planes[s * w..(s + 1) * w]
    }

    pub fn symbol(&self, i: usize) -> u8 {
        assert!(i < self.len, "coordinate {i} out of range");
        let w = self.word_count();
        let (wi, b) = (i / 64, i % 64);
        if self.planes[wi] >> b & 1 == 1 {
            0
        } else if self.planes[w + wi] >> b & 1 == 1 {
            1
        } else {
            2
        }
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.symbol(i))
    }

    pub fn to_symbols(&self) -> Vec<u8> {
        self.symbols().collect()
    }

    pub fn count(&self, symbol: u8) -> usize {
        self.plane(symbol).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_twos(&self) -> usize {
        self.count(2)
    }

    /// Coordinates holding the symbol 2, in increasing order.
    pub fn two_positions(&self) -> Vec<usize> {
        crate::bits::ones(self.plane(2)).collect()
    }

    /// Coordinatewise sum modulo 3.
    pub fn add(&self, other: &Codeword) -> Result<Codeword> {
        self.check_len(other)?;
        let w = self.word_count();
        let (a0, a1, a2) = (self.plane(0), self.plane(1), self.plane(2));
        let (b0, b1, b2) = (other.plane(0), other.plane(1), other.plane(2));
        let mut planes = vec![0u64; 3 * w].into_boxed_slice();
        for i in 0..w {
            planes[i] = a0[i] & b0[i] | a1[i] & b2[i] | a2[i] & b1[i];
            planes[w + i] = a0[i] & b1[i] | a1[i] & b0[i] | a2[i] & b2[i];
            planes[2 * w + i] = a0[i] & b2[i] | a1[i] & b1[i] | a2[i] & b0[i];
        }
        Ok(Codeword { len: self.len, planes })
    }

    /// Concatenation `self ‖ rest[0] ‖ rest[1] ‖ …`.
    pub fn concat(parts: &[&Codeword]) -> Result<Codeword> {
        let symbols: Vec<u8> = parts.iter().flat_map(|p| p.symbols()).collect();
        Codeword::new(&symbols)
    }

    /// The codeword with coordinate `i` deleted.
    pub fn remove_coordinate(&self, i: usize) -> Result<Codeword> {
        if i >= self.len {
            return Err(Error::IndexOutOfRange { index: i, n: self.len });
        }
        let symbols: Vec<u8> = self.symbols().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s).collect();
        Codeword::new(&symbols)
    }

    pub(crate) fn check_len(&self, other: &Codeword) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { expected: self.len, found: other.len });
        }
        Ok(())
    }
}

impl Ord for Codeword {
    /// Lexicographic order on the symbol strings (shorter prefix first).
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.len.min(other.len);
        let (wa, wb) = (self.word_count(), other.word_count());
        for wi in 0..words_for(len) {
            // planes 0 and 1 agreeing forces plane 2 to agree
            let mut diff = (self.planes[wi] ^ other.planes[wi]) | (self.planes[wa + wi] ^ other.planes[wb + wi]);
            let rem = len - wi * 64;
            if rem < 64 {
                diff &= (1u64 << rem) - 1;
            }
            if diff != 0 {
                let i = wi * 64 + diff.trailing_zeros() as usize;
                return self.symbol(i).cmp(&other.symbol(i));
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Codeword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.symbols().map(|s| char::from(b'0' + s)).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword(\"{self}\")")
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Codeword::new(&symbols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn cw(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let x = cw("0120");
        assert_eq!(x.to_string(), "0120");
        assert_eq!(x.to_symbols(), [0, 1, 2, 0]);
        assert_eq!(x.count_twos(), 1);
        assert_eq!(x.two_positions(), [2]);
        assert_eq!("01a".parse::<Codeword>(), Err(Error::InvalidSymbol('a')));
        assert_eq!("".parse::<Codeword>(), Err(Error::EmptyBlockLength));
    }

    #[test]
    fn addition_mod_three() {
        assert_eq!(cw("0122").add(&cw("1112")).unwrap(), cw("1201"));
        assert!(cw("01").add(&cw("011")).is_err());
    }

    #[test]
    fn remove_coordinate() {
        assert_eq!(cw("220").remove_coordinate(0).unwrap(), cw("20"));
        assert!(cw("220").remove_coordinate(3).is_err());
    }

    fn symbols_strategy() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..3, 1..150)
    }

    proptest! {
        #[test]
        fn planes_partition_coordinates(symbols in symbols_strategy()) {
            let x = Codeword::new(&symbols).unwrap();
            let (p0, p1, p2) = (x.plane(0), x.plane(1), x.plane(2));
            for i in 0..p0.len() {
                prop_assert_eq!(p0[i] & p1[i], 0);
                prop_assert_eq!(p0[i] & p2[i], 0);
                prop_assert_eq!(p1[i] & p2[i], 0);
            }
            prop_assert_eq!(x.count(0) + x.count(1) + x.count(2), symbols.len());
            prop_assert_eq!(x.count_twos(), symbols.iter().filter(|&&s| s == 2).count());
            prop_assert_eq!(x.to_symbols(), symbols);
        }

        #[test]
        fn order_matches_string_order(a in symbols_strategy(), b in symbols_strategy()) {
            let (x, y) = (Codeword::new(&a).unwrap(), Codeword::new(&b).unwrap());
            prop_assert_eq!(x.cmp(&y), x.to_string().cmp(&y.to_string()));
        }

        #[test]
        fn add_matches_symbolwise(pair in (1usize..130).prop_flat_map(|n| (prop::collection::vec(0u8..3, n), prop::collection::vec(0u8..3, n)))) {
            let (a, b) = pair;
            let sum = Codeword::new(&a).unwrap().add(&Codeword::new(&b).unwrap()).unwrap();
            let expected: Vec<u8> = a.iter().zip(&b).map(|(x, y)| (x + y) % 3).collect();
            prop_assert_eq!(sum.to_symbols(), expected);
        }
    }
}
