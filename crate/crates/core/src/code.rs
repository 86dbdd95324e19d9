use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::{Codeword, Error, Result};

/// A duplicate-free set of equal-length codewords, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Code {
    n: usize,
    words: Vec<Codeword>,
    r_bound: Option<usize>,
}

impl Code {
    /// Builds a code of block length `n`. Codewords are sorted
    /// lexicographically; duplicates are rejected.
    pub fn new(n: usize, mut words: Vec<Codeword>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyBlockLength);
        }
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::LengthMismatch { expected: n, found: w.len() });
        }
        words.sort_unstable();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateCodeword(pair[0].to_string()));
        }
        let r_bound = match words.split_first() {
            Some((first, rest)) => {
                let r = first.count_twos();
                rest.iter().all(|w| w.count_twos() == r).then_some(r)
            }
            None => None,
        };
        Ok(Self { n, words, r_bound })
    }

    /// Parses codewords given as strings over `'0'`, `'1'`, `'2'`.
    pub fn from_strs<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let words = words.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<Codeword>>>()?;
        let n = words.first().map_or(0, Codeword::len);
        Self::new(n, words)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Codeword> {
        self.words.iter()
    }

    pub fn into_words(self) -> Vec<Codeword> {
        self.words
    }

    /// `Some(r)` iff the code is non-empty and every codeword has exactly `r` twos.
    pub fn r_bound(&self) -> Option<usize> {
        self.r_bound
    }

    /// Vacuously true for the empty code.
    pub fn is_r_bounded(&self, r: usize) -> bool {
        self.words.is_empty() || self.r_bound == Some(r)
    }

    pub fn contains(&self, word: &Codeword) -> bool {
        self.words.binary_search(word).is_ok()
    }

    pub fn index_of(&self, word: &Codeword) -> Option<usize> {
        self.words.binary_search(word).ok()
    }

    /// The sub-code on the given indices.
    pub fn subset(&self, indices: impl IntoIterator<Item = usize>) -> Code {
        let words = indices.into_iter().map(|i| self.words[i].clone()).collect();
        Code::new(self.n, words).expect("subset of a valid code")
    }

    /// Largest number of codewords sharing one 2-location set. A trifferent
    /// code never exceeds 2.
    pub fn max_support_multiplicity(&self) -> usize {
        let mut counts: BTreeMap<&[u64], usize> = BTreeMap::new();
        for w in &self.words {
            *counts.entry(w.plane(2)).or_default() += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }
}

impl<'a> IntoIterator for &'a Code {
    type Item = &'a Codeword;
    type IntoIter = core::slice::Iter<'a, Codeword>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_bounded() {
        let c = Code::from_strs(&["21", "02", "20", "12"]).unwrap();
        let listed: Vec<_> = c.iter().map(|w| w.to_string()).collect();
        assert_eq!(listed, ["02", "12", "20", "21"]);
        assert_eq!(c.r_bound(), Some(1));
        assert!(c.is_r_bounded(1));
        assert!(!c.is_r_bounded(2));
        assert_eq!(c.max_support_multiplicity(), 2);
    }

    #[test]
    fn rejects_duplicates_and_mixed_lengths() {
        assert_eq!(Code::from_strs(&["01", "01"]), Err(Error::DuplicateCodeword("01".into())));
        assert!(matches!(Code::from_strs(&["01", "012"]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn mixed_two_counts_are_unbounded() {
        let c = Code::from_strs(&["22", "02"]).unwrap();
        assert_eq!(c.r_bound(), None);
        assert!(Code::empty(3).unwrap().is_r_bounded(7));
    }
}
