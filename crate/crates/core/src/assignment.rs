//! Points of the hypercube `{0,1}^n`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::error::CoreError;

const WORD: usize = 64;

/// Fixed-length bit vector. Bit `i` is the value of variable `i` (0-based).
///
/// The textual form is a string of `0`/`1` characters with variable 0 first, so
/// `"10"` sets variable 0 and clears variable 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    n: usize,
    words: SmallVec<[u64; 2]>,
}

impl Assignment {
    pub fn zeros(n: usize) -> Self {
        Assignment {
            n,
            words: smallvec![0; n.div_ceil(WORD).max(1)],
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut x = Self::zeros(n);
        for i in 0..n {
            x.set(i, true);
        }
        x
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut x = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            x.set(i, b);
        }
        x
    }

    /// Build from the low `n` bits of `code` (bit `i` of `code` is variable `i`).
    pub fn from_code(n: usize, code: u64) -> Self {
        assert!(n <= WORD, "from_code supports at most 64 variables");
        let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        let mut x = Self::zeros(n);
        x.words[0] = code & mask;
        x
    }

    /// Inverse of [`Assignment::from_code`]; `None` above 64 variables.
    pub fn code(&self) -> Option<u64> {
        (self.n <= WORD).then(|| self.words[0])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.n,
            "index {i} out of range for {} variables",
            self.n
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        assert!(
            i < self.n,
            "index {i} out of range for {} variables",
            self.n
        );
        let m = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.n,
            "index {i} out of range for {} variables",
            self.n
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut y = self.clone();
        y.flip(i);
        y
    }

    pub fn flip_all(&mut self, indices: &[usize]) {
        for &i in indices {
            self.flip(i);
        }
    }

    pub fn with_flips(&self, indices: &[usize]) -> Self {
        let mut y = self.clone();
        y.flip_all(indices);
        y
    }

    /// `x[S ↦ y]` for the listed indices.
    pub fn with_values(&self, indices: &[usize], values: &Assignment) -> Self {
        let mut y = self.clone();
        for &i in indices {
            y.set(i, values.get(i));
        }
        y
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.get(i) as u8
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn hamming(&self, other: &Assignment) -> usize {
        assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Indices where `self` and `other` differ, ascending.
    pub fn differing(&self, other: &Assignment) -> Vec<usize> {
        assert_eq!(self.n, other.n);
        (0..self.n)
            .filter(|&i| self.get(i) != other.get(i))
            .collect()
    }

    pub fn ones_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.get(i))
    }

    /// True when both agree on every listed index.
    pub fn agrees_on(&self, other: &Assignment, indices: impl IntoIterator<Item = usize>) -> bool {
        indices.into_iter().all(|i| self.get(i) == other.get(i))
    }

    /// Lexicographic comparison of the bit strings (variable 0 most significant, 0 < 1).
    pub fn lex_cmp(&self, other: &Assignment) -> Ordering {
        for i in 0..self.n.min(other.n) {
            match (self.get(i), other.get(i)) {
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                _ => {}
            }
        }
        self.n.cmp(&other.n)
    }

    pub fn check_len(&self, n: usize) -> Result<(), CoreError> {
        if self.n == n {
            Ok(())
        } else {
            Err(CoreError::DimensionMismatch {
                expected: n,
                found: self.n,
            })
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({self})")
    }
}

impl FromStr for Assignment {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut x = Assignment::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => x.set(i, true),
                _ => return Err(CoreError::BadBitString(s.to_string())),
            }
        }
        Ok(x)
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Assignment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Assignment defined on a subset of the variables; unspecified coordinates are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn empty(n: usize) -> Self {
        PartialAssignment {
            values: vec![None; n],
        }
    }

    pub fn with(mut self, i: usize, b: bool) -> Self {
        self.values[i] = Some(b);
        self
    }

    pub fn set(&mut self, i: usize, b: bool) {
        self.values[i] = Some(b);
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Completion that fills every unspecified coordinate with 0.
    pub fn zero_filled(&self) -> Assignment {
        let mut x = Assignment::zeros(self.values.len());
        for (i, v) in self.values.iter().enumerate() {
            if *v == Some(true) {
                x.set(i, true);
            }
        }
        x
    }
}

impl From<&Assignment> for PartialAssignment {
    fn from(x: &Assignment) -> Self {
        PartialAssignment {
            values: (0..x.len()).map(|i| Some(x.get(i))).collect(),
        }
    }
}
