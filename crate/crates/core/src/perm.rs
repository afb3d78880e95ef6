//! Permutations in one-line notation, windows, intervals and the basic
//! constructions built from them (sums, inflation, descent statistics).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<usize>);

/// Contiguous run of positions: `start` is 1-based, `len >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Window {
    pub start: usize,
    pub len: usize,
}

impl Window {
    pub fn new(start: usize, len: usize) -> Self {
        Window { start, len }
    }

    /// Last position covered (1-based, inclusive).
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }

    pub(crate) fn indices(&self) -> std::ops::Range<usize> {
        self.start - 1..self.start - 1 + self.len
    }
}

/// Inclusive range of values `[lo, hi]`; the value-side view of an interval.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ValueRange {
    pub lo: usize,
    pub hi: usize,
}

impl ValueRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi);
        ValueRange { lo, hi }
    }

    pub fn singleton(v: usize) -> Self {
        ValueRange { lo: v, hi: v }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    /// Non-strict containment.
    pub fn contains(&self, other: &ValueRange) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_disjoint(&self, other: &ValueRange) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }
}

impl fmt::Display for ValueRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation((1..=n).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        assert!(n >= 1);
        Permutation((1..=n).rev().collect())
    }

    /// The permutation order-isomorphic to `entries` (which must be distinct).
    pub fn standardize(entries: &[usize]) -> Self {
        let mut order: Vec<usize> = (0..entries.len()).collect();
        order.sort_unstable_by_key(|&i| entries[i]);
        let mut values = vec![0; entries.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = rank + 1;
        }
        Permutation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_decreasing(&self) -> bool {
        let n = self.len();
        self.0.iter().enumerate().all(|(i, &v)| v == n - i)
    }

    fn check_window(&self, w: Window) -> Result<()> {
        if w.start == 0 || w.len == 0 || w.start + w.len - 1 > self.len() {
            return Err(Error::WindowOutOfRange {
                start: w.start,
                len: w.len,
                n: self.len(),
            });
        }
        Ok(())
    }

    /// Smallest and largest value inside `w`.
    pub fn value_range(&self, w: Window) -> Result<ValueRange> {
        self.check_window(w)?;
        let entries = &self.0[w.indices()];
        let lo = *entries.iter().min().unwrap();
        let hi = *entries.iter().max().unwrap();
        Ok(ValueRange::new(lo, hi))
    }

    pub fn is_interval(&self, w: Window) -> Result<bool> {
        let r = self.value_range(w)?;
        Ok(r.len() == w.len)
    }

    pub fn pattern_of(&self, w: Window) -> Result<Permutation> {
        self.check_window(w)?;
        Ok(Permutation::standardize(&self.0[w.indices()]))
    }

    /// Every interval, trivial ones included, as windows ordered by
    /// `(start, len)`.
    pub fn interval_windows(&self) -> Vec<Window> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            let (mut lo, mut hi) = (self.0[i], self.0[i]);
            for j in i..n {
                lo = lo.min(self.0[j]);
                hi = hi.max(self.0[j]);
                if hi - lo == j - i {
                    out.push(Window::new(i + 1, j - i + 1));
                }
            }
        }
        out
    }

    /// Every interval (singletons and `[1, n]` included) as sorted value ranges.
    pub fn intervals(&self) -> Vec<ValueRange> {
        let mut out: Vec<ValueRange> = self
            .interval_windows()
            .into_iter()
            .map(|w| self.value_range(w).expect("window from scan"))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn proper_intervals(&self) -> Vec<ValueRange> {
        let n = self.len();
        self.intervals()
            .into_iter()
            .filter(|r| r.len() >= 2 && r.len() < n)
            .collect()
    }

    /// No proper intervals. Lengths 1 and 2 count as simple here; see
    /// [`Permutation::is_simple_ge4`] for the stricter convention.
    pub fn is_simple(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            let (mut lo, mut hi) = (self.0[i], self.0[i]);
            for j in i + 1..n {
                if j - i + 1 == n {
                    break;
                }
                lo = lo.min(self.0[j]);
                hi = hi.max(self.0[j]);
                if hi - lo == j - i {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_simple_ge4(&self) -> bool {
        self.len() >= 4 && self.is_simple()
    }

    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let m = self.len();
        let values = self
            .0
            .iter()
            .copied()
            .chain(other.0.iter().map(|&v| v + m))
            .collect();
        Permutation(values)
    }

    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let k = other.len();
        let values = self
            .0
            .iter()
            .map(|&v| v + k)
            .chain(other.0.iter().copied())
            .collect();
        Permutation(values)
    }

    /// `self[blocks[0], ..., blocks[k-1]]`: entry `i` of the skeleton is
    /// replaced by a copy of `blocks[i]` shifted into its value slot.
    pub fn inflate(&self, blocks: &[Permutation]) -> Result<Permutation> {
        let k = self.len();
        if blocks.len() != k {
            return Err(Error::ArityMismatch {
                expected: k,
                got: blocks.len(),
            });
        }
        // offset[v] = total size of blocks sitting under skeleton values < v
        let mut size_by_value = vec![0; k + 1];
        for (i, &v) in self.0.iter().enumerate() {
            size_by_value[v] = blocks[i].len();
        }
        let mut offset = vec![0; k + 1];
        for v in 2..=k {
            offset[v] = offset[v - 1] + size_by_value[v - 1];
        }
        let mut values = Vec::with_capacity(blocks.iter().map(Permutation::len).sum());
        for (i, &v) in self.0.iter().enumerate() {
            values.extend(blocks[i].0.iter().map(|&b| b + offset[v]));
        }
        Ok(Permutation(values))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn des(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// `des` of the inverse: values `v` with `v + 1` placed to the left of `v`.
    pub fn ides(&self) -> usize {
        let n = self.len();
        let mut pos = vec![0; n + 1];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        (1..n).filter(|&v| pos[v] > pos[v + 1]).count()
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Lexicographic successor in place; `false` once `values` is the last
/// (decreasing) arrangement.
pub(crate) fn next_permutation(values: &mut [usize]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order.
pub struct AllPermutations {
    current: Option<Vec<usize>>,
}

impl AllPermutations {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        AllPermutations {
            current: Some((1..=n).collect()),
        }
    }
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(Permutation(cur))
    }
}
