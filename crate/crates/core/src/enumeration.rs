//! Exhaustive enumeration of `S_n` and of its simple / block-wise simple
//! members.
//!
//! Permutations are grown left to right in lexicographic order. An interval
//! is a property of a window alone, so as soon as a completed window of the
//! prefix is a forbidden interval the whole subtree is dropped. Work is split
//! across rayon workers by first entry.

use rayon::prelude::*;

use crate::decomposition::window_is_decomposable;
use crate::error::{check_cap, Result};
use crate::perm::Permutation;

/// Default ceiling on `n` for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PermClass {
    All,
    /// No proper interval (lengths 1 and 2 included).
    Simple,
    /// No interval of length >= 2 that is a direct or skew sum.
    Blockwise,
}

impl PermClass {
    /// Whether the window `values[i..=j]` (of a length-`n` permutation) rules
    /// the permutation out, given that it is an interval.
    #[inline]
    fn rejects_interval(self, values: &[usize], i: usize, j: usize, n: usize) -> bool {
        let len = j - i + 1;
        match self {
            PermClass::All => false,
            PermClass::Simple => len >= 2 && len < n,
            PermClass::Blockwise => len >= 2 && window_is_decomposable(&values[i..=j]),
        }
    }
}

struct Search<'a, F: FnMut(&[usize])> {
    n: usize,
    class: PermClass,
    values: Vec<usize>,
    used: Vec<bool>,
    visit: &'a mut F,
}

impl<F: FnMut(&[usize])> Search<'_, F> {
    fn extend(&mut self) {
        let j = self.values.len();
        if j == self.n {
            (self.visit)(&self.values);
            return;
        }
        for v in 1..=self.n {
            if self.used[v] {
                continue;
            }
            self.values.push(v);
            if !self.last_window_rejected() {
                self.used[v] = true;
                self.extend();
                self.used[v] = false;
            }
            self.values.pop();
        }
    }

    /// Checks every window ending at the newest position.
    fn last_window_rejected(&self) -> bool {
        if self.class == PermClass::All {
            return false;
        }
        let j = self.values.len() - 1;
        let (mut lo, mut hi) = (self.values[j], self.values[j]);
        for i in (0..j).rev() {
            lo = lo.min(self.values[i]);
            hi = hi.max(self.values[i]);
            if hi - lo == j - i && self.class.rejects_interval(&self.values, i, j, self.n) {
                return true;
            }
        }
        false
    }
}

fn search_from<F: FnMut(&[usize])>(n: usize, class: PermClass, first: usize, visit: &mut F) {
    let mut used = vec![false; n + 1];
    used[first] = true;
    let mut s = Search {
        n,
        class,
        values: vec![first],
        used,
        visit,
    };
    s.extend();
}

/// Number of members of `class` in `S_n`.
pub fn count(n: usize, class: PermClass, cap: usize) -> Result<u64> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(0);
    }
    let total = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut c = 0u64;
            search_from(n, class, first, &mut |_| c += 1);
            c
        })
        .sum();
    Ok(total)
}

/// Members of `class` in `S_n`, lexicographically sorted.
pub fn enumerate(n: usize, class: PermClass, cap: usize) -> Result<Vec<Permutation>> {
    filter(n, class, cap, |_| true)
}

/// Members of `class` in `S_n` that also satisfy `keep`, lexicographically
/// sorted.
pub fn filter<F>(n: usize, class: PermClass, cap: usize, keep: F) -> Result<Vec<Permutation>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let chunks: Vec<Vec<Permutation>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            search_from(n, class, first, &mut |v| {
                if keep(v) {
                    out.push(Permutation::from_vec_unchecked(v.to_vec()))
                }
            });
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}
