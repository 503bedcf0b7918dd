//! Permutations in one-line notation and exact counting of pattern
//! occurrences.
//!
//! Positions and values are 1-based when reported to callers. Internally
//! the one-line notation is stored as a `Vec<u32>` indexed from zero.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fenwick::Fenwick;

/// A bijection on `{1..n}` written in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates `raw` as a rearrangement of `{1..n}` where `n = raw.len()`.
    pub fn from_one_line(raw: &[i64]) -> Result<Self> {
        let n = raw.len();
        let mut seen = vec![false; n + 1];
        let mut values = Vec::with_capacity(n);
        for (pos, &v) in raw.iter().enumerate() {
            if v <= 0 {
                return Err(Error::NotAPermutation(format!(
                    "non-positive value {v} at position {}",
                    pos + 1
                )));
            }
            if v as u64 > n as u64 {
                return Err(Error::NotAPermutation(format!(
                    "value {v} at position {} is out of range 1..={n}",
                    pos + 1
                )));
            }
            let v = v as usize;
            if seen[v] {
                return Err(Error::NotAPermutation(format!("duplicate value {v}")));
            }
            seen[v] = true;
            values.push(v as u32);
        }
        Ok(Permutation { values })
    }

    /// Same as [`Permutation::from_one_line`] for already-unsigned input.
    pub fn from_values(values: Vec<u32>) -> Result<Self> {
        let raw: Vec<i64> = values.iter().map(|&v| v as i64).collect();
        Self::from_one_line(&raw).map(|_| Permutation { values })
    }

    /// Caller guarantees `values` is a rearrangement of `1..=len`.
    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Self::from_values(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    /// `n n-1 ... 1`
    pub fn reverse_identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// Reverses the word and replaces each value `v` by `n + 1 - v`.
    pub fn reverse_complement(&self) -> Self {
        let n = self.len() as u32;
        Permutation {
            values: self.values.iter().rev().map(|&v| n + 1 - v).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_one_line(f, &self.values)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_one_line(&parse_one_line(s)?)
    }
}

/// A sequence of distinct positive integers over an arbitrary value set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ValueSequence {
    values: Vec<u32>,
}

impl ValueSequence {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(Error::NotDistinct(format!(
                "non-positive value at position {}",
                pos + 1
            )));
        }
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotDistinct(format!("duplicate value {}", w[0])));
        }
        Ok(ValueSequence { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        ValueSequence { values }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.values.first().copied()
    }

    /// True when the set of values is exactly `lo..=hi`.
    pub fn has_support(&self, lo: u32, hi: u32) -> bool {
        if hi < lo {
            return self.values.is_empty();
        }
        if self.values.len() != (hi - lo + 1) as usize {
            return false;
        }
        // values are distinct, so the right count inside the range suffices
        self.values.iter().all(|&v| (lo..=hi).contains(&v))
    }
}

impl fmt::Display for ValueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_one_line(f, &self.values)
    }
}

impl FromStr for ValueSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = parse_one_line(s)?;
        let mut values = Vec::with_capacity(raw.len());
        for v in raw {
            if v <= 0 || v > u32::MAX as i64 {
                return Err(Error::NotDistinct(format!(
                    "value {v} is not a positive u32"
                )));
            }
            values.push(v as u32);
        }
        ValueSequence::new(values)
    }
}

impl From<Permutation> for ValueSequence {
    fn from(p: Permutation) -> Self {
        ValueSequence { values: p.values }
    }
}

fn write_one_line(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    let mut it = values.iter();
    if let Some(v) = it.next() {
        write!(f, "{v}")?;
        for v in it {
            write!(f, " {v}")?;
        }
    }
    Ok(())
}

/// Splits whitespace-separated integers. Only malformed tokens fail here;
/// permutation validity is checked by the caller.
pub fn parse_one_line(s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{tok}` is not an integer")))
        })
        .collect()
}

/// A single 321 occurrence: positions `i < j < k` (1-based) holding values
/// `c > b > a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence321 {
    pub positions: (usize, usize, usize),
    pub c: u32,
    pub b: u32,
    pub a: u32,
}

/// Number of position subsequences of `text` that are order-isomorphic to
/// `pattern`. Both slices only need distinct values.
pub fn count_occurrences(text: &[u32], pattern: &[u32]) -> u64 {
    count_occurrences_up_to(text, pattern, u64::MAX)
}

/// Like [`count_occurrences`] but stops as soon as `limit` occurrences have
/// been seen.
pub fn count_occurrences_up_to(text: &[u32], pattern: &[u32], limit: u64) -> u64 {
    if pattern.len() > text.len() {
        return 0;
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    let mut count = 0;
    extend_match(text, pattern, 0, &mut chosen, limit, &mut count);
    count
}

fn extend_match(
    text: &[u32],
    pattern: &[u32],
    start: usize,
    chosen: &mut Vec<u32>,
    limit: u64,
    count: &mut u64,
) {
    let t = chosen.len();
    if t == pattern.len() {
        *count += 1;
        return;
    }
    // leave room for the pattern entries still to be placed
    let last_start = text.len() - (pattern.len() - t);
    for pos in start..=last_start {
        let v = text[pos];
        let consistent = chosen
            .iter()
            .zip(pattern)
            .all(|(&w, &p)| (p < pattern[t]) == (w < v));
        if consistent {
            chosen.push(v);
            extend_match(text, pattern, pos + 1, chosen, limit, count);
            chosen.pop();
            if *count >= limit {
                return;
            }
        }
    }
}

/// Exact number of occurrences of `pattern` in `perm`.
pub fn count_pattern(perm: &Permutation, pattern: &Permutation) -> BigInt {
    BigInt::from(count_occurrences(perm.values(), pattern.values()))
}

/// 321 occurrences in any sequence of distinct values: the sum over middle
/// positions of (larger entries to the left) x (smaller entries to the right).
pub fn count_321_in(values: &[u32]) -> u128 {
    let mut total: u128 = 0;
    for (j, &mid) in values.iter().enumerate() {
        let left = values[..j].iter().filter(|&&v| v > mid).count() as u128;
        if left == 0 {
            continue;
        }
        let right = values[j + 1..].iter().filter(|&&v| v < mid).count() as u128;
        total += left * right;
    }
    total
}

/// Exact number of 321 occurrences, O(n^2).
pub fn count_321(perm: &Permutation) -> BigInt {
    BigInt::from(count_321_in(perm.values()))
}

/// Same count as [`count_321`] using a Fenwick tree over values, O(n log n).
pub fn count_321_fast(perm: &Permutation) -> BigInt {
    let n = perm.len();
    let mut seen = Fenwick::new(n);
    let mut total: u128 = 0;
    for (j, &v) in perm.values().iter().enumerate() {
        let smaller_left = seen.prefix_sum(v as usize - 1);
        let larger_left = j as u64 - smaller_left;
        // every value below v is either left of j or right of it
        let smaller_right = (v as u64 - 1) - smaller_left;
        total += larger_left as u128 * smaller_right as u128;
        seen.add(v as usize, 1);
    }
    BigInt::from(total)
}

/// Returns the unique 321 occurrence, or reports that there are none or
/// several. The scan stops at the second occurrence.
pub fn find_unique_321(perm: &Permutation) -> Result<Occurrence321> {
    find_unique_321_in(perm.values())
}

pub(crate) fn find_unique_321_in(values: &[u32]) -> Result<Occurrence321> {
    let n = values.len();
    let mut found: Option<Occurrence321> = None;
    for i in 0..n {
        for j in i + 1..n {
            if values[j] >= values[i] {
                continue;
            }
            for k in j + 1..n {
                if values[k] < values[j] {
                    if found.is_some() {
                        return Err(Error::MultipleOccurrences);
                    }
                    found = Some(Occurrence321 {
                        positions: (i + 1, j + 1, k + 1),
                        c: values[i],
                        b: values[j],
                        a: values[k],
                    });
                }
            }
        }
    }
    found.ok_or(Error::NoOccurrence)
}
