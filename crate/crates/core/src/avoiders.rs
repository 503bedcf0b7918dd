//! Generation of 321-avoiding permutations and the two constrained families
//! used by the bijection.
//!
//! Generation is a lexicographic backtracking search over one-line prefixes.
//! Each prefix carries two numbers: `max`, the largest value placed so far,
//! and `guard`, the largest value that already has a larger value before it.
//! Appending `v` completes a 321 exactly when `v < guard`. A prefix is only
//! extended when every value still unplaced exceeds the new guard, so the
//! search never enters a dead branch.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::perm::{Permutation, ValueSequence};

/// Default largest `n` the generators accept (`C_14 = 2674440`).
pub const DEFAULT_GENERATION_CAP: usize = 14;

/// Hard limit imposed by the bitmask representation of used values.
pub const MAX_GENERATION_SIZE: usize = 63;

/// True when no three entries form a decreasing subsequence. Works on any
/// sequence of distinct values.
pub fn is_avoiding_321(values: &[u32]) -> bool {
    let mut max = 0;
    let mut guard = 0;
    for &v in values {
        if v < guard {
            return false;
        }
        if v < max {
            guard = guard.max(v);
        }
        max = max.max(v);
    }
    true
}

/// Lexicographic stream of the 321-avoiding permutations of `{1..n}`,
/// optionally restricted to a fixed first value.
#[derive(Debug, Clone)]
pub struct AvoiderIter {
    n: usize,
    prefix: Vec<u32>,
    /// bit `v` set when value `v` is in the prefix
    used: u64,
    /// `(max, guard)` for each prefix length, `state[0] = (0, 0)`
    state: Vec<(u32, u32)>,
    /// next candidate value to try at each depth
    cursor: Vec<u32>,
    /// when set, depth 0 only tries this value
    first: Option<u32>,
    started: bool,
    done: bool,
}

impl AvoiderIter {
    fn new(n: usize, first: Option<u32>) -> Self {
        debug_assert!(n <= MAX_GENERATION_SIZE);
        let mut cursor = vec![1; n.max(1)];
        if let Some(f) = first {
            cursor[0] = f;
        }
        AvoiderIter {
            n,
            prefix: Vec::with_capacity(n),
            used: 0,
            state: vec![(0, 0)],
            cursor,
            first,
            started: false,
            done: false,
        }
    }

    fn pop(&mut self) {
        if let Some(v) = self.prefix.pop() {
            self.used &= !(1u64 << v);
            self.state.pop();
        }
    }

    /// Smallest value in `1..=n` not yet used, if any.
    fn smallest_unused(&self) -> Option<u32> {
        let free = !self.used & !1u64;
        let v = free.trailing_zeros();
        (v as usize <= self.n).then_some(v)
    }
}

impl Iterator for AvoiderIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Permutation::default());
        }
        if self.started {
            self.pop();
        }
        self.started = true;
        let n = self.n as u32;
        loop {
            let depth = self.prefix.len();
            let (max, guard) = self.state[depth];
            let limit = match (depth, self.first) {
                (0, Some(f)) => f,
                _ => n,
            };
            let mut chosen = None;
            let mut v = self.cursor[depth];
            while v <= limit {
                if self.used & (1u64 << v) == 0 && v > guard {
                    let next_guard = if v < max { guard.max(v) } else { guard };
                    self.used |= 1u64 << v;
                    let viable = self.smallest_unused().is_none_or(|m| m > next_guard);
                    self.used &= !(1u64 << v);
                    if viable {
                        chosen = Some((v, next_guard));
                        break;
                    }
                }
                v += 1;
            }
            match chosen {
                Some((v, next_guard)) => {
                    self.cursor[depth] = v + 1;
                    self.prefix.push(v);
                    self.used |= 1u64 << v;
                    self.state.push((max.max(v), next_guard));
                    if depth + 1 == self.n {
                        return Some(Permutation::from_values_unchecked(self.prefix.clone()));
                    }
                    self.cursor[depth + 1] = 1;
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.pop();
                }
            }
        }
    }
}

/// Size cap and execution strategy for the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub cap: usize,
    pub exec: Exec,
}

impl Default for Generator {
    fn default() -> Self {
        Generator {
            cap: DEFAULT_GENERATION_CAP,
            exec: Exec::default(),
        }
    }
}

impl Generator {
    pub fn with_cap(cap: usize) -> Self {
        Generator {
            cap,
            ..Self::default()
        }
    }

    pub fn sequential(self) -> Self {
        Generator {
            exec: Exec::Sequential,
            ..self
        }
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        let cap = self.cap.min(MAX_GENERATION_SIZE);
        if n > cap {
            Err(Error::CapExceeded { n, cap })
        } else {
            Ok(())
        }
    }

    /// All 321-avoiding permutations of `{1..n}` in lexicographic order.
    pub fn avoiders(&self, n: usize) -> Result<AvoiderIter> {
        self.check(n)?;
        Ok(AvoiderIter::new(n, None))
    }

    /// Avoiders of `{1..b}` whose last value is not `b`.
    pub fn sigma1(&self, b: usize) -> Result<impl Iterator<Item = Permutation>> {
        if b < 2 {
            return Err(Error::InvalidB(b));
        }
        self.check(b)?;
        let last = b as u32;
        Ok(AvoiderIter::new(b, None).filter(move |p| p.values()[p.len() - 1] != last))
    }

    /// Avoiders over the value set `{b..n}` whose first value is not `b`.
    pub fn sigma2(&self, b: usize, n: usize) -> Result<impl Iterator<Item = ValueSequence>> {
        if b < 2 || b + 1 > n {
            return Err(Error::InvalidRange { b, n });
        }
        let len = n - b + 1;
        self.check(len)?;
        let shift = b as u32 - 1;
        // a shifted sequence starts with b iff the unshifted one starts with 1
        let it = (2..=len as u32)
            .flat_map(move |first| AvoiderIter::new(len, Some(first)))
            .map(move |p| {
                let values = p.into_values().into_iter().map(|v| v + shift).collect();
                ValueSequence::from_values_unchecked(values)
            });
        Ok(it)
    }

    /// Hands the avoiders of `{1..n}` to `sink` in lexicographic order, one
    /// block per first value. Blocks are generated in parallel under
    /// [`Exec::Parallel`].
    pub fn avoiders_in_order<E, S>(&self, n: usize, mut sink: S) -> Result<(), E>
    where
        E: From<Error>,
        S: FnMut(Vec<Permutation>) -> Result<(), E>,
    {
        self.check(n)?;
        if n == 0 {
            return sink(vec![Permutation::default()]);
        }
        self.exec.for_each_ordered(
            (1..=n as u32).collect(),
            |first| AvoiderIter::new(n, Some(first)).collect::<Vec<_>>(),
            sink,
        )
    }

    /// Collects [`Generator::avoiders`]; the order is lexicographic under
    /// either execution strategy.
    pub fn collect_avoiders(&self, n: usize) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        self.avoiders_in_order(n, |block| {
            out.extend(block);
            Ok::<_, Error>(())
        })?;
        Ok(out)
    }

    /// Number of 321-avoiding permutations of `{1..n}` by enumeration.
    pub fn count_avoiders(&self, n: usize) -> Result<BigInt> {
        self.check(n)?;
        if n == 0 {
            return Ok(BigInt::from(1));
        }
        let counts = self.exec.map((1..=n as u32).collect(), |first| {
            AvoiderIter::new(n, Some(first)).count() as u64
        });
        Ok(counts.into_iter().map(BigInt::from).sum())
    }
}

/// [`Generator::avoiders`] with the default cap.
pub fn enumerate_avoiders(n: usize) -> Result<AvoiderIter> {
    Generator::default().avoiders(n)
}

/// [`Generator::sigma1`] with the default cap.
pub fn enumerate_sigma1(b: usize) -> Result<impl Iterator<Item = Permutation>> {
    Generator::default().sigma1(b)
}

/// [`Generator::sigma2`] with the default cap.
pub fn enumerate_sigma2(b: usize, n: usize) -> Result<impl Iterator<Item = ValueSequence>> {
    Generator::default().sigma2(b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::count_321_in;

    fn avoids_by_count(values: &[u32]) -> bool {
        count_321_in(values) == 0
    }

    fn strings<T: ToString>(it: impl Iterator<Item = T>) -> Vec<String> {
        it.map(|p| p.to_string()).collect()
    }

    #[test]
    fn is_avoiding_examples() {
        assert!(is_avoiding_321(&[2, 4, 1, 3]));
        assert!(!is_avoiding_321(&[3, 2, 1]));
        assert!(is_avoiding_321(&[]));
        assert!(!is_avoiding_321(&[7, 5, 9, 3]));
        assert!(is_avoiding_321(&[7, 9, 5, 10]));
    }

    #[test]
    fn avoiders_examples() {
        assert_eq!(
            strings(enumerate_avoiders(3).unwrap()),
            ["1 2 3", "1 3 2", "2 1 3", "2 3 1", "3 1 2"]
        );
        let zero: Vec<_> = enumerate_avoiders(0).unwrap().collect();
        assert_eq!(zero, vec![Permutation::default()]);
        assert_eq!(strings(enumerate_avoiders(1).unwrap()), ["1"]);
        assert_eq!(enumerate_avoiders(12).unwrap().count(), 208012);
    }

    #[test]
    fn sigma1_examples() {
        assert_eq!(strings(enumerate_sigma1(2).unwrap()), ["2 1"]);
        assert_eq!(
            strings(enumerate_sigma1(3).unwrap()),
            ["1 3 2", "2 3 1", "3 1 2"]
        );
        assert_eq!(enumerate_sigma1(4).unwrap().count(), 9);
        assert!(matches!(enumerate_sigma1(1), Err(Error::InvalidB(1))));
    }

    #[test]
    fn sigma2_examples() {
        assert_eq!(strings(enumerate_sigma2(2, 3).unwrap()), ["3 2"]);
        assert_eq!(
            strings(enumerate_sigma2(2, 4).unwrap()),
            ["3 2 4", "3 4 2", "4 2 3"]
        );
        assert_eq!(strings(enumerate_sigma2(3, 4).unwrap()), ["4 3"]);
        assert!(matches!(
            enumerate_sigma2(4, 4),
            Err(Error::InvalidRange { b: 4, n: 4 })
        ));
        assert!(matches!(
            enumerate_sigma2(1, 4),
            Err(Error::InvalidRange { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_avoiders(15),
            Err(Error::CapExceeded { n: 15, cap: 14 })
        ));
        assert!(Generator::with_cap(15).avoiders(15).is_ok());
        assert!(matches!(
            Generator::with_cap(100).avoiders(64),
            Err(Error::CapExceeded { n: 64, cap: 63 })
        ));
        assert!(matches!(
            Generator::with_cap(5).sigma2(2, 7),
            Err(Error::CapExceeded { n: 6, cap: 5 })
        ));
    }

    #[test]
    fn collected_and_streamed_agree() {
        for n in 0..=9 {
            let streamed: Vec<_> = enumerate_avoiders(n).unwrap().collect();
            for gen in [Generator::default(), Generator::default().sequential()] {
                assert_eq!(gen.collect_avoiders(n).unwrap(), streamed);
                assert_eq!(gen.count_avoiders(n).unwrap(), BigInt::from(streamed.len()));
            }
        }
    }

    #[test]
    fn emitted_items_avoid() {
        for n in 0..=8 {
            for p in enumerate_avoiders(n).unwrap() {
                assert!(avoids_by_count(p.values()), "{p}");
            }
        }
    }
}
