//! Brute-force ground truth over all `n!` permutations.
//!
//! This module only depends on the permutation type and the generic
//! subsequence counter, never on the specialized 321 counter, the avoider
//! generators or the bijection, so a bug in any of those cannot confirm
//! itself.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::perm::{count_occurrences_up_to, Permutation};

/// Default largest `n` for the oracle (`10! = 3628800`).
pub const DEFAULT_ORACLE_CAP: usize = 10;

/// Largest `n` accepted when long runs are enabled.
pub const LONG_ORACLE_CAP: usize = 11;

/// Rearranges `values` into its lexicographic successor. Returns `false`
/// (leaving `values` untouched) when it is already the last arrangement.
pub fn next_permutation(values: &mut [u32]) -> bool {
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

/// Lexicographic stream of every arrangement of a starting sorted word.
#[derive(Debug, Clone)]
struct LexPermutations {
    current: Vec<u32>,
    fresh: bool,
    done: bool,
}

impl LexPermutations {
    /// Arrangements of `1..=n` whose first entry is `first`, or of all of
    /// `1..=n` when `first` is `None`.
    fn new(n: usize, first: Option<u32>) -> Self {
        let current: Vec<u32> = match first {
            Some(f) => std::iter::once(f)
                .chain((1..=n as u32).filter(|&v| v != f))
                .collect(),
            None => (1..=n as u32).collect(),
        };
        LexPermutations {
            current,
            fresh: true,
            done: false,
        }
    }

    /// Only the tail after the pinned first entry moves.
    fn advance(&mut self, pinned: bool) -> bool {
        let start = usize::from(pinned && !self.current.is_empty());
        next_permutation(&mut self.current[start..])
    }
}

/// All permutations of `{1..n}` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut it = LexPermutations::new(n, None);
    std::iter::from_fn(move || {
        if it.done {
            return None;
        }
        if !it.fresh && !it.advance(false) {
            it.done = true;
            return None;
        }
        it.fresh = false;
        Some(Permutation::from_values_unchecked(it.current.clone()))
    })
}

/// Calls `f` on every permutation of `{1..n}` starting with `first`, in
/// lexicographic order, without allocating per permutation.
fn for_each_with_first(n: usize, first: u32, mut f: impl FnMut(&[u32])) {
    let mut it = LexPermutations::new(n, Some(first));
    loop {
        f(&it.current);
        if !it.advance(true) {
            break;
        }
    }
}

/// Size cap and execution strategy for brute-force runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub cap: usize,
    pub exec: Exec,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: DEFAULT_ORACLE_CAP,
            exec: Exec::default(),
        }
    }
}

impl Oracle {
    /// Raises the cap to [`LONG_ORACLE_CAP`].
    pub fn allow_long_runs(self) -> Self {
        Oracle {
            cap: self.cap.max(LONG_ORACLE_CAP),
            ..self
        }
    }

    pub fn sequential(self) -> Self {
        Oracle {
            exec: Exec::Sequential,
            ..self
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Runs `task` once per possible first entry of an `n`-permutation and
    /// returns the results in first-entry order.
    fn partitioned<R, F>(&self, n: usize, task: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u32) -> R + Sync + Send,
    {
        self.exec.map((1..=n as u32).collect(), task)
    }

    /// Number of `n`-permutations with exactly `k` occurrences of `pattern`,
    /// using the generic counter on each of the `n!` permutations.
    pub fn count_exactly_k(&self, n: usize, pattern: &Permutation, k: u64) -> Result<BigInt> {
        self.check(n)?;
        let pat = pattern.values();
        let matches = |w: &[u32]| count_occurrences_up_to(w, pat, k.saturating_add(1)) == k;
        if n == 0 {
            return Ok(BigInt::from(u8::from(matches(&[]))));
        }
        let counts = self.partitioned(n, |first| {
            let mut c = 0u64;
            for_each_with_first(n, first, |w| c += u64::from(matches(w)));
            c
        });
        Ok(counts.into_iter().map(BigInt::from).sum())
    }

    /// Number of `n`-permutations for each occurrence count of `pattern`;
    /// entry `k` of the result is the count for exactly `k` occurrences.
    pub fn histogram(&self, n: usize, pattern: &Permutation) -> Result<Vec<BigInt>> {
        self.check(n)?;
        let pat = pattern.values();
        let tally = |hist: &mut Vec<u64>, w: &[u32]| {
            let k = count_occurrences_up_to(w, pat, u64::MAX) as usize;
            if hist.len() <= k {
                hist.resize(k + 1, 0);
            }
            hist[k] += 1;
        };
        let parts = if n == 0 {
            let mut h = Vec::new();
            tally(&mut h, &[]);
            vec![h]
        } else {
            self.partitioned(n, |first| {
                let mut h = Vec::new();
                for_each_with_first(n, first, |w| tally(&mut h, w));
                h
            })
        };
        let width = parts.iter().map(Vec::len).max().unwrap_or(0);
        let mut total = vec![BigInt::from(0); width];
        for h in parts {
            for (slot, c) in total.iter_mut().zip(h) {
                *slot += c;
            }
        }
        Ok(total)
    }

    /// Every `n`-permutation with exactly one 321 occurrence, in
    /// lexicographic order.
    pub fn noonan_set(&self, n: usize) -> Result<Vec<Permutation>> {
        self.check(n)?;
        let pat = [3u32, 2, 1];
        if n < 3 {
            return Ok(Vec::new());
        }
        let chunks = self.partitioned(n, |first| {
            let mut out = Vec::new();
            for_each_with_first(n, first, |w| {
                if count_occurrences_up_to(w, &pat, 2) == 1 {
                    out.push(Permutation::from_values_unchecked(w.to_vec()));
                }
            });
            out
        });
        Ok(chunks.into_iter().flatten().collect())
    }
}

/// [`Oracle::count_exactly_k`] with the default cap.
pub fn brute_count_exactly_k(n: usize, pattern: &Permutation, k: u64) -> Result<BigInt> {
    Oracle::default().count_exactly_k(n, pattern, k)
}

/// Lexicographic stream of the permutations of `{1..n}` with exactly one
/// 321 occurrence, filtered from all `n!` permutations.
pub fn brute_noonan_set(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    Oracle::default().check(n)?;
    let pat = [3u32, 2, 1];
    Ok(all_permutations(n).filter(move |p| count_occurrences_up_to(p.values(), &pat, 2) == 1))
}
