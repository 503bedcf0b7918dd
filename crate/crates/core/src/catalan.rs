//! Exact Catalan and Noonan arithmetic.
//!
//! Three independent routes to the number of permutations with exactly one
//! 321 occurrence are provided:
//!
//! * [`noonan_convolution`]: `sum_{b=2}^{n-1} (C_b - C_{b-1})(C_{n-b+1} - C_{n-b})`,
//!   with Catalan numbers taken from the convolution recurrence;
//! * [`noonan_catalan_form`]: `C_{n+2} - 4 C_{n+1} + 3 C_n`, with Catalan
//!   numbers from the closed form;
//! * [`noonan_closed`]: `3 binom(2n, n+3) / n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// `binom(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // acc = binom(n - k + i, i) after this step, always an integer
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    let (q, r) = binomial(2 * n, n as i64).div_rem(&BigInt::from(n + 1));
    debug_assert!(r.is_zero());
    q
}

/// `C_0 ..= C_max_n` from `C_0 = 1` and `C_m = sum_{i<m} C_i C_{m-1-i}`.
pub fn catalan_table(max_n: usize) -> Vec<BigInt> {
    let mut table: Vec<BigInt> = Vec::with_capacity(max_n + 1);
    table.push(BigInt::one());
    for m in 1..=max_n {
        let mut sum = BigInt::zero();
        // the convolution is symmetric; add each off-diagonal pair once
        for i in 0..m / 2 {
            sum += &table[i] * &table[m - 1 - i];
        }
        sum *= 2u32;
        if m % 2 == 1 {
            let mid = &table[m / 2];
            sum += mid * mid;
        }
        table.push(sum);
    }
    table
}

/// `3 binom(2n, n+3) / n`, which is zero for `n < 3`.
pub fn noonan_closed(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidN("noonan_closed needs n >= 1".into()));
    }
    let numerator = binomial(2 * n, n as i64 + 3) * 3u32;
    let (q, r) = numerator.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(Error::NonIntegerResult(n));
    }
    Ok(q)
}

/// `C_{n+2} - 4 C_{n+1} + 3 C_n`.
pub fn noonan_catalan_form(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidN("noonan_catalan_form needs n >= 1".into()));
    }
    Ok(catalan(n + 2) - catalan(n + 1) * 4u32 + catalan(n) * 3u32)
}

/// The convolution sum over `2 <= b <= n-1`; an empty sum (zero) for `n < 3`.
pub fn noonan_convolution(n: u64) -> BigInt {
    let table = catalan_table(n as usize);
    noonan_convolution_with(&table, n as usize)
}

/// Convolution sum using a precomputed table holding at least `C_0..=C_{n-1}`.
pub fn noonan_convolution_with(table: &[BigInt], n: usize) -> BigInt {
    convolution_over(table, n, 2, n.saturating_sub(1))
}

/// The same sum taken over `1 <= b <= n`. The two extra terms vanish because
/// `C_1 - C_0 = 0`. Needs `C_0..=C_n` in `table`.
pub fn noonan_convolution_full_range(table: &[BigInt], n: usize) -> BigInt {
    convolution_over(table, n, 1, n)
}

fn convolution_over(table: &[BigInt], n: usize, lo: usize, hi: usize) -> BigInt {
    let mut sum = BigInt::zero();
    for b in lo..=hi {
        if b == 0 {
            continue;
        }
        let left = &table[b] - &table[b - 1];
        let right = &table[n - b + 1] - &table[n - b];
        sum += left * right;
    }
    sum
}

/// One row of [`verify_identity_chain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub n: u64,
    pub convolution: BigInt,
    pub catalan_form: BigInt,
    pub closed: BigInt,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.convolution == self.catalan_form && self.catalan_form == self.closed
    }
}

/// Evaluates all three routes for every `3 <= n <= max_n`.
pub fn verify_identity_chain(max_n: u64, exec: Exec) -> Result<Vec<IdentityCheck>> {
    if max_n < 3 {
        return Ok(Vec::new());
    }
    let table = catalan_table(max_n as usize);
    let rows = exec.map((3..=max_n).collect(), |n| -> Result<IdentityCheck> {
        Ok(IdentityCheck {
            n,
            convolution: noonan_convolution_with(&table, n as usize),
            catalan_form: noonan_catalan_form(n)?,
            closed: noonan_closed(n)?,
        })
    });
    rows.into_iter().collect()
}
