//! Permutations containing the pattern 321 exactly once.
//!
//! The crate counts pattern occurrences exactly, generates 321-avoiding
//! permutations, implements the decomposition of a permutation with a
//! single 321 occurrence into two constrained avoiders (and its inverse),
//! and checks the resulting count `(3/n) binom(2n, n+3)` three ways with
//! exact big-integer arithmetic. A brute-force [`oracle`] over all `n!`
//! permutations provides ground truth for small `n`.
//!
//! Enumeration-heavy operations run on rayon when the `parallel` feature is
//! enabled (the default) and on the calling thread otherwise; see [`exec`].

pub mod avoiders;
pub mod bijection;
pub mod catalan;
pub mod error;
pub mod exec;
mod fenwick;
pub mod oracle;
pub mod perm;

pub use avoiders::{
    enumerate_avoiders, enumerate_sigma1, enumerate_sigma2, is_avoiding_321, Generator,
};
pub use bijection::{compose, decompose, enumerate_noonan, Decomposition};
pub use catalan::{
    binomial, catalan, catalan_table, noonan_catalan_form, noonan_closed, noonan_convolution,
};
pub use error::{Error, Result};
pub use exec::{with_threads, Exec};
pub use oracle::{brute_count_exactly_k, brute_noonan_set, Oracle};
pub use perm::{
    count_321, count_321_fast, count_pattern, find_unique_321, Occurrence321, Permutation,
    ValueSequence,
};
