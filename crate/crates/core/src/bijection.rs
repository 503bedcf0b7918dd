//! The decomposition of a permutation with exactly one 321 occurrence into a
//! pair of constrained 321-avoiders, and its inverse.
//!
//! Write `pi = p1 c p2 b p3 a p4` where `c b a` is the unique 321 occurrence.
//! Every entry left of `b` other than `c` is smaller than `b`, and every
//! entry right of `b` other than `a` is larger, so
//!
//! * `sigma1 = p1 b p2 a` is a 321-avoiding permutation of `{1..b}` that
//!   does not end with `b`;
//! * `sigma2 = c p3 b p4` is a 321-avoiding sequence over `{b..n}` that does
//!   not start with `b`.
//!
//! The middle value `b` is stored by value; it is also the length of `sigma1`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::avoiders::{is_avoiding_321, Generator};
use crate::error::{Error, Result};
use crate::perm::{count_321_in, find_unique_321, Permutation, ValueSequence};

/// The triple `(b, sigma1, sigma2)`. Constructed only through validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    b: u32,
    sigma1: Permutation,
    sigma2: ValueSequence,
}

impl Decomposition {
    /// Checks every structural requirement and reports the first failure as
    /// [`Error::ConstraintViolation`].
    pub fn new(b: u32, sigma1: Permutation, sigma2: ValueSequence) -> Result<Self> {
        let fail = |msg: String| Err(Error::ConstraintViolation(msg));
        if b < 2 {
            return fail(format!("b = {b} but b must be at least 2"));
        }
        if sigma1.len() != b as usize {
            return fail(format!(
                "sigma1 has length {} but must be a permutation of 1..={b}",
                sigma1.len()
            ));
        }
        if sigma1.values().last() == Some(&b) {
            return fail(format!("sigma1 ends with b = {b}"));
        }
        if !is_avoiding_321(sigma1.values()) {
            return fail(format!("sigma1 = {sigma1} contains 321"));
        }
        if sigma2.len() < 2 {
            return fail(format!(
                "sigma2 has length {} but needs at least 2 values",
                sigma2.len()
            ));
        }
        let n = b + sigma2.len() as u32 - 1;
        if !sigma2.has_support(b, n) {
            return fail(format!(
                "sigma2 = {sigma2} is not a rearrangement of {b}..={n}"
            ));
        }
        if sigma2.first() == Some(b) {
            return fail(format!("sigma2 starts with b = {b}"));
        }
        if !is_avoiding_321(sigma2.values()) {
            return fail(format!("sigma2 = {sigma2} contains 321"));
        }
        Ok(Decomposition { b, sigma1, sigma2 })
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &ValueSequence {
        &self.sigma2
    }

    /// Length of the permutation this decomposes.
    pub fn n(&self) -> usize {
        self.b as usize + self.sigma2.len() - 1
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "b={} | sigma1={} | sigma2={}",
            self.b, self.sigma1, self.sigma2
        )
    }
}

impl FromStr for Decomposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('|').map(str::trim).collect();
        let [b, s1, s2] = parts.as_slice() else {
            return Err(Error::Parse(format!(
                "expected `b=<int> | sigma1=<one-line> | sigma2=<one-line>`, got `{s}`"
            )));
        };
        let field = |part: &'_ str, key: &str| -> Result<String> {
            part.strip_prefix(key)
                .map(|rest| rest.to_string())
                .ok_or_else(|| Error::Parse(format!("expected `{key}...`, got `{part}`")))
        };
        let b: u32 = field(b, "b=")?
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad value for b in `{s}`")))?;
        let sigma1: Permutation = field(s1, "sigma1=")?.parse()?;
        let sigma2: ValueSequence = field(s2, "sigma2=")?.parse()?;
        Decomposition::new(b, sigma1, sigma2)
    }
}

/// Splits a permutation with exactly one 321 occurrence into
/// `(b, sigma1, sigma2)`. The result is validated before it is returned.
pub fn decompose(perm: &Permutation) -> Result<Decomposition> {
    let occ = find_unique_321(perm).map_err(|e| match e {
        Error::NoOccurrence => Error::NoUnique321 { found: "0".into() },
        Error::MultipleOccurrences => Error::NoUnique321 {
            found: "at least 2".into(),
        },
        other => other,
    })?;
    let v = perm.values();
    let (i, j, k) = occ.positions;
    let (p1, p2, p3, p4) = (&v[..i - 1], &v[i..j - 1], &v[j..k - 1], &v[k..]);

    let mut s1 = Vec::with_capacity(occ.b as usize);
    s1.extend_from_slice(p1);
    s1.push(occ.b);
    s1.extend_from_slice(p2);
    s1.push(occ.a);

    let mut s2 = Vec::with_capacity(perm.len() - occ.b as usize + 1);
    s2.push(occ.c);
    s2.extend_from_slice(p3);
    s2.push(occ.b);
    s2.extend_from_slice(p4);

    let internal = |e: Error| Error::InternalConstraintViolation(e.to_string());
    let sigma1 = Permutation::from_values(s1).map_err(internal)?;
    let sigma2 = ValueSequence::new(s2).map_err(internal)?;
    Decomposition::new(occ.b, sigma1, sigma2).map_err(internal)
}

/// Reassembles `p1 c p2 b p3 a p4` from a decomposition. The output is
/// checked to contain exactly one 321 occurrence.
pub fn compose(d: &Decomposition) -> Result<Permutation> {
    // fields are private, but re-check so that compose never trusts its input
    let d = Decomposition::new(d.b, d.sigma1.clone(), d.sigma2.clone())?;
    let b = d.b;
    let s1 = d.sigma1.values();
    let s2 = d.sigma2.values();

    let a = s1[s1.len() - 1];
    let split1 = position_of(s1, b)?;
    let (p1, p2) = (&s1[..split1], &s1[split1 + 1..s1.len() - 1]);

    let c = s2[0];
    let split2 = position_of(s2, b)?;
    let (p3, p4) = (&s2[1..split2], &s2[split2 + 1..]);

    let mut out = Vec::with_capacity(d.n());
    out.extend_from_slice(p1);
    out.push(c);
    out.extend_from_slice(p2);
    out.push(b);
    out.extend_from_slice(p3);
    out.push(a);
    out.extend_from_slice(p4);

    let perm = Permutation::from_values(out)
        .map_err(|e| Error::InternalConstraintViolation(e.to_string()))?;
    let occurrences = count_321_in(perm.values());
    if occurrences != 1 {
        return Err(Error::InternalConstraintViolation(format!(
            "composed permutation {perm} has {occurrences} occurrences of 321"
        )));
    }
    Ok(perm)
}

fn position_of(values: &[u32], target: u32) -> Result<usize> {
    values.iter().position(|&v| v == target).ok_or_else(|| {
        Error::InternalConstraintViolation(format!("value {target} missing from sequence"))
    })
}

/// One `(b, sigma1)` with all matching `sigma2`.
type NoonanTask = (u32, Permutation, Arc<Vec<ValueSequence>>);

fn compose_parts(b: u32, sigma1: &Permutation, sigma2: &ValueSequence) -> Result<Permutation> {
    compose(&Decomposition::new(b, sigma1.clone(), sigma2.clone())?)
}

impl Generator {
    /// Permutations of `{1..n}` with exactly one 321 occurrence, produced by
    /// composing every valid pair: ascending `b`, then `sigma1`, then
    /// `sigma2`, each lexicographic. Empty for `n < 3`.
    pub fn noonan(&self, n: usize) -> Result<impl Iterator<Item = Result<Permutation>>> {
        self.check(n)?;
        let gen = *self;
        let bs = if n >= 3 { 2..n } else { 2..2 };
        Ok(bs.flat_map(move |b| {
            // sizes were checked above, so both generators accept b
            let sigma2s: Vec<ValueSequence> =
                gen.sigma2(b, n).map(Iterator::collect).unwrap_or_default();
            let sigma1s = gen.sigma1(b).into_iter().flatten();
            sigma1s.flat_map(move |s1| {
                sigma2s
                    .clone()
                    .into_iter()
                    .map(move |s2| compose_parts(b as u32, &s1, &s2))
            })
        }))
    }

    /// Every `(b, sigma1)` with the matching list of `sigma2`, in emission order.
    fn noonan_tasks(&self, n: usize) -> Result<Vec<NoonanTask>> {
        self.check(n)?;
        let mut tasks = Vec::new();
        if n < 3 {
            return Ok(tasks);
        }
        for b in 2..n {
            let sigma2s = Arc::new(self.sigma2(b, n)?.collect::<Vec<_>>());
            for s1 in self.sigma1(b)? {
                tasks.push((b as u32, s1, sigma2s.clone()));
            }
        }
        Ok(tasks)
    }

    /// Hands the output of [`Generator::noonan`] to `sink` in the same
    /// order, one block per `(b, sigma1)`. Blocks are composed in parallel
    /// under [`crate::Exec::Parallel`].
    pub fn noonan_in_order<E, S>(&self, n: usize, mut sink: S) -> Result<(), E>
    where
        E: From<Error>,
        S: FnMut(Vec<Permutation>) -> Result<(), E>,
    {
        self.exec.for_each_ordered(
            self.noonan_tasks(n)?,
            |(b, s1, sigma2s)| {
                sigma2s
                    .iter()
                    .map(|s2| compose_parts(b, &s1, s2))
                    .collect::<Result<Vec<_>>>()
            },
            |block| sink(block?),
        )
    }

    /// [`Generator::noonan`] collected, in the same order.
    pub fn collect_noonan(&self, n: usize) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        self.noonan_in_order(n, |block| {
            out.extend(block);
            Ok::<_, Error>(())
        })?;
        Ok(out)
    }

    /// Size of the image of the composition map, composing (and checking)
    /// every pair.
    pub fn count_noonan(&self, n: usize) -> Result<BigInt> {
        let counts = self.exec.map(self.noonan_tasks(n)?, |(b, s1, sigma2s)| {
            sigma2s
                .iter()
                .try_fold(0u64, |acc, s2| compose_parts(b, &s1, s2).map(|_| acc + 1))
        });
        let mut total = BigInt::from(0);
        for c in counts {
            total += c?;
        }
        Ok(total)
    }
}

/// [`Generator::noonan`] with the default cap.
pub fn enumerate_noonan(n: usize) -> Result<impl Iterator<Item = Result<Permutation>>> {
    Generator::default().noonan(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> ValueSequence {
        s.parse().unwrap()
    }

    fn d(b: u32, s1: &str, s2: &str) -> Decomposition {
        Decomposition::new(b, p(s1), seq(s2)).unwrap()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&p("3 2 1")).unwrap(), d(2, "2 1", "3 2"));
        assert_eq!(decompose(&p("3 2 1 4")).unwrap(), d(2, "2 1", "3 2 4"));
        assert_eq!(decompose(&p("1 4 3 2")).unwrap(), d(3, "1 3 2", "4 3"));
        assert!(matches!(
            decompose(&p("1 2 3")),
            Err(Error::NoUnique321 { .. })
        ));
        assert!(matches!(
            decompose(&p("4 3 2 1")),
            Err(Error::NoUnique321 { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&d(2, "2 1", "3 2")).unwrap(), p("3 2 1"));
        assert_eq!(compose(&d(3, "1 3 2", "4 3")).unwrap(), p("1 4 3 2"));
        assert_eq!(compose(&d(2, "2 1", "3 4 2")).unwrap(), p("3 2 4 1"));
        assert_eq!(count_321_in(&[3, 2, 4, 1]), 1);
    }

    #[test]
    fn invalid_decompositions_are_rejected() {
        let bad = [
            (1, "1", "2 1"),
            (2, "1 2", "3 2"),   // sigma1 ends with b
            (2, "2 1", "2 3"),   // sigma2 starts with b
            (3, "3 2 1", "4 3"), // sigma1 contains 321
            (2, "2 1", "4 3 2"), // sigma2 contains 321
            (2, "2 1", "3 4"),   // wrong support
            (2, "2 1", "3"),     // too short
            (3, "2 1", "4 3"),   // sigma1 wrong length
        ];
        for (b, s1, s2) in bad {
            let r = Decomposition::new(b, p(s1), seq(s2));
            assert!(
                matches!(r, Err(Error::ConstraintViolation(_))),
                "b={b} {s1} / {s2}: {r:?}"
            );
        }
    }

    #[test]
    fn text_form_round_trip() {
        let x = d(2, "2 1", "3 2 4");
        assert_eq!(x.to_string(), "b=2 | sigma1=2 1 | sigma2=3 2 4");
        assert_eq!(x.to_string().parse::<Decomposition>().unwrap(), x);
        assert_eq!(
            "b=3|sigma1=1 3 2|sigma2=4 3"
                .parse::<Decomposition>()
                .unwrap(),
            d(3, "1 3 2", "4 3")
        );
        assert!(matches!(
            "b=2 | sigma1=2 1".parse::<Decomposition>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "b=x | sigma1=2 1 | sigma2=3 2".parse::<Decomposition>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "b=2 | sigma1=1 2 | sigma2=3 2".parse::<Decomposition>(),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn noonan_examples() {
        let three: Vec<_> = enumerate_noonan(3)
            .unwrap()
            .collect::<Result<Vec<_>>>()
            .unwrap();
        assert_eq!(three, vec![p("3 2 1")]);

        let mut four: Vec<String> = enumerate_noonan(4)
            .unwrap()
            .map(|r| r.unwrap().to_string())
            .collect();
        four.sort();
        let mut expected = [
            "3 2 1 4", "3 2 4 1", "4 2 1 3", "1 4 3 2", "2 4 3 1", "4 1 3 2",
        ]
        .map(String::from)
        .to_vec();
        expected.sort();
        assert_eq!(four, expected);

        assert_eq!(enumerate_noonan(5).unwrap().count(), 27);
        assert_eq!(enumerate_noonan(2).unwrap().count(), 0);
        assert_eq!(enumerate_noonan(0).unwrap().count(), 0);
    }

    #[test]
    fn collect_and_count_match_stream() {
        for n in 0..=8 {
            let streamed = enumerate_noonan(n)
                .unwrap()
                .collect::<Result<Vec<_>>>()
                .unwrap();
            for gen in [Generator::default(), Generator::default().sequential()] {
                assert_eq!(gen.collect_noonan(n).unwrap(), streamed);
                assert_eq!(gen.count_noonan(n).unwrap(), BigInt::from(streamed.len()));
            }
        }
    }
}
