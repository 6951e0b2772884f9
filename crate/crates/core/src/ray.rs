//! Eventually periodic rays of the infinite binary tree.
//!
//! A ray is an infinite geodesic from the root, written as an infinite word
//! over `{a, b}` (`a` = left edge, `b` = right edge). Only eventually
//! periodic rays are representable: a finite prefix followed by a prime
//! period repeated forever.
//!
//! **Letter order.** Rays are serialized in *application order*: the first
//! letter of `prefix` (then of the cycled `period`) is the first edge taken
//! from the root, i.e. the first operator applied when letters act on a
//! vector. This is the reverse of the classical convention that prints an
//! infinite word right-to-left with the first letter rightmost, so the ray
//! `…aba` (zig-zag starting with a left edge) is serialized with
//! `period = "ab"`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::forest::Vertex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RayError {
    #[error("ray period must be nonempty")]
    EmptyPeriod,
    #[error("ray letters must be 'a' or 'b', got {0:?}")]
    BadLetter(char),
}

/// An eventually periodic ray: `prefix` then `period` repeated forever, in
/// application order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRay", into = "RawRay")]
pub struct Ray {
    prefix: String,
    period: String,
}

#[derive(Serialize, Deserialize)]
struct RawRay {
    prefix: String,
    period: String,
}

impl TryFrom<RawRay> for Ray {
    type Error = RayError;
    fn try_from(raw: RawRay) -> Result<Self, Self::Error> {
        Ray::normalize(&raw.prefix, &raw.period)
    }
}

impl From<Ray> for RawRay {
    fn from(r: Ray) -> Self {
        RawRay {
            prefix: r.prefix,
            period: r.period,
        }
    }
}

/// An equivalence class of rays: rays are equivalent when they agree after
/// deleting finite prefixes, so a class is determined by the period word up
/// to cyclic rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RayClass {
    canonical_period: String,
}

fn check_letters(s: &str) -> Result<(), RayError> {
    match s.chars().find(|&c| c != 'a' && c != 'b') {
        Some(c) => Err(RayError::BadLetter(c)),
        None => Ok(()),
    }
}

/// Prime-reduces a word: the shortest `d` with `w = d^k`.
fn prime_root(w: &str) -> &str {
    let n = w.len();
    for d in 1..=n {
        if n % d == 0 && w.as_bytes().iter().enumerate().all(|(i, &c)| c == w.as_bytes()[i % d]) {
            return &w[..d];
        }
    }
    w
}

fn is_prime_word(w: &str) -> bool {
    !w.is_empty() && prime_root(w).len() == w.len()
}

/// Lexicographically least cyclic rotation (`a < b`).
fn least_rotation(w: &str) -> String {
    let n = w.len();
    let mut best = w.to_string();
    for k in 1..n {
        let rot = format!("{}{}", &w[k..], &w[..k]);
        if rot < best {
            best = rot;
        }
    }
    best
}

impl Ray {
    /// Normal form of the ray `prefix · period^∞`.
    ///
    /// The period is prime-reduced, then any prefix tail that merely repeats
    /// the incoming periodic sequence is absorbed (rotating the period to
    /// keep the same infinite word). Two inputs describing the same infinite
    /// letter sequence normalize identically.
    pub fn normalize(prefix: &str, period: &str) -> Result<Self, RayError> {
        if period.is_empty() {
            return Err(RayError::EmptyPeriod);
        }
        check_letters(prefix)?;
        check_letters(period)?;
        let mut period = prime_root(period).to_string();
        let mut prefix = prefix.to_string();
        while let Some(last) = prefix.chars().last() {
            if period.ends_with(last) {
                prefix.pop();
                let tail = period.pop().expect("nonempty");
                period.insert(0, tail);
            } else {
                break;
            }
        }
        Ok(Ray { prefix, period })
    }

    /// The all-left ray `ℓ` (the point 0).
    pub fn l() -> Self {
        Ray {
            prefix: String::new(),
            period: String::from("a"),
        }
    }

    /// The all-right ray `r` (the point 1).
    pub fn r() -> Self {
        Ray {
            prefix: String::new(),
            period: String::from("b"),
        }
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn period(&self) -> &str {
        &self.period
    }

    pub fn is_periodic(&self) -> bool {
        self.prefix.is_empty()
    }

    /// The `n`-th applied letter, 0-indexed.
    pub fn letter(&self, n: usize) -> char {
        let p = self.prefix.len();
        if n < p {
            self.prefix.as_bytes()[n] as char
        } else {
            self.period.as_bytes()[(n - p) % self.period.len()] as char
        }
    }

    /// The first `n` applied letters, in application order.
    pub fn subword(&self, n: usize) -> String {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// The ray obtained by deleting the first `k` letters.
    pub fn shift(&self, k: usize) -> Ray {
        if k <= self.prefix.len() {
            Ray::normalize(&self.prefix[k..], &self.period).expect("already validated")
        } else {
            let m = self.period.len();
            let r = (k - self.prefix.len()) % m;
            let rotated = format!("{}{}", &self.period[r..], &self.period[..r]);
            Ray::normalize("", &rotated).expect("already validated")
        }
    }

    /// True iff the two rays agree after deleting finite prefixes.
    pub fn equivalent(&self, other: &Ray) -> bool {
        self.class() == other.class()
    }

    pub fn class(&self) -> RayClass {
        RayClass {
            canonical_period: least_rotation(&self.period),
        }
    }

    /// The first `n` edges as a `{0,1}` vertex word (`a` ↦ `0`, `b` ↦ `1`).
    pub fn digits(&self, n: usize) -> Vertex {
        let word: String = (0..n)
            .map(|i| if self.letter(i) == 'a' { '0' } else { '1' })
            .collect();
        Vertex::new(word).expect("binary word")
    }

    /// The point of `[0,1]` reached by the ray, as an exact rational: the
    /// `n`-th letter is the `n`-th binary digit (`a` = 0, `b` = 1).
    pub fn to_unit_interval(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        let mut value = BigRational::zero();
        let mut scale = BigRational::one();
        for c in self.prefix.chars() {
            scale /= &two;
            if c == 'b' {
                value += &scale;
            }
        }
        // periodic tail: (binary value of period) / (2^m - 1), scaled
        let m = self.period.len() as u32;
        let mut num = BigInt::zero();
        for c in self.period.chars() {
            num *= 2;
            if c == 'b' {
                num += 1;
            }
        }
        let den = (BigInt::one() << m) - BigInt::one();
        value + scale * BigRational::new(num, den)
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^inf", self.prefix, self.period)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^inf", self.prefix, self.period)
    }
}

impl RayClass {
    pub fn new(period: &str) -> Result<Self, RayError> {
        if period.is_empty() {
            return Err(RayError::EmptyPeriod);
        }
        check_letters(period)?;
        Ok(RayClass {
            canonical_period: least_rotation(prime_root(period)),
        })
    }

    pub fn canonical_period(&self) -> &str {
        &self.canonical_period
    }

    pub fn period_length(&self) -> usize {
        self.canonical_period.len()
    }

    /// The periodic ray with the canonical period.
    pub fn representative(&self) -> Ray {
        Ray::normalize("", &self.canonical_period).expect("canonical period is valid")
    }

    /// All distinct rotations of the period; these are exactly the periodic
    /// rays in the class.
    pub fn rotations(&self) -> Vec<String> {
        let w = &self.canonical_period;
        (0..w.len())
            .map(|k| format!("{}{}", &w[k..], &w[..k]))
            .collect()
    }
}

impl fmt::Debug for RayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({})^inf]", self.canonical_period)
    }
}

/// All prime words over `{a,b}` of length at most `max_len`, one canonical
/// representative per cyclic-rotation class, sorted by length then
/// lexicographically.
///
/// Canonical representatives of primitive rotation classes are exactly the
/// Lyndon words, generated here by Duval's algorithm.
pub fn prime_period_classes(max_len: usize) -> Vec<RayClass> {
    let mut words: Vec<String> = Vec::new();
    let n = max_len;
    if n == 0 {
        return Vec::new();
    }
    // Duval's generation of Lyndon words over the two-letter alphabet.
    let mut w = vec![0u8];
    loop {
        words.push(w.iter().map(|&b| if b == 0 { 'a' } else { 'b' }).collect());
        let len = w.len();
        let mut next: Vec<u8> = (0..n).map(|i| w[i % len]).collect();
        while let Some(&last) = next.last() {
            if last == 1 {
                next.pop();
            } else {
                break;
            }
        }
        if next.is_empty() {
            break;
        }
        *next.last_mut().unwrap() = 1;
        w = next;
    }
    words.sort_by(|x, y| (x.len(), x.as_str()).cmp(&(y.len(), y.as_str())));
    words
        .into_iter()
        .map(|p| RayClass { canonical_period: p })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn ray(prefix: &str, period: &str) -> Ray {
        Ray::normalize(prefix, period).unwrap()
    }

    #[test]
    fn normalization_examples() {
        // a·(aa)^∞ collapses to ℓ
        assert_eq!(ray("a", "aa"), Ray::l());
        // prime reduction
        assert_eq!(ray("", "abab"), ray("", "ab"));
        // empty period rejected
        assert_eq!(Ray::normalize("a", ""), Err(RayError::EmptyPeriod));
        assert_eq!(Ray::normalize("x", "a"), Err(RayError::BadLetter('x')));
    }

    // Oracle: compare the first `n` letters generated by two descriptions.
    fn same_sequence(x: &Ray, pfx: &str, per: &str, n: usize) -> bool {
        let mut expect = String::from(pfx);
        while expect.len() < n {
            expect.push_str(per);
        }
        x.subword(n) == expect[..n]
    }

    #[test]
    fn normalization_preserves_the_letter_sequence() {
        let cases = [
            ("ab", "ba"),
            ("a", "aa"),
            ("", "abab"),
            ("bba", "a"),
            ("abab", "ab"),
            ("aab", "baa"),
        ];
        for (pfx, per) in cases {
            let r = ray(pfx, per);
            let n = 2 * (pfx.len() + per.len()) + 8;
            assert!(same_sequence(&r, pfx, per, n), "{pfx:?} {per:?} -> {r:?}");
        }
        // spot value: "ab" then "ba" repeated is a, b, b, a, b, a, ...
        let r = ray("ab", "ba");
        assert_eq!(r.subword(6), "abbaba");
    }

    #[test]
    fn subword_examples() {
        assert_eq!(Ray::l().subword(3), "aaa");
        assert_eq!(ray("", "ab").subword(3), "aba");
        assert_eq!(ray("", "ab").subword(0), "");
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Ray::l().shift(5), Ray::l());
        assert_eq!(ray("", "ab").shift(1), ray("", "ba"));
        assert_eq!(ray("ab", "a").shift(2), Ray::l());
    }

    #[test]
    fn equivalence_examples() {
        assert!(Ray::l().equivalent(&ray("bba", "a")));
        assert!(ray("", "ab").equivalent(&ray("", "ba")));
        assert!(!Ray::l().equivalent(&Ray::r()));
    }

    #[test]
    fn unit_interval_values() {
        assert_eq!(Ray::l().to_unit_interval(), BigRational::zero());
        assert_eq!(Ray::r().to_unit_interval(), BigRational::one());
        let third = ray("", "ab").to_unit_interval();
        assert_eq!(third, BigRational::new(1.into(), 3.into()));
        // 1/2 has the two binary expansions 1000… and 0111…
        assert_eq!(
            ray("b", "a").to_unit_interval(),
            ray("a", "b").to_unit_interval()
        );
    }

    #[test]
    fn digit_words() {
        assert_eq!(Ray::l().digits(4).as_str(), "0000");
        assert_eq!(ray("", "ab").digits(3).as_str(), "010");
        assert_eq!(ray("b", "a").digits(3).as_str(), "100");
    }

    #[test]
    fn prime_classes_small() {
        let names = |n| {
            prime_period_classes(n)
                .into_iter()
                .map(|c| c.canonical_period)
                .collect::<Vec<_>>()
        };
        assert_eq!(names(1), vec!["a", "b"]);
        assert_eq!(names(2), vec!["a", "b", "ab"]);
        assert_eq!(names(3), vec!["a", "b", "ab", "aab", "abb"]);
    }

    // Brute-force oracle: enumerate all words of each length, keep the prime
    // ones, deduplicate by rotation.
    fn brute_prime_classes(max_len: usize) -> Vec<String> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            let mut seen = std::collections::BTreeSet::new();
            for mask in 0u32..(1 << len) {
                let w: String = (0..len)
                    .map(|i| if mask >> (len - 1 - i) & 1 == 0 { 'a' } else { 'b' })
                    .collect();
                if is_prime_word(&w) {
                    seen.insert(least_rotation(&w));
                }
            }
            out.extend(seen);
        }
        out
    }

    #[test]
    fn prime_classes_match_brute_force_up_to_8() {
        let fast: Vec<String> = prime_period_classes(8)
            .into_iter()
            .map(|c| c.canonical_period)
            .collect();
        assert_eq!(fast, brute_prime_classes(8));
        // necklace count sanity: primitive classes of length exactly 6
        let len6 = fast.iter().filter(|w| w.len() == 6).count();
        assert_eq!(len6, 9);
    }

    #[test]
    fn rotations_enumerate_the_class() {
        let c = RayClass::new("ab").unwrap();
        assert_eq!(c.rotations(), vec!["ab", "ba"]);
        assert_eq!(c.representative(), ray("", "ab"));
    }

    fn arb_word(max: usize) -> impl Strategy<Value = String> {
        prop::collection::vec(prop::bool::ANY, 0..max)
            .prop_map(|bits| bits.into_iter().map(|b| if b { 'b' } else { 'a' }).collect())
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_sequence_preserving(
            pfx in arb_word(6),
            per in arb_word(5),
        ) {
            prop_assume!(!per.is_empty());
            let r = ray(&pfx, &per);
            let n = 2 * (pfx.len() + per.len()) + 4;
            prop_assert!(same_sequence(&r, &pfx, &per, n));
            let again = ray(r.prefix(), r.period());
            prop_assert_eq!(again, r);
        }

        #[test]
        fn shifts_compose(pfx in arb_word(5), per in arb_word(4), j in 0usize..6, k in 0usize..6) {
            prop_assume!(!per.is_empty());
            let r = ray(&pfx, &per);
            prop_assert_eq!(r.shift(j).shift(k), r.shift(j + k));
            // subword of a shift reads the middle of the original
            let n = 5;
            let full = r.subword(k + n);
            prop_assert_eq!(r.shift(k).subword(n), full[k..].to_string());
        }

        #[test]
        fn unit_interval_respects_digit_order(
            pfx1 in arb_word(5), per1 in arb_word(4),
            pfx2 in arb_word(5), per2 in arb_word(4),
        ) {
            prop_assume!(!per1.is_empty() && !per2.is_empty());
            let x = ray(&pfx1, &per1);
            let y = ray(&pfx2, &per2);
            let n = 2 * (pfx1.len() + per1.len() + pfx2.len() + per2.len()) + 8;
            let (sx, sy) = (x.subword(n), y.subword(n));
            // strict lexicographic order on letters forces numeric order,
            // except for double representations which this order cannot see
            if sx < sy && x.to_unit_interval() > y.to_unit_interval() {
                prop_assert!(false, "order violated: {:?} {:?}", x, y);
            }
        }
    }
}
