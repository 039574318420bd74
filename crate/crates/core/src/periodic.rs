//! Subsets of the integers that are periodic with a power-of-two period,
//! ordered by inclusion.
//!
//! A set is stored by its signature: a bit string of length `p` whose position
//! `i` (0-based) is set iff the residue class `i mod p` belongs to the set. The
//! signature is kept at the minimal period.

use crate::error::{Error, Result};
use crate::poset::Comparator;
use crate::words::AntichainSet;
use rand::Rng;
use std::fmt;

/// Largest period searched by [`three_extension_gap_check`].
pub const GAP_CHECK_PERIOD: usize = 64;

/// A canonical power-of-two periodic set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicSet {
    sig: Vec<bool>,
}

impl PeriodicSet {
    /// Canonicalizes a signature by halving while both halves agree.
    pub fn from_signature(bits: Vec<bool>) -> Result<Self> {
        if !bits.len().is_power_of_two() {
            return Err(Error::Length(bits.len()));
        }
        let mut sig = bits;
        while sig.len() > 1 && sig[..sig.len() / 2] == sig[sig.len() / 2..] {
            sig.truncate(sig.len() / 2);
        }
        Ok(PeriodicSet { sig })
    }

    /// Parses a signature string over `{0, 1}`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::Parse { position, message: format!("unexpected {c:?} in a signature") }),
            }
        }
        PeriodicSet::from_signature(bits)
    }

    pub fn empty() -> Self {
        PeriodicSet { sig: vec![false] }
    }

    pub fn full() -> Self {
        PeriodicSet { sig: vec![true] }
    }

    /// The minimal power-of-two period.
    pub fn period(&self) -> usize {
        self.sig.len()
    }

    pub fn signature(&self) -> &[bool] {
        &self.sig
    }

    /// The signature repeated to length `len` (a multiple of the period).
    pub fn signature_at(&self, len: usize) -> Vec<bool> {
        debug_assert!(len.is_multiple_of(self.sig.len()));
        (0..len).map(|i| self.sig[i % self.sig.len()]).collect()
    }

    /// Membership of an integer.
    pub fn contains(&self, n: i64) -> bool {
        self.sig[n.rem_euclid(self.sig.len() as i64) as usize]
    }

    pub fn is_empty(&self) -> bool {
        self.sig.iter().all(|&b| !b)
    }
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.sig {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `s ⊆ t`, compared at the larger period.
pub fn subset(s: &PeriodicSet, t: &PeriodicSet) -> bool {
    let len = s.period().max(t.period());
    s.signature_at(len).iter().zip(t.signature_at(len)).all(|(&a, b)| !a || b)
}

/// [`Comparator`] for [`subset`].
pub struct PeriodicOrder;

impl Comparator<PeriodicSet> for PeriodicOrder {
    fn leq(&self, x: &PeriodicSet, y: &PeriodicSet) -> bool {
        subset(x, y)
    }
    fn eq(&self, x: &PeriodicSet, y: &PeriodicSet) -> bool {
        x == y
    }
}

/// Union of two sets.
pub fn union(s: &PeriodicSet, t: &PeriodicSet) -> PeriodicSet {
    let len = s.period().max(t.period());
    let bits = s.signature_at(len).iter().zip(t.signature_at(len)).map(|(&a, b)| a || b).collect();
    PeriodicSet::from_signature(bits).expect("power-of-two length")
}

/// The largest subset of `s` with period `i`: residue `r mod i` survives iff
/// every lift `r + j·i` below the period of `s` is in `s`.
pub fn restrict(s: &PeriodicSet, i: usize) -> Result<PeriodicSet> {
    if !i.is_power_of_two() || i > s.period() {
        return Err(Error::Period { requested: i, period: s.period() });
    }
    let blocks = s.period() / i;
    let bits = (0..i).map(|r| (0..blocks).all(|j| s.sig[r + j * i])).collect();
    PeriodicSet::from_signature(bits)
}

/// Integers whose binary digits, least significant first, start with some word
/// of `a`; the period is `2^(longest word length)`.
pub fn embed_words(a: &AntichainSet) -> PeriodicSet {
    let period = 1usize << a.max_len();
    let bits = (0..period)
        .map(|n| a.words().any(|w| w.bits().iter().enumerate().all(|(j, &b)| ((n >> j) & 1 == 1) == b)))
        .collect();
    PeriodicSet::from_signature(bits).expect("power-of-two length")
}

/// The least `X` with every set of `lows` inside `X` and `X ⊊ upper`, period at most `max_period`.
///
/// Every candidate contains the union of `lows`, so the candidates form the
/// interval between that union and `upper`; its bottom element is a candidate
/// exactly when it differs from `upper`.
pub fn strict_bound_below(upper: &PeriodicSet, lows: &[PeriodicSet], max_period: usize) -> Option<PeriodicSet> {
    let join = lows.iter().fold(PeriodicSet::empty(), |acc, l| union(&acc, l));
    if !subset(&join, upper) || join == *upper || join.period() > max_period {
        return None;
    }
    Some(join)
}

/// True iff no periodic set of period at most 64 contains both `l1` and `l2` and is strictly inside `u`.
pub fn three_extension_check_with(u: &PeriodicSet, l1: &PeriodicSet, l2: &PeriodicSet) -> bool {
    strict_bound_below(u, &[l1.clone(), l2.clone()], GAP_CHECK_PERIOD).is_none()
}

/// The odd numbers (`"01"`) and its two period-4 halves (`"0100"`, `"0001"`):
/// nothing strictly inside the odd numbers contains both halves.
pub fn three_extension_gap_check() -> bool {
    let parse = |s: &str| PeriodicSet::parse(s).expect("fixed signature");
    three_extension_check_with(&parse("01"), &parse("0100"), &parse("0001"))
}

/// A set strictly between `s` and `t` (`s ⊊ t`): doubles the common period and
/// adds one residue class that `t` has and `s` lacks, at only one of its two lifts.
pub fn middle(s: &PeriodicSet, t: &PeriodicSet) -> Option<PeriodicSet> {
    if s == t || !subset(s, t) {
        return None;
    }
    let len = s.period().max(t.period());
    let (sb, tb) = (s.signature_at(len), t.signature_at(len));
    let r = (0..len).find(|&r| tb[r] && !sb[r])?;
    let mut bits = s.signature_at(2 * len);
    bits[r] = true;
    Some(PeriodicSet::from_signature(bits).expect("power-of-two length"))
}

/// Every canonical set with period at most `max_period` (a power of two).
pub fn all_canonical(max_period: usize) -> Vec<PeriodicSet> {
    let mut out = Vec::new();
    let mut p = 1;
    while p <= max_period {
        for value in 0..(1u64 << p) {
            let bits: Vec<bool> = (0..p).map(|i| (value >> i) & 1 == 1).collect();
            let s = PeriodicSet::from_signature(bits).expect("power-of-two length");
            if s.period() == p {
                out.push(s);
            }
        }
        p *= 2;
    }
    out.sort_by_key(|s| (s.period(), s.to_string()));
    out
}

/// A random set with period at most `max_period`.
pub fn random_set<R: Rng + ?Sized>(rng: &mut R, max_period: usize) -> PeriodicSet {
    let levels = max_period.trailing_zeros();
    let p = 1usize << rng.gen_range(0..=levels);
    PeriodicSet::from_signature((0..p).map(|_| rng.gen::<bool>()).collect()).expect("power-of-two length")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PeriodicSet {
        PeriodicSet::parse(s).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(p("0101").to_string(), "01");
        assert_eq!(p("0111").period(), 4);
        assert!(p("0").is_empty());
        assert_eq!(PeriodicSet::parse("011"), Err(Error::Length(3)));
    }

    #[test]
    fn subset_examples() {
        assert!(subset(&p("0100"), &p("01")));
        assert!(!subset(&p("0010"), &p("01")));
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict(&p("0111"), 2).unwrap(), p("01"));
        assert_eq!(restrict(&p("0110"), 2).unwrap(), p("00"));
        assert_eq!(restrict(&p("0111"), 4).unwrap(), p("0111"));
        assert!(restrict(&p("01"), 4).is_err());
    }

    #[test]
    fn embedding_examples() {
        let set = |ws: &[&str]| AntichainSet::parse(ws).unwrap();
        assert_eq!(embed_words(&set(&[""])), p("1"));
        assert_eq!(embed_words(&set(&[])), p("0"));
        assert_eq!(embed_words(&set(&["0"])), p("10"));
    }

    #[test]
    fn three_extension_examples() {
        assert!(three_extension_gap_check());
        assert!(!three_extension_check_with(&p("01"), &p("0100"), &p("0100")));
        assert!(!three_extension_check_with(&p("11"), &p("0100"), &p("0001")));
    }

    #[test]
    fn canonical_counts() {
        // 2 of period 1, 2 of period 2, 12 of period 4, 240 of period 8.
        assert_eq!(all_canonical(8).len(), 256);
        assert_eq!(all_canonical(4).len(), 16);
    }
}
