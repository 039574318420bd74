//! Finite sets of pairwise disjoint closed rational intervals in `[0, 1]`,
//! ordered by covering, with the ternary embedding of word antichains and a
//! constructive density witness.
//!
//! The open-interval variant of this order has gaps: `{(a,c), (c,b)} < {(a,b)}`
//! with nothing in between. It is not modelled as a type; a unit test checks
//! the gap by brute force on a small grid.

use crate::error::{Error, Result};
use crate::poset::Comparator;
use crate::rational::{format_rational, int, parse_rational, rat, Rational};
use crate::words::{AntichainSet, Word};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt;

/// The closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi }
    }

    /// True when `other` lies inside this interval.
    pub fn covers(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Disjoint closed intervals sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    /// Validates `0 <= lo < hi <= 1` for each interval and pairwise disjointness.
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        intervals.sort();
        for iv in &intervals {
            if iv.lo < Rational::zero() || iv.lo >= iv.hi || iv.hi > Rational::one() {
                return Err(Error::InvalidIntervals(format!("{iv} is not a proper subinterval of [0, 1]")));
            }
        }
        for pair in intervals.windows(2) {
            if pair[0].hi >= pair[1].lo {
                return Err(Error::InvalidIntervals(format!("{} and {} intersect", pair[0], pair[1])));
            }
        }
        Ok(IntervalSet { intervals })
    }

    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// JSON form `[["p/q","p/q"], ...]`.
    pub fn to_json(&self) -> String {
        let pairs: Vec<[String; 2]> =
            self.intervals.iter().map(|iv| [format_rational(&iv.lo), format_rational(&iv.hi)]).collect();
        serde_json::to_string(&pairs).expect("strings serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let pairs: Vec<[String; 2]> = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let ivs = pairs
            .iter()
            .map(|[a, b]| Ok(Interval::new(parse_rational(a)?, parse_rational(b)?)))
            .collect::<Result<Vec<_>>>()?;
        IntervalSet::new(ivs)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{iv}")?;
        }
        write!(f, "}}")
    }
}

/// `A <= B`: every interval of `A` lies inside some interval of `B`.
pub fn interval_leq(a: &IntervalSet, b: &IntervalSet) -> bool {
    a.intervals.iter().all(|x| b.intervals.iter().any(|y| y.covers(x)))
}

/// [`Comparator`] for [`interval_leq`].
pub struct IntervalOrder;

impl Comparator<IntervalSet> for IntervalOrder {
    fn leq(&self, x: &IntervalSet, y: &IntervalSet) -> bool {
        interval_leq(x, y)
    }
    fn eq(&self, x: &IntervalSet, y: &IntervalSet) -> bool {
        x == y
    }
}

/// `sum w_i / 3^i` over the letters of `w`.
pub fn ternary_value(w: &Word) -> Rational {
    let mut num = BigInt::zero();
    for &b in w.bits() {
        num = num * 3 + if b { 1 } else { 0 };
    }
    Rational::new(num, BigInt::from(3).pow(w.len() as u32))
}

/// The interval `[n_W, n_W + 2 / 3^(|W|+1)]` of a word.
pub fn word_interval(w: &Word) -> Interval {
    let lo = ternary_value(w);
    let width = Rational::new(BigInt::from(2), BigInt::from(3).pow(w.len() as u32 + 1));
    let hi = &lo + width;
    Interval::new(lo, hi)
}

/// One interval per word.
pub fn embed_words(a: &AntichainSet) -> IntervalSet {
    IntervalSet::new(a.words().map(word_interval).collect()).expect("prefix-free words give disjoint intervals")
}

/// A set strictly between `a` and `b` (`a < b` required).
///
/// Picks the leftmost interval `I = [lo, hi]` of `b` that is not itself an
/// interval of `a`. With `J1..Jr` the intervals of `a` inside `I`: if `I`
/// holds none of them it is cut to its left half; otherwise the leftmost
/// uncovered stretch of `I` is located and `I` is shortened to the midpoint of
/// that stretch when it touches an end of `I`, or split around the midpoint of
/// the stretch when it sits between two `J`s.
pub fn densify(a: &IntervalSet, b: &IntervalSet) -> Result<IntervalSet> {
    if a == b || !interval_leq(a, b) {
        return Err(Error::NotStrict);
    }
    let two = int(2);
    let (index, target) = b
        .intervals
        .iter()
        .enumerate()
        .find(|(_, iv)| !a.intervals.contains(iv))
        .expect("a strictly smaller set differs in some interval");
    let inside: Vec<&Interval> = a.intervals.iter().filter(|j| target.covers(j)).collect();
    let replacement: Vec<Interval> = if inside.is_empty() {
        vec![Interval::new(target.lo.clone(), (&target.lo + &target.hi) / &two)]
    } else if inside[0].lo > target.lo {
        vec![Interval::new((&target.lo + &inside[0].lo) / &two, target.hi.clone())]
    } else if let Some(k) = (0..inside.len() - 1).find(|&k| inside[k].hi < inside[k + 1].lo) {
        let mid = (&inside[k].hi + &inside[k + 1].lo) / &two;
        vec![
            Interval::new(target.lo.clone(), (&inside[k].hi + &mid) / &two),
            Interval::new((&mid + &inside[k + 1].lo) / &two, target.hi.clone()),
        ]
    } else {
        let last = inside[inside.len() - 1];
        vec![Interval::new(target.lo.clone(), (&last.hi + &target.hi) / &two)]
    };
    let mut out: Vec<Interval> = b.intervals.clone();
    out.splice(index..=index, replacement);
    IntervalSet::new(out)
}

/// A random interval set with endpoints on the grid `i / den`.
pub fn random_interval_set<R: Rng + ?Sized>(rng: &mut R, den: i64, max_intervals: usize) -> IntervalSet {
    let count = rng.gen_range(0..=max_intervals);
    let mut points: Vec<i64> = (0..2 * count).map(|_| rng.gen_range(0..=den)).collect();
    points.sort_unstable();
    points.dedup();
    let ivs: Vec<Interval> = points
        .chunks(4)
        .filter(|c| c.len() >= 2)
        .map(|c| Interval::new(rat(c[0], den), rat(c[1], den)))
        .collect();
    IntervalSet::new(ivs).expect("every other gap is skipped, so intervals are disjoint")
}

/// A random set strictly below `b` (or `None` if `b` is empty): every interval of
/// `b` is kept, dropped, or replaced by one or two subintervals, and at least one changes.
pub fn random_strictly_below<R: Rng + ?Sized>(rng: &mut R, b: &IntervalSet) -> Option<IntervalSet> {
    if b.is_empty() {
        return None;
    }
    let forced = rng.gen_range(0..b.len());
    let mut out = Vec::new();
    for (i, iv) in b.intervals.iter().enumerate() {
        let choice = if i == forced { rng.gen_range(1..4) } else { rng.gen_range(0..4) };
        let width = &iv.hi - &iv.lo;
        let at = |k: i64| &iv.lo + &width * rat(k, 8);
        match choice {
            0 => out.push(iv.clone()),
            1 => {}
            2 => {
                let s = rng.gen_range(0..7);
                let e = rng.gen_range(s + 1..=8);
                if s == 0 && e == 8 {
                    out.push(Interval::new(at(1), at(8)));
                } else {
                    out.push(Interval::new(at(s), at(e)));
                }
            }
            _ => {
                out.push(Interval::new(at(0), at(3)));
                out.push(Interval::new(at(5), at(8)));
            }
        }
    }
    Some(IntervalSet::new(out).expect("subintervals of disjoint intervals stay disjoint"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn ternary_examples() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(ternary_value(&w("0")), int(0));
        assert_eq!(ternary_value(&w("10")), rat(1, 3));
        assert_eq!(ternary_value(&w("11")), rat(4, 9));
    }

    #[test]
    fn embedding_examples() {
        let set = |ws: &[&str]| AntichainSet::parse(ws).unwrap();
        assert_eq!(embed_words(&set(&["0"])), IntervalSet::new(vec![iv((0, 1), (2, 9))]).unwrap());
        assert_eq!(
            embed_words(&set(&["0", "10"])),
            IntervalSet::new(vec![iv((0, 1), (2, 9)), iv((1, 3), (11, 27))]).unwrap()
        );
        assert!(embed_words(&set(&[])).is_empty());
    }

    #[test]
    fn densify_examples() {
        let a = IntervalSet::new(vec![iv((0, 1), (1, 9))]).unwrap();
        let b = IntervalSet::new(vec![iv((0, 1), (1, 3))]).unwrap();
        let c = densify(&a, &b).unwrap();
        assert!(interval_leq(&a, &c) && c != a && interval_leq(&c, &b) && c != b);
        assert_eq!(densify(&b, &b), Err(Error::NotStrict));
    }

    #[test]
    fn invalid_sets_rejected() {
        assert!(IntervalSet::new(vec![iv((0, 1), (1, 2)), iv((1, 2), (1, 1))]).is_err());
        assert!(IntervalSet::new(vec![iv((1, 2), (1, 2))]).is_err());
    }

    /// Open intervals on the grid {0, 1/4, ..., 1}: nothing lies strictly between
    /// `{(0,1/2), (1/2,1)}` and `{(0,1)}`.
    #[test]
    fn open_interval_gap_fixture() {
        type Open = (i64, i64);
        let all: Vec<Open> = (0..=4).flat_map(|a| ((a + 1)..=4).map(move |b| (a, b))).collect();
        let covers = |big: &[Open], small: &[Open]| small.iter().all(|s| big.iter().any(|b| b.0 <= s.0 && s.1 <= b.1));
        let mut sets: Vec<Vec<Open>> = vec![vec![]];
        for &x in &all {
            let extra: Vec<Vec<Open>> = sets
                .iter()
                .filter(|s| s.iter().all(|y| y.1 <= x.0 || x.1 <= y.0))
                .map(|s| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
                .collect();
            sets.extend(extra);
        }
        let lower = vec![(0, 2), (2, 4)];
        let upper = vec![(0, 4)];
        assert!(covers(&upper, &lower) && !covers(&lower, &upper));
        let middles = sets
            .iter()
            .filter(|c| covers(c, &lower) && covers(&upper, c) && !covers(&lower, c) && !covers(c, &upper))
            .count();
        assert_eq!(middles, 0);
    }
}
