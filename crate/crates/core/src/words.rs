//! Finite antichains of binary words ordered by prefix dominance, the online
//! embedding of finite posets into them, witness words, and gaps.
//!
//! A word is smaller when it is longer: `W <= W2` iff `W2` is an initial
//! segment of `W`. A set `A` is below `B` when every word of `A` extends some
//! word of `B`.

use crate::error::{Error, Result};
use crate::poset::{Comparator, FinitePoset, OnlineEmbedder};
use rand::Rng;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A finite word over `{0, 1}`; possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    bits: Vec<bool>,
}

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word { bits: Vec::new() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Word { bits }
    }

    /// The word of length `len` spelling the binary digits of `value`, most significant first.
    pub fn from_value(value: u64, len: usize) -> Self {
        Word { bits: (0..len).rev().map(|i| (value >> i) & 1 == 1).collect() }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// This word with one more letter.
    pub fn with(&self, bit: bool) -> Self {
        let mut bits = self.bits.clone();
        bits.push(bit);
        Word { bits }
    }

    /// True when `prefix` is an initial segment of this word.
    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.bits.starts_with(&prefix.bits)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::Parse { position, message: format!("unexpected {c:?} in a binary word") }),
            }
        }
        Ok(Word { bits })
    }
}

/// `W <= W2` in the prefix order: `W2` is an initial segment of `W`.
pub fn word_leq(w: &Word, w2: &Word) -> bool {
    w.starts_with(w2)
}

/// A finite prefix-free set of words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AntichainSet {
    words: BTreeSet<Word>,
}

impl AntichainSet {
    /// Builds a set, rejecting inputs where one word is a proper prefix of another.
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        // In lexicographic order a word is directly followed by its extensions, so
        // checking neighbours finds every prefix pair.
        let mut prev: Option<&Word> = None;
        for w in &words {
            if let Some(p) = prev {
                if w.starts_with(p) {
                    return Err(Error::NotPrefixFree(p.to_string(), w.to_string()));
                }
            }
            prev = Some(w);
        }
        Ok(AntichainSet { words })
    }

    /// Parses words given as bit strings.
    pub fn parse<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let parsed = words.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<Word>>>()?;
        AntichainSet::new(parsed)
    }

    pub fn empty() -> Self {
        AntichainSet::default()
    }

    /// The singleton `{w}`.
    pub fn singleton(w: Word) -> Self {
        let mut words = BTreeSet::new();
        words.insert(w);
        AntichainSet { words }
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    /// Length of the longest word, 0 for the empty set.
    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Total number of letters over all words.
    pub fn total_letters(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    /// True when some word of this set is an initial segment of `w`.
    pub fn dominates(&self, w: &Word) -> bool {
        (0..=w.len()).any(|k| self.words.contains(&Word::from_bits(w.bits[..k].to_vec())))
    }

    /// Words as bit strings in canonical (lexicographic) order.
    pub fn to_strings(&self) -> Vec<String> {
        self.words.iter().map(Word::to_string).collect()
    }

    /// JSON array of bit strings, sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_strings()).expect("strings serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let strings: Vec<String> = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        AntichainSet::parse(&strings)
    }
}

impl fmt::Display for AntichainSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if w.is_empty() {
                write!(f, "ε")?;
            } else {
                write!(f, "{w}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Keeps the words of `words` that have no proper initial segment inside `words`.
pub fn min_words<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> AntichainSet {
    let all: BTreeSet<Word> = words.into_iter().cloned().collect();
    let kept = all
        .iter()
        .filter(|w| !(0..w.len()).any(|k| all.contains(&Word::from_bits(w.bits[..k].to_vec()))))
        .cloned();
    AntichainSet::new(kept).expect("minimal words are prefix-free")
}

/// `A <= B`: every word of `A` has an initial segment in `B`.
pub fn set_leq(a: &AntichainSet, b: &AntichainSet) -> bool {
    a.words.iter().all(|w| b.dominates(w))
}

/// [`Comparator`] for [`set_leq`].
pub struct WordOrder;

impl Comparator<AntichainSet> for WordOrder {
    fn leq(&self, x: &AntichainSet, y: &AntichainSet) -> bool {
        set_leq(x, y)
    }
    fn eq(&self, x: &AntichainSet, y: &AntichainSet) -> bool {
        x == y
    }
}

/// The image of the last element of `revealed`, given the images of the earlier ones.
///
/// For element `k` (word length `k + 1`): the lower part collects the images of
/// earlier elements below `k`; the upper part holds every word of length `k + 1`
/// ending in 0 that extends some word of each image of an earlier element above
/// `k`. The image is the set of minimal words of their union.
pub fn psi_step(revealed: &FinitePoset, previous: &[AntichainSet]) -> AntichainSet {
    let k = revealed.len() - 1;
    debug_assert_eq!(previous.len(), k);
    let mut pool: Vec<Word> = Vec::new();
    for m in 0..k {
        if revealed.leq(m, k) {
            pool.extend(previous[m].words().cloned());
        }
    }
    let above: Vec<usize> = (0..k).filter(|&m| revealed.leq(k, m)).collect();
    for value in 0..(1u64 << k) {
        let candidate = Word::from_value(value << 1, k + 1);
        if above.iter().all(|&m| previous[m].dominates(&candidate)) {
            pool.push(candidate);
        }
    }
    min_words(pool.iter())
}

/// The online word embedding of every prefix of `p`.
pub fn psi_embed(p: &FinitePoset) -> Vec<AntichainSet> {
    let mut strategy = PsiStrategy::default();
    for k in 1..=p.len() {
        strategy.place(&p.prefix(k));
    }
    strategy.images
}

/// [`psi_step`] as an online strategy.
#[derive(Debug, Default, Clone)]
pub struct PsiStrategy {
    images: Vec<AntichainSet>,
}

impl OnlineEmbedder for PsiStrategy {
    type Image = AntichainSet;
    fn place(&mut self, revealed: &FinitePoset) -> AntichainSet {
        let image = psi_step(revealed, &self.images);
        self.images.push(image.clone());
        image
    }
    fn images(&self) -> Vec<AntichainSet> {
        self.images.clone()
    }
}

/// A word `W` of length `n` with `{W} <= Psi(k)` exactly for the `k` in the
/// upward closure of `s` (0-based element indices).
///
/// Built one letter per element. For an element of the closure the next letter
/// is 0. Otherwise the letter is 0 when that keeps the word outside the
/// element's image and 1 when it does not; appending 1 always works because
/// every upper-part word ends in 0.
pub fn witness_word(p: &FinitePoset, s: &[usize]) -> Result<Word> {
    let n = p.len();
    let mut members = vec![false; n];
    for &i in s {
        if i >= n {
            return Err(Error::ElementOutOfRange { index: i, n });
        }
        members[i] = true;
    }
    let closed = p.up_closure(&members);
    let psi = psi_embed(p);
    let mut w = Word::empty();
    for k in 0..n {
        let zero = w.with(false);
        w = if closed[k] || !psi[k].dominates(&zero) { zero } else { w.with(true) };
    }
    Ok(w)
}

/// True when `lower < upper` is a gap: `lower` is `upper` with exactly one word
/// replaced by its two one-letter extensions.
pub fn is_gap(lower: &AntichainSet, upper: &AntichainSet) -> Result<bool> {
    if lower == upper || !set_leq(lower, upper) {
        return Err(Error::NotComparable);
    }
    let removed: Vec<&Word> = upper.words.difference(&lower.words).collect();
    let added: Vec<&Word> = lower.words.difference(&upper.words).collect();
    Ok(match (removed.as_slice(), added.as_slice()) {
        ([s], [a, b]) => {
            let sons = [s.with(false), s.with(true)];
            (**a == sons[0] && **b == sons[1]) || (**a == sons[1] && **b == sons[0])
        }
        _ => false,
    })
}

/// A set strictly between `lower` and `upper`, or `None` when the pair is a gap.
///
/// Groups the words of `lower` under the word of `upper` they extend. If two
/// groups differ from their upper word, replacing just one of them gives a
/// middle. If exactly one word `u` changed, with `A0`, `A1` the parts of its
/// group under `u0` and `u1`, the middle replaces `u` by `{u0} ∪ A1` when
/// `A0 ≠ {u0}` and by `{u0, u1}` otherwise; the pair is a gap exactly when the
/// group is `{u0, u1}`.
pub fn gap_middle(lower: &AntichainSet, upper: &AntichainSet) -> Result<Option<AntichainSet>> {
    if lower == upper || !set_leq(lower, upper) {
        return Err(Error::NotComparable);
    }
    let group = |u: &Word| -> Vec<Word> { lower.words.iter().filter(|w| w.starts_with(u)).cloned().collect() };
    let changed: Vec<&Word> = upper.words.iter().filter(|u| group(u) != vec![(*u).clone()]).collect();
    let rebuild = |u: &Word, replacement: Vec<Word>| -> AntichainSet {
        let words = upper.words.iter().filter(|w| *w != u).cloned().chain(replacement);
        AntichainSet::new(words).expect("replacement stays under its own word")
    };
    let middle = match changed.as_slice() {
        [] => unreachable!("lower differs from upper"),
        [u] => {
            let (u0, u1) = (u.with(false), u.with(true));
            let g = group(u);
            let a0: Vec<Word> = g.iter().filter(|w| w.starts_with(&u0)).cloned().collect();
            let a1: Vec<Word> = g.iter().filter(|w| w.starts_with(&u1)).cloned().collect();
            if a0 != vec![u0.clone()] {
                let mut rep = vec![u0];
                rep.extend(a1);
                rebuild(u, rep)
            } else if a1 != vec![u1.clone()] {
                rebuild(u, vec![u0, u1])
            } else {
                return Ok(None);
            }
        }
        [u, ..] => rebuild(u, group(u)),
    };
    Ok(Some(middle))
}

/// Verdict of the bounded gap search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapVerdict {
    /// No middle element with words of length at most the bound exists.
    pub gap: bool,
    /// A middle element found by the search.
    pub searched_middle: Option<AntichainSet>,
    /// The middle element produced by [`gap_middle`], when the search found one.
    pub constructed_middle: Option<AntichainSet>,
}

/// Exhaustive search for `C` with `lower < C < upper` among antichains whose words
/// have length at most `depth_bound`. The pair may be given in either order.
///
/// Antichains below `upper` and above `lower` are generated subtree by subtree;
/// three distinct candidates always contain one that differs from both ends, so
/// each subtree keeps at most three.
pub fn gap_oracle(lower: &AntichainSet, upper: &AntichainSet, depth_bound: usize) -> Result<GapVerdict> {
    let (lower, upper) = if set_leq(lower, upper) { (lower, upper) } else { (upper, lower) };
    if lower == upper || !set_leq(lower, upper) {
        return Err(Error::NotComparable);
    }
    let candidates = between(&Word::empty(), lower, upper, depth_bound);
    let searched_middle = candidates
        .into_iter()
        .map(|ws| AntichainSet::new(ws).expect("subtree unions are prefix-free"))
        .find(|c| c != lower && c != upper);
    let constructed_middle = match &searched_middle {
        Some(_) => gap_middle(lower, upper)?,
        None => None,
    };
    Ok(GapVerdict { gap: searched_middle.is_none(), searched_middle, constructed_middle })
}

const GAP_KEEP: usize = 3;

fn between(x: &Word, lower: &AntichainSet, upper: &AntichainSet, bound: usize) -> Vec<Vec<Word>> {
    let mut out = Vec::new();
    if upper.dominates(x) {
        out.push(vec![x.clone()]);
    }
    if x.len() < bound && !lower.contains(x) {
        let left = between(&x.with(false), lower, upper, bound);
        let right = between(&x.with(true), lower, upper, bound);
        'outer: for l in &left {
            for r in &right {
                if out.len() >= GAP_KEEP {
                    break 'outer;
                }
                out.push(l.iter().chain(r.iter()).cloned().collect());
            }
        }
    } else if x.len() >= bound && !lower.words.iter().any(|w| w.starts_with(x)) {
        out.push(Vec::new());
    }
    out.truncate(GAP_KEEP);
    out
}

/// A vertex of the infinite binary tree: its depth and its index among the
/// vertices of that depth, read left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    pub depth: usize,
    pub index: u64,
}

/// The words of `a` as vertices of the binary tree (words of length at most 63).
pub fn to_tree(a: &AntichainSet) -> Vec<TreeVertex> {
    a.words
        .iter()
        .map(|w| TreeVertex { depth: w.len(), index: w.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64) })
        .collect()
}

/// Inverse of [`to_tree`].
pub fn from_tree(vertices: &[TreeVertex]) -> Result<AntichainSet> {
    AntichainSet::new(vertices.iter().map(|v| Word::from_value(v.index, v.depth)))
}

/// Every antichain whose words have length at most `max_len`.
pub fn all_antichains(max_len: usize) -> Vec<AntichainSet> {
    fn rec(x: &Word, max_len: usize) -> Vec<Vec<Word>> {
        let mut out = vec![vec![x.clone()]];
        if x.len() < max_len {
            let left = rec(&x.with(false), max_len);
            let right = rec(&x.with(true), max_len);
            for l in &left {
                for r in &right {
                    out.push(l.iter().chain(r.iter()).cloned().collect());
                }
            }
        } else {
            out.push(Vec::new());
        }
        out
    }
    rec(&Word::empty(), max_len)
        .into_iter()
        .map(|ws| AntichainSet::new(ws).expect("built prefix-free"))
        .collect()
}

/// A random antichain: up to `max_words` random words of length at most `max_len`, reduced to their minimal words.
pub fn random_antichain<R: Rng + ?Sized>(rng: &mut R, max_len: usize, max_words: usize) -> AntichainSet {
    let count = rng.gen_range(0..=max_words);
    let words: Vec<Word> = (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            Word::from_bits((0..len).map(|_| rng.gen::<bool>()).collect())
        })
        .collect();
    min_words(words.iter())
}

/// DOT drawing of the binary tree down to the longest word, with the words of `a` highlighted.
pub fn tree_dot(a: &AntichainSet) -> String {
    let depth = a.max_len();
    let mut out = String::from("digraph tree {\n  node [shape=circle, label=\"\"];\n");
    let name = |w: &Word| if w.is_empty() { "e".to_string() } else { format!("w{w}") };
    let mut frontier = vec![Word::empty()];
    for d in 0..=depth {
        let mut next = Vec::new();
        for w in &frontier {
            let style = if a.contains(w) { ", style=filled, fillcolor=black" } else { "" };
            out.push_str(&format!("  {} [tooltip=\"{}\"{}];\n", name(w), w, style));
            if d < depth {
                for b in [false, true] {
                    let child = w.with(b);
                    out.push_str(&format!("  {} -> {};\n", name(w), name(&child)));
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(words: &[&str]) -> AntichainSet {
        AntichainSet::parse(words).unwrap()
    }

    #[test]
    fn prefix_order_examples() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert!(word_leq(&w("011000"), &w("011")));
        assert!(!word_leq(&w("010111"), &w("011")));
    }

    #[test]
    fn minimal_words() {
        let ws: Vec<Word> = ["0", "00", "10"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(min_words(ws.iter()), set(&["0", "10"]));
    }

    #[test]
    fn psi_small_examples() {
        assert_eq!(psi_embed(&FinitePoset::antichain(1)), vec![set(&["0"])]);
        assert_eq!(psi_embed(&FinitePoset::chain(2)), vec![set(&["0"]), set(&["0", "10"])]);
        assert_eq!(psi_embed(&FinitePoset::antichain(2)), vec![set(&["0"]), set(&["00", "10"])]);
    }

    #[test]
    fn witness_examples() {
        let one = FinitePoset::antichain(1);
        assert_eq!(witness_word(&one, &[0]).unwrap().to_string(), "0");
        assert_eq!(witness_word(&one, &[]).unwrap().to_string(), "1");
        assert_eq!(witness_word(&FinitePoset::chain(2), &[1]).unwrap().to_string(), "10");
    }

    #[test]
    fn gap_examples() {
        assert_eq!(is_gap(&set(&["00", "01"]), &set(&["0"])), Ok(true));
        assert_eq!(is_gap(&set(&["000", "01"]), &set(&["0"])), Ok(false));
        assert_eq!(is_gap(&set(&["0"]), &set(&["0"])), Err(Error::NotComparable));
        let v = gap_oracle(&set(&["000", "01"]), &set(&["0"]), 4).unwrap();
        assert!(!v.gap);
        assert_eq!(v.constructed_middle, Some(set(&["00", "01"])));
        assert!(gap_oracle(&set(&["00", "01"]), &set(&["0"]), 4).unwrap().gap);
    }

    #[test]
    fn antichain_counts() {
        let counts: Vec<usize> = (0..4).map(|d| all_antichains(d).len()).collect();
        assert_eq!(counts, vec![2, 5, 26, 677]);
    }

    #[test]
    fn rejects_prefix_pairs() {
        assert!(AntichainSet::parse(&["0", "01"]).is_err());
    }
}
