//! Finite partial orders: construction, enumeration, random generation, duality,
//! the embedding oracle and the online representation game.
//!
//! Elements are indexed `0..n` in the Rust API. The JSON and DOT interchange
//! formats number elements `1..n`.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest size accepted by [`enumerate_posets`].
pub const ENUMERATION_LIMIT: usize = 5;

/// An explicit finite partial order stored as a dense relation matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    rel: Vec<bool>,
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `covers` (0-based pairs `(a, b)` meaning `a <= b`).
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for &(a, b) in covers {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::ElementOutOfRange { index, n });
                }
            }
            rel[a * n + b] = true;
        }
        transitive_closure(n, &mut rel);
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(Error::Cycle(i, j));
                }
            }
        }
        Ok(FinitePoset { n, rel })
    }

    /// Wraps a full relation matrix (row-major, `rel[i * n + j]` is `i <= j`) after checking the axioms.
    pub fn from_relation(n: usize, rel: Vec<bool>) -> Result<Self> {
        if rel.len() != n * n {
            return Err(Error::NotAPartialOrder(format!("matrix has {} cells, expected {}", rel.len(), n * n)));
        }
        let p = FinitePoset { n, rel };
        p.check_axioms()?;
        Ok(p)
    }

    /// The `n`-element antichain.
    pub fn antichain(n: usize) -> Self {
        FinitePoset::from_covers(n, &[]).expect("antichain is acyclic")
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_covers(n, &covers).expect("chain is acyclic")
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True for the empty poset.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `i <= j` in the order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.n + j]
    }

    /// `i < j` in the order.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// True when `i` and `j` are comparable.
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// The reversed order.
    pub fn dual(&self) -> Self {
        let n = self.n;
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                rel[j * n + i] = self.rel[i * n + j];
            }
        }
        FinitePoset { n, rel }
    }

    /// The suborder induced on the first `k` elements.
    pub fn prefix(&self, k: usize) -> Self {
        let k = k.min(self.n);
        let mut rel = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                rel.push(self.leq(i, j));
            }
        }
        FinitePoset { n: k, rel }
    }

    /// Renames elements: element `i` of `self` becomes element `perm[i]` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::ImageCount { expected: n, got: perm.len() });
        }
        for &t in perm {
            if t >= n || seen[t] {
                return Err(Error::Format("relabeling is not a permutation".into()));
            }
            seen[t] = true;
        }
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                rel[perm[i] * n + perm[j]] = self.leq(i, j);
            }
        }
        Ok(FinitePoset { n, rel })
    }

    /// Cover pairs of the Hasse diagram, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Upward closure of a subset given as a membership vector.
    pub fn up_closure(&self, members: &[bool]) -> Vec<bool> {
        (0..self.n)
            .map(|j| (0..self.n).any(|i| members[i] && self.leq(i, j)))
            .collect()
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::NotAPartialOrder(format!("element {} is not reflexive", i + 1)));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::Cycle(i, j));
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::NotAPartialOrder(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            i + 1,
                            j + 1,
                            k + 1,
                            i + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Serializes to the `{"n": .., "covers": [[i, j], ...]}` interchange form (1-based).
    pub fn to_json(&self) -> String {
        let doc = PosetJson { n: self.n, covers: self.covers().iter().map(|&(a, b)| [a + 1, b + 1]).collect() };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    /// Parses the JSON interchange form.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PosetJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let mut covers = Vec::with_capacity(doc.covers.len());
        for [a, b] in doc.covers {
            if a == 0 || b == 0 || a > doc.n || b > doc.n {
                return Err(Error::ElementOutOfRange { index: a.max(b), n: doc.n });
            }
            covers.push((a - 1, b - 1));
        }
        FinitePoset::from_covers(doc.n, &covers)
    }

    /// Writes the Hasse diagram as a DOT digraph with 1-based node names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for i in 0..self.n {
            out.push_str(&format!("  {};\n", i + 1));
        }
        for (a, b) in self.covers() {
            out.push_str(&format!("  {} -> {};\n", a + 1, b + 1));
        }
        out.push_str("}\n");
        out
    }

    /// Reads the DOT form written by [`FinitePoset::to_dot`].
    pub fn from_dot(text: &str) -> Result<Self> {
        let mut n = 0usize;
        let mut covers = Vec::new();
        let parse_node = |s: &str| -> Result<usize> {
            s.trim().parse::<usize>().map_err(|_| Error::Format(format!("bad node name {s:?}")))
        };
        for line in text.lines() {
            let line = line.trim().trim_end_matches(';').trim();
            if line.is_empty() || line.starts_with("digraph") || line == "}" || line.contains('=') {
                continue;
            }
            if let Some((a, b)) = line.split_once("->") {
                let (a, b) = (parse_node(a)?, parse_node(b)?);
                if a == 0 || b == 0 {
                    return Err(Error::Format("node names start at 1".into()));
                }
                n = n.max(a).max(b);
                covers.push((a - 1, b - 1));
            } else {
                let a = parse_node(line)?;
                if a == 0 {
                    return Err(Error::Format("node names start at 1".into()));
                }
                n = n.max(a);
            }
        }
        FinitePoset::from_covers(n, &covers)
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    covers: Vec<[usize; 2]>,
}

fn transitive_closure(n: usize, rel: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
}

/// Every labeled partial order on `n` elements, each exactly once.
///
/// Backtracks over the unordered pairs, choosing for each one of
/// "incomparable", "i < j" or "j < i", and prunes as soon as a triple whose
/// three pairs are all decided violates transitivity.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinitePoset>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::Size { n, limit: ENUMERATION_LIMIT });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut decided = vec![false; n * n];
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
        decided[i * n + i] = true;
    }
    let mut out = Vec::new();
    enumerate_rec(n, &pairs, 0, &mut rel, &mut decided, &mut out);
    Ok(out)
}

fn enumerate_rec(
    n: usize,
    pairs: &[(usize, usize)],
    at: usize,
    rel: &mut Vec<bool>,
    decided: &mut Vec<bool>,
    out: &mut Vec<FinitePoset>,
) {
    if at == pairs.len() {
        out.push(FinitePoset { n, rel: rel.clone() });
        return;
    }
    let (i, j) = pairs[at];
    for choice in 0..3 {
        rel[i * n + j] = choice == 1;
        rel[j * n + i] = choice == 2;
        decided[i * n + j] = true;
        decided[j * n + i] = true;
        if triples_consistent(n, rel, decided, i, j) {
            enumerate_rec(n, pairs, at + 1, rel, decided, out);
        }
    }
    rel[i * n + j] = false;
    rel[j * n + i] = false;
    decided[i * n + j] = false;
    decided[j * n + i] = false;
}

fn triples_consistent(n: usize, rel: &[bool], decided: &[bool], i: usize, j: usize) -> bool {
    for k in 0..n {
        if k == i || k == j || !decided[i * n + k] || !decided[j * n + k] {
            continue;
        }
        let t = [i, j, k];
        for &a in &t {
            for &b in &t {
                for &c in &t {
                    if rel[a * n + b] && rel[b * n + c] && !rel[a * n + c] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A seeded random poset: a random linear arrangement of the elements, each
/// forward pair kept as an edge with probability `density`, then transitive closure.
pub fn random_poset(n: usize, seed: u64, density: f64) -> FinitePoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut covers = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen::<f64>() < density {
                covers.push((order[a], order[b]));
            }
        }
    }
    FinitePoset::from_covers(n, &covers).expect("edges follow a linear arrangement")
}

/// An order relation over opaque elements.
pub trait Comparator<T: ?Sized> {
    /// `x <= y`.
    fn leq(&self, x: &T, y: &T) -> bool;
    /// Equality as seen by the order; defaults to mutual `leq`.
    fn eq(&self, x: &T, y: &T) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }
}

/// Adapts a closure into a [`Comparator`].
pub struct ByLeq<F>(pub F);

impl<T: ?Sized, F: Fn(&T, &T) -> bool> Comparator<T> for ByLeq<F> {
    fn leq(&self, x: &T, y: &T) -> bool {
        (self.0)(x, y)
    }
}

/// The reverse of another comparator.
pub struct Reversed<C>(pub C);

impl<T: ?Sized, C: Comparator<T>> Comparator<T> for Reversed<C> {
    fn leq(&self, x: &T, y: &T) -> bool {
        self.0.leq(y, x)
    }
    fn eq(&self, x: &T, y: &T) -> bool {
        self.0.eq(y, x)
    }
}

/// Relation between two elements as seen by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Leq,
    NotLeq,
    Distinct,
    Equal,
}

/// One disagreement found by [`is_embedding`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub expected: Relation,
    pub observed: Relation,
}

/// Outcome of the embedding oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl EmbeddingReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        EmbeddingReport { ok: violations.is_empty(), violations }
    }
}

/// Checks every ordered pair: `p.leq(i, j)` must match `cmp.leq(images[i], images[j])`,
/// and distinct elements must receive images that `cmp.eq` separates.
pub fn is_embedding<T, C: Comparator<T> + ?Sized>(p: &FinitePoset, images: &[T], cmp: &C) -> Result<EmbeddingReport> {
    if images.len() != p.len() {
        return Err(Error::ImageCount { expected: p.len(), got: images.len() });
    }
    let mut violations = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            let expected = p.leq(i, j);
            let observed = cmp.leq(&images[i], &images[j]);
            if expected != observed {
                let rel = |b: bool| if b { Relation::Leq } else { Relation::NotLeq };
                violations.push(Violation { i, j, expected: rel(expected), observed: rel(observed) });
            }
            if i < j && cmp.eq(&images[i], &images[j]) {
                violations.push(Violation { i, j, expected: Relation::Distinct, observed: Relation::Equal });
            }
        }
    }
    Ok(EmbeddingReport::from_violations(violations))
}

/// Relations of a newly revealed element to the elements revealed before it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Reveal {
    /// Earlier elements strictly below the new one.
    pub below: Vec<usize>,
    /// Earlier elements strictly above the new one.
    pub above: Vec<usize>,
}

/// A source that reveals a poset one element at a time.
pub trait Revealer {
    fn reveal(&mut self) -> Option<Reveal>;
}

/// Reveals a known poset in its natural element order.
pub struct PosetRevealer<'a> {
    poset: &'a FinitePoset,
    next: usize,
}

impl<'a> PosetRevealer<'a> {
    pub fn new(poset: &'a FinitePoset) -> Self {
        PosetRevealer { poset, next: 0 }
    }
}

impl Revealer for PosetRevealer<'_> {
    fn reveal(&mut self) -> Option<Reveal> {
        let k = self.next;
        if k >= self.poset.len() {
            return None;
        }
        self.next += 1;
        Some(Reveal {
            below: (0..k).filter(|&m| self.poset.leq(m, k)).collect(),
            above: (0..k).filter(|&m| self.poset.leq(k, m)).collect(),
        })
    }
}

/// An online embedder: it must fix the image of each element as soon as it is revealed.
pub trait OnlineEmbedder {
    type Image: Clone + PartialEq;
    /// Called with the poset revealed so far; returns the image of its last element.
    fn place(&mut self, revealed: &FinitePoset) -> Self::Image;
    /// Every image the strategy currently stands behind, in reveal order.
    fn images(&self) -> Vec<Self::Image>;
}

/// Plays the online representation game and certifies the final images.
///
/// After each reveal the strategy's image list must extend the images already
/// committed; any change to an earlier image is reported as a strategy error.
pub fn online_game<R, E, C>(revealer: &mut R, strategy: &mut E, cmp: &C) -> Result<(FinitePoset, EmbeddingReport)>
where
    R: Revealer + ?Sized,
    E: OnlineEmbedder + ?Sized,
    C: Comparator<E::Image> + ?Sized,
{
    let mut n = 0usize;
    let mut rel: Vec<bool> = Vec::new();
    let mut committed: Vec<E::Image> = Vec::new();
    while let Some(reveal) = revealer.reveal() {
        let m = n + 1;
        let mut next = vec![false; m * m];
        for i in 0..n {
            for j in 0..n {
                next[i * m + j] = rel[i * n + j];
            }
        }
        next[n * m + n] = true;
        for &b in &reveal.below {
            if b >= n {
                return Err(Error::ElementOutOfRange { index: b, n });
            }
            next[b * m + n] = true;
        }
        for &a in &reveal.above {
            if a >= n {
                return Err(Error::ElementOutOfRange { index: a, n });
            }
            next[n * m + a] = true;
        }
        let revealed = FinitePoset::from_relation(m, next)?;
        let image = strategy.place(&revealed);
        committed.push(image);
        let current = strategy.images();
        if current.len() != committed.len() {
            return Err(Error::Strategy(current.len().min(committed.len())));
        }
        if let Some(k) = (0..m).find(|&k| current[k] != committed[k]) {
            return Err(Error::Strategy(k));
        }
        n = m;
        rel = revealed.rel;
    }
    let poset = FinitePoset { n, rel };
    let report = is_embedding(&poset, &committed, cmp)?;
    Ok((poset, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_one_cover() {
        let p = FinitePoset::from_covers(2, &[(0, 1)]).unwrap();
        assert!(p.leq(0, 1) && !p.leq(1, 0));
    }

    #[test]
    fn two_cycle_rejected() {
        assert_eq!(FinitePoset::from_covers(2, &[(0, 1), (1, 0)]), Err(Error::Cycle(0, 1)));
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
        assert!(matches!(enumerate_posets(6), Err(Error::Size { .. })));
    }

    #[test]
    fn random_extremes() {
        assert_eq!(random_poset(4, 3, 0.0), FinitePoset::antichain(4));
        let c = random_poset(4, 3, 1.0);
        for i in 0..4 {
            for j in 0..4 {
                assert!(c.comparable(i, j));
            }
        }
    }

    #[test]
    fn json_and_dot_round_trip() {
        let p = random_poset(6, 42, 0.5);
        assert_eq!(FinitePoset::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(FinitePoset::from_dot(&p.to_dot()).unwrap(), p);
    }

    #[test]
    fn constant_strategy_loses() {
        struct Constant(Vec<u8>);
        impl OnlineEmbedder for Constant {
            type Image = u8;
            fn place(&mut self, _: &FinitePoset) -> u8 {
                self.0.push(7);
                7
            }
            fn images(&self) -> Vec<u8> {
                self.0.clone()
            }
        }
        let chain = FinitePoset::chain(2);
        let cmp = ByLeq(|a: &u8, b: &u8| a <= b);
        let (_, report) = online_game(&mut PosetRevealer::new(&chain), &mut Constant(vec![]), &cmp).unwrap();
        assert!(!report.ok);
    }

    #[test]
    fn revising_strategy_is_caught() {
        struct Reviser(Vec<u8>);
        impl OnlineEmbedder for Reviser {
            type Image = u8;
            fn place(&mut self, p: &FinitePoset) -> u8 {
                for x in self.0.iter_mut() {
                    *x += 1;
                }
                self.0.push(p.len() as u8);
                p.len() as u8
            }
            fn images(&self) -> Vec<u8> {
                self.0.clone()
            }
        }
        let chain = FinitePoset::chain(3);
        let cmp = ByLeq(|a: &u8, b: &u8| a <= b);
        let err = online_game(&mut PosetRevealer::new(&chain), &mut Reviser(vec![]), &cmp).unwrap_err();
        assert_eq!(err, Error::Strategy(0));
    }
}
