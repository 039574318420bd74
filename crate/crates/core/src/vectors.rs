//! Truncated 0-1 vectors: a longer vector is below a shorter one when it
//! dominates it coordinatewise on the shorter one's length. Finite vector sets
//! are compared by domination, giving a quasi-order that receives both the
//! letter-gadget embedding of word antichains and a quadratic-size online
//! embedding of finite posets.

use crate::error::{Error, Result};
use crate::poset::{Comparator, FinitePoset, OnlineEmbedder};
use crate::words::{AntichainSet, Word};
use std::collections::BTreeSet;
use std::fmt;

/// A finite 0-1 vector. The empty vector is allowed and lies above every vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    bits: Vec<bool>,
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVector { bits }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let word: Word = s.parse()?;
        Ok(BitVector { bits: word.bits().to_vec() })
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
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b as u8)?;
        }
        write!(f, ")")
    }
}

/// `v <= w`: `v` is at least as long as `w` and `v_i >= w_i` on the first `len(w)` coordinates.
pub fn vector_leq(v: &BitVector, w: &BitVector) -> bool {
    v.len() >= w.len() && v.bits.iter().zip(&w.bits).all(|(&a, &b)| a || !b)
}

/// A finite set of vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VectorSet {
    vectors: BTreeSet<BitVector>,
}

impl VectorSet {
    pub fn new<I: IntoIterator<Item = BitVector>>(vectors: I) -> Self {
        VectorSet { vectors: vectors.into_iter().collect() }
    }

    pub fn vectors(&self) -> impl Iterator<Item = &BitVector> {
        self.vectors.iter()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Sum of vector lengths.
    pub fn total_bits(&self) -> usize {
        self.vectors.iter().map(BitVector::len).sum()
    }

    /// JSON array of 0/1 arrays.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<u8>> = self.vectors.iter().map(|v| v.bits.iter().map(|&b| b as u8).collect()).collect();
        serde_json::to_string(&rows).expect("integers serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Vec<u8>> = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let mut out = Vec::new();
        for row in rows {
            if row.iter().any(|&b| b > 1) {
                return Err(Error::Format("vector entries must be 0 or 1".into()));
            }
            out.push(BitVector::new(row.into_iter().map(|b| b == 1).collect()));
        }
        Ok(VectorSet::new(out))
    }
}

impl fmt::Display for VectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `V <= W`: every vector of `V` lies below some vector of `W`.
pub fn tv_leq(v: &VectorSet, w: &VectorSet) -> bool {
    v.vectors.iter().all(|x| w.vectors.iter().any(|y| vector_leq(x, y)))
}

/// [`Comparator`] for [`tv_leq`]; equality is mutual domination.
pub struct VectorOrder;

impl Comparator<VectorSet> for VectorOrder {
    fn leq(&self, x: &VectorSet, y: &VectorSet) -> bool {
        tv_leq(x, y)
    }
}

/// Drops every vector that lies below another vector of the set; the result is equivalent under [`tv_leq`].
pub fn canonicalize(v: &VectorSet) -> VectorSet {
    VectorSet::new(
        v.vectors
            .iter()
            .filter(|x| !v.vectors.iter().any(|y| y != *x && vector_leq(x, y)))
            .cloned(),
    )
}

fn gadget(w: &Word) -> BitVector {
    BitVector::new(w.bits().iter().flat_map(|&b| [b, !b]).collect())
}

/// Letter gadget: `0 ↦ (0,1)`, `1 ↦ (1,0)`, concatenated.
pub fn word_to_vector(w: &Word) -> Result<BitVector> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(gadget(w))
}

/// Gadget image of every word. The empty word, present only in `{ε}`, maps to the empty vector.
pub fn embed_words(a: &AntichainSet) -> VectorSet {
    VectorSet::new(a.words().map(gadget))
}

/// The vector of the last element `k` of `revealed`: length `k + 1`, with bit
/// `m` set iff `k <= m`.
pub fn element_vector(revealed: &FinitePoset) -> BitVector {
    let k = revealed.len() - 1;
    BitVector::new((0..=k).map(|m| revealed.leq(k, m)).collect())
}

/// Online quadratic-size embedding: element `k` maps to the vectors of the
/// elements `m <= k` (in reveal order) that lie below it, itself included.
pub fn psi_prime(p: &FinitePoset) -> Vec<VectorSet> {
    let mut strategy = PsiPrimeStrategy::default();
    for k in 1..=p.len() {
        strategy.place(&p.prefix(k));
    }
    strategy.images
}

/// [`psi_prime`] as an online strategy.
#[derive(Debug, Default, Clone)]
pub struct PsiPrimeStrategy {
    vectors: Vec<BitVector>,
    images: Vec<VectorSet>,
}

impl OnlineEmbedder for PsiPrimeStrategy {
    type Image = VectorSet;
    fn place(&mut self, revealed: &FinitePoset) -> VectorSet {
        let k = revealed.len() - 1;
        self.vectors.push(element_vector(revealed));
        let image = VectorSet::new((0..=k).filter(|&m| revealed.leq(m, k)).map(|m| self.vectors[m].clone()));
        self.images.push(image.clone());
        image
    }
    fn images(&self) -> Vec<VectorSet> {
        self.images.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVector {
        BitVector::parse(s).unwrap()
    }

    fn vs(items: &[&str]) -> VectorSet {
        VectorSet::new(items.iter().map(|s| v(s)))
    }

    #[test]
    fn vector_order_examples() {
        assert!(vector_leq(&v("10111"), &v("1001")));
        assert!(vector_leq(&v("1111"), &v("1001")));
        assert!(vector_leq(&v("101"), &v("101")));
        assert!(tv_leq(&vs(&["01"]), &vs(&["01", "1001"])));
        assert!(!tv_leq(&vs(&["1"]), &vs(&["01"])));
    }

    #[test]
    fn gadget_examples() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(word_to_vector(&w("0")).unwrap(), v("01"));
        assert_eq!(word_to_vector(&w("10")).unwrap(), v("1001"));
        assert_eq!(word_to_vector(&w("000")).unwrap(), v("010101"));
        assert_eq!(word_to_vector(&w("")), Err(Error::EmptyWord));
    }

    #[test]
    fn psi_prime_examples() {
        assert_eq!(psi_prime(&FinitePoset::antichain(1)), vec![vs(&["1"])]);
        assert_eq!(psi_prime(&FinitePoset::chain(2)), vec![vs(&["1"]), vs(&["1", "01"])]);
        assert_eq!(psi_prime(&FinitePoset::antichain(2)), vec![vs(&["1"]), vs(&["01"])]);
    }

    #[test]
    fn canonical_form_drops_dominated() {
        let set = vs(&["01", "011"]);
        assert_eq!(canonicalize(&set), vs(&["01"]));
        assert!(tv_leq(&set, &canonicalize(&set)) && tv_leq(&canonicalize(&set), &set));
    }
}
