//! A finitely presented generic partial order on hereditarily finite sets.
//!
//! An element is a set `M` read as a pair `(M_L, M_R)`: members without `♥` form
//! `M_L`, and members of the form `A ∪ {♥}` contribute `A` to `M_R`. A set is
//! an element when
//!
//! 1. `♥ ∉ M`, all members of `M_L ∪ M_R` are elements, and `M_L ∩ M_R = ∅`;
//! 2. `({A} ∪ A_R) ∩ ({B} ∪ B_L) ≠ ∅` for all `A ∈ M_L`, `B ∈ M_R`;
//! 3. `A_L ⊆ M_L` for all `A ∈ M_L`;
//! 4. `B_R ⊆ M_R` for all `B ∈ M_R`.
//!
//! `M < N` when `({M} ∪ M_R) ∩ ({N} ∪ N_L)` is nonempty; any member of that
//! intersection is a witness. Reading `(M_L, M_R)` as a surreal number `{M_L | M_R}`
//! gives a linear order [`leq_surreal`] that extends `<`.

use crate::error::{Error, PartitionCondition, Result};
use crate::hfset::HfSet;
use crate::poset::{Comparator, FinitePoset, OnlineEmbedder};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A valid element of the generic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PElement(HfSet);

/// The clause of the validity definition that a set violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidityIssue {
    /// The set is the atom or contains it as a member.
    ContainsAtom,
    /// A member of `M_L` or `M_R` is not an element.
    InvalidMember(HfSet),
    /// Some set lies in both `M_L` and `M_R`.
    LeftRightOverlap(HfSet),
    /// `A ∈ M_L`, `B ∈ M_R` without a common member of `{A} ∪ A_R` and `{B} ∪ B_L`.
    Ordering(HfSet, HfSet),
    /// `A ∈ M_L` has a left member outside `M_L`.
    LeftIncomplete(HfSet),
    /// `B ∈ M_R` has a right member outside `M_R`.
    RightIncomplete(HfSet),
}

impl fmt::Display for ValidityIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidityIssue::ContainsAtom => write!(f, "correctness: the atom is a member"),
            ValidityIssue::InvalidMember(m) => write!(f, "correctness: member {m} is not an element"),
            ValidityIssue::LeftRightOverlap(m) => write!(f, "correctness: {m} is both a left and a right member"),
            ValidityIssue::Ordering(a, b) => write!(f, "ordering: left member {a} is not below right member {b}"),
            ValidityIssue::LeftIncomplete(a) => write!(f, "left completeness: left members of {a} are missing"),
            ValidityIssue::RightIncomplete(b) => write!(f, "right completeness: right members of {b} are missing"),
        }
    }
}

/// `L ∪ {r ∪ {♥} : r ∈ R}`.
pub fn encode_pair(left: &[HfSet], right: &[HfSet]) -> HfSet {
    let heart = HfSet::atom();
    HfSet::set(left.iter().copied().chain(right.iter().map(|r| r.with(heart))))
}

/// The pair `(M_L, M_R)` of a set; the atom and an atom member are skipped.
pub fn decode_pair(m: HfSet) -> (Vec<HfSet>, Vec<HfSet>) {
    let heart = HfSet::atom();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for x in m.members() {
        if x == heart {
            continue;
        }
        if x.contains(heart) {
            right.push(x.without(heart));
        } else {
            left.push(x);
        }
    }
    (left, right)
}

/// The first violated clause, or `None` when `m` is an element.
pub fn validity_issue(m: HfSet) -> Option<ValidityIssue> {
    validity_issue_memo(m, &mut HashMap::new())
}

fn validity_issue_memo(m: HfSet, memo: &mut HashMap<HfSet, bool>) -> Option<ValidityIssue> {
    let heart = HfSet::atom();
    if m.is_atom() || m.contains(heart) {
        return Some(ValidityIssue::ContainsAtom);
    }
    let (left, right) = decode_pair(m);
    for &x in left.iter().chain(&right) {
        let ok = match memo.get(&x) {
            Some(&ok) => ok,
            None => {
                let ok = validity_issue_memo(x, memo).is_none();
                memo.insert(x, ok);
                ok
            }
        };
        if !ok {
            return Some(ValidityIssue::InvalidMember(x));
        }
    }
    if let Some(&x) = left.iter().find(|x| right.contains(x)) {
        return Some(ValidityIssue::LeftRightOverlap(x));
    }
    for &a in &left {
        for &b in &right {
            if strict_witness(a, b).is_none() {
                return Some(ValidityIssue::Ordering(a, b));
            }
        }
    }
    for &a in &left {
        if decode_pair(a).0.iter().any(|x| !left.contains(x)) {
            return Some(ValidityIssue::LeftIncomplete(a));
        }
    }
    for &b in &right {
        if decode_pair(b).1.iter().any(|x| !right.contains(x)) {
            return Some(ValidityIssue::RightIncomplete(b));
        }
    }
    None
}

/// True when `m` is an element.
pub fn is_valid(m: HfSet) -> bool {
    validity_issue(m).is_none()
}

/// A member of `({a} ∪ a_R) ∩ ({b} ∪ b_L)`, if any.
fn strict_witness(a: HfSet, b: HfSet) -> Option<HfSet> {
    let (_, a_right) = decode_pair(a);
    let (b_left, _) = decode_pair(b);
    let upper: Vec<HfSet> = std::iter::once(a).chain(a_right).collect();
    let mut found: Vec<HfSet> = std::iter::once(b).chain(b_left).filter(|x| upper.contains(x)).collect();
    found.sort_by(|&x, &y| crate::hfset::canonical_cmp(x, y));
    found.first().copied()
}

impl PElement {
    /// Validates `m`.
    pub fn new(m: HfSet) -> Result<Self> {
        match validity_issue(m) {
            None => Ok(PElement(m)),
            Some(issue) => Err(Error::InvalidElement(issue.to_string())),
        }
    }

    /// The element `∅`.
    pub fn empty() -> Self {
        PElement(HfSet::empty())
    }

    /// Encodes and validates a pair.
    pub fn from_pair(left: &[PElement], right: &[PElement]) -> Result<Self> {
        let l: Vec<HfSet> = left.iter().map(|e| e.0).collect();
        let r: Vec<HfSet> = right.iter().map(|e| e.0).collect();
        PElement::new(encode_pair(&l, &r))
    }

    pub fn set(self) -> HfSet {
        self.0
    }

    /// `M_L`.
    pub fn left(self) -> Vec<PElement> {
        decode_pair(self.0).0.into_iter().map(PElement).collect()
    }

    /// `M_R`.
    pub fn right(self) -> Vec<PElement> {
        decode_pair(self.0).1.into_iter().map(PElement).collect()
    }

    /// `0` for `∅`, otherwise one more than the largest level of a left or right member.
    pub fn level(self) -> usize {
        level_memo(self, &mut HashMap::new())
    }
}

fn level_memo(a: PElement, memo: &mut HashMap<PElement, usize>) -> usize {
    if let Some(&l) = memo.get(&a) {
        return l;
    }
    let members: Vec<PElement> = a.left().into_iter().chain(a.right()).collect();
    let l = if members.is_empty() { 0 } else { 1 + members.into_iter().map(|m| level_memo(m, memo)).max().unwrap_or(0) };
    memo.insert(a, l);
    l
}

impl fmt::Display for PElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A witness of `a < b`, if `a < b`. Distinct elements are required: `a` itself
/// always lies in both sets of the intersection test when `a = b`.
pub fn witness(a: PElement, b: PElement) -> Option<PElement> {
    if a == b {
        return None;
    }
    strict_witness(a.0, b.0).map(PElement)
}

/// `a < b`.
pub fn lt_in(a: PElement, b: PElement) -> bool {
    witness(a, b).is_some()
}

/// `a <= b`: equal, or `a < b`.
pub fn leq_in(a: PElement, b: PElement) -> bool {
    a == b || lt_in(a, b)
}

/// [`Comparator`] for [`leq_in`].
pub struct GenericOrder;

impl Comparator<PElement> for GenericOrder {
    fn leq(&self, x: &PElement, y: &PElement) -> bool {
        leq_in(*x, *y)
    }
    fn eq(&self, x: &PElement, y: &PElement) -> bool {
        x == y
    }
}

/// Memoized surreal comparison: `a <= b` iff no `l ∈ a_L` has `b <= l` and no `r ∈ b_R` has `r <= a`.
#[derive(Debug, Default)]
pub struct SurrealOrder {
    memo: HashMap<(PElement, PElement), bool>,
}

impl SurrealOrder {
    pub fn new() -> Self {
        SurrealOrder::default()
    }

    pub fn leq(&mut self, a: PElement, b: PElement) -> bool {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let v = !a.left().into_iter().any(|l| self.leq(b, l)) && !b.right().into_iter().any(|r| self.leq(r, a));
        self.memo.insert((a, b), v);
        v
    }

    /// Both `a <= b` and `b <= a`.
    pub fn same_value(&mut self, a: PElement, b: PElement) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// Sorts by the surreal order; elements with equal value keep their relative order.
    pub fn sort(&mut self, items: &mut [PElement]) {
        items.sort_by(|&a, &b| match (self.leq(a, b), self.leq(b, a)) {
            (true, true) => std::cmp::Ordering::Equal,
            (true, false) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        });
    }
}

/// [`SurrealOrder::leq`] with a fresh memo table.
pub fn leq_surreal(a: PElement, b: PElement) -> bool {
    SurrealOrder::new().leq(a, b)
}

fn closure_left(items: &[PElement]) -> BTreeSet<PElementKey> {
    items.iter().flat_map(|&b| b.left().into_iter().chain(std::iter::once(b))).map(PElementKey).collect()
}

fn closure_right(items: &[PElement]) -> BTreeSet<PElementKey> {
    items.iter().flat_map(|&b| b.right().into_iter().chain(std::iter::once(b))).map(PElementKey).collect()
}

/// Orders elements canonically for deterministic set construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PElementKey(PElement);

impl PartialOrd for PElementKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PElementKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        crate::hfset::canonical_cmp(self.0 .0, other.0 .0)
    }
}

/// Checks the partition conditions for [`extend`].
pub fn check_partition(below: &[PElement], above: &[PElement], apart: &[PElement]) -> Result<()> {
    let all: Vec<PElement> = below.iter().chain(above).chain(apart).copied().collect();
    let distinct: BTreeSet<PElementKey> = all.iter().copied().map(PElementKey).collect();
    if distinct.len() != all.len() {
        return Err(Error::Partition(PartitionCondition::NotDisjoint));
    }
    if below.iter().any(|&a| above.iter().any(|&b| !lt_in(a, b))) {
        return Err(Error::Partition(PartitionCondition::DownBelowUp));
    }
    if below.iter().any(|&a| apart.iter().any(|&z| leq_in(z, a))) {
        return Err(Error::Partition(PartitionCondition::ZeroBelowDown));
    }
    if above.iter().any(|&a| apart.iter().any(|&z| leq_in(a, z))) {
        return Err(Error::Partition(PartitionCondition::ZeroAboveUp));
    }
    Ok(())
}

/// A new element strictly above every member of `below`, strictly below every
/// member of `above`, and incomparable to every member of `apart`.
///
/// The element is `(closure(below) ∪ {G}, closure(above))` where the closures add
/// left (respectively right) members, and `G = (∅, M')` with `M'` every given
/// element together with its right members. `G` lies strictly below all given
/// elements and makes the result differ from all of them. When the result has
/// the same surreal value as a given element, the previous attempt is added to
/// the left side and the construction repeats; each repetition strictly raises
/// the value while keeping it below `above`, so it stops after at most one
/// repetition per given element. The result therefore has a surreal value
/// distinct from every given element.
pub fn extend(below: &[PElement], above: &[PElement], apart: &[PElement]) -> Result<PElement> {
    check_partition(below, above, apart)?;
    let all: Vec<PElement> = below.iter().chain(above).chain(apart).copied().collect();
    let mut guard_right = closure_right(&all);
    for &x in &all {
        guard_right.insert(PElementKey(x));
    }
    let guard_members: Vec<PElement> = guard_right.into_iter().map(|k| k.0).collect();
    let guard = PElement::from_pair(&[], &guard_members).expect("the guard element is valid");

    let mut left: BTreeSet<PElementKey> = closure_left(below);
    left.insert(PElementKey(guard));
    let right: Vec<PElement> = closure_right(above).into_iter().map(|k| k.0).collect();
    let mut surreal = SurrealOrder::new();
    loop {
        let left_members: Vec<PElement> = left.iter().map(|k| k.0).collect();
        let candidate = PElement::from_pair(&left_members, &right).expect("the extension is valid");
        if !all.iter().any(|&x| surreal.same_value(candidate, x)) {
            return Ok(candidate);
        }
        left.insert(PElementKey(candidate));
    }
}

/// Online strategy that places each revealed element with [`extend`].
#[derive(Debug, Default, Clone)]
pub struct GenericStrategy {
    images: Vec<PElement>,
}

impl OnlineEmbedder for GenericStrategy {
    type Image = PElement;
    fn place(&mut self, revealed: &FinitePoset) -> PElement {
        let k = revealed.len() - 1;
        let below: Vec<PElement> = (0..k).filter(|&i| revealed.lt(i, k)).map(|i| self.images[i]).collect();
        let above: Vec<PElement> = (0..k).filter(|&i| revealed.lt(k, i)).map(|i| self.images[i]).collect();
        let apart: Vec<PElement> = (0..k).filter(|&i| !revealed.comparable(i, k)).map(|i| self.images[i]).collect();
        let image = extend(&below, &above, &apart).expect("a poset induces a legal partition");
        self.images.push(image);
        image
    }
    fn images(&self) -> Vec<PElement> {
        self.images.clone()
    }
}

/// Embeds `p` by revealing its elements in index order.
pub fn embed_poset_online(p: &FinitePoset) -> Vec<PElement> {
    let mut strategy = GenericStrategy::default();
    for k in 1..=p.len() {
        strategy.place(&p.prefix(k));
    }
    strategy.images
}

/// The four elements `c(1) = ∅`, `c(2) = (∅, {c(1)})`, `c(3) = ({c(1), c(2)}, ∅)`,
/// `c(4) = ({c(2)}, {c(3)})`.
pub fn example_elements() -> [PElement; 4] {
    let c1 = PElement::empty();
    let c2 = PElement::from_pair(&[], &[c1]).expect("valid example");
    let c3 = PElement::from_pair(&[c1, c2], &[]).expect("valid example");
    let c4 = PElement::from_pair(&[c2], &[c3]).expect("valid example");
    [c1, c2, c3, c4]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_encoding() {
        assert_eq!(encode_pair(&[], &[]), HfSet::empty());
        let c1 = HfSet::empty();
        assert_ne!(encode_pair(&[c1], &[]), encode_pair(&[], &[c1]));
        for c in example_elements() {
            let (l, r) = decode_pair(c.set());
            assert_eq!(encode_pair(&l, &r), c.set());
        }
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid(HfSet::empty()));
        let x = HfSet::empty();
        assert!(matches!(validity_issue(encode_pair(&[x], &[x])), Some(ValidityIssue::LeftRightOverlap(_))));
        assert_eq!(validity_issue(HfSet::set([HfSet::atom()])), Some(ValidityIssue::ContainsAtom));
        let [c1, c2, c3, c4] = example_elements();
        assert!(is_valid(c3.set()) && is_valid(c4.set()));
        let bad = encode_pair(&[c3.set()], &[c2.set()]);
        assert!(matches!(validity_issue(bad), Some(ValidityIssue::Ordering(..))));
        assert_eq!(c1.level(), 0);
        assert_eq!(c2.level(), 1);
        assert_eq!(c3.level(), 2);
        assert_eq!(c4.level(), 3);
    }

    #[test]
    fn order_examples() {
        let [c1, c2, c3, c4] = example_elements();
        assert_eq!(witness(c2, c1), Some(c1));
        assert_eq!(witness(c1, c3), Some(c1));
        assert!(leq_in(c4, c4) && !lt_in(c4, c4));
        assert!(lt_in(c2, c4) && lt_in(c4, c3));
        assert!(!leq_in(c1, c4) && !leq_in(c4, c1));
        assert!(leq_surreal(c2, c1));
        assert!(leq_surreal(PElement::empty(), PElement::empty()));
    }

    #[test]
    fn extend_examples() {
        let fresh = extend(&[], &[], &[]).unwrap();
        assert!(is_valid(fresh.set()));
        let e = PElement::empty();
        let up = extend(&[e], &[], &[]).unwrap();
        assert!(lt_in(e, up));
        let [c1, c2, c3, _] = example_elements();
        let mid = extend(&[c2], &[c3], &[c1]).unwrap();
        assert!(lt_in(c2, mid) && lt_in(mid, c3) && !leq_in(mid, c1) && !leq_in(c1, mid));
        assert_eq!(extend(&[c1], &[c2], &[]), Err(Error::Partition(PartitionCondition::DownBelowUp)));
        assert_eq!(extend(&[c1], &[], &[c2]), Err(Error::Partition(PartitionCondition::ZeroBelowDown)));
        assert_eq!(extend(&[c1], &[], &[c1]), Err(Error::Partition(PartitionCondition::NotDisjoint)));
    }

    #[test]
    fn antichain_images_have_distinct_values() {
        let images = embed_poset_online(&FinitePoset::antichain(3));
        let mut s = SurrealOrder::new();
        for (i, &a) in images.iter().enumerate() {
            for &b in &images[i + 1..] {
                assert!(!leq_in(a, b) && !leq_in(b, a));
                assert!(!s.same_value(a, b));
            }
        }
    }
}
