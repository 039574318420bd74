//! The rewriting order on words over `{↓, ↑, 0, 1}` generated from `1` by the
//! rules `1 → ↓11↑` and `1 → 0`, with the extra collapsing rule `↓00↑ → 0`.
//!
//! Every such word is a binary tree whose leaves are `0` or `1`, so words are
//! stored as [`GTree`] values. `X <= Y` when `Y` rewrites to `X`.
//! Files use ASCII `v` and `^` for `↓` and `↑`; the arrows are accepted on input.

use crate::error::{Error, Result};
use crate::poset::Comparator;
use crate::words::{AntichainSet, Word};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

/// A binary tree with `0`/`1` leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GTree {
    Zero,
    One,
    Node(Box<GTree>, Box<GTree>),
}

impl GTree {
    pub fn node(left: GTree, right: GTree) -> GTree {
        GTree::Node(Box::new(left), Box::new(right))
    }

    /// Number of leaves plus internal nodes.
    pub fn size(&self) -> usize {
        match self {
            GTree::Zero | GTree::One => 1,
            GTree::Node(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Preorder code: `v` for a node, then its two children; closing arrows omitted.
    pub fn preorder(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.size());
        self.write_preorder(&mut out);
        out
    }

    fn write_preorder(&self, out: &mut Vec<u8>) {
        match self {
            GTree::Zero => out.push(b'0'),
            GTree::One => out.push(b'1'),
            GTree::Node(a, b) => {
                out.push(b'v');
                a.write_preorder(out);
                b.write_preorder(out);
            }
        }
    }

    /// The word with Unicode arrows.
    pub fn to_unicode(&self) -> String {
        self.to_string().replace('v', "↓").replace('^', "↑")
    }
}

impl fmt::Display for GTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GTree::Zero => f.write_str("0"),
            GTree::One => f.write_str("1"),
            GTree::Node(a, b) => write!(f, "v{a}{b}^"),
        }
    }
}

impl FromStr for GTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Parses a grammar word; `v`/`↓` open a node and `^`/`↑` close it after exactly two children.
pub fn parse(text: &str) -> Result<GTree> {
    let symbols: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let tree = parse_at(&symbols, &mut pos)?;
    if pos != symbols.len() {
        return Err(Error::Parse { position: pos, message: "trailing symbols after a complete word".into() });
    }
    Ok(tree)
}

fn parse_at(symbols: &[char], pos: &mut usize) -> Result<GTree> {
    let at = *pos;
    let Some(&c) = symbols.get(at) else {
        return Err(Error::Parse { position: at, message: "unexpected end of word".into() });
    };
    *pos += 1;
    match c {
        '0' => Ok(GTree::Zero),
        '1' => Ok(GTree::One),
        'v' | '↓' => {
            let left = parse_at(symbols, pos)?;
            let right = parse_at(symbols, pos)?;
            match symbols.get(*pos) {
                Some('^') | Some('↑') => {
                    *pos += 1;
                    Ok(GTree::node(left, right))
                }
                Some(_) => Err(Error::Parse { position: *pos, message: "a node takes exactly two children".into() }),
                None => Err(Error::Parse { position: *pos, message: "unclosed node".into() }),
            }
        }
        '^' | '↑' => Err(Error::Parse { position: at, message: "node closed before its two children".into() }),
        other => Err(Error::Parse { position: at, message: format!("unexpected symbol {other:?}") }),
    }
}

/// True when `from` rewrites to `to`.
///
/// A `1` leaf can grow into any tree; a `0` leaf is final; a node reaches `0`
/// exactly when both children reach `0`, and otherwise stays a node whose
/// children rewrite independently.
pub fn derives(from: &GTree, to: &GTree) -> bool {
    match (from, to) {
        (GTree::One, _) => true,
        (GTree::Zero, x) => *x == GTree::Zero,
        (GTree::Node(a, b), GTree::Zero) => derives(a, &GTree::Zero) && derives(b, &GTree::Zero),
        (GTree::Node(a, b), GTree::Node(c, d)) => derives(a, c) && derives(b, d),
        (GTree::Node(..), GTree::One) => false,
    }
}

/// `x <= y` iff `y` rewrites to `x`.
pub fn grammar_leq(x: &GTree, y: &GTree) -> bool {
    derives(y, x)
}

/// [`Comparator`] for [`grammar_leq`].
pub struct GrammarOrder;

impl Comparator<GTree> for GrammarOrder {
    fn leq(&self, x: &GTree, y: &GTree) -> bool {
        grammar_leq(x, y)
    }
}

/// All trees reachable from `t` by one rule application.
pub fn one_step(t: &GTree) -> Vec<GTree> {
    let mut out = Vec::new();
    match t {
        GTree::One => {
            out.push(GTree::node(GTree::One, GTree::One));
            out.push(GTree::Zero);
        }
        GTree::Zero => {}
        GTree::Node(a, b) => {
            if **a == GTree::Zero && **b == GTree::Zero {
                out.push(GTree::Zero);
            }
            for a2 in one_step(a) {
                out.push(GTree::Node(Box::new(a2), b.clone()));
            }
            for b2 in one_step(b) {
                out.push(GTree::Node(a.clone(), Box::new(b2)));
            }
        }
    }
    out
}

/// Breadth-first search over rule applications, at most `step_bound` steps,
/// discarding intermediate trees larger than `|from| + |to| + 4` nodes.
pub fn rewrite_oracle(from: &GTree, to: &GTree, step_bound: usize) -> bool {
    rewrite_reachable(from, step_bound, from.size() + to.size() + 4).contains(to)
}

/// Trees reachable by bounded rewriting, stored as preorder codes.
pub struct Reachable {
    codes: HashSet<Vec<u8>>,
}

impl Reachable {
    pub fn contains(&self, t: &GTree) -> bool {
        self.codes.contains(&t.preorder())
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }
}

/// Every tree reachable from `from` in at most `step_bound` rule applications
/// without passing through a tree larger than `cap` nodes.
pub fn rewrite_reachable(from: &GTree, step_bound: usize, cap: usize) -> Reachable {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut frontier = vec![from.preorder()];
    seen.insert(from.preorder());
    for _ in 0..step_bound {
        let mut next_frontier = Vec::new();
        for code in &frontier {
            for next in one_step_code(code) {
                if next.len() <= cap && seen.insert(next.clone()) {
                    next_frontier.push(next);
                }
            }
        }
        if next_frontier.is_empty() {
            break;
        }
        frontier = next_frontier;
    }
    Reachable { codes: seen }
}

/// [`one_step`] on preorder codes. A node whose two children are `0` leaves
/// appears as the substring `v00`.
fn one_step_code(code: &[u8]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let splice = |i: usize, width: usize, with: &[u8]| {
        let mut next = Vec::with_capacity(code.len() + 2);
        next.extend_from_slice(&code[..i]);
        next.extend_from_slice(with);
        next.extend_from_slice(&code[i + width..]);
        next
    };
    for i in 0..code.len() {
        match code[i] {
            b'1' => {
                out.push(splice(i, 1, b"v11"));
                out.push(splice(i, 1, b"0"));
            }
            b'v' if code[i + 1..].starts_with(b"00") => out.push(splice(i, 3, b"0")),
            _ => {}
        }
    }
    out
}

/// Tree of an antichain: `0` for the empty set, `1` for `{ε}`, and otherwise a
/// node over the sets of words starting with 0 and with 1 (first letter removed).
pub fn embed_words(a: &AntichainSet) -> GTree {
    fn rec(words: &[&[bool]]) -> GTree {
        if words.is_empty() {
            return GTree::Zero;
        }
        if words.len() == 1 && words[0].is_empty() {
            return GTree::One;
        }
        let zero: Vec<&[bool]> = words.iter().filter(|w| w.first() == Some(&false)).map(|w| &w[1..]).collect();
        let one: Vec<&[bool]> = words.iter().filter(|w| w.first() == Some(&true)).map(|w| &w[1..]).collect();
        GTree::node(rec(&zero), rec(&one))
    }
    let words: Vec<&[bool]> = a.words().map(Word::bits).collect();
    rec(&words)
}

/// Replaces every subtree that rewrites to `0` by `0` (applies `↓00↑ → 0` bottom-up until stable).
pub fn collapse(t: &GTree) -> GTree {
    match t {
        GTree::Node(a, b) => {
            let (a, b) = (collapse(a), collapse(b));
            if a == GTree::Zero && b == GTree::Zero {
                GTree::Zero
            } else {
                GTree::node(a, b)
            }
        }
        leaf => leaf.clone(),
    }
}

/// Every tree with at most `max_size` nodes.
pub fn all_trees(max_size: usize) -> Vec<GTree> {
    let mut by_size: Vec<Vec<GTree>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = vec![GTree::Zero, GTree::One];
    }
    for size in 3..=max_size {
        let mut trees = Vec::new();
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    trees.push(GTree::node(a.clone(), b.clone()));
                }
            }
        }
        by_size[size] = trees;
    }
    by_size.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> GTree {
        parse(s).unwrap()
    }

    #[test]
    fn code_steps_match_tree_steps() {
        for tree in all_trees(7) {
            let mut by_tree: Vec<Vec<u8>> = one_step(&tree).iter().map(GTree::preorder).collect();
            let mut by_code = one_step_code(&tree.preorder());
            by_tree.sort();
            by_code.sort();
            assert_eq!(by_tree, by_code, "{tree}");
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(t("↓10↑"), GTree::node(GTree::One, GTree::Zero));
        assert!(matches!(parse("↓1↑"), Err(Error::Parse { position: 2, .. })));
        assert_eq!(t("v1v10^^").to_string(), "v1v10^^");
        assert_eq!(t("v1v10^^").to_unicode(), "↓1↓10↑↑");
        assert!(parse("v10^0").is_err());
    }

    #[test]
    fn derives_examples() {
        assert!(derives(&t("1"), &t("0")));
        assert!(derives(&t("v00^"), &t("0")));
        assert!(!derives(&t("0"), &t("v00^")));
        assert!(derives(&t("1"), &t("v11^")));
        assert!(!derives(&t("v11^"), &t("1")));
        for (a, b) in [("1", "0"), ("v00^", "0"), ("1", "v11^")] {
            assert!(rewrite_oracle(&t(a), &t(b), 12));
            assert!(!rewrite_oracle(&t(b), &t(a), 12));
        }
    }

    #[test]
    fn embedding_examples() {
        let set = |ws: &[&str]| AntichainSet::parse(ws).unwrap();
        assert_eq!(embed_words(&set(&[])).to_string(), "0");
        assert_eq!(embed_words(&set(&[""])).to_string(), "1");
        assert_eq!(embed_words(&set(&["0"])).to_string(), "v10^");
        assert_eq!(embed_words(&set(&["0", "10"])).to_string(), "v1v10^^");
    }

    #[test]
    fn tree_counts() {
        assert_eq!(all_trees(7).len(), 2 + 4 + 16 + 80);
    }

    #[test]
    fn collapse_reduces_zero_subtrees() {
        assert_eq!(collapse(&t("vv00^1^")), t("v01^"));
        assert_eq!(collapse(&t("vv00^0^")), t("0"));
    }
}
