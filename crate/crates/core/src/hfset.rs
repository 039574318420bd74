//! Hereditarily finite sets over one atom `♥`, hash-consed in a global table.
//!
//! Every [`HfSet`] is a small copyable handle; two handles are equal exactly
//! when the sets are equal. Children are kept sorted by [`canonical_cmp`]
//! (depth, then size, then children lexicographically), so the text form is
//! canonical as well.
//!
//! Text form: `{}` for the empty set, `@` or `♥` for the atom, children
//! separated by commas, whitespace ignored. Output uses `@`.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

/// Handle to an interned set or to the atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HfSet(u32);

#[derive(Debug)]
struct Node {
    /// `None` for the atom.
    children: Option<Vec<HfSet>>,
    depth: u32,
    size: u64,
}

#[derive(Default)]
struct Table {
    nodes: Vec<Node>,
    index: HashMap<Option<Vec<HfSet>>, u32>,
}

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Table::default()))
}

fn with_node<T>(s: HfSet, f: impl FnOnce(&Node) -> T) -> T {
    let t = table().read().expect("intern table lock");
    f(&t.nodes[s.0 as usize])
}

fn intern(children: Option<Vec<HfSet>>) -> HfSet {
    if let Some(&id) = table().read().expect("intern table lock").index.get(&children) {
        return HfSet(id);
    }
    let (depth, size) = match &children {
        None => (0, 1),
        Some(cs) => {
            let depth = 1 + cs.iter().map(|&c| c.depth()).max().unwrap_or(0);
            let size = cs.iter().fold(1u64, |acc, &c| acc.saturating_add(c.size()));
            (depth, size)
        }
    };
    let mut t = table().write().expect("intern table lock");
    if let Some(&id) = t.index.get(&children) {
        return HfSet(id);
    }
    let id = u32::try_from(t.nodes.len()).expect("intern table overflow");
    t.nodes.push(Node { children: children.clone(), depth, size });
    t.index.insert(children, id);
    HfSet(id)
}

/// Total order used for canonical child lists: the atom first, then by depth,
/// size, and children compared lexicographically.
pub fn canonical_cmp(a: HfSet, b: HfSet) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let (da, sa, ca) = with_node(a, |n| (n.depth, n.size, n.children.clone()));
    let (db, sb, cb) = with_node(b, |n| (n.depth, n.size, n.children.clone()));
    match (ca, cb) {
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some(ca), Some(cb)) => da.cmp(&db).then(sa.cmp(&sb)).then_with(|| {
            for (&x, &y) in ca.iter().zip(&cb) {
                let o = canonical_cmp(x, y);
                if o != Ordering::Equal {
                    return o;
                }
            }
            ca.len().cmp(&cb.len())
        }),
    }
}

impl HfSet {
    /// The atom `♥`.
    pub fn atom() -> HfSet {
        intern(None)
    }

    pub fn empty() -> HfSet {
        HfSet::set(Vec::new())
    }

    /// The set of the given members; duplicates are removed.
    pub fn set(members: impl IntoIterator<Item = HfSet>) -> HfSet {
        let mut children: Vec<HfSet> = members.into_iter().collect();
        children.sort_by(|&a, &b| canonical_cmp(a, b));
        children.dedup();
        intern(Some(children))
    }

    pub fn is_atom(self) -> bool {
        with_node(self, |n| n.children.is_none())
    }

    /// Members in canonical order; empty for the atom.
    pub fn members(self) -> Vec<HfSet> {
        with_node(self, |n| n.children.clone().unwrap_or_default())
    }

    pub fn contains(self, x: HfSet) -> bool {
        with_node(self, |n| n.children.as_ref().is_some_and(|cs| cs.contains(&x)))
    }

    /// Nesting depth: 0 for the atom, 1 for the empty set.
    pub fn depth(self) -> u32 {
        with_node(self, |n| n.depth)
    }

    /// Number of nodes in the membership tree, saturating at `u64::MAX`.
    pub fn size(self) -> u64 {
        with_node(self, |n| n.size)
    }

    /// `self ∪ {x}`.
    pub fn with(self, x: HfSet) -> HfSet {
        let mut members = self.members();
        members.push(x);
        HfSet::set(members)
    }

    /// `self \ {x}`.
    pub fn without(self, x: HfSet) -> HfSet {
        HfSet::set(self.members().into_iter().filter(|&m| m != x))
    }

    /// Text form with `♥` for the atom.
    pub fn to_unicode(self) -> String {
        self.to_string().replace('@', "♥")
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atom() {
            return f.write_str("@");
        }
        f.write_str("{")?;
        for (i, m) in self.members().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for HfSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let symbols: Vec<(usize, char)> = s.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut pos = 0;
        let value = parse_at(&symbols, &mut pos)?;
        if let Some(&(position, _)) = symbols.get(pos) {
            return Err(Error::Parse { position, message: "trailing symbols after a complete set".into() });
        }
        Ok(value)
    }
}

fn parse_at(symbols: &[(usize, char)], pos: &mut usize) -> Result<HfSet> {
    let end = symbols.last().map_or(0, |&(p, _)| p + 1);
    let Some(&(position, c)) = symbols.get(*pos) else {
        return Err(Error::Parse { position: end, message: "unexpected end of set".into() });
    };
    *pos += 1;
    match c {
        '@' | '♥' => Ok(HfSet::atom()),
        '{' => {
            let mut members = Vec::new();
            if let Some(&(_, '}')) = symbols.get(*pos) {
                *pos += 1;
                return Ok(HfSet::empty());
            }
            loop {
                members.push(parse_at(symbols, pos)?);
                match symbols.get(*pos) {
                    Some(&(_, ',')) => *pos += 1,
                    Some(&(_, '}')) => {
                        *pos += 1;
                        return Ok(HfSet::set(members));
                    }
                    Some(&(p, other)) => return Err(Error::Parse { position: p, message: format!("expected ',' or '}}', found {other:?}") }),
                    None => return Err(Error::Parse { position: end, message: "unclosed set".into() }),
                }
            }
        }
        other => Err(Error::Parse { position, message: format!("unexpected {other:?} in a set") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_gives_structural_equality() {
        let a = HfSet::set([HfSet::empty(), HfSet::atom()]);
        let b = HfSet::set([HfSet::atom(), HfSet::empty(), HfSet::empty()]);
        assert_eq!(a, b);
        assert_eq!(a.members().len(), 2);
        assert_ne!(HfSet::empty(), HfSet::set([HfSet::empty()]));
    }

    #[test]
    fn text_round_trip() {
        for text in ["{}", "@", "{@,{}}", "{{},{{}}}", "{{{}},{@,{}}}"] {
            let s: HfSet = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert_eq!("{ {}, ♥ }".parse::<HfSet>().unwrap().to_string(), "{@,{}}");
        assert_eq!("{{},@}".parse::<HfSet>().unwrap().to_string(), "{@,{}}");
        assert!("{{}".parse::<HfSet>().is_err());
        assert!("{}}".parse::<HfSet>().is_err());
        assert!("{x}".parse::<HfSet>().is_err());
    }

    #[test]
    fn depth_and_size() {
        let s: HfSet = "{{},{{}}}".parse().unwrap();
        assert_eq!(s.depth(), 3);
        assert_eq!(s.size(), 4);
        assert_eq!(HfSet::atom().depth(), 0);
    }
}
