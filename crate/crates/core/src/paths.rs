//! The homomorphism order on oriented paths.
//!
//! An [`OrientedPath`] stores one direction per edge: edge `i` joins vertex `i`
//! and vertex `i + 1` and points forward (`>`, from `i` to `i + 1`) or backward
//! (`<`). A homomorphism maps vertices to vertices so that every edge lands on
//! an edge with the same orientation. Existence is decided by a sweep over the
//! source edges that keeps the set of feasible target vertices as a bitset.
//!
//! The block library ([`BlockLibrary`]) builds a path for every word of
//! power-of-two length and, from those, a path for every periodic set so that
//! inclusion of sets becomes existence of homomorphisms.

use crate::error::{Error, Result};
use crate::periodic::{self, PeriodicSet};
use crate::words::Word;
use serde::Serialize;
use std::fmt;
use std::sync::OnceLock;

/// An oriented path given by its edge directions (`+1` forward, `-1` backward).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedPath {
    dirs: Vec<i8>,
}

impl OrientedPath {
    /// Validates that every direction is `+1` or `-1`.
    pub fn from_dirs(dirs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = dirs.iter().find(|&&d| d != 1 && d != -1) {
            return Err(Error::InvalidElement(format!("edge direction {bad} is not +1 or -1")));
        }
        Ok(OrientedPath { dirs })
    }

    /// The path visiting the given vertex levels; consecutive levels must differ by one.
    pub fn from_levels(levels: &[i64]) -> Result<Self> {
        let dirs = levels
            .windows(2)
            .map(|w| match w[1] - w[0] {
                1 => Ok(1),
                -1 => Ok(-1),
                step => Err(Error::InvalidElement(format!("consecutive levels differ by {step}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Ok(OrientedPath { dirs })
    }

    /// Parses a string over `>` (forward) and `<` (backward).
    pub fn parse(text: &str) -> Result<Self> {
        let mut dirs = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate() {
            match c {
                '>' => dirs.push(1),
                '<' => dirs.push(-1),
                _ => return Err(Error::Parse { position, message: format!("unexpected {c:?} in a path") }),
            }
        }
        Ok(OrientedPath { dirs })
    }

    /// The single vertex.
    pub fn trivial() -> Self {
        OrientedPath { dirs: Vec::new() }
    }

    pub fn dirs(&self) -> &[i8] {
        &self.dirs
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// Index of the terminal vertex.
    pub fn terminal(&self) -> usize {
        self.dirs.len()
    }

    /// Level of every vertex: forward minus backward edges on the prefix.
    pub fn levels(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.dirs.len() + 1);
        let mut level = 0i64;
        out.push(level);
        for &d in &self.dirs {
            level += d as i64;
            out.push(level);
        }
        out
    }

    /// Level of vertex `i`.
    pub fn level(&self, i: usize) -> i64 {
        self.dirs[..i].iter().map(|&d| d as i64).sum()
    }

    /// Forward minus backward edges.
    pub fn algebraic_length(&self) -> i64 {
        self.level(self.dirs.len())
    }

    /// True when the algebraic length is zero.
    pub fn is_balanced(&self) -> bool {
        self.algebraic_length() == 0
    }

    /// The same path read from its terminal vertex: the directions reversed and flipped.
    pub fn reverse(&self) -> Self {
        OrientedPath { dirs: self.dirs.iter().rev().map(|&d| -d).collect() }
    }

    /// `self` followed by `other`, identifying the terminal vertex of `self` with the initial vertex of `other`.
    pub fn concat(&self, other: &OrientedPath) -> Self {
        let mut dirs = self.dirs.clone();
        dirs.extend_from_slice(&other.dirs);
        OrientedPath { dirs }
    }

    /// True when `self` has an edge from vertex `a` to vertex `b`.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (b == a + 1 && self.dirs.get(a) == Some(&1)) || (a == b + 1 && self.dirs.get(b) == Some(&-1))
    }

    /// Graphviz rendering; vertices are labeled with their levels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n  rankdir=LR;\n");
        for (i, l) in self.levels().iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{l}\"];\n"));
        }
        for (i, &d) in self.dirs.iter().enumerate() {
            let (a, b) = if d == 1 { (i, i + 1) } else { (i + 1, i) };
            out.push_str(&format!("  v{a} -> v{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for OrientedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.dirs {
            f.write_str(if d == 1 { ">" } else { "<" })?;
        }
        Ok(())
    }
}

/// Concatenation of several paths.
pub fn concat_all<'a, I: IntoIterator<Item = &'a OrientedPath>>(parts: I) -> OrientedPath {
    let mut dirs = Vec::new();
    for p in parts {
        dirs.extend_from_slice(&p.dirs);
    }
    OrientedPath { dirs }
}

/// An oriented path rooted at its initial vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plank {
    pub path: OrientedPath,
}

/// A set of target vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct VertexSet {
    blocks: Vec<u64>,
    size: usize,
}

impl VertexSet {
    fn empty(size: usize) -> Self {
        VertexSet { blocks: vec![0; size.div_ceil(64)], size }
    }

    fn full(size: usize) -> Self {
        let mut s = VertexSet::empty(size);
        for v in 0..size {
            s.insert(v);
        }
        s
    }

    fn single(size: usize, v: usize) -> Self {
        let mut s = VertexSet::empty(size);
        s.insert(v);
        s
    }

    fn insert(&mut self, v: usize) {
        self.blocks[v / 64] |= 1 << (v % 64);
    }

    fn contains(&self, v: usize) -> bool {
        v < self.size && self.blocks[v / 64] >> (v % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    fn members(&self) -> Vec<usize> {
        (0..self.size).filter(|&v| self.contains(v)).collect()
    }

    fn and(&self, other: &VertexSet) -> VertexSet {
        VertexSet { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect(), size: self.size }
    }

    fn or(&self, other: &VertexSet) -> VertexSet {
        VertexSet { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a | b).collect(), size: self.size }
    }

    /// Every member moved up by one; members leaving the range are dropped.
    fn shift_up(&self) -> VertexSet {
        let mut blocks = vec![0u64; self.blocks.len()];
        let mut carry = 0u64;
        for (i, &b) in self.blocks.iter().enumerate() {
            blocks[i] = (b << 1) | carry;
            carry = b >> 63;
        }
        let mut out = VertexSet { blocks, size: self.size };
        out.trim();
        out
    }

    /// Every member moved down by one; vertex 0 is dropped.
    fn shift_down(&self) -> VertexSet {
        let n = self.blocks.len();
        let mut blocks = vec![0u64; n];
        for i in 0..n {
            let next = if i + 1 < n { self.blocks[i + 1] & 1 } else { 0 };
            blocks[i] = (self.blocks[i] >> 1) | (next << 63);
        }
        VertexSet { blocks, size: self.size }
    }

    fn trim(&mut self) {
        let extra = self.blocks.len() * 64 - self.size;
        if extra > 0 {
            let last = self.blocks.len() - 1;
            self.blocks[last] &= u64::MAX >> extra;
        }
    }
}

/// The target of a homomorphism sweep, with vertices that start a forward or a backward edge.
struct Target {
    forward_from: VertexSet,
    forward_to: VertexSet,
}

impl Target {
    fn new(q: &OrientedPath) -> Self {
        let size = q.len() + 1;
        let mut forward_from = VertexSet::empty(size);
        let mut forward_to = VertexSet::empty(size);
        for (i, &d) in q.dirs.iter().enumerate() {
            if d == 1 {
                forward_from.insert(i);
            } else {
                forward_to.insert(i);
            }
        }
        Target { forward_from, forward_to }
    }

    /// Images of the next source vertex when the current one may sit anywhere in `from`.
    ///
    /// A source edge in direction `d` from image `v` continues to `v + 1` when
    /// target edge `v` has direction `d`, and to `v - 1` when target edge `v - 1`
    /// has direction `-d`. `forward_to` marks edges with direction `-1`.
    fn step(&self, from: &VertexSet, d: i8) -> VertexSet {
        let (same, opposite) = if d == 1 { (&self.forward_from, &self.forward_to) } else { (&self.forward_to, &self.forward_from) };
        let up = from.and(same).shift_up();
        let down = from.shift_down().and(opposite);
        up.or(&down)
    }
}

/// Feasible images of every source vertex, sweeping from `start`; stops at the first empty layer.
fn sweep(p: &OrientedPath, q: &OrientedPath, start: VertexSet) -> Vec<VertexSet> {
    let target = Target::new(q);
    let mut layers = vec![start];
    for &d in &p.dirs {
        let next = target.step(layers.last().expect("nonempty"), d);
        let dead = next.is_empty();
        layers.push(next);
        if dead {
            break;
        }
    }
    layers
}

fn final_images(p: &OrientedPath, q: &OrientedPath, start: VertexSet) -> Vec<usize> {
    let layers = sweep(p, q, start);
    if layers.len() == p.len() + 1 {
        layers.last().expect("nonempty").members()
    } else {
        Vec::new()
    }
}

/// True when `phi` maps each edge of `p` onto an edge of `q` with the same orientation.
pub fn is_homomorphism(p: &OrientedPath, q: &OrientedPath, phi: &[usize]) -> bool {
    phi.len() == p.len() + 1
        && phi.iter().all(|&v| v <= q.len())
        && p.dirs.iter().enumerate().all(|(i, &d)| {
            let (a, b) = if d == 1 { (phi[i], phi[i + 1]) } else { (phi[i + 1], phi[i]) };
            q.has_edge(a, b)
        })
}

fn find_homomorphism(p: &OrientedPath, q: &OrientedPath, start: VertexSet) -> Option<Vec<usize>> {
    let layers = sweep(p, q, start);
    if layers.len() != p.len() + 1 {
        return None;
    }
    let mut phi = vec![0usize; p.len() + 1];
    phi[p.len()] = *layers[p.len()].members().first()?;
    for i in (0..p.len()).rev() {
        let d = p.dirs[i];
        let next = phi[i + 1];
        let candidates = [next.wrapping_sub(1), next + 1];
        phi[i] = candidates
            .into_iter()
            .find(|&u| {
                layers[i].contains(u) && if d == 1 { q.has_edge(u, next) } else { q.has_edge(next, u) }
            })
            .expect("every feasible vertex has a feasible predecessor");
    }
    assert!(is_homomorphism(p, q, &phi), "reconstructed mapping failed verification");
    Some(phi)
}

/// A homomorphism from `p` to `q`, if any; the mapping is verified edge by edge.
pub fn hom_exists(p: &OrientedPath, q: &OrientedPath) -> Option<Vec<usize>> {
    find_homomorphism(p, q, VertexSet::full(q.len() + 1))
}

/// A homomorphism that sends the initial vertex of `p` to the initial vertex of `q`.
pub fn plank_hom_exists(p: &Plank, q: &Plank) -> Option<Vec<usize>> {
    find_homomorphism(&p.path, &q.path, VertexSet::single(q.path.len() + 1, 0))
}

/// Images of the terminal vertex of `p` over all homomorphisms sending vertex 0 of `p` to `start`.
pub fn terminal_images(p: &OrientedPath, q: &OrientedPath, start: usize) -> Vec<usize> {
    final_images(p, q, VertexSet::single(q.len() + 1, start))
}

/// True when some homomorphism sends vertex 0 of `p` to a vertex of `q` in `starts`.
pub fn hom_exists_from(p: &OrientedPath, q: &OrientedPath, starts: impl IntoIterator<Item = usize>) -> bool {
    let mut set = VertexSet::empty(q.len() + 1);
    for s in starts {
        if s <= q.len() {
            set.insert(s);
        }
    }
    !final_images(p, q, set).is_empty()
}

/// Number of homomorphisms from `p` to `q` (saturating), optionally with vertex 0 pinned.
pub fn count_homs(p: &OrientedPath, q: &OrientedPath, root: Option<usize>) -> u128 {
    let size = q.len() + 1;
    let mut counts: Vec<u128> = match root {
        Some(r) => (0..size).map(|v| u128::from(v == r)).collect(),
        None => vec![1; size],
    };
    for &d in &p.dirs {
        let mut next = vec![0u128; size];
        for (u, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for v in [u.wrapping_sub(1), u + 1] {
                if v < size && if d == 1 { q.has_edge(u, v) } else { q.has_edge(v, u) } {
                    next[v] = next[v].saturating_add(c);
                }
            }
        }
        counts = next;
    }
    counts.into_iter().fold(0u128, u128::saturating_add)
}

/// Depth-first search for a homomorphism that remembers failed `(source vertex, image)` states.
pub fn hom_oracle(p: &OrientedPath, q: &OrientedPath) -> bool {
    fn extend(p: &OrientedPath, q: &OrientedPath, i: usize, v: usize, dead: &mut Vec<Vec<bool>>) -> bool {
        if i == p.len() {
            return true;
        }
        if dead[i][v] {
            return false;
        }
        let d = p.dirs[i];
        for w in [v.wrapping_sub(1), v + 1] {
            if w <= q.len() && (if d == 1 { q.has_edge(v, w) } else { q.has_edge(w, v) }) && extend(p, q, i + 1, w, dead) {
                return true;
            }
        }
        dead[i][v] = true;
        false
    }
    let mut dead = vec![vec![false; q.len() + 1]; p.len() + 1];
    (0..=q.len()).any(|v| extend(p, q, 0, v, &mut dead))
}

/// The five building blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLibrary {
    pub h: OrientedPath,
    pub t: OrientedPath,
    pub b0: OrientedPath,
    pub b1: OrientedPath,
    pub s: OrientedPath,
}

const SHIPPED_BLOCKS: &str = include_str!("blocks.txt");

impl BlockLibrary {
    /// Parses lines `NAME DIRECTIONS` for the names `H`, `T`, `B0`, `B1`, `S`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut found: [Option<OrientedPath>; 5] = Default::default();
        const NAMES: [&str; 5] = ["H", "T", "B0", "B1", "S"];
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let name = fields.next().unwrap_or("");
            let dirs = fields.next().unwrap_or("");
            let slot = NAMES
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| Error::Format(format!("unknown block name {name:?}")))?;
            found[slot] = Some(OrientedPath::parse(dirs)?);
        }
        let [h, t, b0, b1, s] = found;
        let missing = |n: &str| Error::Format(format!("block {n} missing"));
        Ok(BlockLibrary {
            h: h.ok_or_else(|| missing("H"))?,
            t: t.ok_or_else(|| missing("T"))?,
            b0: b0.ok_or_else(|| missing("B0"))?,
            b1: b1.ok_or_else(|| missing("B1"))?,
            s: s.ok_or_else(|| missing("S"))?,
        })
    }

    /// The library pinned in the crate's block fixture.
    pub fn shipped() -> &'static BlockLibrary {
        static LIBRARY: OnceLock<BlockLibrary> = OnceLock::new();
        LIBRARY.get_or_init(|| BlockLibrary::parse(SHIPPED_BLOCKS).expect("shipped block fixture parses"))
    }

    /// The fixture text format.
    pub fn to_text(&self) -> String {
        format!("H {}\nT {}\nB0 {}\nB1 {}\nS {}\n", self.h, self.t, self.b0, self.b1, self.s)
    }

    /// `p(0) = B0`, `p(1) = B1`, `p(UV) = p(U) S reverse(p(V))` for halves `U`, `V`.
    pub fn build_p(&self, w: &Word) -> Result<OrientedPath> {
        if !w.len().is_power_of_two() {
            return Err(Error::Length(w.len()));
        }
        Ok(self.build_p_bits(w.bits()))
    }

    fn build_p_bits(&self, bits: &[bool]) -> OrientedPath {
        if bits.len() == 1 {
            return if bits[0] { self.b1.clone() } else { self.b0.clone() };
        }
        let (left, right) = bits.split_at(bits.len() / 2);
        concat_all([&self.build_p_bits(left), &self.s, &self.build_p_bits(right).reverse()])
    }

    /// `H p(W) T`.
    pub fn build_pbar(&self, w: &Word) -> Result<OrientedPath> {
        Ok(concat_all([&self.h, &self.build_p(w)?, &self.t]))
    }

    /// `H` followed, for every `2^j` up to the period of `s`, by `p̄(W_j) reverse(p̄(W_j))`,
    /// where `W_j` is the signature of the restriction of `s` to period `2^j`.
    pub fn embed_set(&self, s: &PeriodicSet) -> OrientedPath {
        let mut parts = vec![self.h.clone()];
        let mut period = 1;
        while period <= s.period() {
            let restricted = periodic::restrict(s, period).expect("power of two within the period");
            let word = Word::from_bits(restricted.signature_at(period));
            let pbar = self.build_pbar(&word).expect("power-of-two length");
            let reversed = pbar.reverse();
            parts.push(pbar);
            parts.push(reversed);
            period *= 2;
        }
        concat_all(parts.iter())
    }
}

/// [`BlockLibrary::build_p`] on the shipped library.
pub fn build_p(w: &Word) -> Result<OrientedPath> {
    BlockLibrary::shipped().build_p(w)
}

/// [`BlockLibrary::build_pbar`] on the shipped library.
pub fn build_pbar(w: &Word) -> Result<OrientedPath> {
    BlockLibrary::shipped().build_pbar(w)
}

/// [`BlockLibrary::embed_set`] on the shipped library.
pub fn embed_s_to_p(s: &PeriodicSet) -> OrientedPath {
    BlockLibrary::shipped().embed_set(s)
}

/// Inclusion of the periodic sets with signatures `w` and `w2` (each repeated to any common length),
/// together with `|w2| <= |w|`.
pub fn word_signature_below(w: &Word, w2: &Word) -> bool {
    w2.len() <= w.len() && w.bits().iter().enumerate().all(|(i, &b)| !b || w2.bits()[i % w2.len()])
}

fn words_of_length(len: usize) -> impl Iterator<Item = Word> {
    (0..1u64 << len).map(move |v| Word::from_value(v, len))
}

/// Outcome of one checked property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub id: String,
    pub description: String,
    pub passed: bool,
    /// Checked beyond what the constructions need; does not affect [`BlockReport::ok`].
    pub extension: bool,
}

/// Results of [`verify_blocks`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub checks: Vec<PropertyCheck>,
}

impl BlockReport {
    /// True when every required property holds.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.extension)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect()
    }
}

/// Word lengths used by the endpoint check inside [`verify_blocks`].
pub const ENDPOINT_CHECK_LENGTHS: [usize; 3] = [1, 2, 4];
/// Word lengths scanned for the monotone-run and level properties.
pub const SHAPE_CHECK_LENGTHS: [usize; 4] = [1, 2, 4, 8];

/// Machine-checks the properties the constructions rely on.
///
/// * P1: `B0`, `B1` and `S` are balanced.
/// * P2: no homomorphism `B1 → B0`.
/// * P3: a homomorphism `B0 → B1` fixing both endpoints.
/// * P4: the identity is the only homomorphism `B0 → B0` (P4b, for `B1`, is an extension).
/// * P5: every homomorphism `p(W) → p(W')` with `|W| = |W'|` maps the initial vertex to the initial
///   vertex exactly when it maps the terminal vertex to the terminal vertex.
/// * P6: interior levels of `S` avoid every level used by `B0` and `B1`.
/// * P7: a homomorphism `S → T` sending the terminal vertex of `S` to the initial vertex of `T`.
/// * P8: `p̄(W)` has exactly one run of 7 equally oriented edges, at its start.
/// * P9: no interior vertex of `p̄(W)` is at level 0.
pub fn verify_blocks(lib: &BlockLibrary) -> BlockReport {
    let mut checks = Vec::new();
    let mut push = |id: &str, description: &str, passed: bool, extension: bool| {
        checks.push(PropertyCheck { id: id.into(), description: description.into(), passed, extension });
    };

    push("P1", "B0, B1 and S are balanced", lib.b0.is_balanced() && lib.b1.is_balanced() && lib.s.is_balanced(), false);
    push("P2", "no homomorphism B1 -> B0", hom_exists(&lib.b1, &lib.b0).is_none(), false);
    push(
        "P3",
        "a homomorphism B0 -> B1 fixing initial and terminal vertices",
        terminal_images(&lib.b0, &lib.b1, 0).contains(&lib.b1.terminal()),
        false,
    );
    push("P4", "the only homomorphism B0 -> B0 is the identity", count_homs(&lib.b0, &lib.b0, None) == 1, false);
    push("P4b", "the only homomorphism B1 -> B1 is the identity", count_homs(&lib.b1, &lib.b1, None) == 1, true);
    push(
        "P5",
        "homomorphisms between same-length p(W) fix the initial vertex iff they fix the terminal vertex",
        endpoint_violations(lib, &ENDPOINT_CHECK_LENGTHS) == 0,
        false,
    );
    let block_levels: Vec<i64> = lib.b0.levels().into_iter().chain(lib.b1.levels()).collect();
    let s_levels = lib.s.levels();
    let s_interior = &s_levels[1..s_levels.len().saturating_sub(1).max(1)];
    push(
        "P6",
        "interior levels of S are disjoint from the levels of B0 and B1",
        s_interior.iter().all(|l| !block_levels.contains(l)),
        false,
    );
    push(
        "P7",
        "a homomorphism S -> T sending the terminal vertex of S to the initial vertex of T",
        !terminal_images(&lib.s.reverse(), &lib.t, 0).is_empty(),
        false,
    );
    let mut runs_ok = true;
    let mut levels_ok = true;
    for &len in &SHAPE_CHECK_LENGTHS {
        for w in words_of_length(len) {
            let pbar = lib.build_pbar(&w).expect("power-of-two length");
            runs_ok &= monotone_runs(&pbar, 7) == vec![0];
            let levels = pbar.levels();
            levels_ok &= levels[1..levels.len() - 1].iter().all(|&l| l != 0);
        }
    }
    push("P8", "p̄(W) has exactly one monotone 7-edge subpath, at its start", runs_ok, false);
    push("P9", "p̄(W) has no interior vertex at level 0", levels_ok, false);
    BlockReport { checks }
}

/// Start indices of the monotone subpaths with `len` edges.
pub fn monotone_runs(p: &OrientedPath, len: usize) -> Vec<usize> {
    if len == 0 || p.len() < len {
        return Vec::new();
    }
    (0..=p.len() - len).filter(|&i| p.dirs[i..i + len].iter().all(|&d| d == p.dirs[i])).collect()
}

/// Counts homomorphisms `p(W) → p(W')` between same-length words whose endpoint images break
/// "initial to initial iff terminal to terminal"; each offending (start, end) pair counts once.
pub fn endpoint_violations(lib: &BlockLibrary, lengths: &[usize]) -> usize {
    let mut bad = 0;
    for &len in lengths {
        let paths: Vec<OrientedPath> = words_of_length(len).map(|w| lib.build_p(&w).expect("power of two")).collect();
        for p in &paths {
            for q in &paths {
                for start in 0..=q.len() {
                    for end in terminal_images(p, q, start) {
                        if (start == 0) != (end == q.terminal()) {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    bad
}

/// Counts pairs `(W, W')` over the given lengths with a homomorphism `p̄(W) → p̄(W')`
/// that does not send the initial vertex to the initial vertex.
pub fn initial_vertex_violations(lib: &BlockLibrary, lengths: &[usize]) -> usize {
    let paths: Vec<OrientedPath> =
        lengths.iter().flat_map(|&len| words_of_length(len)).map(|w| lib.build_pbar(&w).expect("power of two")).collect();
    let mut bad = 0;
    for p in &paths {
        for q in &paths {
            if hom_exists_from(p, q, 1..=q.len()) {
                bad += 1;
            }
        }
    }
    bad
}

/// Results of [`check_word_path_homs`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WordPathReport {
    pub pairs: usize,
    /// Pairs where homomorphism existence disagrees with signature inclusion plus the period condition.
    pub existence_failures: usize,
    /// Pairs with a homomorphism that does not fix the initial vertex.
    pub initial_failures: usize,
    /// Pairs whose terminal image is not the terminal vertex (equal periods) or the initial vertex (smaller target period).
    pub terminal_failures: usize,
    pub first_failure: Option<String>,
}

impl WordPathReport {
    pub fn ok(&self) -> bool {
        self.existence_failures == 0 && self.initial_failures == 0 && self.terminal_failures == 0
    }
}

/// For all words `W`, `W'` of lengths `2^k`, `2^k'` with `k, k' <= bound`: a homomorphism
/// `p̄(W) → p̄(W')` exists iff [`word_signature_below`]; every homomorphism fixes the initial vertex;
/// the terminal vertex goes to the terminal vertex when the lengths agree and to the initial vertex otherwise.
pub fn check_word_path_homs(lib: &BlockLibrary, bound: u32) -> Result<WordPathReport> {
    if bound > 3 {
        return Err(Error::Size { n: bound as usize, limit: 3 });
    }
    let words: Vec<Word> = (0..=bound).flat_map(|k| words_of_length(1 << k)).collect();
    let paths: Vec<OrientedPath> = words.iter().map(|w| lib.build_pbar(w).expect("power of two")).collect();
    let mut report = WordPathReport::default();
    for (w, p) in words.iter().zip(&paths) {
        for (w2, q) in words.iter().zip(&paths) {
            report.pairs += 1;
            let expected = word_signature_below(w, w2);
            let exists = hom_exists(p, q).is_some();
            let mut failed = false;
            if exists != expected {
                report.existence_failures += 1;
                failed = true;
            }
            if exists {
                if hom_exists_from(p, q, 1..=q.len()) {
                    report.initial_failures += 1;
                    failed = true;
                }
                let want = if w.len() == w2.len() { vec![q.terminal()] } else { vec![0] };
                if terminal_images(p, q, 0) != want {
                    report.terminal_failures += 1;
                    failed = true;
                }
            }
            if failed && report.first_failure.is_none() {
                report.first_failure = Some(format!("{w} -> {w2}"));
            }
        }
    }
    Ok(report)
}

/// Results of [`check_embedding_transport`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub pairs: usize,
    pub unrooted_failures: usize,
    pub rooted_failures: usize,
}

impl TransportReport {
    pub fn ok(&self) -> bool {
        self.unrooted_failures == 0 && self.rooted_failures == 0
    }
}

/// Checks `S ⊆ S' ⟺ embed(S) → embed(S')` over all canonical sets of period at most
/// `max_period`, with free and with rooted homomorphisms.
pub fn check_embedding_transport(lib: &BlockLibrary, max_period: usize) -> TransportReport {
    let sets = periodic::all_canonical(max_period);
    let paths: Vec<OrientedPath> = sets.iter().map(|s| lib.embed_set(s)).collect();
    let mut report = TransportReport::default();
    for (s, p) in sets.iter().zip(&paths) {
        for (s2, q) in sets.iter().zip(&paths) {
            report.pairs += 1;
            let expected = periodic::subset(s, s2);
            if hom_exists(p, q).is_some() != expected {
                report.unrooted_failures += 1;
            }
            let rooted = plank_hom_exists(&Plank { path: p.clone() }, &Plank { path: q.clone() }).is_some();
            if rooted != expected {
                report.rooted_failures += 1;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> OrientedPath {
        OrientedPath::parse(s).unwrap()
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn path_algebra() {
        let p = path(">><");
        assert_eq!(p.level(3), 1);
        assert_eq!(p.reverse().algebraic_length(), -p.algebraic_length());
        assert_eq!(p.concat(&path("<<")).len(), 5);
        assert_eq!(p.reverse().to_string(), "><<");
    }

    #[test]
    fn single_edges() {
        assert_eq!(hom_exists(&path(">"), &path(">")), Some(vec![0, 1]));
        assert_eq!(hom_exists(&path(">"), &path("<")), Some(vec![1, 0]));
        assert!(hom_exists(&path(">>"), &path("><")).is_none());
    }

    #[test]
    fn block_recursion() {
        let lib = BlockLibrary::shipped();
        assert_eq!(build_p(&word("01")).unwrap(), concat_all([&lib.b0, &lib.s, &lib.b1.reverse()]));
        assert_eq!(
            build_p(&word("0110")).unwrap(),
            concat_all([&lib.b0, &lib.s, &lib.b1.reverse(), &lib.s, &lib.b0, &lib.s.reverse(), &lib.b1.reverse()])
        );
        assert!(build_p(&word("011")).is_err());
        assert!(build_p(&word("0110")).unwrap().is_balanced());
    }

    #[test]
    fn shipped_blocks_pass() {
        let report = verify_blocks(BlockLibrary::shipped());
        assert!(report.ok(), "{:?}", report.failed());
        assert!(report.failed().is_empty());
    }

    #[test]
    fn broken_libraries_fail() {
        let mut lib = BlockLibrary::shipped().clone();
        lib.b1 = lib.b0.clone();
        assert!(verify_blocks(&lib).failed().contains(&"P2"));
        let mut lib = BlockLibrary::shipped().clone();
        lib.s = lib.s.concat(&path(">"));
        assert!(verify_blocks(&lib).failed().contains(&"P1"));
    }

    #[test]
    fn library_text_round_trip() {
        let lib = BlockLibrary::shipped();
        assert_eq!(&BlockLibrary::parse(&lib.to_text()).unwrap(), lib);
    }

    #[test]
    fn counting_matches_small_cases() {
        assert_eq!(count_homs(&path(">"), &path(">"), None), 1);
        assert_eq!(count_homs(&path(">"), &path("><"), None), 2);
        assert_eq!(count_homs(&path(""), &path(">>"), None), 3);
    }

    #[test]
    fn embedding_first_levels() {
        let lib = BlockLibrary::shipped();
        let full = PeriodicSet::parse("1").unwrap();
        let pbar = lib.build_pbar(&word("1")).unwrap();
        assert_eq!(lib.embed_set(&full), concat_all([&lib.h, &pbar, &pbar.reverse()]));
        let odd = PeriodicSet::parse("01").unwrap();
        let low = lib.build_pbar(&word("0")).unwrap();
        let high = lib.build_pbar(&word("01")).unwrap();
        assert_eq!(lib.embed_set(&odd), concat_all([&lib.h, &low, &low.reverse(), &high, &high.reverse()]));
    }
}
