//! Planar rooted trees and their leaf-interval encoding.
//!
//! A planar rooted tree with `n + 2` leaves in which every internal node has at
//! least two children is the same thing as a partial parenthesization of
//! `n + 2` letters. Each internal node covers a contiguous block of leaves, so a
//! tree is determined by the set of leaf intervals of its internal nodes. That
//! laminar family is the representation most algorithms in this crate use.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-open interval `[start, end)` of leaf positions covered by an internal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        Interval { start, end }
    }

    /// Number of leaves covered.
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    /// True when `other` lies inside `self` (equality allowed).
    pub fn contains(&self, other: &Interval) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// True when the two intervals share no leaf.
    pub fn disjoint(&self, other: &Interval) -> bool {
        self.end <= other.start || other.end <= self.start
    }
}

/// A planar rooted tree whose internal nodes have at least two children.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    /// The corolla with `leaves` leaves, i.e. the top cell `T_{n+2}`.
    pub fn corolla(leaves: usize) -> Tree {
        Tree::Node(vec![Tree::Leaf; leaves])
    }

    /// Left comb `(((••)•)…•)` with `leaves` leaves.
    pub fn left_comb(leaves: usize) -> Tree {
        let mut t = Tree::Leaf;
        for _ in 1..leaves {
            t = Tree::Node(vec![t, Tree::Leaf]);
        }
        t
    }

    /// Right comb `(•(…(••)))` with `leaves` leaves.
    pub fn right_comb(leaves: usize) -> Tree {
        let mut t = Tree::Leaf;
        for _ in 1..leaves {
            t = Tree::Node(vec![Tree::Leaf, t]);
        }
        t
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(ch) => ch.iter().map(Tree::leaf_count).sum(),
        }
    }

    /// Number of internal nodes, root included.
    pub fn node_count(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(ch) => 1 + ch.iter().map(Tree::node_count).sum::<usize>(),
        }
    }

    /// Number of children of the root (zero for a leaf).
    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(ch) => ch.len(),
        }
    }

    /// Every internal node has exactly two children.
    pub fn is_binary(&self) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(ch) => ch.len() == 2 && ch.iter().all(Tree::is_binary),
        }
    }

    /// Every internal node has at least two children.
    pub fn is_valid(&self) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(ch) => ch.len() >= 2 && ch.iter().all(Tree::is_valid),
        }
    }

    /// Dimension of the associated face: the sum over internal nodes of `arity - 2`.
    pub fn dim(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(ch) => ch.len() - 2 + ch.iter().map(Tree::dim).sum::<usize>(),
        }
    }

    /// Leaf intervals of all internal nodes, root included.
    pub fn intervals(&self) -> BTreeSet<Interval> {
        fn walk(t: &Tree, offset: usize, out: &mut BTreeSet<Interval>) -> usize {
            match t {
                Tree::Leaf => 1,
                Tree::Node(ch) => {
                    let mut pos = offset;
                    for c in ch {
                        pos += walk(c, pos, out);
                    }
                    out.insert(Interval::new(offset, pos));
                    pos - offset
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, 0, &mut out);
        out
    }

    /// Rebuild a tree from a laminar family of intervals over `leaves` leaves.
    ///
    /// The root interval `[0, leaves)` is added when missing and singleton
    /// intervals are ignored.
    pub fn from_intervals(leaves: usize, intervals: &BTreeSet<Interval>) -> Result<Tree> {
        let mut all: Vec<Interval> = intervals
            .iter()
            .copied()
            .filter(|iv| iv.len() >= 2)
            .collect();
        let root = Interval::new(0, leaves);
        if !all.contains(&root) {
            all.push(root);
        }
        for iv in &all {
            if iv.end > leaves {
                return Err(Error::Parse {
                    what: "tree",
                    reason: format!(
                        "interval [{}, {}) exceeds {} leaves",
                        iv.start, iv.end, leaves
                    ),
                });
            }
        }
        for (a, x) in all.iter().enumerate() {
            for y in &all[a + 1..] {
                if !(x.contains(y) || y.contains(x) || x.disjoint(y)) {
                    return Err(Error::Parse {
                        what: "tree",
                        reason: format!("intervals {x:?} and {y:?} cross"),
                    });
                }
            }
        }
        // Outer intervals first, ties impossible because the family is a set.
        all.sort_by(|x, y| x.start.cmp(&y.start).then(y.end.cmp(&x.end)));
        fn build(iv: Interval, rest: &[Interval]) -> Tree {
            let mut children = Vec::new();
            let mut pos = iv.start;
            let mut idx = 0;
            while pos < iv.end {
                // The first remaining interval starting at `pos` is the maximal one.
                while idx < rest.len() && rest[idx].start < pos {
                    idx += 1;
                }
                if idx < rest.len()
                    && rest[idx].start == pos
                    && iv.contains(&rest[idx])
                    && rest[idx] != iv
                {
                    let child = rest[idx];
                    let inner: Vec<Interval> = rest[idx + 1..]
                        .iter()
                        .copied()
                        .filter(|x| child.contains(x) && *x != child)
                        .collect();
                    children.push(build(child, &inner));
                    pos = child.end;
                } else {
                    children.push(Tree::Leaf);
                    pos += 1;
                }
            }
            Tree::Node(children)
        }
        let inner: Vec<Interval> = all.iter().copied().filter(|x| *x != root).collect();
        if leaves == 1 {
            return Ok(Tree::Leaf);
        }
        Ok(build(root, &inner))
    }

    /// Parse a parenthesization such as `(•(••))`.
    ///
    /// Leaves may be written as `•`, `*`, `.` or `x`; whitespace is ignored.
    pub fn parse(s: &str) -> Result<Tree> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_tree(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse {
                what: "tree",
                reason: format!("trailing input at position {pos}"),
            });
        }
        if !t.is_valid() {
            return Err(Error::Parse {
                what: "tree",
                reason: "internal node with fewer than two children".into(),
            });
        }
        Ok(t)
    }

    /// Render in the bracket style used for golden files, e.g. `((••)•)`.
    pub fn to_parens(&self) -> String {
        self.to_string()
    }
}

fn parse_tree(chars: &[char], pos: &mut usize) -> Result<Tree> {
    match chars.get(*pos) {
        Some('•') | Some('*') | Some('.') | Some('x') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let mut children = Vec::new();
            loop {
                match chars.get(*pos) {
                    Some(')') => {
                        *pos += 1;
                        break;
                    }
                    None => {
                        return Err(Error::Parse {
                            what: "tree",
                            reason: "unbalanced parentheses".into(),
                        })
                    }
                    _ => children.push(parse_tree(chars, pos)?),
                }
            }
            Ok(Tree::Node(children))
        }
        other => Err(Error::Parse {
            what: "tree",
            reason: format!("unexpected {other:?} at position {}", *pos),
        }),
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "•"),
            Tree::Node(ch) => {
                write!(f, "(")?;
                for c in ch {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["(••)", "((••)•)", "(•((••)•))", "((••)(••))", "(•••••)"]
        {
            assert_eq!(Tree::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Tree::parse("((..).)").unwrap().to_string(), "((••)•)");
    }

    #[test]
    fn rejects_unary_nodes_and_garbage() {
        assert!(Tree::parse("((•)•)").is_err());
        assert!(Tree::parse("(••").is_err());
        assert!(Tree::parse("(••)•").is_err());
    }

    #[test]
    fn combs() {
        assert_eq!(Tree::left_comb(4).to_string(), "(((••)•)•)");
        assert_eq!(Tree::right_comb(4).to_string(), "(•(•(••)))");
        assert!(Tree::left_comb(6).is_binary());
    }

    #[test]
    fn intervals_round_trip() {
        for s in ["(•((••)•))", "((••)(••))", "(•(•••)•)", "(•••)"]
        {
            let t = Tree::parse(s).unwrap();
            let iv = t.intervals();
            assert_eq!(Tree::from_intervals(t.leaf_count(), &iv).unwrap(), t);
        }
    }

    #[test]
    fn crossing_intervals_rejected() {
        let set: BTreeSet<Interval> = [Interval::new(0, 2), Interval::new(1, 3)]
            .into_iter()
            .collect();
        assert!(Tree::from_intervals(4, &set).is_err());
    }

    #[test]
    fn dimension_counts_excess_arity() {
        assert_eq!(Tree::corolla(5).dim(), 3);
        assert_eq!(Tree::parse("(•(•••))").unwrap().dim(), 1);
        assert_eq!(Tree::right_comb(7).dim(), 0);
    }
}
