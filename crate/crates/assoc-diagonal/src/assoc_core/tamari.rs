//! The Tamari order on planar binary trees.
//!
//! A right-shift at a node rewrites `((A B) C)` into `(A (B C))`. The reflexive
//! transitive closure of right-shifts is the Tamari order; the left comb is its
//! bottom and the right comb its top.

use std::collections::{BTreeMap, HashSet, VecDeque};

use super::tree::Tree;
use crate::error::{Error, Result};

/// Every binary tree obtained from `t` by a single right-shift.
pub fn tamari_covers(t: &Tree) -> Result<Vec<Tree>> {
    if !t.is_binary() {
        return Err(Error::Parse {
            what: "binary tree",
            reason: format!("{t} has a node of arity other than two"),
        });
    }
    let mut out = Vec::new();
    covers_into(t, &mut out);
    Ok(out)
}

fn covers_into(t: &Tree, out: &mut Vec<Tree>) {
    let Tree::Node(ch) = t else { return };
    let (l, r) = (&ch[0], &ch[1]);
    if let Tree::Node(lc) = l {
        let (a, b) = (&lc[0], &lc[1]);
        out.push(Tree::Node(vec![
            a.clone(),
            Tree::Node(vec![b.clone(), r.clone()]),
        ]));
    }
    let mut sub = Vec::new();
    covers_into(l, &mut sub);
    out.extend(sub.into_iter().map(|x| Tree::Node(vec![x, r.clone()])));
    let mut sub = Vec::new();
    covers_into(r, &mut sub);
    out.extend(sub.into_iter().map(|x| Tree::Node(vec![l.clone(), x])));
}

/// `a ≤ b` in the Tamari order, by breadth-first search over right-shifts.
pub fn tamari_leq(a: &Tree, b: &Tree) -> Result<bool> {
    let (la, lb) = (a.leaf_count(), b.leaf_count());
    if la != lb {
        return Err(Error::AmbientMismatch {
            left: la,
            right: lb,
        });
    }
    if !a.is_binary() || !b.is_binary() {
        return Err(Error::Parse {
            what: "binary tree",
            reason: "Tamari comparison needs binary trees".into(),
        });
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([a.clone()]);
    seen.insert(a.clone());
    while let Some(t) = queue.pop_front() {
        if &t == b {
            return Ok(true);
        }
        for c in tamari_covers(&t)? {
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    Ok(false)
}

/// All binary trees with `leaves` leaves, in a deterministic order.
pub fn binary_trees(leaves: usize) -> Vec<Tree> {
    if leaves <= 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..leaves {
        for l in binary_trees(k) {
            for r in binary_trees(leaves - k) {
                out.push(Tree::Node(vec![l.clone(), r]));
            }
        }
    }
    out
}

/// The Tamari poset on binary trees with a fixed leaf count.
///
/// Elements are indexed in a linear extension of the order, so the up-set of
/// element `x` only contains indices `≥ x`.
#[derive(Debug, Clone)]
pub struct TamariLattice {
    pub leaves: usize,
    pub elements: Vec<Tree>,
    /// Cover relations `(lower, upper)` as indices.
    pub covers: Vec<(usize, usize)>,
    up: Vec<Vec<u64>>,
}

impl TamariLattice {
    pub fn new(leaves: usize) -> Self {
        // Kahn's algorithm over right-shifts gives a linear extension.
        let trees = binary_trees(leaves);
        let index: BTreeMap<Tree, usize> = trees
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, t)| (t, k))
            .collect();
        let succ: Vec<Vec<usize>> = trees
            .iter()
            .map(|t| {
                tamari_covers(t)
                    .expect("binary")
                    .iter()
                    .map(|c| index[c])
                    .collect()
            })
            .collect();
        let mut indeg = vec![0usize; trees.len()];
        for s in &succ {
            for &v in s {
                indeg[v] += 1;
            }
        }
        let mut order = Vec::with_capacity(trees.len());
        let mut queue: VecDeque<usize> = (0..trees.len()).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        let mut pos = vec![0usize; trees.len()];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let elements: Vec<Tree> = order.iter().map(|&v| trees[v].clone()).collect();
        let mut covers: Vec<(usize, usize)> = Vec::new();
        for (v, s) in succ.iter().enumerate() {
            for &w in s {
                covers.push((pos[v], pos[w]));
            }
        }
        covers.sort();
        let n = elements.len();
        let words = n.div_ceil(64).max(1);
        let mut up = vec![vec![0u64; words]; n];
        let mut by_lower: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &covers {
            by_lower[a].push(b);
        }
        for x in (0..n).rev() {
            up[x][x / 64] |= 1 << (x % 64);
            for &y in &by_lower[x] {
                let (lo, hi) = up.split_at_mut(y);
                for (w, v) in lo[x].iter_mut().zip(hi[0].iter()) {
                    *w |= *v;
                }
            }
        }
        TamariLattice {
            leaves,
            elements,
            covers,
            up,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.elements.iter().position(|x| x == t)
    }

    /// `a ≤ b` by index.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let common: Vec<u64> = self.up[a]
            .iter()
            .zip(&self.up[b])
            .map(|(x, y)| x & y)
            .collect();
        let first = common
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)?;
        let covers_all = common.iter().zip(&self.up[first]).all(|(c, u)| c & !u == 0);
        covers_all.then_some(first)
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(x, a) && self.leq(x, b))
            .collect();
        let last = *lower.last()?;
        lower.iter().all(|&x| self.leq(x, last)).then_some(last)
    }

    /// Every pair has a join, and a unique bottom and top exist.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let bottom_ok = (0..n).all(|x| self.leq(0, x));
        let top_ok = (0..n).all(|x| self.leq(x, n - 1));
        // A finite bounded poset in which all joins exist is a lattice.
        bottom_ok && top_ok && (0..n).all(|a| (a + 1..n).all(|b| self.join(a, b).is_some()))
    }

    pub fn bottom(&self) -> &Tree {
        &self.elements[0]
    }

    pub fn top(&self) -> &Tree {
        &self.elements[self.len() - 1]
    }

    /// Graphviz rendering with parenthesizations as node labels.
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph tamari_{} {{\n  rankdir=BT;\n", self.leaves);
        for (k, t) in self.elements.iter().enumerate() {
            s.push_str(&format!("  n{k} [label=\"{t}\"];\n"));
        }
        for &(a, b) in &self.covers {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}
