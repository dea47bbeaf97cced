//! Face operators, compositions and canonical faces of `K_{n+2}`.
//!
//! A composition `d^{q_m}_{(i_m,ℓ_m)} ⋯ d^{q_1}_{(i_1,ℓ_1)}` is stored in
//! application order: `ops[0]` is the operator applied first. Rendering
//! reverses that order so strings read like the usual right-to-left product.
//!
//! Applying `d^q_{(i,ℓ)}` to a cell `K_{n_1+2} × ⋯ × K_{n_{k+1}+2}` acts on
//! factor `q`: the children `i+1, …, i+ℓ+1` of that node are grouped into a new
//! node. The new inner node becomes factor `q` and the shrunken node becomes
//! factor `q+1`; later factors shift up by one.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::tree::{Interval, Tree};
use crate::error::{out_of_range, Error, Result};

/// One face operator `d^q_{(i,ℓ)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceOperator {
    /// Tensor position (1-based factor index).
    pub q: usize,
    /// Leaf offset inside the factor.
    pub i: usize,
    /// Block length: the operator groups `ℓ + 1` consecutive inputs.
    pub l: usize,
}

impl FaceOperator {
    pub fn new(q: usize, i: usize, l: usize) -> Self {
        FaceOperator { q, i, l }
    }

    /// Index constraint for a factor with `n_q + 2` inputs.
    pub fn fits(&self, n_q: usize) -> bool {
        self.l >= 1 && self.l <= n_q && self.i + self.l <= n_q + 1
    }
}

impl fmt::Display for FaceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d^{}_({},{})", self.q, self.i, self.l)
    }
}

/// Classification tag of a composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Raw,
    First,
    Second,
}

/// A composition of face operators acting on the corolla with `ambient` leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Composition {
    /// Number of inputs `n + 2` of the host cell.
    pub ambient: usize,
    /// Operators in application order.
    pub ops: Vec<FaceOperator>,
    pub form: Form,
}

impl Composition {
    /// A raw composition with explicit superscripts.
    pub fn raw(ambient: usize, ops: Vec<FaceOperator>) -> Self {
        Composition {
            ambient,
            ops,
            form: Form::Raw,
        }
    }

    /// A composition written with suppressed superscripts, `q_j = j`.
    ///
    /// `pairs` lists `(i, ℓ)` in application order. The form tag is computed
    /// from the lower indices.
    pub fn suppressed(ambient: usize, pairs: &[(usize, usize)]) -> Self {
        let ops = pairs
            .iter()
            .enumerate()
            .map(|(j, &(i, l))| FaceOperator::new(j + 1, i, l))
            .collect();
        let mut c = Composition::raw(ambient, ops);
        c.form = c.classify();
        c
    }

    /// Lower-index sequence `(i_1,ℓ_1), …, (i_m,ℓ_m)` in application order.
    pub fn lower(&self) -> Vec<(usize, usize)> {
        self.ops.iter().map(|o| (o.i, o.l)).collect()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// True when operator `j` acts on factor `j`, the convention of unlabelled compositions.
    pub fn has_suppressed_superscripts(&self) -> bool {
        self.ops.iter().enumerate().all(|(j, o)| o.q == j + 1)
    }

    /// Type I test on the lower indices: `i_k ≥ i_{k+1}`.
    pub fn is_type_one(&self) -> bool {
        self.ops.windows(2).all(|w| w[0].i >= w[1].i)
    }

    /// Type II test on the lower indices: `i_k ≤ i_{k+1} + ℓ_{k+1}`.
    pub fn is_type_two(&self) -> bool {
        self.ops.windows(2).all(|w| w[0].i <= w[1].i + w[1].l)
    }

    /// Form tag implied by the operators.
    ///
    /// A composition on the top cell has a fundamental form only when its
    /// superscripts are the suppressed ones and it is admissible. Sequences
    /// that are both type I and type II are tagged `First`.
    pub fn classify(&self) -> Form {
        if !self.has_suppressed_superscripts() || !is_admissible(self) {
            return Form::Raw;
        }
        if self.is_type_one() {
            Form::First
        } else if self.is_type_two() {
            Form::Second
        } else {
            Form::Raw
        }
    }

    /// True when the composition is in first fundamental form on the top cell.
    pub fn is_first_form(&self) -> bool {
        self.has_suppressed_superscripts() && self.is_type_one() && is_admissible(self)
    }

    /// True when the composition is in second fundamental form on the top cell.
    pub fn is_second_form(&self) -> bool {
        self.has_suppressed_superscripts() && self.is_type_two() && is_admissible(self)
    }

    /// Render as `d_(i_m,ℓ_m)⋯d_(i_1,ℓ_1)`, printing superscripts only when
    /// they differ from the suppressed convention.
    pub fn render(&self) -> String {
        if self.ops.is_empty() {
            return "1".to_string();
        }
        let explicit = !self.has_suppressed_superscripts();
        let mut s = String::new();
        for o in self.ops.iter().rev() {
            if explicit {
                s.push_str(&format!("d^{}_({},{})", o.q, o.i, o.l));
            } else {
                s.push_str(&format!("d_({},{})", o.i, o.l));
            }
        }
        s
    }

    /// Render with every superscript printed, as `d^{q_m}_(i_m,ℓ_m)⋯`.
    pub fn render_explicit(&self) -> String {
        if self.ops.is_empty() {
            return "1".to_string();
        }
        self.ops.iter().rev().map(|o| o.to_string()).collect()
    }

    /// Parse the output of [`Composition::render`]. `1` is the empty composition.
    pub fn parse(ambient: usize, s: &str) -> Result<Composition> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "1" || s.is_empty() {
            return Ok(Composition::suppressed(ambient, &[]));
        }
        let mut ops_rev = Vec::new();
        let mut rest = s.as_str();
        let mut any_explicit = false;
        while !rest.is_empty() {
            rest = rest
                .strip_prefix('d')
                .ok_or_else(|| parse_err(&s, "expected 'd'"))?;
            let mut q = None;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find('_').ok_or_else(|| parse_err(&s, "expected '_'"))?;
                q = Some(
                    r[..end]
                        .parse::<usize>()
                        .map_err(|e| parse_err(&s, &e.to_string()))?,
                );
                rest = &r[end..];
                any_explicit = true;
            }
            rest = rest
                .strip_prefix('_')
                .ok_or_else(|| parse_err(&s, "expected '_'"))?;
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| parse_err(&s, "expected '('"))?;
            let close = body
                .find(')')
                .ok_or_else(|| parse_err(&s, "expected ')'"))?;
            let mut parts = body[..close].split(',');
            let i = parts
                .next()
                .and_then(|x| x.parse::<usize>().ok())
                .ok_or_else(|| parse_err(&s, "bad offset"))?;
            let l = parts
                .next()
                .and_then(|x| x.parse::<usize>().ok())
                .ok_or_else(|| parse_err(&s, "bad length"))?;
            ops_rev.push((q, i, l));
            rest = &body[close + 1..];
        }
        ops_rev.reverse();
        if any_explicit && ops_rev.iter().any(|o| o.0.is_none()) {
            return Err(parse_err(&s, "mixed explicit and suppressed superscripts"));
        }
        let ops = ops_rev
            .into_iter()
            .enumerate()
            .map(|(j, (q, i, l))| FaceOperator::new(q.unwrap_or(j + 1), i, l))
            .collect();
        let mut c = Composition::raw(ambient, ops);
        c.form = c.classify();
        Ok(c)
    }
}

fn parse_err(s: &str, reason: &str) -> Error {
    Error::Parse {
        what: "composition",
        reason: format!("{reason} in {s:?}"),
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A cell in the middle of applying a composition: its nodes in factor order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellState {
    pub leaves: usize,
    /// Leaf intervals of the internal nodes, indexed by factor position.
    pub factors: Vec<Interval>,
}

impl CellState {
    /// The top cell `T_{n+2}`: one factor, the root.
    pub fn top(leaves: usize) -> Self {
        CellState {
            leaves,
            factors: vec![Interval::new(0, leaves)],
        }
    }

    /// Children of factor `q` (1-based) as leaf intervals, singletons for leaves.
    pub fn children(&self, q: usize) -> Vec<Interval> {
        children_of(self.factors[q - 1], &self.factors)
    }

    /// `n_q` for factor `q`: number of children minus two.
    pub fn n(&self, q: usize) -> usize {
        self.children(q).len() - 2
    }

    /// Apply one operator, returning an error when it does not fit.
    pub fn apply(&mut self, op: FaceOperator) -> Result<()> {
        if op.q == 0 || op.q > self.factors.len() {
            return Err(Error::Inadmissible {
                q: op.q,
                i: op.i,
                l: op.l,
                reason: format!("the cell has {} factors", self.factors.len()),
            });
        }
        let ch = self.children(op.q);
        let n_q = ch.len() - 2;
        if !op.fits(n_q) {
            return Err(Error::Inadmissible {
                q: op.q,
                i: op.i,
                l: op.l,
                reason: format!("factor {} has n_q = {}", op.q, n_q),
            });
        }
        let iv = Interval::new(ch[op.i].start, ch[op.i + op.l].end);
        self.factors.insert(op.q - 1, iv);
        Ok(())
    }

    pub fn tree(&self) -> Tree {
        let set: BTreeSet<Interval> = self.factors.iter().copied().collect();
        Tree::from_intervals(self.leaves, &set).expect("cell states are laminar")
    }
}

/// Maximal proper sub-intervals of `iv` in `family`, with uncovered leaves as singletons.
pub(crate) fn children_of(iv: Interval, family: &[Interval]) -> Vec<Interval> {
    let inside: Vec<Interval> = family
        .iter()
        .copied()
        .filter(|x| iv.contains(x) && *x != iv)
        .collect();
    let mut out = Vec::new();
    let mut pos = iv.start;
    while pos < iv.end {
        let maximal = inside
            .iter()
            .filter(|x| x.start == pos)
            .max_by_key(|x| x.end)
            .copied();
        match maximal {
            Some(x) => {
                out.push(x);
                pos = x.end;
            }
            None => {
                out.push(Interval::new(pos, pos + 1));
                pos += 1;
            }
        }
    }
    out
}

/// True iff each operator fits the factor sizes produced by the preceding operators.
pub fn is_admissible(c: &Composition) -> bool {
    apply_composition(c).is_ok()
}

/// Apply a composition to the corolla, returning the resulting cell.
pub fn apply_composition(c: &Composition) -> Result<CellState> {
    if c.ambient < 2 {
        return Err(out_of_range("ambient", c.ambient, ">= 2"));
    }
    let mut st = CellState::top(c.ambient);
    for op in &c.ops {
        st.apply(*op)?;
    }
    Ok(st)
}

/// A face of `K_{n+2}` identified by its first-fundamental-form key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face {
    /// Number of leaves `n + 2`.
    pub leaves: usize,
    /// Lower indices of the first-fundamental-form composition, application order.
    pub key: Vec<(usize, usize)>,
}

impl Face {
    /// The top cell `T_{n+2}`.
    pub fn top(leaves: usize) -> Face {
        Face {
            leaves,
            key: Vec::new(),
        }
    }

    /// Face of a tree.
    pub fn from_tree(t: &Tree) -> Face {
        let leaves = t.leaf_count();
        Face {
            leaves,
            key: first_key_of(leaves, &t.intervals()),
        }
    }

    /// Face from a first-form key, validated.
    pub fn from_key(leaves: usize, key: &[(usize, usize)]) -> Result<Face> {
        let c = Composition::suppressed(leaves, key);
        if !c.is_first_form() {
            return Err(Error::WrongForm { expected: "first" });
        }
        Ok(Face {
            leaves,
            key: key.to_vec(),
        })
    }

    /// Face denoted by an arbitrary admissible composition.
    pub fn of_composition(c: &Composition) -> Result<Face> {
        let st = apply_composition(c)?;
        let set: BTreeSet<Interval> = st.factors.iter().copied().collect();
        Ok(Face {
            leaves: c.ambient,
            key: first_key_of(c.ambient, &set),
        })
    }

    /// `n` for the ambient `K_{n+2}`.
    pub fn n(&self) -> usize {
        self.leaves - 2
    }

    /// Dimension `n - m`.
    pub fn dim(&self) -> usize {
        self.n() - self.key.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.dim() == 0
    }

    pub fn tree(&self) -> Tree {
        Tree::from_intervals(self.leaves, &self.interval_set()).expect("face keys are valid")
    }

    /// Leaf intervals of all internal nodes, root included.
    pub fn interval_set(&self) -> BTreeSet<Interval> {
        self.cell().factors.into_iter().collect()
    }

    /// The cell with factors in first-form order (root last).
    pub fn cell(&self) -> CellState {
        let mut st = CellState::top(self.leaves);
        for (j, &(i, l)) in self.key.iter().enumerate() {
            st.apply(FaceOperator::new(j + 1, i, l))
                .expect("face keys are admissible");
        }
        st
    }

    /// Canonical first-form composition.
    pub fn first_form(&self) -> Composition {
        Composition::suppressed(self.leaves, &self.key)
    }

    /// Canonical second-form composition.
    pub fn second_form(&self) -> Composition {
        let key = second_key_of(self.leaves, &self.interval_set());
        let mut c = Composition::suppressed(self.leaves, &key);
        c.form = Form::Second;
        c
    }

    /// Render the canonical key as `d_(i_m,ℓ_m)⋯d_(i_1,ℓ_1)`, or `1` for the top cell.
    pub fn render(&self) -> String {
        self.first_form().render()
    }

    /// Parse a face from a composition string (any admissible composition).
    pub fn parse(leaves: usize, s: &str) -> Result<Face> {
        Face::of_composition(&Composition::parse(leaves, s)?)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Nodes of a laminar family in first-form order: right-to-left postorder, root excluded.
pub(crate) fn first_order(leaves: usize, set: &BTreeSet<Interval>) -> Vec<Interval> {
    let mut v: Vec<Interval> = set
        .iter()
        .copied()
        .filter(|iv| !(iv.start == 0 && iv.end == leaves) && iv.len() >= 2)
        .collect();
    v.sort_by(|a, b| b.start.cmp(&a.start).then(a.len().cmp(&b.len())));
    v
}

/// Nodes of a laminar family in second-form order: left-to-right postorder, root excluded.
pub(crate) fn second_order(leaves: usize, set: &BTreeSet<Interval>) -> Vec<Interval> {
    let mut v: Vec<Interval> = set
        .iter()
        .copied()
        .filter(|iv| !(iv.start == 0 && iv.end == leaves) && iv.len() >= 2)
        .collect();
    v.sort_by(|a, b| a.end.cmp(&b.end).then(a.len().cmp(&b.len())));
    v
}

/// Replay a node order as operators acting at the root and read off `(i, ℓ)`.
fn key_from_order(leaves: usize, order: &[Interval]) -> Vec<(usize, usize)> {
    let mut created: Vec<Interval> = vec![Interval::new(0, leaves)];
    let mut key = Vec::with_capacity(order.len());
    for iv in order {
        let root_children = children_of(Interval::new(0, leaves), &created);
        let first = root_children
            .iter()
            .position(|c| c.start == iv.start)
            .expect("node order is a postorder");
        let last = root_children
            .iter()
            .position(|c| c.end == iv.end)
            .expect("node order is a postorder");
        key.push((first, last - first));
        created.push(*iv);
    }
    key
}

pub(crate) fn first_key_of(leaves: usize, set: &BTreeSet<Interval>) -> Vec<(usize, usize)> {
    key_from_order(leaves, &first_order(leaves, set))
}

pub(crate) fn second_key_of(leaves: usize, set: &BTreeSet<Interval>) -> Vec<(usize, usize)> {
    key_from_order(leaves, &second_order(leaves, set))
}

/// Sign relating a composition to the canonical generator of its face.
///
/// Applying a composition to the corolla leaves a cell whose factors are
/// ordered by the operators; the canonical generator orders the same nodes in
/// first-form order. The returned sign is the Koszul sign of that reordering,
/// weighting each node by its dimension.
pub fn composition_orientation(c: &Composition) -> Result<i64> {
    let st = apply_composition(c)?;
    let set: BTreeSet<Interval> = st.factors.iter().copied().collect();
    let mut canonical = first_order(c.ambient, &set);
    canonical.push(Interval::new(0, c.ambient));
    let dims: Vec<usize> = (1..=st.factors.len()).map(|q| st.n(q)).collect();
    let rank: Vec<usize> = st
        .factors
        .iter()
        .map(|iv| {
            canonical
                .iter()
                .position(|x| x == iv)
                .expect("same node set")
        })
        .collect();
    let mut inv = 0;
    for a in 0..rank.len() {
        for b in a + 1..rank.len() {
            if dims[a] % 2 == 1 && dims[b] % 2 == 1 && rank[a] > rank[b] {
                inv += 1;
            }
        }
    }
    Ok(if inv % 2 == 0 { 1 } else { -1 })
}

/// Canonical tree of a face.
pub fn comp_to_tree(f: &Face) -> Tree {
    f.tree()
}

/// Face of a tree, with its first-form key.
pub fn tree_to_comp(t: &Tree) -> Face {
    Face::from_tree(t)
}

/// All faces of dimension `k` of `K_{n+2}` in lexicographic key order.
pub fn enumerate_faces(leaves: usize, k: usize) -> Result<Vec<Face>> {
    if leaves < 2 {
        return Err(out_of_range("leaves", leaves, ">= 2"));
    }
    let n = leaves - 2;
    if k > n {
        return Err(out_of_range("dimension", k, format!("0..={n}")));
    }
    let m = n - k;
    let mut out = Vec::new();
    let mut key = Vec::with_capacity(m);
    enumerate_keys(leaves, m, &mut CellState::top(leaves), &mut key, &mut out);
    out.sort();
    Ok(out)
}

/// All faces of `K_{n+2}` of every dimension, grouped by increasing dimension.
pub fn enumerate_all_faces(leaves: usize) -> Vec<Face> {
    let n = leaves.saturating_sub(2);
    (0..=n)
        .flat_map(|k| enumerate_faces(leaves, k).expect("dimension in range"))
        .collect()
}

fn enumerate_keys(
    leaves: usize,
    m: usize,
    st: &mut CellState,
    key: &mut Vec<(usize, usize)>,
    out: &mut Vec<Face>,
) {
    if key.len() == m {
        out.push(Face {
            leaves,
            key: key.clone(),
        });
        return;
    }
    let q = key.len() + 1;
    let n_q = st.n(q);
    let i_max = key.last().map(|&(i, _)| i).unwrap_or(usize::MAX);
    for i in 0..=n_q.min(i_max) {
        for l in 1..=n_q {
            if i + l > n_q + 1 {
                break;
            }
            let saved = st.clone();
            st.apply(FaceOperator::new(q, i, l))
                .expect("bounds checked");
            key.push((i, l));
            enumerate_keys(leaves, m, st, key, out);
            key.pop();
            *st = saved;
        }
    }
}

/// Replace every node of arity `r ≥ 3` with a comb: left combs for the
/// minimal vertex and right combs for the maximal one.
pub fn min_max_vertex(f: &Face) -> (Tree, Tree) {
    fn combed(t: &Tree, left: bool) -> Tree {
        match t {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(ch) => {
                let ch: Vec<Tree> = ch.iter().map(|c| combed(c, left)).collect();
                if left {
                    let mut it = ch.into_iter();
                    let mut acc = it.next().expect("nodes have children");
                    for c in it {
                        acc = Tree::Node(vec![acc, c]);
                    }
                    acc
                } else {
                    let mut it = ch.into_iter().rev();
                    let mut acc = it.next().expect("nodes have children");
                    for c in it {
                        acc = Tree::Node(vec![c, acc]);
                    }
                    acc
                }
            }
        }
    }
    let t = f.tree();
    (combed(&t, true), combed(&t, false))
}

/// `a` is a face of `b`: every node of `b` is also a node of `a`.
///
/// Equivalently, `b`'s tree is reached from `a`'s tree by contractions.
pub fn is_face_of(a: &Face, b: &Face) -> Result<bool> {
    if a.leaves != b.leaves {
        return Err(Error::AmbientMismatch {
            left: a.leaves,
            right: b.leaves,
        });
    }
    let sa = a.interval_set();
    Ok(b.interval_set().is_subset(&sa))
}

/// The `(N, N′)`-contraction: merge the internal child at position `child`
/// of the node reached by `path` into that node.
pub fn contraction(t: &Tree, path: &[usize], child: usize) -> Result<Tree> {
    fn go(t: &Tree, path: &[usize], child: usize) -> Result<Tree> {
        let Tree::Node(ch) = t else {
            return Err(Error::Parse {
                what: "contraction site",
                reason: "path runs into a leaf".into(),
            });
        };
        if let Some((&head, rest)) = path.split_first() {
            let mut ch = ch.clone();
            let sub = ch.get(head).ok_or_else(|| Error::Parse {
                what: "contraction site",
                reason: format!("no child {head}"),
            })?;
            ch[head] = go(sub, rest, child)?;
            return Ok(Tree::Node(ch));
        }
        match ch.get(child) {
            Some(Tree::Node(grand)) => {
                let mut out = ch[..child].to_vec();
                out.extend(grand.iter().cloned());
                out.extend(ch[child + 1..].iter().cloned());
                Ok(Tree::Node(out))
            }
            _ => Err(Error::Parse {
                what: "contraction site",
                reason: format!("child {child} is not an internal node"),
            }),
        }
    }
    go(t, path, child)
}

/// All single contractions of a tree.
pub fn all_contractions(t: &Tree) -> Vec<Tree> {
    fn sites(t: &Tree, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, usize)>) {
        if let Tree::Node(ch) = t {
            for (k, c) in ch.iter().enumerate() {
                if !c.is_leaf() {
                    out.push((path.clone(), k));
                    path.push(k);
                    sites(c, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut s = Vec::new();
    sites(t, &mut Vec::new(), &mut s);
    s.into_iter()
        .map(|(p, k)| contraction(t, &p, k).expect("sites are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(leaves: usize, s: &str) -> Face {
        Face::parse(leaves, s).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let c = Composition::raw(4, vec![FaceOperator::new(1, 0, 2)]);
        assert!(is_admissible(&c));
        let c = Composition::raw(
            4,
            vec![FaceOperator::new(1, 1, 2), FaceOperator::new(1, 1, 1)],
        );
        assert!(is_admissible(&c));
        let c = Composition::raw(4, vec![FaceOperator::new(1, 0, 3)]);
        assert!(!is_admissible(&c));
    }

    #[test]
    fn facets_of_the_pentagon() {
        let cases = [
            ("d_(0,2)", "((•••)•)"),
            ("d_(1,2)", "(•(•••))"),
            ("d_(0,1)", "((••)••)"),
            ("d_(1,1)", "(•(••)•)"),
            ("d_(2,1)", "(••(••))"),
        ];
        for (c, t) in cases {
            assert_eq!(face(4, c).tree().to_string(), t);
        }
    }

    #[test]
    fn vertex_table_of_the_pentagon() {
        let rows = [
            ("d^2_(0,1)d^1_(0,1)", "d^1_(0,1)d^1_(0,2)", "(((••)•)•)"),
            ("d^2_(0,1)d^1_(1,1)", "d^1_(1,1)d^1_(0,2)", "((•(••))•)"),
            ("d^2_(1,1)d^1_(1,1)", "d^1_(0,1)d^1_(1,2)", "(•((••)•))"),
            ("d^2_(1,1)d^1_(2,1)", "d^1_(1,1)d^1_(1,2)", "(•(•(••)))"),
            ("d^2_(0,1)d^1_(2,1)", "d^2_(1,1)d^1_(0,1)", "((••)(••))"),
        ];
        for (a, b, t) in rows {
            let fa = face(4, a);
            assert_eq!(fa, face(4, b));
            assert_eq!(fa.tree().to_string(), t);
        }
    }

    #[test]
    fn first_form_keys() {
        assert_eq!(face(4, "d^1_(0,1)d^1_(0,2)").key, vec![(0, 1), (0, 1)]);
        assert_eq!(face(4, "d^1_(1,1)d^1_(1,2)").key, vec![(2, 1), (1, 1)]);
        assert_eq!(face(4, "d^2_(1,1)d^1_(0,1)").key, vec![(2, 1), (0, 1)]);
    }

    #[test]
    fn comb_faces() {
        assert_eq!(
            Face::from_key(4, &[(0, 1), (0, 1)]).unwrap().tree(),
            Tree::left_comb(4)
        );
        assert_eq!(
            Face::from_key(4, &[(2, 1), (1, 1)]).unwrap().tree(),
            Tree::right_comb(4)
        );
        assert_eq!(Face::top(6).tree(), Tree::corolla(6));
    }

    #[test]
    fn second_form_is_left_to_right() {
        let f = face(4, "d_(1,1)d_(2,1)");
        assert_eq!(f.second_form().lower(), vec![(2, 1), (1, 1)]);
        let f = Face::from_tree(&Tree::parse("((••)(••))").unwrap());
        assert_eq!(f.second_form().lower(), vec![(0, 1), (1, 1)]);
        assert_eq!(f.key, vec![(2, 1), (0, 1)]);
        assert_eq!(Face::of_composition(&f.second_form()).unwrap(), f);
    }

    #[test]
    fn enumeration_of_small_cells() {
        let edges = enumerate_faces(4, 1).unwrap();
        let keys: Vec<String> = edges.iter().map(|f| f.render()).collect();
        assert_eq!(
            keys,
            ["d_(0,1)", "d_(0,2)", "d_(1,1)", "d_(1,2)", "d_(2,1)"]
        );
        assert_eq!(enumerate_faces(4, 2).unwrap(), vec![Face::top(4)]);
        assert_eq!(enumerate_faces(5, 0).unwrap().len(), 14);
        assert!(enumerate_faces(4, 3).is_err());
    }

    #[test]
    fn min_and_max_vertices() {
        let (lo, hi) = min_max_vertex(&Face::top(4));
        assert_eq!(lo.to_string(), "(((••)•)•)");
        assert_eq!(hi.to_string(), "(•(•(••)))");
        let (lo, _) = min_max_vertex(&face(4, "d_(1,2)"));
        assert_eq!(lo.to_string(), "(•((••)•))");
    }

    #[test]
    fn face_relation() {
        let edge = face(4, "d_(1,2)");
        let v = Face::from_tree(&Tree::right_comb(4));
        assert!(is_face_of(&v, &edge).unwrap());
        let a = face(4, "d_(0,1)");
        let b = face(4, "d_(2,1)");
        assert!(!is_face_of(&a, &b).unwrap());
        assert!(!is_face_of(&b, &a).unwrap());
        assert!(is_face_of(&a, &Face::top(4)).unwrap());
    }

    #[test]
    fn contraction_merges_child() {
        let t = Tree::parse("((••)(••))").unwrap();
        assert_eq!(contraction(&t, &[], 0).unwrap().to_string(), "(••(••))");
        assert_eq!(all_contractions(&t).len(), 2);
        assert!(contraction(&t, &[], 5).is_err());
    }

    #[test]
    fn render_parse_round_trip() {
        let c = Composition::raw(
            5,
            vec![FaceOperator::new(1, 1, 2), FaceOperator::new(1, 0, 1)],
        );
        assert_eq!(c.render(), "d^1_(0,1)d^1_(1,2)");
        assert_eq!(Composition::parse(5, &c.render()).unwrap().ops, c.ops);
        let c = Composition::suppressed(5, &[(2, 1), (1, 1)]);
        assert_eq!(c.render(), "d_(1,1)d_(2,1)");
        assert_eq!(Composition::parse(5, "d_(1,1)d_(2,1)").unwrap(), c);
    }
}
