//! Abstract associahedral sets: multi-indexed cells with face and degeneracy operators.
//!
//! A cell of the free associahedral set on a generator `x` of `K_{n+2}` is a
//! canonical word `s ⋯ s d ⋯ d x`: a face of `K_{n+2}` in first fundamental form
//! followed by degeneracies. Geometrically the word is a map from a product of
//! associahedra to `K_{n+2}` that first forgets inputs in each factor and then
//! includes the face. It is stored as the face together with, for every block,
//! its list of input slots marked kept or forgotten. Words with the same data
//! are equal, so structural equality of [`MultiIndexCell`] is equality of
//! canonical words.
//!
//! A face can swallow all kept inputs of a bracket but one, or all kept inputs
//! of its block. The corresponding factor `K_r` is then projected to a point.
//! For `r = 2` the factor is dropped, which is the unit relation `d s = 1`. For
//! `r ≥ 3` it is kept as a point factor, and the cell is degenerate because the
//! projection factors through a degeneracy of `K_2`.
//!
//! Blocks are numbered in first-form order with the root last, which is the
//! order of the multi-index `(j_1,n_1), …, (j_{k+1},n_{k+1})`; point factors
//! follow in increasing arity. [`apply_face`] and [`apply_degeneracy`] address
//! blocks in that order. Operator words in [`apply_word`] address blocks the way
//! the face relations do: after `d^q_{(i,ℓ)}` the new inner block is number `q`
//! and the shrunken block is number `q + 1`, before the permutation that
//! restores first-form order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::assoc_core::face::children_of;
use crate::assoc_core::{
    apply_relation, enumerate_all_faces, Composition, Face, FaceOperator, Interval, Rule, Tree,
};
use crate::chain_complex::{boundary_face, face_sign, FaceSignContext, TensorChain};
use crate::diagonal::{diagonal_terms, DiagonalTable};
use crate::error::{out_of_range, Error, Result};

/// Level data `(j_1,n_1), …, (j_{k+1},n_{k+1})` of a cell of dimension `n − k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    pub blocks: Vec<(usize, usize)>,
}

impl MultiIndex {
    /// Validated multi-index: `j` non-increasing with `j_{k+1} = 0` and `j_1 ≤ n`.
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        let idx = MultiIndex { blocks };
        let last = idx
            .blocks
            .last()
            .ok_or_else(|| Error::Module("a multi-index has at least one block".into()))?;
        if last.0 != 0 {
            return Err(Error::Module(format!(
                "the last block has j = {}, expected 0",
                last.0
            )));
        }
        if idx.blocks.windows(2).any(|w| w[0].0 < w[1].0) {
            return Err(Error::Module(format!(
                "j values of {idx} are not non-increasing"
            )));
        }
        if idx.blocks[0].0 > idx.n() {
            return Err(Error::Module(format!("j_1 exceeds n in {idx}")));
        }
        Ok(idx)
    }

    /// The index `(0, n)` of a top cell of `K_{n+2}`.
    pub fn top(n: usize) -> Self {
        MultiIndex {
            blocks: vec![(0, n)],
        }
    }

    /// Number of face operators `k`.
    pub fn k(&self) -> usize {
        self.blocks.len() - 1
    }

    /// `n = Σ n_q + k`.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum::<usize>() + self.k()
    }

    /// Cell dimension `n − k`.
    pub fn dim(&self) -> usize {
        self.n() - self.k()
    }

    /// `n_q` for `1 ≤ q ≤ k + 1`.
    pub fn n_at(&self, q: usize) -> usize {
        self.blocks[q - 1].1
    }

    /// Sign data for `d^q_{(i,ℓ)}` on a cell with this index.
    pub fn sign_context(&self, q: usize, i: usize, l: usize) -> FaceSignContext {
        let k = self.k();
        FaceSignContext {
            blocks: self.blocks[..k].to_vec(),
            n_last: self.blocks[k].1,
            q,
            i,
            l,
        }
    }

    fn check_face(&self, q: usize, i: usize, l: usize) -> Result<()> {
        if q == 0 || q > self.blocks.len() {
            return Err(Error::Inadmissible {
                q,
                i,
                l,
                reason: format!("the cell has {} blocks", self.blocks.len()),
            });
        }
        check_fits(q, i, l, self.n_at(q))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(j, n)| format!("({j},{n})"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn check_fits(q: usize, i: usize, l: usize, n_q: usize) -> Result<()> {
    if FaceOperator::new(q, i, l).fits(n_q) {
        Ok(())
    } else {
        Err(Error::Inadmissible {
            q,
            i,
            l,
            reason: format!("block {q} has n_q = {n_q}"),
        })
    }
}

/// Index of `d^q_{(i,ℓ)}` applied to a cell with index `idx`.
///
/// The block `(j(q,β), ℓ − 1)` is inserted at position `β` and block `q`
/// becomes `(j_q, n_q − ℓ)`; all other blocks are unchanged.
pub fn face_target_index(idx: &MultiIndex, q: usize, i: usize, l: usize) -> Result<MultiIndex> {
    idx.check_face(q, i, l)?;
    let ctx = idx.sign_context(q, i, l);
    let beta = ctx.beta();
    assert!(beta <= q, "β = {beta} exceeds q = {q}");
    let mut blocks = idx.blocks.clone();
    blocks[q - 1].1 -= l;
    blocks.insert(beta - 1, (ctx.j_qr(beta), l - 1));
    MultiIndex::new(blocks)
}

/// A cell of a free associahedral set in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndexCell {
    pub generator: usize,
    /// The non-degenerate part, a face of the generator's associahedron.
    pub face: Face,
    /// Input slots of each block in first-form order, root last; `true` marks a kept input.
    pub slots: Vec<Vec<bool>>,
    /// Arities `r ≥ 3` of factors `K_r` projected to a point, increasing.
    pub points: Vec<usize>,
}

impl MultiIndexCell {
    /// The generator itself, the top cell of `K_{arity}`.
    pub fn top(generator: usize, arity: usize) -> Self {
        MultiIndexCell::of_face(generator, Face::top(arity))
    }

    /// The non-degenerate cell given by a face.
    pub fn of_face(generator: usize, face: Face) -> Self {
        let cell = face.cell();
        let slots = (1..=cell.factors.len())
            .map(|q| vec![true; cell.children(q).len()])
            .collect();
        MultiIndexCell {
            generator,
            face,
            slots,
            points: Vec::new(),
        }
    }

    /// Leaf intervals of the face's nodes in block order.
    pub fn nodes(&self) -> Vec<Interval> {
        self.face.cell().factors
    }

    /// Number of blocks, point factors included.
    pub fn blocks(&self) -> usize {
        self.slots.len() + self.points.len()
    }

    /// Number of inputs of block `q`.
    pub fn arity(&self, q: usize) -> usize {
        match self.slots.get(q - 1) {
            Some(s) => s.len(),
            None => self.points[q - 1 - self.slots.len()],
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.points.is_empty() || self.slots.iter().flatten().any(|kept| !kept)
    }

    /// Forgotten input positions of face block `q` (1-based positions, increasing).
    pub fn degeneracies(&self, q: usize) -> Vec<usize> {
        self.slots[q - 1]
            .iter()
            .enumerate()
            .filter(|(_, kept)| !**kept)
            .map(|(p, _)| p + 1)
            .collect()
    }

    /// The multi-index of the face blocks: `j` from the face, `n_q` counting every input slot.
    pub fn index(&self) -> MultiIndex {
        let k = self.face.key.len();
        let blocks = (0..=k)
            .map(|r| {
                let j = if r < k { self.face.key[r].0 } else { 0 };
                (j, self.slots[r].len() - 2)
            })
            .collect();
        MultiIndex { blocks }
    }

    /// Total dimension `Σ n_q` over all factors.
    pub fn dim(&self) -> usize {
        self.index().dim() + self.points.iter().map(|r| r - 2).sum::<usize>()
    }

    /// Canonical word: point factors `pt^r`, degeneracies by block with
    /// decreasing subscripts, the face in first form, then the generator.
    pub fn word(&self) -> String {
        let mut out = String::new();
        for r in &self.points {
            out.push_str(&format!("pt^{r}"));
        }
        for q in 1..=self.slots.len() {
            for j in self.degeneracies(q).into_iter().rev() {
                out.push_str(&format!("s^{q}_{j}"));
            }
        }
        if !self.face.key.is_empty() {
            out.push_str(&self.face.render());
        }
        out.push_str(&format!("x{}", self.generator));
        out
    }

    fn add_point(&mut self, r: usize) {
        if r >= 3 {
            let at = self.points.partition_point(|&x| x < r);
            self.points.insert(at, r);
        }
    }

    fn remove_point(&mut self, r: usize) {
        if r >= 3 {
            let at = self
                .points
                .iter()
                .position(|&x| x == r)
                .expect("tracked point factors belong to the cell");
            self.points.remove(at);
        }
    }
}

impl fmt::Display for MultiIndexCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

/// A factor of a cell: a node of its face or a point factor of given arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    Node(Interval),
    Point(usize),
}

fn block_of(cell: &MultiIndexCell, node: Interval) -> usize {
    cell.nodes()
        .iter()
        .position(|&x| x == node)
        .expect("tracked nodes belong to the cell")
}

fn pieces(cell: &MultiIndexCell) -> Vec<Piece> {
    let mut out: Vec<Piece> = cell.nodes().into_iter().map(Piece::Node).collect();
    out.extend(cell.points.iter().map(|&r| Piece::Point(r)));
    out
}

/// `d_{(i,ℓ)}` on one piece; returns the new cell with its inner and outer pieces.
fn face_on_piece(
    cell: &MultiIndexCell,
    piece: Piece,
    q: usize,
    i: usize,
    l: usize,
) -> Result<(MultiIndexCell, Piece, Piece)> {
    let node = match piece {
        Piece::Point(r) => {
            check_fits(q, i, l, r.saturating_sub(2))?;
            let mut out = cell.clone();
            out.remove_point(r);
            out.add_point(l + 1);
            out.add_point(r - l);
            return Ok((out, Piece::Point(l + 1), Piece::Point(r - l)));
        }
        Piece::Node(node) => node,
    };
    let p = block_of(cell, node);
    let slots = &cell.slots[p];
    check_fits(q, i, l, slots.len() - 2)?;
    let nodes = cell.nodes();
    let children = children_of(node, &nodes);
    let bracket = i..=i + l;
    let before = slots[..i].iter().filter(|k| **k).count();
    let inside = slots[bracket.clone()].iter().filter(|k| **k).count();
    let mut outer_slots = slots[..i].to_vec();
    outer_slots.push(inside >= 1);
    outer_slots.extend_from_slice(&slots[i + l + 1..]);
    let inner_slots = slots[bracket].to_vec();
    let mut out = cell.clone();
    if inside <= 1 {
        // The bracket keeps at most one input, so the inner factor is a point.
        out.slots[p] = outer_slots;
        out.add_point(l + 1);
        return Ok((out, Piece::Point(l + 1), piece));
    }
    if inside == children.len() {
        // Every kept input lies in the bracket, so the outer factor is a point.
        out.slots[p] = inner_slots;
        out.add_point(outer_slots.len());
        return Ok((out, piece, Piece::Point(outer_slots.len())));
    }
    let new_node = Interval::new(children[before].start, children[before + inside - 1].end);
    let mut set: BTreeSet<Interval> = nodes.iter().copied().collect();
    set.insert(new_node);
    let face = Face::from_tree(&Tree::from_intervals(cell.face.leaves, &set)?);
    let old: BTreeMap<Interval, &Vec<bool>> = nodes.iter().copied().zip(&cell.slots).collect();
    out.slots = face
        .cell()
        .factors
        .iter()
        .map(|iv| {
            if *iv == new_node {
                inner_slots.clone()
            } else if *iv == node {
                outer_slots.clone()
            } else {
                old[iv].clone()
            }
        })
        .collect();
    out.face = face;
    Ok((out, Piece::Node(new_node), piece))
}

/// `s_j` on one piece; returns the new cell and the grown piece.
fn degeneracy_on_piece(
    cell: &MultiIndexCell,
    piece: Piece,
    j: usize,
) -> Result<(MultiIndexCell, Piece)> {
    let arity = match piece {
        Piece::Node(node) => cell.slots[block_of(cell, node)].len(),
        Piece::Point(r) => r,
    };
    if j == 0 || j > arity + 1 {
        return Err(out_of_range("j", j, format!("1 <= j <= {}", arity + 1)));
    }
    let mut out = cell.clone();
    match piece {
        Piece::Node(node) => {
            let p = block_of(cell, node);
            out.slots[p].insert(j - 1, false);
            Ok((out, piece))
        }
        Piece::Point(r) => {
            out.remove_point(r);
            out.add_point(r + 1);
            Ok((out, Piece::Point(r + 1)))
        }
    }
}

fn piece_at(cell: &MultiIndexCell, q: usize) -> Result<Piece> {
    if q == 0 || q > cell.blocks() {
        return Err(out_of_range("q", q, format!("1 <= q <= {}", cell.blocks())));
    }
    Ok(pieces(cell)[q - 1])
}

/// `d^q_{(i,ℓ)}` applied to block `q` in first-form order.
pub fn apply_face(cell: &MultiIndexCell, q: usize, i: usize, l: usize) -> Result<MultiIndexCell> {
    let piece = piece_at(cell, q)?;
    Ok(face_on_piece(cell, piece, q, i, l)?.0)
}

/// `s^q_j`, which forgets a new input at position `j` of block `q`, `1 ≤ j ≤ n_q + 3`.
pub fn apply_degeneracy(cell: &MultiIndexCell, q: usize, j: usize) -> Result<MultiIndexCell> {
    let piece = piece_at(cell, q)?;
    Ok(degeneracy_on_piece(cell, piece, j)?.0)
}

/// One letter of an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetOp {
    Face(FaceOperator),
    Degeneracy { q: usize, j: usize },
}

impl fmt::Display for SetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetOp::Face(op) => write!(f, "{op}"),
            SetOp::Degeneracy { q, j } => write!(f, "s^{q}_{j}"),
        }
    }
}

/// Apply a word (first letter first) with relation-style block numbering.
pub fn apply_word(cell: &MultiIndexCell, ops: &[SetOp]) -> Result<MultiIndexCell> {
    Ok(apply_word_tracked(cell, ops)?.0)
}

/// [`apply_word`] that also returns the pieces in relation-style order.
///
/// Point factors of arity 2 are not stored in the cell but keep their place
/// here, so that later letters can address them.
fn apply_word_tracked(
    cell: &MultiIndexCell,
    ops: &[SetOp],
) -> Result<(MultiIndexCell, Vec<Piece>)> {
    let mut cur = cell.clone();
    let mut order = pieces(cell);
    for op in ops {
        let q = match op {
            SetOp::Face(f) => f.q,
            SetOp::Degeneracy { q, .. } => *q,
        };
        if q == 0 || q > order.len() {
            return Err(out_of_range("q", q, format!("1 <= q <= {}", order.len())));
        }
        match op {
            SetOp::Face(f) => {
                let (next, inner, outer) = face_on_piece(&cur, order[q - 1], q, f.i, f.l)?;
                cur = next;
                order.splice(q - 1..q, [inner, outer]);
            }
            SetOp::Degeneracy { j, .. } => {
                let (next, grown) = degeneracy_on_piece(&cur, order[q - 1], *j)?;
                cur = next;
                order[q - 1] = grown;
            }
        }
    }
    Ok((cur, order))
}

/// The free associahedral set on top cells of the given arities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeAssocSet {
    pub arities: Vec<usize>,
}

impl FreeAssocSet {
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if let Some(&a) = arities.iter().find(|&&a| a < 2) {
            return Err(out_of_range("arity", a, ">= 2"));
        }
        Ok(FreeAssocSet { arities })
    }

    pub fn generator(&self, g: usize) -> Result<MultiIndexCell> {
        let arity = *self
            .arities
            .get(g)
            .ok_or_else(|| out_of_range("generator", g, format!("< {}", self.arities.len())))?;
        Ok(MultiIndexCell::top(g, arity))
    }

    /// All non-degenerate cells, grouped by generator then by face.
    pub fn nondegenerate_cells(&self) -> Vec<MultiIndexCell> {
        self.arities
            .iter()
            .enumerate()
            .flat_map(|(g, &a)| {
                enumerate_all_faces(a)
                    .into_iter()
                    .map(move |f| MultiIndexCell::of_face(g, f))
            })
            .collect()
    }
}

/// A chain of cells with integer coefficients.
pub type CellChain = BTreeMap<MultiIndexCell, i64>;

/// A tensor chain of cells with integer coefficients.
pub type CellTensorChain = BTreeMap<(MultiIndexCell, MultiIndexCell), i64>;

fn add<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, c: i64) {
    let e = map.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        map.retain(|_, v| *v != 0);
    }
}

/// `Σ (−1)^{ε₁+ε₂} d^q_{(i,ℓ)}` on any cell, degenerate or not.
///
/// Faces of a point factor `K_r` are signed `(−1)^{(i+1)ℓ}`, the sign of the
/// same face on a lone block.
pub fn boundary(cell: &MultiIndexCell) -> CellChain {
    let idx = cell.index();
    let mut out = CellChain::new();
    for q in 1..=cell.blocks() {
        let m = cell.arity(q) - 2;
        for i in 0..=m {
            for l in 1..=m {
                if i + l > m + 1 {
                    break;
                }
                let sign = if q <= cell.slots.len() {
                    face_sign(&idx.sign_context(q, i, l))
                } else if ((i + 1) * l) % 2 == 0 {
                    1
                } else {
                    -1
                };
                let target = apply_face(cell, q, i, l).expect("bounds checked");
                add(&mut out, target, sign);
            }
        }
    }
    out
}

/// The normalized chain complex `C_*(𝒦)/D` of a free associahedral set, with its diagonal.
#[derive(Debug, Clone)]
pub struct NormalizedChains {
    pub set: FreeAssocSet,
    /// Non-degenerate cells, a basis of the quotient.
    pub basis: Vec<MultiIndexCell>,
}

/// `normalized_chains(S)`: the quotient by degenerate cells.
pub fn normalized_chains(set: &FreeAssocSet) -> NormalizedChains {
    NormalizedChains {
        set: set.clone(),
        basis: set.nondegenerate_cells(),
    }
}

impl NormalizedChains {
    /// The differential on a basis cell; degenerate cells map to zero.
    pub fn boundary(&self, cell: &MultiIndexCell) -> CellChain {
        if cell.is_degenerate() {
            return CellChain::new();
        }
        let mut out = boundary(cell);
        out.retain(|c, _| !c.is_degenerate());
        out
    }

    /// `Δ_𝒦` on a cell: the top-cell diagonal of every block, multiplied out.
    ///
    /// Block `q` contributes the terms of `ΔT_{n_q+2}`. A choice of one term per
    /// block gives product faces on both sides; each is built by applying the
    /// factor compositions block by block and then sorted into first-form order
    /// with the Koszul sign of the block dimensions.
    pub fn diagonal(&self, cell: &MultiIndexCell) -> Result<CellTensorChain> {
        let mut out = CellTensorChain::new();
        if cell.is_degenerate() {
            return Ok(out);
        }
        let idx = cell.index();
        let tables: Vec<Vec<(i64, Face, Face)>> = idx
            .blocks
            .iter()
            .map(|&(_, n)| {
                diagonal_terms(n)
                    .into_iter()
                    .map(|t| (t.sign * t.orientation, t.left, t.right))
                    .collect()
            })
            .collect();
        let mut pick = vec![0usize; tables.len()];
        loop {
            let chosen: Vec<&(i64, Face, Face)> =
                pick.iter().zip(&tables).map(|(&p, t)| &t[p]).collect();
            let mut sign: i64 = chosen.iter().map(|c| c.0).product();
            let mut right_dim = 0;
            let mut shuffle = 0;
            for c in &chosen {
                shuffle += right_dim * c.1.dim();
                right_dim += c.2.dim();
            }
            if shuffle % 2 == 1 {
                sign = -sign;
            }
            let (left, ls) = product_cell(cell, chosen.iter().map(|c| &c.1))?;
            let (right, rs) = product_cell(cell, chosen.iter().map(|c| &c.2))?;
            add(&mut out, (left, right), sign * ls * rs);

            let mut pos = 0;
            loop {
                if pos == pick.len() {
                    return Ok(out);
                }
                pick[pos] += 1;
                if pick[pos] < tables[pos].len() {
                    break;
                }
                pick[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `(d ⊗ 1 + 1 ⊗ d)` on a tensor chain of cells.
    pub fn tensor_boundary(&self, t: &CellTensorChain) -> CellTensorChain {
        let mut out = CellTensorChain::new();
        for ((a, b), c) in t {
            for (da, s) in self.boundary(a) {
                add(&mut out, (da, b.clone()), c * s);
            }
            let sign = if a.dim() % 2 == 0 { 1 } else { -1 };
            for (db, s) in self.boundary(b) {
                add(&mut out, (a.clone(), db), c * s * sign);
            }
        }
        out
    }

    /// `Δ_𝒦 ∘ d` minus `(d ⊗ 1 + 1 ⊗ d) ∘ Δ_𝒦` on one cell.
    pub fn chain_map_defect(&self, cell: &MultiIndexCell) -> Result<CellTensorChain> {
        let mut out = self.tensor_boundary(&self.diagonal(cell)?);
        for (f, c) in self.boundary(cell) {
            for (k, v) in self.diagonal(&f)? {
                add(&mut out, k, -c * v);
            }
        }
        Ok(out)
    }

    /// `d ∘ d` on one cell.
    pub fn square(&self, cell: &MultiIndexCell) -> CellChain {
        let mut out = CellChain::new();
        for (f, c) in self.boundary(cell) {
            for (g, s) in self.boundary(&f) {
                add(&mut out, g, c * s);
            }
        }
        out
    }
}

/// Applies one face of each block's associahedron and orients the product.
///
/// Factor faces are given in first form on their own block. Blocks are
/// processed from the root down, so insertions never renumber a block still to
/// be processed; the resulting relation-style order lists each factor's nodes
/// in its own first-form order, factor by factor.
fn product_cell<'a>(
    cell: &MultiIndexCell,
    factors: impl DoubleEndedIterator<Item = &'a Face> + ExactSizeIterator,
) -> Result<(MultiIndexCell, i64)> {
    let blocks = factors.len();
    let mut word = Vec::new();
    for (q, f) in (1..=blocks).rev().zip(factors.rev()) {
        for (r, &(i, l)) in f.key.iter().enumerate() {
            word.push(SetOp::Face(FaceOperator::new(q + r, i, l)));
        }
    }
    let (result, order) = apply_word_tracked(cell, &word)?;
    let order: Vec<Interval> = order
        .into_iter()
        .map(|x| match x {
            Piece::Node(iv) => iv,
            Piece::Point(_) => unreachable!("faces of non-degenerate cells never collapse"),
        })
        .collect();
    let canonical = result.nodes();
    let dims: Vec<usize> = order
        .iter()
        .map(|&iv| result.slots[block_of(&result, iv)].len() - 2)
        .collect();
    let rank: Vec<usize> = order
        .iter()
        .map(|iv| canonical.iter().position(|x| x == iv).expect("same nodes"))
        .collect();
    let mut inversions = 0;
    for a in 0..rank.len() {
        for b in a + 1..rank.len() {
            if dims[a] % 2 == 1 && dims[b] % 2 == 1 && rank[a] > rank[b] {
                inversions += 1;
            }
        }
    }
    Ok((result, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// The tensor chain of faces represented by a tensor chain of cells of one generator.
pub fn to_face_tensor_chain(leaves: usize, t: &CellTensorChain) -> Result<TensorChain> {
    let mut out = TensorChain::zero(leaves);
    for ((a, b), c) in t {
        out.add_term(a.face.clone(), b.face.clone(), *c)?;
    }
    Ok(out)
}

/// Compares the normalized chains of the free set on `T_{arity}` with `C_*(K_{arity})`.
///
/// Returns the number of cells compared, or the first cell whose boundary or
/// diagonal differs from the one computed on faces.
pub fn compare_with_associahedron(arity: usize) -> Result<std::result::Result<usize, String>> {
    let chains = normalized_chains(&FreeAssocSet::new(vec![arity])?);
    let mut table = DiagonalTable::new();
    for cell in &chains.basis {
        let got: BTreeMap<Face, i64> = chains
            .boundary(cell)
            .into_iter()
            .map(|(c, v)| (c.face, v))
            .collect();
        if got != boundary_face(&cell.face).terms {
            return Ok(Err(format!("boundary of {cell}")));
        }
        let delta = to_face_tensor_chain(arity, &chains.diagonal(cell)?)?;
        if delta != table.diagonal_face(&cell.face) {
            return Ok(Err(format!("diagonal of {cell}")));
        }
    }
    Ok(Ok(chains.basis.len()))
}

/// Right-hand side of the listed relation for `d^p_{(i,ℓ)} s^q_j`, as a word.
///
/// `n_q` is the excess arity of block `q` before the degeneracy. Superscripts
/// follow the relation-style numbering of [`apply_word`]. Returns `None` for
/// the four unit cases, where the composite is the identity.
pub fn degeneracy_relation(
    p: usize,
    i: usize,
    l: usize,
    q: usize,
    j: usize,
    n_q: usize,
) -> Option<Vec<SetOp>> {
    let face = |i, l| SetOp::Face(FaceOperator::new(p, i, l));
    let degen = |q, j| SetOp::Degeneracy { q, j };
    if p < q {
        return Some(vec![face(i, l), degen(q + 1, j)]);
    }
    if p > q {
        return Some(vec![face(i, l), degen(q, j)]);
    }
    let unit = (i + 1 == j && l == 1 && j < n_q + 3)
        || (i + 2 == j && l == 1 && j > 1)
        || (i == 0 && l == n_q + 1 && j == n_q + 3)
        || (i == 1 && l == n_q + 1 && j == 1);
    if unit {
        None
    } else if i + l + 1 < j {
        Some(vec![face(i, l), degen(q + 1, j - l)])
    } else if i < j && j < i + l + 2 && l > 1 {
        Some(vec![face(i, l - 1), degen(q, j - i)])
    } else if i >= j && l <= n_q {
        Some(vec![face(i - 1, l), degen(q + 1, j)])
    } else {
        unreachable!("the listed cases cover every d^{p}_({i},{l}) s^{q}_{j} with n_q = {n_q}")
    }
}

/// Counts of relation instances checked by [`check_relations`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub samples: usize,
    /// `d s` relations, unit cases included.
    pub face_degeneracy: usize,
    pub unit_cases: usize,
    pub degeneracy_degeneracy: usize,
    /// Face relations (1) to (3) on possibly degenerate cells.
    pub face_face: usize,
    /// Degenerate cells whose boundary was inspected.
    pub subcomplex: usize,
    /// Degenerate cells `s^q_j y` whose boundary contains `±2 y`.
    ///
    /// The two unit faces of `s^q_1` are `d_(0,1)` and `d_(1,n_q+1)`, and those of
    /// `s^q_{n_q+3}` are `d_(n_q+1,1)` and `d_(0,n_q+1)`. Their face signs differ
    /// by `1 + ε₂`, so the identity terms add up whenever `ε₂` is odd.
    pub subcomplex_defects: usize,
    /// Failing instances, at most ten.
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, what: String) {
        if self.failures.len() < 10 {
            self.failures.push(what);
        }
    }
}

/// Faces of `K_a` at index `a`, for `2 ≤ a ≤ max_arity`; lower entries are empty.
pub fn faces_by_arity(max_arity: usize) -> Vec<Vec<Face>> {
    (0..=max_arity.max(2))
        .map(|a| {
            if a < 2 {
                Vec::new()
            } else {
                enumerate_all_faces(a)
            }
        })
        .collect()
}

/// A random cell: a random face of `K_a` drawn from `faces` (as built by
/// [`faces_by_arity`]), up to two degeneracies, and possibly one further face,
/// which may create a point factor.
pub fn random_cell(rng: &mut ChaCha8Rng, faces: &[Vec<Face>]) -> MultiIndexCell {
    let arity = rng.gen_range(2..faces.len());
    let face = faces[arity][rng.gen_range(0..faces[arity].len())].clone();
    let mut cell = MultiIndexCell::of_face(0, face);
    for _ in 0..rng.gen_range(0..=2) {
        let q = rng.gen_range(1..=cell.blocks());
        let m = cell.arity(q) - 2;
        cell = apply_degeneracy(&cell, q, rng.gen_range(1..=m + 3)).expect("in range");
    }
    if rng.gen_bool(0.5) {
        let q = rng.gen_range(1..=cell.blocks());
        if let Some(op) = random_face_op(rng, q, cell.arity(q) - 2) {
            cell = apply_face(&cell, q, op.i, op.l).expect("in range");
        }
    }
    cell
}

fn random_face_op(rng: &mut ChaCha8Rng, q: usize, m: usize) -> Option<FaceOperator> {
    if m == 0 {
        return None;
    }
    let l = rng.gen_range(1..=m);
    let i = rng.gen_range(0..=m + 1 - l);
    Some(FaceOperator::new(q, i, l))
}

fn piece_arity(cell: &MultiIndexCell, piece: Piece) -> usize {
    match piece {
        Piece::Node(node) => cell.slots[block_of(cell, node)].len(),
        Piece::Point(r) => r,
    }
}

/// Whether `x = s^q_j y` for an outer degeneracy with `j` at either end whose two
/// unit faces carry equal signs.
fn has_unit_pair_with_odd_epsilon2(x: &MultiIndexCell, y: &MultiIndexCell) -> bool {
    let idx = x.index();
    (1..=x.slots.len()).any(|q| {
        let m = x.arity(q) - 2;
        let ends = [((0, 1), (1, m)), ((m, 1), (0, m))];
        ends.iter().any(|&((i1, l1), (i2, l2))| {
            let a = apply_face(x, q, i1, l1).ok();
            let b = apply_face(x, q, i2, l2).ok();
            a.as_ref() == Some(y)
                && b.as_ref() == Some(y)
                && face_sign(&idx.sign_context(q, i1, l1))
                    == face_sign(&idx.sign_context(q, i2, l2))
        })
    })
}

/// Checks every listed relation on `samples` random cells.
///
/// Each sample draws a cell `x` and compares canonical words of both sides of
/// one `d s` relation, one `s s` relation and every applicable face relation
/// for one random pair of faces. A degenerate `x` also has its boundary
/// checked for non-degenerate terms.
pub fn check_relations(samples: usize, seed: u64, max_arity: usize) -> Result<RelationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let faces = faces_by_arity(max_arity);
    let mut report = RelationReport {
        samples,
        ..RelationReport::default()
    };
    for _ in 0..samples {
        let x = random_cell(&mut rng, &faces);

        let q = rng.gen_range(1..=x.blocks());
        let n_q = x.arity(q) - 2;
        let j = rng.gen_range(1..=n_q + 3);
        let sx = apply_degeneracy(&x, q, j)?;
        let p = rng.gen_range(1..=sx.blocks());
        if let Some(op) = random_face_op(&mut rng, p, sx.arity(p) - 2) {
            let lhs = apply_face(&sx, p, op.i, op.l)?;
            let rhs = match degeneracy_relation(p, op.i, op.l, q, j, n_q) {
                None => {
                    report.unit_cases += 1;
                    x.clone()
                }
                Some(word) => apply_word(&x, &word)?,
            };
            report.face_degeneracy += 1;
            if lhs != rhs {
                report.fail(format!(
                    "d^{p}_({},{}) s^{q}_{j} on {x}: {lhs} against {rhs}",
                    op.i, op.l
                ));
            }
        }

        let q2 = rng.gen_range(1..=x.blocks());
        let j2 = rng.gen_range(1..=x.arity(q2) + 1);
        let (a, b) = (
            SetOp::Degeneracy { q: q2, j: j2 },
            SetOp::Degeneracy { q, j },
        );
        let rhs = if q2 != q {
            Some(vec![b, a])
        } else if j <= j2 {
            Some(vec![b, SetOp::Degeneracy { q, j: j2 + 1 }])
        } else {
            None
        };
        if let Some(rhs) = rhs {
            report.degeneracy_degeneracy += 1;
            let (l, r) = (apply_word(&x, &[a, b])?, apply_word(&x, &rhs)?);
            if l != r {
                report.fail(format!("s^{q}_{j} s^{q2}_{j2} on {x}: {l} against {r}"));
            }
        }

        let qa = rng.gen_range(1..=x.blocks());
        if let Some(fa) = random_face_op(&mut rng, qa, x.arity(qa) - 2) {
            let (ax, order) = apply_word_tracked(&x, &[SetOp::Face(fa)])?;
            let qb = rng.gen_range(1..=order.len());
            let m = piece_arity(&ax, order[qb - 1]).saturating_sub(2);
            if let Some(fb) = random_face_op(&mut rng, qb, m) {
                let lhs = apply_word(&x, &[SetOp::Face(fa), SetOp::Face(fb)])?;
                let comp = Composition::raw(x.face.leaves, vec![fa, fb]);
                for rule in [Rule::One, Rule::Two, Rule::Three, Rule::ThreePrime] {
                    if let Ok(c) = apply_relation(&comp, 0, rule) {
                        let word: Vec<SetOp> = c.ops.iter().map(|&o| SetOp::Face(o)).collect();
                        report.face_face += 1;
                        if lhs != apply_word(&x, &word)? {
                            report.fail(format!("relation ({rule}) for {fa} then {fb} on {x}"));
                        }
                    }
                }
            }
        }

        if x.is_degenerate() {
            report.subcomplex += 1;
            let bad: Vec<(MultiIndexCell, i64)> = boundary(&x)
                .into_iter()
                .filter(|(c, _)| !c.is_degenerate())
                .collect();
            match bad.as_slice() {
                [] => {}
                [(c, v)] if v.abs() == 2 && has_unit_pair_with_odd_epsilon2(&x, c) => {
                    report.subcomplex_defects += 1;
                }
                _ => report.fail(format!("d({x}) has non-degenerate terms {bad:?}")),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_block_target_inserts_before_the_root() {
        let idx = MultiIndex::top(4);
        let t = face_target_index(&idx, 1, 2, 2).unwrap();
        assert_eq!(t.blocks, vec![(2, 1), (0, 2)]);
        assert_eq!(t.dim(), 3);
    }

    #[test]
    fn invalid_indices_are_rejected() {
        assert!(MultiIndex::new(vec![(1, 2), (2, 0)]).is_err());
        assert!(MultiIndex::new(vec![(1, 2)]).is_err());
        assert!(face_target_index(&MultiIndex::top(2), 1, 2, 2).is_err());
        let cell = MultiIndexCell::top(0, 4);
        assert!(apply_degeneracy(&cell, 1, 6).is_err());
        assert!(apply_face(&cell, 2, 0, 1).is_err());
    }

    #[test]
    fn target_index_matches_the_faces_of_the_associahedron() {
        for arity in 2..=7 {
            for f in enumerate_all_faces(arity) {
                let cell = MultiIndexCell::of_face(0, f.clone());
                let idx = cell.index();
                for q in 1..=cell.blocks() {
                    let m = idx.n_at(q);
                    for i in 0..=m {
                        for l in 1..=m.min(m + 1 - i) {
                            let by_index = face_target_index(&idx, q, i, l).unwrap();
                            let by_cell = apply_face(&cell, q, i, l).unwrap().index();
                            assert_eq!(by_index, by_cell, "{f} with d^{q}_({i},{l})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unit_relations() {
        for arity in 2..=6 {
            let x = MultiIndexCell::top(0, arity);
            let n = arity - 2;
            for j in 1..=n + 3 {
                let sx = apply_degeneracy(&x, 1, j).unwrap();
                if j < n + 3 {
                    assert_eq!(apply_face(&sx, 1, j - 1, 1).unwrap(), x);
                }
                if j > 1 {
                    assert_eq!(apply_face(&sx, 1, j - 2, 1).unwrap(), x);
                }
            }
            let last = apply_degeneracy(&x, 1, n + 3).unwrap();
            assert_eq!(apply_face(&last, 1, 0, n + 1).unwrap(), x);
            let first = apply_degeneracy(&x, 1, 1).unwrap();
            assert_eq!(apply_face(&first, 1, 1, n + 1).unwrap(), x);
        }
    }

    #[test]
    fn canonical_words() {
        let x = MultiIndexCell::top(3, 4);
        let c = apply_degeneracy(&apply_degeneracy(&x, 1, 2).unwrap(), 1, 2).unwrap();
        assert_eq!(c.word(), "s^1_3s^1_2x3");
        let f = apply_face(&x, 1, 1, 1).unwrap();
        assert_eq!(f.word(), "d_(1,1)x3");
        assert_eq!(f.index().blocks, vec![(1, 0), (0, 1)]);
    }

    #[test]
    fn collapsing_a_positive_dimensional_factor_stays_degenerate() {
        let x = MultiIndexCell::top(0, 3);
        let ssx = apply_word(
            &x,
            &[
                SetOp::Degeneracy { q: 1, j: 1 },
                SetOp::Degeneracy { q: 1, j: 3 },
            ],
        )
        .unwrap();
        let y = apply_face(&ssx, 1, 0, 2).unwrap();
        assert_eq!(y.word(), "pt^3x0");
        assert!(y.is_degenerate());
        assert_eq!(y.dim(), x.dim() + 1);
        assert_eq!(apply_face(&y, 2, 0, 1).unwrap(), x);
        assert_eq!(apply_face(&y, 2, 1, 1).unwrap(), x);
    }

    #[test]
    fn relations_hold_on_random_instances() {
        let report = check_relations(10_000, 11, 7).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.samples, 10_000);
        assert!(report.unit_cases > 100, "{report:?}");
        assert!(report.face_face > 1000, "{report:?}");
        assert!(report.degeneracy_degeneracy > 1000, "{report:?}");
        assert!(report.subcomplex > 1000, "{report:?}");
        assert!(
            report.subcomplex_defects * 50 < report.subcomplex,
            "{report:?}"
        );
    }

    #[test]
    fn wrap_around_unit_faces_can_share_a_sign() {
        let y = apply_face(&MultiIndexCell::top(0, 5), 1, 0, 2).unwrap();
        let x = apply_degeneracy(&y, 2, 1).unwrap();
        let terms = boundary(&x);
        assert_eq!(terms.get(&y).map(|v| v.abs()), Some(2));
        assert!(has_unit_pair_with_odd_epsilon2(&x, &y));
        let top = apply_degeneracy(&MultiIndexCell::top(0, 5), 1, 1).unwrap();
        assert!(boundary(&top).keys().all(MultiIndexCell::is_degenerate));
    }

    #[test]
    fn a_wrong_relation_is_detected() {
        let x = MultiIndexCell::top(0, 5);
        let sx = apply_degeneracy(&x, 1, 2).unwrap();
        let lhs = apply_face(&sx, 1, 3, 1).unwrap();
        let wrong = apply_word(
            &x,
            &[
                SetOp::Face(FaceOperator::new(1, 3, 1)),
                SetOp::Degeneracy { q: 1, j: 2 },
            ],
        )
        .unwrap();
        let right = apply_word(
            &x,
            &degeneracy_relation(1, 3, 1, 1, 2, 3).expect("not a unit case"),
        )
        .unwrap();
        assert_eq!(lhs, right);
        assert_ne!(lhs, wrong);
    }

    #[test]
    fn free_set_on_one_generator_reproduces_the_associahedron() {
        for arity in 2..=6 {
            let count = compare_with_associahedron(arity).unwrap().unwrap();
            assert_eq!(count, enumerate_all_faces(arity).len());
        }
    }

    #[test]
    fn normalized_complex_has_square_zero_and_a_chain_map_diagonal() {
        let set = FreeAssocSet::new(vec![2, 3, 4, 5, 6]).unwrap();
        let chains = normalized_chains(&set);
        for cell in &chains.basis {
            assert!(chains.square(cell).is_empty(), "d² on {cell}");
            assert!(
                chains.chain_map_defect(cell).unwrap().is_empty(),
                "chain map on {cell}"
            );
        }
    }
}
