//! The cellular diagonal `Δ: C_*(K) → C_*(K) ⊗ C_*(K)`.
//!
//! On the top cell `T_{n+2}` the diagonal is a signed sum over the solutions of
//! an inequality system in the indices `(i_j, ℓ_j)` of a first-form right factor
//! and `(i′_k, ℓ′_k)` of a second-form left factor. On a general face, viewed as
//! a product of top cells (one per tree node), the diagonal is the Koszul-signed
//! tensor product of the factor diagonals reassembled into faces of the ambient
//! associahedron.
//!
//! Orientation convention: a face is the product of its nodes taken in
//! first-form order (right-to-left postorder, root last). Reassembling a
//! product of factor faces into one face therefore costs the Koszul sign of the
//! permutation that sorts the concatenated node list into first-form order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::assoc_core::face::{children_of, first_key_of, first_order};
use crate::assoc_core::{composition_orientation, Composition, Face, Interval};
use crate::chain_complex::{Chain, TensorChain};
use crate::error::{Error, Result};

/// One solution of the inequality system for `ΔT_{n+2}`.
///
/// Sequences are stored 1-based in the mathematical sense: index 0 holds the
/// boundary convention (`i_0 = i′_0 = n+1`, `ℓ_0 = ℓ′_0 = ε_0 = 0`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagonalSolution {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    /// `(i_j, ℓ_j)` for `j = 1..=p`, application order of the right factor.
    pub right: Vec<(usize, usize)>,
    /// `(i′_k, ℓ′_k)` for `k = 1..=q`, application order of the left factor.
    pub left: Vec<(usize, usize)>,
}

impl DiagonalSolution {
    /// Build from index data and check it against the system.
    pub fn new(n: usize, right: Vec<(usize, usize)>, left: Vec<(usize, usize)>) -> Result<Self> {
        let s = DiagonalSolution {
            n,
            p: right.len(),
            q: left.len(),
            right,
            left,
        };
        if s.p + s.q != n {
            return Err(Error::OutOfRange {
                what: "p + q",
                value: (s.p + s.q) as i64,
                range: format!("must equal n = {n}"),
            });
        }
        if !s.satisfies_system() {
            return Err(Error::OutOfRange {
                what: "solution",
                value: n as i64,
                range: "indices violate the inequality system".into(),
            });
        }
        Ok(s)
    }

    /// `i_r` with `i_0 = n+1` and `i_{p+1} = 0`.
    pub fn i(&self, r: usize) -> usize {
        if r == 0 {
            self.n + 1
        } else if r <= self.p {
            self.right[r - 1].0
        } else {
            0
        }
    }

    /// `ℓ_r` with `ℓ_0 = 0`.
    pub fn l(&self, r: usize) -> usize {
        if r == 0 || r > self.p {
            0
        } else {
            self.right[r - 1].1
        }
    }

    /// Partial sum `ℓ_(u)` with `ℓ_(p+1) = n+1`.
    pub fn l_sum(&self, u: usize) -> usize {
        if u > self.p {
            self.n + 1
        } else {
            (1..=u).map(|r| self.l(r)).sum()
        }
    }

    /// `i′_k` with `i′_0 = n+1` and `i′_{q+1} = 0`.
    pub fn ip(&self, k: usize) -> usize {
        if k == 0 {
            self.n + 1
        } else if k <= self.q {
            self.left[k - 1].0
        } else {
            0
        }
    }

    /// `ℓ′_k` with `ℓ′_0 = 0`.
    pub fn lp(&self, k: usize) -> usize {
        if k == 0 || k > self.q {
            0
        } else {
            self.left[k - 1].1
        }
    }

    /// Partial sum `ℓ′_(u)` with `ℓ′_(q+1) = n+1`.
    pub fn lp_sum(&self, u: usize) -> usize {
        if u > self.q {
            self.n + 1
        } else {
            (1..=u).map(|k| self.lp(k)).sum()
        }
    }

    /// `ε_u` with `ε_0 = 0` and `ε_{q+1} = n+1`.
    pub fn eps(&self, u: usize) -> usize {
        epsilons(self.n, &self.right_i())[u]
    }

    fn right_i(&self) -> Vec<usize> {
        self.right.iter().map(|&(i, _)| i).collect()
    }

    /// `o(u) = max{ r | i_r ≥ ε_u }`.
    pub fn o(&self, u: usize) -> usize {
        let e = self.eps(u);
        (0..=self.p).filter(|&r| self.i(r) >= e).max().unwrap_or(0)
    }

    /// `o′(u) = max{ r | ε_r ≤ i_u }`.
    pub fn o_prime(&self, u: usize) -> usize {
        let iu = self.i(u);
        (0..=self.q)
            .filter(|&r| self.eps(r) <= iu)
            .max()
            .unwrap_or(0)
    }

    /// `t_u = min{ r | i_r + ℓ_(r) - ℓ_(o(u)) > ε_u > i_r }`, `None` when the set is empty.
    pub fn t(&self, u: usize) -> Option<usize> {
        let e = self.eps(u);
        let lo = self.l_sum(self.o(u));
        (0..=self.p + 1).find(|&r| self.i(r) + self.l_sum(r) > e + lo && e > self.i(r))
    }

    /// Upper bound on `i′_k` from inequality (3), `None` when unconstrained.
    ///
    /// The bound may be negative, in which case no `i′_k` is admissible.
    pub fn i_prime_bound(&self, k: usize) -> Option<i64> {
        let t = self.t(k)?;
        let op = self.o_prime(t);
        let mut b = self.i(t) as i64 - self.lp_sum(op) as i64;
        for r in op + 1..k {
            b = b.min(self.ip(r) as i64);
        }
        Some(b)
    }

    /// Check the four inequality families (strictly decreasing `i_j`, room for
    /// each `ℓ_j`, the bound on `i′_k`, and `ℓ′_k` filling its gap `ε_k`).
    pub fn satisfies_system(&self) -> bool {
        let n = self.n;
        for j in 1..=self.p {
            if !(1 <= self.i(j) && self.i(j) < self.i(j - 1) && self.i(j - 1) <= n + 1) {
                return false;
            }
            if self.l(j) < 1 || self.l(j) + self.i(j) + self.l_sum(j - 1) > n + 1 {
                return false;
            }
        }
        let eps = epsilons(n, &self.right_i());
        if eps.len() != self.q + 2 {
            return false;
        }
        for (k, &eps_k) in eps.iter().enumerate().take(self.q + 1).skip(1) {
            if let Some(b) = self.i_prime_bound(k) {
                if self.ip(k) as i64 > b {
                    return false;
                }
            }
            if self.lp(k) < 1 || self.lp(k) + self.ip(k) + self.lp_sum(k - 1) != eps_k {
                return false;
            }
        }
        true
    }

    /// Left factor as a composition on `T_{n+2}` (second fundamental form).
    pub fn left_composition(&self) -> Composition {
        Composition::suppressed(self.n + 2, &self.left)
    }

    /// Right factor as a composition on `T_{n+2}` (first fundamental form).
    pub fn right_composition(&self) -> Composition {
        Composition::suppressed(self.n + 2, &self.right)
    }
}

/// `[ε_0, ε_1, …, ε_q, ε_{q+1}]` for the complement of `{i_1, …, i_p}` in `{1..n}`.
pub fn epsilons(n: usize, right_i: &[usize]) -> Vec<usize> {
    let mut v = vec![0];
    v.extend((1..=n).filter(|x| !right_i.contains(x)));
    v.push(n + 1);
    v
}

/// `(-1)^ε` with `ε = Σ i′_j(ℓ′_j + 1) + Σ (i_k + k + p + 1) ℓ_k`.
pub fn sign_epsilon(s: &DiagonalSolution) -> i64 {
    let a: usize = s.left.iter().map(|&(i, l)| i * (l + 1)).sum();
    let b: usize = s
        .right
        .iter()
        .enumerate()
        .map(|(k, &(i, l))| (i + k + 1 + s.p + 1) * l)
        .sum();
    if (a + b).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All solutions for `ΔT_{n+2}`, ordered by `p`, then right indices, then left indices.
pub fn enumerate_solutions(n: usize) -> Vec<DiagonalSolution> {
    let mut out = Vec::new();
    for p in 0..=n {
        let mut right = Vec::new();
        choose_right(n, p, &mut right, &mut out);
    }
    out
}

fn choose_right(
    n: usize,
    p: usize,
    right: &mut Vec<(usize, usize)>,
    out: &mut Vec<DiagonalSolution>,
) {
    let j = right.len();
    if j == p {
        let base = DiagonalSolution {
            n,
            p,
            q: n - p,
            right: right.clone(),
            left: Vec::new(),
        };
        let mut left = Vec::new();
        choose_left(&base, &mut left, out);
        return;
    }
    let prev_i = right.last().map(|&(i, _)| i).unwrap_or(n + 1);
    let used: usize = right.iter().map(|&(_, l)| l).sum();
    // i_j must leave room for the p - j - 1 smaller indices still to come.
    for i in (p - j..prev_i).rev() {
        if i < 1 {
            continue;
        }
        let l_max = (n + 1).saturating_sub(i + used);
        for l in 1..=l_max {
            right.push((i, l));
            choose_right(n, p, right, out);
            right.pop();
        }
    }
}

fn choose_left(
    base: &DiagonalSolution,
    left: &mut Vec<(usize, usize)>,
    out: &mut Vec<DiagonalSolution>,
) {
    let k = left.len() + 1;
    let mut partial = base.clone();
    partial.left = left.clone();
    if left.len() == base.q {
        out.push(partial);
        return;
    }
    // Indices above k are not read by the bound for step k.
    let eps_k = partial.eps(k);
    let used: usize = left.iter().map(|&(_, l)| l).sum();
    let Some(room) = eps_k.checked_sub(used + 1) else {
        return;
    };
    let cap = match bound_for(&partial, k) {
        Some(b) if b < 0 => return,
        Some(b) => (b as usize).min(room),
        None => room,
    };
    for ip in (0..=cap).rev() {
        let lp = eps_k - ip - used;
        left.push((ip, lp));
        choose_left(base, left, out);
        left.pop();
    }
}

/// Inequality (3) evaluated on a partial solution holding `i′_1..i′_{k-1}`.
fn bound_for(s: &DiagonalSolution, k: usize) -> Option<i64> {
    let t = s.t(k)?;
    let op = s.o_prime(t);
    let lp_sum: usize = (1..=op).map(|r| s.left[r - 1].1).sum();
    let mut b = s.i(t) as i64 - lp_sum as i64;
    for r in op + 1..k {
        b = b.min(s.left[r - 1].0 as i64);
    }
    Some(b)
}

/// One term of `ΔT_{n+2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalTerm {
    /// `(-1)^ε`, the coefficient of the composition pair.
    pub sign: i64,
    /// Sign converting the left composition into its canonical generator.
    pub orientation: i64,
    /// Left factor, a face given in second fundamental form by the solution.
    pub left: Face,
    /// Right factor, a face given in first fundamental form by the solution.
    pub right: Face,
    pub solution: DiagonalSolution,
}

/// Terms of `ΔT_{n+2}` in solution order.
pub fn diagonal_terms(n: usize) -> Vec<DiagonalTerm> {
    enumerate_solutions(n)
        .into_iter()
        .map(|s| {
            let left =
                Face::of_composition(&s.left_composition()).expect("solutions are admissible");
            let right = Face::from_key(n + 2, &s.right).expect("right factors are in first form");
            let orientation =
                composition_orientation(&s.left_composition()).expect("solutions are admissible");
            DiagonalTerm {
                sign: sign_epsilon(&s),
                orientation,
                left,
                right,
                solution: s,
            }
        })
        .collect()
}

/// Terms of `ΔT_{n+2}` in display order.
///
/// The two primitive terms come first (top cell on the right, then on the
/// left); the rest are sorted by `p`, then by the right key, then by the left key.
pub fn ordered_terms(n: usize) -> Vec<DiagonalTerm> {
    let mut terms = diagonal_terms(n);
    let rank = |t: &DiagonalTerm| {
        let p = t.solution.right.len();
        let primitive = if t.right.dim() == n {
            0
        } else if t.left.dim() == n {
            1
        } else {
            2
        };
        (
            primitive,
            p,
            t.solution.right.clone(),
            t.solution.left.clone(),
        )
    };
    terms.sort_by_cached_key(rank);
    terms
}

/// `ΔT_{n+2}` as a tensor chain.
pub fn diagonal_top(n: usize) -> TensorChain {
    let mut out = TensorChain::zero(n + 2);
    for t in diagonal_terms(n) {
        out.add_term(t.left, t.right, t.sign * t.orientation)
            .expect("same ambient");
    }
    out
}

/// One factor of a face viewed as a product of top cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCell {
    /// Leaf interval of the node.
    pub node: Interval,
    /// Number of inputs of the factor, so the factor is `K_{arity}`.
    pub arity: usize,
}

impl FactorCell {
    pub fn dim(&self) -> usize {
        self.arity - 2
    }
}

/// Factors of a face, one per tree node, in first-form order with the root last.
///
/// Point factors `K_2` are kept; they contribute identity legs to the diagonal.
pub fn product_decomposition(f: &Face) -> Vec<FactorCell> {
    let cell = f.cell();
    cell.factors
        .iter()
        .enumerate()
        .map(|(k, iv)| FactorCell {
            node: *iv,
            arity: cell.children(k + 1).len(),
        })
        .collect()
}

/// A top-cell term prepared for substitution into a node.
#[derive(Debug, Clone)]
struct PreparedTerm {
    sign: i64,
    left_dim: usize,
    right_dim: usize,
    /// Node intervals with node dimension, first-form order, root last.
    left_nodes: Vec<(Interval, usize)>,
    right_nodes: Vec<(Interval, usize)>,
}

fn nodes_with_dims(f: &Face) -> Vec<(Interval, usize)> {
    let cell = f.cell();
    cell.factors
        .iter()
        .enumerate()
        .map(|(k, iv)| (*iv, cell.children(k + 1).len() - 2))
        .collect()
}

/// Cache of top-cell diagonals, reused across faces.
#[derive(Debug, Clone, Default)]
pub struct DiagonalTable {
    tops: BTreeMap<usize, Vec<PreparedTerm>>,
    /// Optional corruption used by negative controls: `(arity, term index)` whose sign is flipped.
    flip: Option<(usize, usize)>,
}

impl DiagonalTable {
    pub fn new() -> Self {
        DiagonalTable::default()
    }

    /// A table whose `ΔT_{arity}` has the sign of term `index` flipped.
    ///
    /// Exists so that test harnesses can prove the chain-map check is not vacuous.
    pub fn with_flipped_sign(arity: usize, index: usize) -> Self {
        DiagonalTable {
            tops: BTreeMap::new(),
            flip: Some((arity, index)),
        }
    }

    fn prepared(&mut self, arity: usize) -> &[PreparedTerm] {
        let flip = self.flip;
        self.tops.entry(arity).or_insert_with(|| {
            diagonal_terms(arity - 2)
                .into_iter()
                .enumerate()
                .map(|(k, t)| {
                    let flipped = flip == Some((arity, k));
                    let sign = t.sign * t.orientation;
                    PreparedTerm {
                        sign: if flipped { -sign } else { sign },
                        left_dim: t.left.dim(),
                        right_dim: t.right.dim(),
                        left_nodes: nodes_with_dims(&t.left),
                        right_nodes: nodes_with_dims(&t.right),
                    }
                })
                .collect()
        })
    }

    /// `ΔT_{arity}` through the table (honours a configured corruption).
    pub fn top(&mut self, arity: usize) -> TensorChain {
        self.diagonal_face(&Face::top(arity))
    }

    /// Diagonal of one face.
    pub fn diagonal_face(&mut self, f: &Face) -> TensorChain {
        let factors = product_decomposition(f);
        let all: Vec<Interval> = f.cell().factors;
        let children: Vec<Vec<Interval>> = factors
            .iter()
            .map(|fc| children_of(fc.node, &all))
            .collect();
        for fc in &factors {
            self.prepared(fc.arity);
        }
        let tables: Vec<&[PreparedTerm]> = factors
            .iter()
            .map(|fc| self.tops[&fc.arity].as_slice())
            .collect();

        let mut out = TensorChain::zero(f.leaves);
        let mut idx = vec![0usize; factors.len()];
        loop {
            let picks: Vec<&PreparedTerm> = idx.iter().zip(&tables).map(|(&k, t)| &t[k]).collect();
            let mut sign: i64 = picks.iter().map(|p| p.sign).product();
            // (x_1⊗y_1)⊗⋯⊗(x_m⊗y_m) ↦ (x_1⊗⋯⊗x_m)⊗(y_1⊗⋯⊗y_m).
            let mut right_deg = 0usize;
            let mut shuffle = 0usize;
            for p in &picks {
                shuffle += right_deg * p.left_dim;
                right_deg += p.right_dim;
            }
            if shuffle % 2 == 1 {
                sign = -sign;
            }
            let (left, ls) = reassemble(f.leaves, &children, picks.iter().map(|p| &p.left_nodes));
            let (right, rs) = reassemble(f.leaves, &children, picks.iter().map(|p| &p.right_nodes));
            out.add_term(left, right, sign * ls * rs)
                .expect("same ambient");

            // Odometer over the factor term lists.
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < tables[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Linear extension of [`DiagonalTable::diagonal_face`].
    pub fn diagonal(&mut self, c: &Chain) -> Result<TensorChain> {
        let mut out = TensorChain::zero(c.leaves);
        for (f, coeff) in &c.terms {
            let d = self.diagonal_face(f);
            out.add_scaled(&d, *coeff)?;
        }
        Ok(out)
    }
}

/// Substitute factor faces into the nodes of a face and orient the result.
///
/// `children[k]` lists the child intervals of node `k`; each factor face lives
/// on positions `0..children[k].len()`. Returns the face and the Koszul sign of
/// sorting the concatenated node list into first-form order.
fn reassemble<'a>(
    leaves: usize,
    children: &[Vec<Interval>],
    factors: impl Iterator<Item = &'a Vec<(Interval, usize)>>,
) -> (Face, i64) {
    let mut seq: Vec<(Interval, usize)> = Vec::new();
    for (ch, nodes) in children.iter().zip(factors) {
        for &(iv, d) in nodes {
            let mapped = Interval::new(ch[iv.start].start, ch[iv.end - 1].end);
            seq.push((mapped, d));
        }
    }
    let set: BTreeSet<Interval> = seq.iter().map(|x| x.0).collect();
    let key = first_key_of(leaves, &set);
    let mut order = first_order(leaves, &set);
    order.push(Interval::new(0, leaves));
    let rank = |iv: &Interval| order.iter().position(|x| x == iv).expect("node present");
    let mut inv = 0usize;
    for a in 0..seq.len() {
        if seq[a].1.is_multiple_of(2) {
            continue;
        }
        for b in a + 1..seq.len() {
            if seq[b].1 % 2 == 1 && rank(&seq[a].0) > rank(&seq[b].0) {
                inv += 1;
            }
        }
    }
    let sign = if inv.is_multiple_of(2) { 1 } else { -1 };
    (Face { leaves, key }, sign)
}

/// Diagonal of a chain, building a fresh table.
pub fn diagonal(c: &Chain) -> Result<TensorChain> {
    DiagonalTable::new().diagonal(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(t: &TensorChain) -> Vec<String> {
        t.terms
            .iter()
            .map(|((l, r), c)| format!("{}{}⊗{}", if *c > 0 { "+" } else { "-" }, l, r))
            .collect()
    }

    #[test]
    fn term_counts() {
        assert_eq!(enumerate_solutions(0).len(), 1);
        assert_eq!(enumerate_solutions(1).len(), 2);
        assert_eq!(enumerate_solutions(2).len(), 6);
        assert_eq!(enumerate_solutions(3).len(), 22);
    }

    #[test]
    fn delta_t3() {
        let d = diagonal_top(1);
        let mut r = render(&d);
        r.sort();
        assert_eq!(r, ["+1⊗d_(1,1)", "+d_(0,1)⊗1"]);
    }

    #[test]
    fn delta_t4_solutions_have_printed_signs() {
        let want = [
            ("d_(0,1)d_(0,1)", "1", 1),
            ("1", "d_(1,1)d_(2,1)", 1),
            ("d_(0,2)", "d_(1,1)", 1),
            ("d_(0,2)", "d_(1,2)", 1),
            ("d_(1,1)", "d_(1,2)", 1),
            ("d_(0,1)", "d_(2,1)", -1),
        ];
        let terms = diagonal_terms(2);
        assert_eq!(terms.len(), 6);
        for (l, r, s) in want {
            let hit = terms
                .iter()
                .find(|t| {
                    t.solution.left_composition().render() == l
                        && t.solution.right_composition().render() == r
                })
                .unwrap_or_else(|| panic!("missing {l}⊗{r}"));
            assert_eq!(hit.sign, s, "{l}⊗{r}");
        }
    }

    #[test]
    fn solutions_satisfy_the_system() {
        for n in 0..=5 {
            for s in enumerate_solutions(n) {
                assert!(s.satisfies_system(), "{s:?}");
            }
        }
    }

    #[test]
    fn decomposition_of_small_faces() {
        let f = Face::parse(4, "d_(1,2)").unwrap();
        let arities: Vec<usize> = product_decomposition(&f).iter().map(|c| c.arity).collect();
        assert_eq!(arities, [3, 2]);
        let f = Face::parse(5, "d_(0,1)").unwrap();
        let arities: Vec<usize> = product_decomposition(&f).iter().map(|c| c.arity).collect();
        assert_eq!(arities, [2, 4]);
        assert_eq!(product_decomposition(&Face::top(6)).len(), 1);
    }

    #[test]
    fn diagonal_of_a_vertex() {
        let v = Face::from_key(5, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let d = DiagonalTable::new().diagonal_face(&v);
        assert_eq!(d.len(), 1);
        assert_eq!(d.coefficient(&v, &v), 1);
    }

    #[test]
    fn chain_map_on_every_face_through_seven_leaves() {
        use crate::assoc_core::enumerate_all_faces;
        use crate::chain_complex::{boundary_face, tensor_boundary};
        let mut table = DiagonalTable::new();
        for leaves in 2..=7 {
            for f in enumerate_all_faces(leaves) {
                let lhs = tensor_boundary(&table.diagonal_face(&f)).unwrap();
                let rhs = table.diagonal(&boundary_face(&f)).unwrap();
                assert_eq!(lhs, rhs, "face {f}");
            }
        }
    }

    #[test]
    fn chain_map_on_the_top_cell_of_k8() {
        use crate::chain_complex::{boundary_face, tensor_boundary};
        let mut table = DiagonalTable::new();
        let top = Face::top(8);
        let lhs = tensor_boundary(&table.diagonal_face(&top)).unwrap();
        let rhs = table.diagonal(&boundary_face(&top)).unwrap();
        assert_eq!(lhs, rhs);
    }

    /// `2 (3m)! / ((2m+1)! (m+1)!)` with `m = n + 1` for the top cell of `K_{n+2}`.
    fn closed_form_count(n: u128) -> u128 {
        let fact = |k: u128| (1..=k).product::<u128>();
        2 * fact(3 * n) / (fact(2 * n + 1) * fact(n + 1))
    }

    #[test]
    fn term_counts_match_the_closed_form() {
        for n in 0..=6 {
            assert_eq!(
                diagonal_terms(n).len() as u128,
                closed_form_count(n as u128 + 1),
                "n = {n}"
            );
        }
    }

    #[test]
    fn orientation_is_trivial_below_five_inputs_deep() {
        for n in 0..=4 {
            assert!(diagonal_terms(n).iter().all(|t| t.orientation == 1));
        }
        assert_eq!(
            diagonal_terms(5)
                .iter()
                .filter(|t| t.orientation == -1)
                .count(),
            4
        );
    }
}
