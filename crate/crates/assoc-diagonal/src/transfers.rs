//! Left and right transfers, the selection algorithm and the two lemmas about
//! shared facets that drive the chain-map argument.
//!
//! A transfer moves one operator of a fundamental-form composition to an end
//! of the sequence by a prescribed chain of face relations. Each transfer here
//! is carried out step by step with [`apply_relation`], so every intermediate
//! side condition is checked and the output denotes the same face by
//! construction. Right transfers put the moved operator first in application
//! order; its lower indices then name a facet `d_(i,ℓ)(T_{n+2})` containing
//! the face.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::assoc_core::{apply_relation, Composition, Face, FaceOperator, Rule};
use crate::diagonal::DiagonalSolution;
use crate::error::{out_of_range, Error, Result};

/// Which displayed case of a transfer applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransferCase {
    A,
    B,
    C,
}

/// Output of a transfer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferResult {
    /// The rewritten composition with explicit superscripts.
    pub rewritten: Composition,
    /// The moved operator in its final position.
    pub pivot: FaceOperator,
    /// Index of the pivot in application order.
    pub pivot_index: usize,
    pub case: TransferCase,
}

impl TransferResult {
    /// Facet `(i, ℓ)` exhibited by a right transfer.
    pub fn facet(&self) -> (usize, usize) {
        (self.pivot.i, self.pivot.l)
    }
}

/// A composition plus a tracked operator, rewritten one relation at a time.
struct Walk {
    c: Composition,
    pivot: usize,
}

impl Walk {
    fn new(c: &Composition, k: usize) -> Self {
        let mut c = c.clone();
        c.form = crate::assoc_core::Form::Raw;
        Walk { c, pivot: k - 1 }
    }

    /// Apply `rule` at `site`; `pivot_after` is the pivot's new index when
    /// the step moves it.
    fn step(&mut self, site: usize, rule: Rule, pivot_after: Option<usize>) -> Result<()> {
        self.c = apply_relation(&self.c, site, rule)?;
        if let Some(p) = pivot_after {
            self.pivot = p;
        }
        Ok(())
    }

    /// Swap the operators at positions `j` and `j+1` (1-based) with `rule`,
    /// moving whatever sits at `j+1` down to `j`.
    fn swap_down(&mut self, j: usize, rule: Rule) -> Result<()> {
        let site = j - 1;
        let after = if self.pivot == site + 1 {
            Some(site)
        } else if self.pivot == site {
            Some(site + 1)
        } else {
            None
        };
        self.step(site, rule, after)
    }

    /// Relation (3) or (3′) on positions `j, j+1` with the pivot at `j`.
    fn swap_down_pivot_up(&mut self, j: usize, rule: Rule) -> Result<()> {
        debug_assert_eq!(self.pivot, j - 1);
        self.swap_down(j, rule)
    }

    fn finish(self, case: TransferCase) -> TransferResult {
        TransferResult {
            pivot: self.c.ops[self.pivot],
            pivot_index: self.pivot,
            rewritten: self.c,
            case,
        }
    }
}

fn check_k(c: &Composition, k: usize) -> Result<()> {
    if k == 0 || k > c.len() {
        return Err(out_of_range(
            "transfer index k",
            k,
            format!("1..={}", c.len()),
        ));
    }
    Ok(())
}

/// `ℓ_(u) = ℓ_1 + ⋯ + ℓ_u` on the lower indices.
fn partial(c: &Composition, u: usize) -> usize {
    c.ops[..u].iter().map(|o| o.l).sum()
}

/// Offset `i_j` (1-based).
fn i_of(c: &Composition, j: usize) -> usize {
    c.ops[j - 1].i
}

/// Block length `ℓ_j` (1-based).
fn l_of(c: &Composition, j: usize) -> usize {
    c.ops[j - 1].l
}

/// Merge the pivot, sitting at position `j+1`, with the operator below it by
/// relation (2); the pivot keeps the merged block and stays at position `j`.
fn merge_down(w: &mut Walk, j: usize) -> Result<()> {
    w.step(j - 1, Rule::Two, Some(j - 1))
}

/// Merge the pivot, sitting at position `j`, with the operator above it by
/// relation (2); the pivot becomes the inner operator at position `j+1`.
fn merge_up(w: &mut Walk, j: usize) -> Result<()> {
    w.step(j - 1, Rule::Two, Some(j))
}

/// Move the pivot from position `j` to the end by relation (1).
fn commute_to_end(w: &mut Walk, from: usize) -> Result<()> {
    let m = w.c.len();
    for j in from..m {
        w.step(j - 1, Rule::One, Some(j))?;
    }
    Ok(())
}

/// `k`-th left transfer of a first-form composition.
///
/// The `k`-th operator is moved to the end of the application order.
pub fn left_transfer_first(c: &Composition, k: usize) -> Result<TransferResult> {
    check_k(c, k)?;
    if !c.is_first_form() {
        return Err(Error::WrongForm { expected: "first" });
    }
    let m = c.len();
    let mut w = Walk::new(c, k);
    if k < m && i_of(c, k + 1) + l_of(c, k + 1) >= i_of(c, k) {
        merge_up(&mut w, k)?;
        commute_to_end(&mut w, k + 1)?;
        return Ok(w.finish(TransferCase::A));
    }
    let ik = i_of(c, k) + partial(c, k);
    let q = (k + 1..m).find(|&q| ik <= i_of(c, q + 1) + partial(c, q + 1));
    if let Some(q) = q {
        for j in k..q {
            w.swap_down_pivot_up(j, Rule::ThreePrime)?;
        }
        merge_up(&mut w, q)?;
        commute_to_end(&mut w, q + 1)?;
        return Ok(w.finish(TransferCase::B));
    }
    for j in k..m {
        w.swap_down_pivot_up(j, Rule::ThreePrime)?;
    }
    Ok(w.finish(TransferCase::C))
}

/// `k`-th left transfer of a second-form composition.
pub fn left_transfer_second(c: &Composition, k: usize) -> Result<TransferResult> {
    check_k(c, k)?;
    if !c.is_second_form() {
        return Err(Error::WrongForm { expected: "second" });
    }
    let m = c.len();
    let mut w = Walk::new(c, k);
    if k < m && i_of(c, k + 1) <= i_of(c, k) {
        merge_up(&mut w, k)?;
        commute_to_end(&mut w, k + 1)?;
        return Ok(w.finish(TransferCase::A));
    }
    let ik = i_of(c, k);
    let q = (k + 1..m).find(|&q| ik >= i_of(c, q + 1));
    if let Some(q) = q {
        for j in k..q {
            w.swap_down_pivot_up(j, Rule::Three)?;
        }
        merge_up(&mut w, q)?;
        commute_to_end(&mut w, q + 1)?;
        return Ok(w.finish(TransferCase::B));
    }
    for j in k..m {
        w.swap_down_pivot_up(j, Rule::Three)?;
    }
    Ok(w.finish(TransferCase::C))
}

/// `k`-th right transfer of a first-form composition.
///
/// The `k`-th operator is moved to the front of the application order and
/// absorbs the blocks nested inside it.
pub fn right_transfer_first(c: &Composition, k: usize) -> Result<TransferResult> {
    check_k(c, k)?;
    if !c.is_first_form() {
        return Err(Error::WrongForm { expected: "first" });
    }
    let reach = |j: usize| -> usize {
        if j == 0 {
            usize::MAX
        } else {
            i_of(c, j) + partial(c, j)
        }
    };
    let rk = reach(k);
    let p = (2..=k).rev().find(|&p| reach(p) <= rk && rk < reach(p - 1));
    right_transfer(c, k, p, Rule::ThreePrime)
}

/// `k`-th right transfer of a second-form composition.
pub fn right_transfer_second(c: &Composition, k: usize) -> Result<TransferResult> {
    check_k(c, k)?;
    if !c.is_second_form() {
        return Err(Error::WrongForm { expected: "second" });
    }
    let ik = i_of(c, k);
    let p = (2..=k)
        .rev()
        .find(|&p| i_of(c, p - 1) < ik && ik <= i_of(c, p));
    right_transfer(c, k, p, Rule::Three)
}

fn right_transfer(
    c: &Composition,
    k: usize,
    p: Option<usize>,
    swap: Rule,
) -> Result<TransferResult> {
    let mut w = Walk::new(c, k);
    match p {
        Some(p) => {
            // Bubble the operators p..=k below the operators 1..p-1.
            for (step, top) in (p..=k).enumerate() {
                let lowest = step + 1;
                for j in (lowest..top).rev() {
                    w.swap_down(j, swap)?;
                }
            }
            for j in (1..=k - p).rev() {
                merge_down(&mut w, j)?;
            }
            Ok(w.finish(TransferCase::A))
        }
        None => {
            for j in (1..k).rev() {
                merge_down(&mut w, j)?;
            }
            Ok(w.finish(TransferCase::B))
        }
    }
}

/// Facets containing a face, read off its right transfers in first form.
pub fn facets_by_transfer(f: &Face) -> Result<Vec<(usize, usize)>> {
    let c = f.first_form();
    (1..=c.len())
        .map(|k| right_transfer_first(&c, k).map(|r| r.facet()))
        .collect()
}

/// Facets containing a face, read off its right transfers in second form.
pub fn facets_by_second_transfer(f: &Face) -> Result<Vec<(usize, usize)>> {
    let c = f.second_form();
    (1..=c.len())
        .map(|k| right_transfer_second(&c, k).map(|r| r.facet()))
        .collect()
}

/// Facets `(i, ℓ)` shared by `a1` (read in first form) and `a2` (read in
/// second form), from the index conditions on pairs of right transfers.
pub fn common_facets(a1: &Face, a2: &Face) -> Result<BTreeSet<(usize, usize)>> {
    if a1.leaves != a2.leaves {
        return Err(Error::AmbientMismatch {
            left: a1.leaves,
            right: a2.leaves,
        });
    }
    let first = a1.first_form();
    let second = a2.second_form();
    let from_first: BTreeSet<(usize, usize)> = (1..=first.len())
        .map(|k| {
            let reach = |j: usize| i_of(&first, j) + partial(&first, j);
            let p = (1..k).rev().find(|&p| reach(k) < reach(p)).unwrap_or(0);
            (i_of(&first, k), partial(&first, k) - partial(&first, p))
        })
        .collect();
    let from_second: BTreeSet<(usize, usize)> = (1..=second.len())
        .map(|k| {
            let ik = i_of(&second, k);
            let p = (1..k).rev().find(|&p| i_of(&second, p) < ik).unwrap_or(0);
            (
                ik + partial(&second, p),
                partial(&second, k) - partial(&second, p),
            )
        })
        .collect();
    Ok(from_first.intersection(&from_second).copied().collect())
}

/// One facet shared by `a1` and `a2`, the least in lexicographic order.
pub fn common_facet(a1: &Face, a2: &Face) -> Result<Option<(usize, usize)>> {
    Ok(common_facets(a1, a2)?.into_iter().next())
}

/// State of the selection algorithm after it stops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionState {
    pub k: usize,
    pub m: usize,
    pub z: usize,
    /// The visited chain `k_1 = k-1`, `k_{j+1} = o′(t_{k_j})`.
    pub chain: Vec<usize>,
}

/// `ℓ′_k` including `k = q+1`, where it is `n+1-ℓ′_(q)`.
pub fn lp_ext(s: &DiagonalSolution, k: usize) -> usize {
    if k == s.q + 1 {
        s.n + 1 - s.lp_sum(s.q)
    } else {
        s.lp(k)
    }
}

/// `ℓ′_(u)` for `u ≤ q` and `ℓ′_(q+1) = n+1`.
fn lp_partial(s: &DiagonalSolution, u: usize) -> usize {
    s.lp_sum(u)
}

/// Run the selection algorithm for `1 ≤ k ≤ q+1` and `0 ≤ m < ℓ′_k`.
pub fn selection(s: &DiagonalSolution, k: usize, m: usize) -> Result<SelectionState> {
    if k == 0 || k > s.q + 1 {
        return Err(out_of_range("selection k", k, format!("1..={}", s.q + 1)));
    }
    if m >= lp_ext(s, k) {
        return Err(out_of_range(
            "selection m",
            m,
            format!("0..{}", lp_ext(s, k)),
        ));
    }
    let target = s.ip(k) + m;
    if k == 1 {
        let z = (s.p + 1).checked_sub(target).ok_or(Error::Overflow)?;
        return Ok(SelectionState {
            k,
            m,
            z,
            chain: vec![0],
        });
    }
    let stop = s.n + 2;
    let mut z = stop;
    let mut chain = vec![k - 1];
    // Each pass strictly lowers k_j, so q+1 passes always suffice.
    for _ in 0..=s.q + 1 {
        let kj = *chain.last().expect("nonempty");
        if kj == 0 {
            // Same rule as the k = 1 branch: the lowest right offsets are
            // consecutive, so z is the index with i_z = i′_k + m.
            z = (1..=s.p + 1)
                .find(|&r| s.i(r) == target)
                .ok_or_else(|| Error::OutOfRange {
                    what: "selection value i_z",
                    value: target as i64,
                    range: "no right index takes this value".into(),
                })?;
            return Ok(SelectionState { k, m, z, chain });
        }
        let t = s.t(kj);
        let next = t.map(|t| s.o_prime(t));
        // The value test takes precedence when both tests fire in one pass.
        if s.ip(kj) < target {
            let value = s.eps(kj) + target - s.ip(kj);
            z = (1..=s.p + 1)
                .find(|&r| s.i(r) == value)
                .ok_or_else(|| Error::OutOfRange {
                    what: "selection value i_z",
                    value: value as i64,
                    range: "no right index takes this value".into(),
                })?;
        } else if let (Some(t), Some(next)) = (t, next) {
            if s.i(t) == target + lp_partial(s, next) {
                z = t;
            }
        }
        if z < stop {
            return Ok(SelectionState { k, m, z, chain });
        }
        match next {
            Some(nx) if nx < kj => chain.push(nx),
            _ => break,
        }
    }
    Err(Error::OutOfRange {
        what: "selection algorithm",
        value: k as i64,
        range: "did not terminate".into(),
    })
}

/// `z` from the selection algorithm.
pub fn selection_z(s: &DiagonalSolution, k: usize, m: usize) -> Result<usize> {
    selection(s, k, m).map(|st| st.z)
}

/// Outcome of checking the items of the selection lemma at one `(k, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub k: usize,
    pub m: usize,
    pub z: usize,
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    /// `None` when the hypothesis of item (e) does not hold.
    pub e: Option<bool>,
}

impl Lemma2Report {
    pub fn passed(&self) -> bool {
        self.a && self.b && self.c && self.d && self.e.unwrap_or(true)
    }
}

/// Evaluate items (a) to (e) of the selection lemma.
pub fn lemma2_check(s: &DiagonalSolution, k: usize, m: usize) -> Result<Lemma2Report> {
    let z = selection_z(s, k, m)?;
    let target = s.ip(k) + m;
    let ok = s.o(k);
    let reach_z = s.i(z) + s.l_sum(z);
    let a = z > ok;
    let b = reach_z >= s.eps(k) + s.l_sum(ok);
    let opz = s.o_prime(z);
    let c = s.i(z) >= lp_partial(s, opz) && target == s.i(z) - lp_partial(s, opz);
    let d = (opz + 1..k).all(|r| target <= s.ip(r));
    let bound = s.i_prime_bound(k);
    let e = match bound {
        Some(b) if (target as i64) > b => {
            let tk = s.t(k).expect("bound exists");
            let e1 = z < tk && reach_z == s.eps(k) + s.l_sum(ok);
            let e2 = (0..z).filter(|&r| s.i(r) + s.l_sum(r) > reach_z).max() == Some(ok);
            let e3 = (0..k).filter(|&r| s.ip(r) < target).max().unwrap_or(0) == opz;
            Some(e1 && e2 && e3)
        }
        _ => None,
    };
    Ok(Lemma2Report {
        k,
        m,
        z,
        a,
        b,
        c,
        d,
        e,
    })
}

/// Every `(k, m)` pair the selection lemma speaks about.
pub fn selection_domain(s: &DiagonalSolution) -> Vec<(usize, usize)> {
    (1..=s.q + 1)
        .flat_map(|k| (0..lp_ext(s, k)).map(move |m| (k, m)))
        .collect()
}
