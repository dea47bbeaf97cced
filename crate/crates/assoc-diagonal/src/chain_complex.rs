//! Integer cellular chains on `K_{n+2}`, face signs and the boundary operator.
//!
//! A face `T^{I_k}` with first-form key `(j_1,ℓ_1), …, (j_k,ℓ_k)` is the product
//! of `k + 1` factors `K_{n_1+2} × ⋯ × K_{n_{k+1}+2}` with `n_r = ℓ_r - 1` for
//! `r ≤ k`; the last factor is the root node. Its codimension-one faces are
//! `d^q_{(i,ℓ)}(T^{I_k})` for every factor `q` and every `(i,ℓ)` fitting that
//! factor, each weighted by the sign of [`face_sign`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assoc_core::{Face, FaceOperator};
use crate::error::{Error, Result};

/// Data needed to sign the face `d^q_{(i_q,ℓ_q)}(T^{I_k})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSignContext {
    /// `(j_r, n_r)` for `r = 1..=k`, read from the type I sequence `(j_r, n_r + 1)`.
    pub blocks: Vec<(usize, usize)>,
    /// `n_{k+1}`, the excess arity of the root factor.
    pub n_last: usize,
    pub q: usize,
    pub i: usize,
    pub l: usize,
}

impl FaceSignContext {
    /// Context for applying `d^q_{(i,ℓ)}` to `face`.
    pub fn new(face: &Face, q: usize, i: usize, l: usize) -> Self {
        let blocks: Vec<(usize, usize)> = face.key.iter().map(|&(j, len)| (j, len - 1)).collect();
        let used: usize = face.key.iter().map(|&(_, len)| len).sum();
        FaceSignContext {
            blocks,
            n_last: face.n() - used,
            q,
            i,
            l,
        }
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// `n_r` for `1 ≤ r ≤ k + 1`.
    pub fn n_at(&self, r: usize) -> usize {
        if r == self.k() + 1 {
            self.n_last
        } else {
            self.blocks[r - 1].1
        }
    }

    /// `j_r` for `0 ≤ r ≤ k + 1`, with `j_0 = ∞` and `j_{k+1} = 0`.
    pub fn j_at(&self, r: usize) -> usize {
        if r == 0 {
            usize::MAX
        } else if r == self.k() + 1 {
            0
        } else {
            self.blocks[r - 1].0
        }
    }

    /// The two-variable function `j(q, r)` for `1 ≤ r ≤ q`.
    pub fn j_qr(&self, r: usize) -> usize {
        let q = self.q;
        let tail: usize = (r..q).map(|s| self.n_at(s)).sum();
        self.i + self.j_at(q) + tail + (q - r)
    }

    /// Insertion position `β` of the new node in the first-form sequence.
    pub fn beta(&self) -> usize {
        if self.q == 1 {
            return 1;
        }
        (1..=self.q)
            .filter(|&r| self.j_qr(r) <= self.j_at(r - 1))
            .max()
            .expect("r = 1 always qualifies because j_0 is infinite")
    }

    pub fn epsilon1(&self) -> usize {
        (self.i + 1) * self.l + (1..self.q).map(|s| self.n_at(s)).sum::<usize>()
    }

    pub fn epsilon2(&self) -> usize {
        let beta = self.beta();
        if beta == self.q {
            0
        } else {
            (self.l - 1) * (beta..self.q).map(|s| self.n_at(s)).sum::<usize>()
        }
    }
}

/// `(-1)^{ε₁+ε₂}` for the face described by `ctx`.
pub fn face_sign(ctx: &FaceSignContext) -> i64 {
    if (ctx.epsilon1() + ctx.epsilon2()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All codimension-one faces of `face` with their signs, in enumeration order.
pub fn signed_facets(face: &Face) -> Vec<(Face, i64)> {
    let cell = face.cell();
    let mut out = Vec::new();
    for q in 1..=cell.factors.len() {
        let n_q = cell.n(q);
        for i in 0..=n_q {
            for l in 1..=n_q {
                if i + l > n_q + 1 {
                    break;
                }
                let mut st = cell.clone();
                st.apply(FaceOperator::new(q, i, l))
                    .expect("bounds checked");
                let target = Face::from_tree(&st.tree());
                let sign = face_sign(&FaceSignContext::new(face, q, i, l));
                out.push((target, sign));
            }
        }
    }
    out
}

fn add_coeff<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, c: i64) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    let e = map.entry(key).or_insert(0);
    *e = e.checked_add(c).ok_or(Error::Overflow)?;
    Ok(())
}

fn prune<K: Ord>(map: &mut BTreeMap<K, i64>) {
    map.retain(|_, v| *v != 0);
}

/// An integer chain on `K_{leaves}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Chain {
    pub leaves: usize,
    pub terms: BTreeMap<Face, i64>,
}

impl Chain {
    pub fn zero(leaves: usize) -> Self {
        Chain {
            leaves,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_face(f: Face) -> Self {
        let mut c = Chain::zero(f.leaves);
        c.terms.insert(f, 1);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c · f`, dropping zero coefficients.
    pub fn add_term(&mut self, f: Face, c: i64) -> Result<()> {
        if f.leaves != self.leaves {
            return Err(Error::AmbientMismatch {
                left: self.leaves,
                right: f.leaves,
            });
        }
        add_coeff(&mut self.terms, f, c)?;
        prune(&mut self.terms);
        Ok(())
    }

    pub fn coefficient(&self, f: &Face) -> i64 {
        self.terms.get(f).copied().unwrap_or(0)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (face, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                write!(f, " ")?;
            }
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{face}")?;
            } else {
                write!(f, "{sign}{mag}·{face}")?;
            }
        }
        Ok(())
    }
}

/// An integer chain on `K_{leaves} × K_{leaves}` written as `left ⊗ right` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TensorChain {
    pub leaves: usize,
    #[serde(with = "pair_map")]
    pub terms: BTreeMap<(Face, Face), i64>,
}

mod pair_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::assoc_core::Face;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        left: Face,
        right: Face,
        coefficient: i64,
    }

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<(Face, Face), i64>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m
            .iter()
            .map(|((l, r), c)| Entry {
                left: l.clone(),
                right: r.clone(),
                coefficient: *c,
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<(Face, Face), i64>, D::Error> {
        let v: Vec<Entry> = Vec::deserialize(d)?;
        Ok(v.into_iter()
            .map(|e| ((e.left, e.right), e.coefficient))
            .collect())
    }
}

impl TensorChain {
    pub fn zero(leaves: usize) -> Self {
        TensorChain {
            leaves,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Face, right: Face, c: i64) -> Result<()> {
        if left.leaves != self.leaves || right.leaves != self.leaves {
            return Err(Error::AmbientMismatch {
                left: self.leaves,
                right: if left.leaves != self.leaves {
                    left.leaves
                } else {
                    right.leaves
                },
            });
        }
        let key = (left, right);
        add_coeff(&mut self.terms, key.clone(), c)?;
        if self.terms.get(&key) == Some(&0) {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Add every term of `other` scaled by `c`.
    pub fn add_scaled(&mut self, other: &TensorChain, c: i64) -> Result<()> {
        for ((l, r), v) in &other.terms {
            let s = v.checked_mul(c).ok_or(Error::Overflow)?;
            add_coeff(&mut self.terms, (l.clone(), r.clone()), s)?;
        }
        prune(&mut self.terms);
        Ok(())
    }

    pub fn coefficient(&self, left: &Face, right: &Face) -> i64 {
        self.terms
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// `self - other`.
    pub fn difference(&self, other: &TensorChain) -> Result<TensorChain> {
        let mut out = self.clone();
        out.add_scaled(other, -1)?;
        Ok(out)
    }
}

impl fmt::Display for TensorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((l, r), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let sign = if *c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{l}⊗{r}")?;
            } else {
                write!(f, "{sign}{mag}·{l}⊗{r}")?;
            }
        }
        Ok(())
    }
}

/// Boundary of a single face.
pub fn boundary_face(f: &Face) -> Chain {
    let mut out = Chain::zero(f.leaves);
    for (g, s) in signed_facets(f) {
        add_coeff(&mut out.terms, g, s).expect("unit coefficients cannot overflow");
    }
    prune(&mut out.terms);
    out
}

/// Linear extension of the signed facet sum.
pub fn boundary(c: &Chain) -> Result<Chain> {
    let mut out = Chain::zero(c.leaves);
    for (f, coeff) in &c.terms {
        for (g, s) in signed_facets(f) {
            add_coeff(
                &mut out.terms,
                g,
                s.checked_mul(*coeff).ok_or(Error::Overflow)?,
            )?;
        }
    }
    prune(&mut out.terms);
    Ok(out)
}

/// `(∂ ⊗ 1 + (-1)^{|left|} 1 ⊗ ∂)` applied to a tensor chain.
///
/// The degree of each left factor is its face dimension.
pub fn tensor_boundary(t: &TensorChain) -> Result<TensorChain> {
    let mut out = TensorChain::zero(t.leaves);
    for ((l, r), c) in &t.terms {
        for (g, s) in signed_facets(l) {
            add_coeff(&mut out.terms, (g, r.clone()), s * c)?;
        }
        let koszul = if l.dim() % 2 == 0 { 1 } else { -1 };
        for (g, s) in signed_facets(r) {
            add_coeff(&mut out.terms, (l.clone(), g), koszul * s * c)?;
        }
    }
    prune(&mut out.terms);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc_core::{enumerate_all_faces, Face};

    #[test]
    fn top_cell_signs() {
        let t4 = Face::top(4);
        let s = |i, l| face_sign(&FaceSignContext::new(&t4, 1, i, l));
        assert_eq!(s(0, 1), -1);
        assert_eq!(s(1, 2), 1);
        assert_eq!(s(0, 2), 1);
        assert_eq!(s(1, 1), 1);
        assert_eq!(s(2, 1), -1);
    }

    #[test]
    fn boundary_of_the_pentagon() {
        let b = boundary_face(&Face::top(4));
        assert_eq!(
            b.to_string(),
            "-d_(0,1) +d_(0,2) +d_(1,1) +d_(1,2) -d_(2,1)"
        );
    }

    #[test]
    fn boundary_of_a_vertex_vanishes() {
        let v = Face::from_key(4, &[(0, 1), (0, 1)]).unwrap();
        assert!(boundary_face(&v).is_zero());
    }

    #[test]
    fn boundary_squares_to_zero_through_k7() {
        for leaves in 2..=7 {
            for f in enumerate_all_faces(leaves) {
                let b = boundary(&boundary_face(&f)).unwrap();
                assert!(b.is_zero(), "d^2 of {f} on K{leaves} is {b}");
            }
        }
    }

    #[test]
    fn facet_coefficients_are_units() {
        for f in enumerate_all_faces(6) {
            assert!(boundary_face(&f).terms.values().all(|c| c.abs() == 1));
        }
    }

    #[test]
    fn tensor_boundary_of_points_is_zero() {
        let mut t = TensorChain::zero(2);
        t.add_term(Face::top(2), Face::top(2), 1).unwrap();
        assert!(tensor_boundary(&t).unwrap().is_zero());
    }

    #[test]
    fn tensor_boundary_koszul_sign() {
        let a = Face::parse(4, "d_(0,2)").unwrap();
        let b = Face::parse(4, "d_(1,1)").unwrap();
        let mut t = TensorChain::zero(4);
        t.add_term(a, b, 1).unwrap();
        let d = tensor_boundary(&t).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.terms.values().all(|c| c.abs() == 1));
    }
}
