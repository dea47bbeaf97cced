//! Quadratic relations, the face-to-operation maps `ξ` and `ζ`, and the
//! operations `Ψⁿ`, `Φⁿ` on a tensor product.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ops::{
    render_signed, superscript, Composite, OpExpr, OpKind, OpSymbol, PositionedOp, Side,
};
use crate::assoc_core::{Composition, Face};
use crate::diagonal::{ordered_terms, DiagonalTerm};
use crate::error::{out_of_range, Error, Result};

/// Left-hand side of the algebra relation at `n`:
/// `Σ (−1)^{ℓ(i+1)} φ^{n−ℓ} φ^{ℓ+1}_{i,n−ℓ−1−i}` over `0 ≤ ℓ ≤ n−1`, `0 ≤ i ≤ n−ℓ−1`.
pub fn quadratic_relation_alg(n: usize) -> Result<OpExpr> {
    quadratic_relation(OpKind::Alg, n)
}

/// Left-hand side of the coalgebra relation at `n`:
/// `Σ (−1)^{ℓ(n+i+1)} ψ^{ℓ+1}_{i,n−ℓ−1−i} ψ^{n−ℓ}`.
pub fn quadratic_relation_coalg(n: usize) -> Result<OpExpr> {
    quadratic_relation(OpKind::Coalg, n)
}

fn quadratic_relation(kind: OpKind, n: usize) -> Result<OpExpr> {
    if n == 0 {
        return Err(out_of_range("n", n, "n >= 1"));
    }
    let mut terms = Vec::new();
    for l in 0..n {
        for i in 0..n - l {
            let inner = OpSymbol::new(Side::A, kind, l + 1);
            let outer = OpSymbol::new(Side::A, kind, n - l);
            let positioned = PositionedOp::new(inner, i, n - l - 1 - i);
            let whole = PositionedOp::new(outer, 0, 0);
            let (ops, exponent) = match kind {
                OpKind::Alg => (vec![positioned, whole], l * (i + 1)),
                OpKind::Coalg => (vec![whole, positioned], l * (n + i + 1)),
            };
            terms.push((sign_of(exponent), Composite::new(ops)?));
        }
    }
    OpExpr::new(terms)
}

fn sign_of(exponent: usize) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Node decomposition of a composition with suppressed superscripts:
/// `(offset, arity)` of each non-root node in application order, and the root arity.
fn nodes(c: &Composition) -> Result<(Vec<(usize, usize)>, usize)> {
    if !c.has_suppressed_superscripts() {
        return Err(Error::Module(format!(
            "composition {} does not act on the root at every step",
            c.render_explicit()
        )));
    }
    Face::of_composition(c)?;
    let lowered: usize = c.ops.iter().map(|o| o.l).sum();
    let nodes = c.ops.iter().map(|o| (o.i, o.l + 1)).collect();
    Ok((nodes, c.ambient - lowered))
}

/// `ξ` of the face denoted by `c`, a composition acting on the root at each step.
///
/// The root operation is applied first, then the node created by the last
/// operator, and so on back to the first operator; each acts at its operator's
/// offset in the current word. The coefficient is +1.
pub fn xi_composition(c: &Composition, side: Side) -> Result<Composite> {
    let (nodes, root) = nodes(c)?;
    let mut ops = vec![PositionedOp::new(
        OpSymbol::new(side, OpKind::Coalg, root),
        0,
        0,
    )];
    let mut len = root;
    for &(i, k) in nodes.iter().rev() {
        ops.push(PositionedOp::new(
            OpSymbol::new(side, OpKind::Coalg, k),
            i,
            len - 1 - i,
        ));
        len += k - 1;
    }
    Composite::new(ops)
}

/// `ζ` of the face denoted by `c`, returned as `(sign, composite)`.
///
/// The composite reverses the one of [`xi_composition`]: the node of the
/// first operator is applied first and the root last. The top cell of `K_n`
/// carries the sign `(−1)^n`; every proper face carries +1.
pub fn zeta_composition(c: &Composition, side: Side) -> Result<(i64, Composite)> {
    let (nodes, root) = nodes(c)?;
    let mut ops = Vec::with_capacity(nodes.len() + 1);
    let mut len = c.ambient;
    for &(i, k) in &nodes {
        ops.push(PositionedOp::new(
            OpSymbol::new(side, OpKind::Alg, k),
            i,
            len - i - k,
        ));
        len -= k - 1;
    }
    ops.push(PositionedOp::new(
        OpSymbol::new(side, OpKind::Alg, root),
        0,
        0,
    ));
    let sign = if nodes.is_empty() {
        sign_of(c.ambient)
    } else {
        1
    };
    Ok((sign, Composite::new(ops)?))
}

/// Which fundamental form linearizes a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linearization {
    First,
    Second,
}

fn linearize(f: &Face, form: Linearization) -> Composition {
    match form {
        Linearization::First => f.first_form(),
        Linearization::Second => f.second_form(),
    }
}

/// `ξ` of a face, linearized by the chosen fundamental form.
pub fn xi_face(f: &Face, form: Linearization, side: Side) -> Result<Composite> {
    xi_composition(&linearize(f, form), side)
}

/// `ζ` of a face, linearized by the chosen fundamental form.
pub fn zeta_face(f: &Face, form: Linearization, side: Side) -> Result<(i64, Composite)> {
    zeta_composition(&linearize(f, form), side)
}

/// One summand `sign · (left ⊗ right)` before the shuffle `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    pub sign: i64,
    pub left: Composite,
    pub right: Composite,
}

impl TensorTerm {
    pub fn degree(&self) -> i64 {
        self.left.degree() + self.right.degree()
    }

    /// `left ⊗ right` in short notation, without the sign.
    pub fn render_body(&self) -> String {
        format!("{}⊗{}", self.left.render(), self.right.render())
    }

    pub fn render_latex_body(&self) -> String {
        format!(
            "{}\\otimes {}",
            self.left.render_latex(),
            self.right.render_latex()
        )
    }
}

/// `Ψⁿ` or `Φⁿ` on `A ⊗ B` as a shuffle-wrapped sum of tensor terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorOps {
    pub kind: OpKind,
    pub n: usize,
    pub terms: Vec<TensorTerm>,
}

impl TensorOps {
    /// Name of the operation, `Ψⁿ` or `Φⁿ`.
    pub fn name(&self) -> String {
        let letter = match self.kind {
            OpKind::Alg => "Φ",
            OpKind::Coalg => "Ψ",
        };
        format!("{letter}{}", superscript(self.n))
    }

    /// `Ψ³ = σ_{3,2}(ψ₀²ψ₀²⊗ψ³ + ψ³⊗ψ₁²ψ₀²)`; `Ψ¹` prints without the shuffle.
    pub fn render(&self) -> String {
        let body = render_signed(self.terms.iter().map(|t| (t.sign, t.render_body())));
        if self.n == 1 {
            return format!("{} = {body}", self.name());
        }
        let shuffle = match self.kind {
            OpKind::Coalg => format!("σ_{{{},2}}", self.n),
            OpKind::Alg => format!("σ_{{2,{}}}^*", self.n),
        };
        format!("{} = {shuffle}({body})", self.name())
    }

    /// One line per term, `+ left ⊗ right`.
    pub fn render_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|t| {
                format!(
                    "{} {} ⊗ {}",
                    if t.sign > 0 { "+" } else { "-" },
                    t.left.render(),
                    t.right.render()
                )
            })
            .collect()
    }

    /// LaTeX display, one term per line.
    pub fn render_latex(&self) -> String {
        let letter = match self.kind {
            OpKind::Alg => "\\Phi",
            OpKind::Coalg => "\\Psi",
        };
        let mut out = format!("{letter}^{{{}}} =", self.n);
        if self.n > 1 {
            match self.kind {
                OpKind::Coalg => out.push_str(&format!(" \\sigma_{{{},2}}", self.n)),
                OpKind::Alg => out.push_str(&format!(" \\sigma_{{2,{}}}^{{*}}", self.n)),
            }
        }
        out.push('\n');
        for t in &self.terms {
            out.push_str(&format!(
                "  {} {}\n",
                if t.sign > 0 { "+" } else { "-" },
                t.render_latex_body()
            ));
        }
        out
    }
}

impl fmt::Display for TensorOps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn leibniz(kind: OpKind) -> Result<TensorOps> {
    let op = |side| Composite::new(vec![PositionedOp::new(OpSymbol::new(side, kind, 1), 0, 0)]);
    Ok(TensorOps {
        kind,
        n: 1,
        terms: vec![
            TensorTerm {
                sign: 1,
                left: op(Side::A)?,
                right: Composite::identity(1),
            },
            TensorTerm {
                sign: 1,
                left: Composite::identity(1),
                right: op(Side::B)?,
            },
        ],
    })
}

/// `Ψⁿ`: one term per term of `ΔT_n`, with the left factor on side A through
/// its second-form composition and the right factor on side B through its
/// first-form composition.
pub fn tensor_ops_coalg(n: usize) -> Result<TensorOps> {
    tensor_ops(OpKind::Coalg, n)
}

/// `Φⁿ`, dual to [`tensor_ops_coalg`] through `ζ`.
pub fn tensor_ops_alg(n: usize) -> Result<TensorOps> {
    tensor_ops(OpKind::Alg, n)
}

fn tensor_ops(kind: OpKind, n: usize) -> Result<TensorOps> {
    match n {
        0 => Err(out_of_range("n", n, "n >= 1")),
        1 => leibniz(kind),
        _ => {
            let terms = ordered_terms(n - 2)
                .iter()
                .map(|t| tensor_term(kind, t))
                .collect::<Result<Vec<_>>>()?;
            Ok(TensorOps { kind, n, terms })
        }
    }
}

fn tensor_term(kind: OpKind, t: &DiagonalTerm) -> Result<TensorTerm> {
    let left = t.solution.left_composition();
    let right = t.solution.right_composition();
    Ok(match kind {
        OpKind::Coalg => TensorTerm {
            sign: t.sign,
            left: xi_composition(&left, Side::A)?,
            right: xi_composition(&right, Side::B)?,
        },
        OpKind::Alg => {
            let (ls, lc) = zeta_composition(&left, Side::A)?;
            let (rs, rc) = zeta_composition(&right, Side::B)?;
            TensorTerm {
                sign: t.sign * ls * rs,
                left: lc,
                right: rc,
            }
        }
    })
}
