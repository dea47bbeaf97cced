//! Operation symbols, positioned operations, composites and signed sums of composites.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which tensor factor an operation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

/// Algebra operations `φ^k: A^{⊗k} → A` or coalgebra operations `ψ^k: A → A^{⊗k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Alg,
    Coalg,
}

impl OpKind {
    /// Greek letter used when printing.
    pub fn letter(self) -> &'static str {
        match self {
            OpKind::Alg => "φ",
            OpKind::Coalg => "ψ",
        }
    }

    /// LaTeX command used when printing.
    pub fn latex(self) -> &'static str {
        match self {
            OpKind::Alg => "\\varphi",
            OpKind::Coalg => "\\psi",
        }
    }
}

/// One structure operation `φ^k` or `ψ^k` of degree `k − 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OpSymbol {
    pub side: Side,
    pub kind: OpKind,
    pub arity: usize,
}

impl OpSymbol {
    pub fn new(side: Side, kind: OpKind, arity: usize) -> Self {
        OpSymbol { side, kind, arity }
    }

    /// Homological degree `k − 2`.
    pub fn degree(&self) -> i64 {
        self.arity as i64 - 2
    }

    /// Number of letters consumed from the word it acts on.
    pub fn input_len(&self) -> usize {
        match self.kind {
            OpKind::Alg => self.arity,
            OpKind::Coalg => 1,
        }
    }

    /// Number of letters produced in place of the consumed ones.
    pub fn output_len(&self) -> usize {
        match self.kind {
            OpKind::Alg => 1,
            OpKind::Coalg => self.arity,
        }
    }
}

/// `1^{⊗left} ⊗ op ⊗ 1^{⊗right}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PositionedOp {
    pub symbol: OpSymbol,
    pub left: usize,
    pub right: usize,
}

impl PositionedOp {
    pub fn new(symbol: OpSymbol, left: usize, right: usize) -> Self {
        PositionedOp {
            symbol,
            left,
            right,
        }
    }

    pub fn input_len(&self) -> usize {
        self.left + self.symbol.input_len() + self.right
    }

    pub fn output_len(&self) -> usize {
        self.left + self.symbol.output_len() + self.right
    }
}

/// A composite of positioned operations; `ops[0]` is applied first.
///
/// The empty composite is the identity on words of length `width`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Composite {
    pub width: usize,
    pub ops: Vec<PositionedOp>,
}

impl Composite {
    pub fn identity(width: usize) -> Self {
        Composite {
            width,
            ops: Vec::new(),
        }
    }

    /// Builds a composite and checks that consecutive word lengths agree.
    pub fn new(ops: Vec<PositionedOp>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| {
            Error::Module("a non-identity composite needs at least one operation".into())
        })?;
        let width = first.input_len();
        let c = Composite { width, ops };
        c.check()?;
        Ok(c)
    }

    fn check(&self) -> Result<()> {
        let mut len = self.width;
        for (pos, op) in self.ops.iter().enumerate() {
            if op.input_len() != len {
                return Err(Error::Module(format!(
                    "operation {pos} expects a word of length {} but receives {len}",
                    op.input_len()
                )));
            }
            len = op.output_len();
        }
        Ok(())
    }

    pub fn input_len(&self) -> usize {
        self.width
    }

    pub fn output_len(&self) -> usize {
        self.ops.last().map_or(self.width, |op| op.output_len())
    }

    pub fn degree(&self) -> i64 {
        self.ops.iter().map(|op| op.symbol.degree()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.ops.is_empty()
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Composite) -> Result<Composite> {
        if self.output_len() != then.input_len() {
            return Err(Error::Module(format!(
                "cannot compose: output length {} against input length {}",
                self.output_len(),
                then.input_len()
            )));
        }
        let mut ops = self.ops.clone();
        ops.extend(then.ops.iter().copied());
        Ok(Composite {
            width: self.width,
            ops,
        })
    }

    /// Short notation: the last applied operation is printed leftmost, each with
    /// its left offset as subscript. A lone unshifted operation prints bare.
    pub fn render(&self) -> String {
        match self.ops.as_slice() {
            [] => "1".to_string(),
            [op] if op.left == 0 && op.right == 0 => {
                format!(
                    "{}{}",
                    op.symbol.kind.letter(),
                    superscript(op.symbol.arity)
                )
            }
            ops => ops
                .iter()
                .rev()
                .map(|op| {
                    format!(
                        "{}{}{}",
                        op.symbol.kind.letter(),
                        subscript(op.left),
                        superscript(op.symbol.arity)
                    )
                })
                .collect(),
        }
    }

    /// Notation with both offsets, `ψ^k_{i,j}`.
    pub fn render_full(&self) -> String {
        if self.ops.is_empty() {
            return "1".to_string();
        }
        self.ops
            .iter()
            .rev()
            .map(|op| {
                format!(
                    "{}^{}_{{{},{}}}",
                    op.symbol.kind.letter(),
                    op.symbol.arity,
                    op.left,
                    op.right
                )
            })
            .collect()
    }

    /// LaTeX form of [`Composite::render`].
    pub fn render_latex(&self) -> String {
        match self.ops.as_slice() {
            [] => "1".to_string(),
            [op] if op.left == 0 && op.right == 0 => {
                format!("{}^{{{}}}", op.symbol.kind.latex(), op.symbol.arity)
            }
            ops => ops
                .iter()
                .rev()
                .map(|op| {
                    format!(
                        "{}_{{{}}}^{{{}}}",
                        op.symbol.kind.latex(),
                        op.left,
                        op.symbol.arity
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A signed sum of composites with common input and output lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpExpr {
    pub terms: Vec<(i64, Composite)>,
}

impl OpExpr {
    pub fn new(terms: Vec<(i64, Composite)>) -> Result<Self> {
        if let Some((_, first)) = terms.first() {
            let shape = (first.input_len(), first.output_len(), first.degree());
            for (_, c) in &terms {
                if (c.input_len(), c.output_len(), c.degree()) != shape {
                    return Err(Error::Module(format!(
                        "inhomogeneous expression: {} against {}",
                        c.render_full(),
                        first.render_full()
                    )));
                }
            }
        }
        Ok(OpExpr { terms })
    }

    pub fn render(&self) -> String {
        render_signed(self.terms.iter().map(|(s, c)| (*s, c.render())))
    }

    pub fn render_full(&self) -> String {
        render_signed(self.terms.iter().map(|(s, c)| (*s, c.render_full())))
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Joins signed terms as `a + b − c`, printing `0` for an empty sum.
pub(crate) fn render_signed(terms: impl Iterator<Item = (i64, String)>) -> String {
    let mut out = String::new();
    for (pos, (sign, body)) in terms.enumerate() {
        let coeff = if sign.abs() == 1 {
            String::new()
        } else {
            sign.abs().to_string()
        };
        match (pos, sign < 0) {
            (0, false) => {}
            (0, true) => out.push('−'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" − "),
        }
        out.push_str(&coeff);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn digits(n: usize, table: &[char; 10]) -> String {
    n.to_string()
        .bytes()
        .map(|b| table[(b - b'0') as usize])
        .collect()
}

pub fn subscript(n: usize) -> String {
    digits(n, &SUB)
}

pub fn superscript(n: usize) -> String {
    digits(n, &SUP)
}
