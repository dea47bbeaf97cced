//! Text, LaTeX and JSON renderings shared by the examples and the binary.
//!
//! Every JSON document carries a `kind` tag and re-parses into the same value;
//! the schema lives in `schema/assocdiag.schema.json` at the workspace root.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ainfinity::{tensor_ops_alg, tensor_ops_coalg, OpKind, TensorOps};
use crate::assoc_core::{enumerate_faces, Composition, Face};
use crate::chain_complex::signed_facets;
use crate::diagonal::ordered_terms;
use crate::error::{Error, Result};

/// Output format of a listing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::Parse {
                what: "format",
                reason: format!("{s:?} is not one of text, json, latex"),
            }),
        }
    }
}

/// How a face is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    /// Face-operator composition, `d_(1,1)d_(2,1)`.
    Operator,
    /// Parenthesization, `(•(•(••)))`.
    Parens,
    /// Non-root nodes as half-open leaf ranges, `{[1,3) [2,4)}`.
    Tree,
}

impl FromStr for Notation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operator" => Ok(Notation::Operator),
            "parens" | "parenthesization" => Ok(Notation::Parens),
            "tree" => Ok(Notation::Tree),
            _ => Err(Error::Parse {
                what: "notation",
                reason: format!("{s:?} is not one of operator, parens, tree"),
            }),
        }
    }
}

/// A face written in the requested notation; `operator` uses the given composition.
pub fn face_label(f: &Face, c: &Composition, notation: Notation) -> String {
    match notation {
        Notation::Operator => c.render(),
        Notation::Parens => f.tree().to_parens(),
        Notation::Tree => {
            let nodes: Vec<String> = f
                .interval_set()
                .iter()
                .filter(|iv| iv.len() < f.n() + 2)
                .map(|iv| format!("[{},{})", iv.start, iv.end))
                .collect();
            format!("{{{}}}", nodes.join(" "))
        }
    }
}

/// `d_{(i_m,ℓ_m)}⋯d_{(i_1,ℓ_1)}`, or `1` for the empty composition.
pub fn composition_latex(c: &Composition) -> String {
    if c.is_empty() {
        return "1".to_string();
    }
    c.ops
        .iter()
        .rev()
        .map(|o| {
            if c.has_suppressed_superscripts() {
                format!("d_{{({},{})}}", o.i, o.l)
            } else {
                format!("d^{{{}}}_{{({},{})}}", o.q, o.i, o.l)
            }
        })
        .collect()
}

/// One signed tensor term in a chosen notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedTerm {
    pub sign: i64,
    pub left: String,
    pub right: String,
    pub notation: Notation,
}

impl RenderedTerm {
    pub fn line(&self) -> String {
        format!("{} {} ⊗ {}", sign_char(self.sign), self.left, self.right)
    }
}

fn sign_char(sign: i64) -> char {
    if sign < 0 {
        '-'
    } else {
        '+'
    }
}

/// The terms of `ΔT_{arity}` in display order, with printed signs.
pub fn diagonal_terms_rendered(arity: usize, notation: Notation) -> Result<Vec<RenderedTerm>> {
    let n = check_arity(arity)?;
    Ok(ordered_terms(n)
        .iter()
        .map(|t| RenderedTerm {
            sign: t.sign,
            left: face_label(&t.left, &t.solution.left_composition(), notation),
            right: face_label(&t.right, &t.solution.right_composition(), notation),
            notation,
        })
        .collect())
}

fn check_arity(arity: usize) -> Result<usize> {
    if arity < 2 {
        return Err(Error::OutOfRange {
            what: "arity",
            value: arity as i64,
            range: "arity >= 2".into(),
        });
    }
    Ok(arity - 2)
}

/// JSON document for a diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalDocument {
    pub kind: String,
    pub arity: usize,
    pub terms: Vec<RenderedTerm>,
}

/// `ΔT_{arity}` in the requested format.
pub fn diagonal_listing(arity: usize, format: Format, notation: Notation) -> Result<String> {
    let terms = diagonal_terms_rendered(arity, notation)?;
    Ok(match format {
        Format::Text => lines(terms.iter().map(RenderedTerm::line)),
        Format::Latex => {
            let n = check_arity(arity)?;
            lines(ordered_terms(n).iter().map(|t| {
                format!(
                    "{} {} \\otimes {}",
                    sign_char(t.sign),
                    composition_latex(&t.solution.left_composition()),
                    composition_latex(&t.solution.right_composition())
                )
            }))
        }
        Format::Json => to_json(&DiagonalDocument {
            kind: "diagonal".into(),
            arity,
            terms,
        }),
    })
}

/// JSON document for a face listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesDocument {
    pub kind: String,
    pub arity: usize,
    pub dim: usize,
    pub faces: Vec<String>,
}

/// Faces of `K_{arity}` of dimension `dim`, in first form.
pub fn faces_listing(
    arity: usize,
    dim: usize,
    format: Format,
    notation: Notation,
) -> Result<String> {
    let faces = enumerate_faces(arity, dim)?;
    Ok(match format {
        Format::Text => lines(
            faces
                .iter()
                .map(|f| face_label(f, &f.first_form(), notation)),
        ),
        Format::Latex => lines(faces.iter().map(|f| composition_latex(&f.first_form()))),
        Format::Json => to_json(&FacesDocument {
            kind: "faces".into(),
            arity,
            dim,
            faces: faces
                .iter()
                .map(|f| face_label(f, &f.first_form(), notation))
                .collect(),
        }),
    })
}

/// JSON document for a boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDocument {
    pub kind: String,
    pub arity: usize,
    pub face: String,
    pub terms: Vec<SignedFace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedFace {
    pub sign: i64,
    pub face: String,
}

/// Signed facets of a face given as a composition string.
pub fn boundary_listing(
    arity: usize,
    face: &str,
    format: Format,
    notation: Notation,
) -> Result<String> {
    let f = Face::parse(arity, face)?;
    let facets = signed_facets(&f);
    Ok(match format {
        Format::Text => lines(facets.iter().map(|(g, s)| {
            format!(
                "{} {}",
                sign_char(*s),
                face_label(g, &g.first_form(), notation)
            )
        })),
        Format::Latex => lines(
            facets
                .iter()
                .map(|(g, s)| format!("{} {}", sign_char(*s), composition_latex(&g.first_form()))),
        ),
        Format::Json => to_json(&BoundaryDocument {
            kind: "boundary".into(),
            arity,
            face: face_label(&f, &f.first_form(), notation),
            terms: facets
                .iter()
                .map(|(g, s)| SignedFace {
                    sign: *s,
                    face: face_label(g, &g.first_form(), notation),
                })
                .collect(),
        }),
    })
}

/// JSON document for tensor-product operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorOpsDocument {
    pub kind: String,
    pub side: OpKind,
    pub n: usize,
    pub terms: Vec<TensorTermDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermDocument {
    pub sign: i64,
    pub left: String,
    pub right: String,
    pub left_full: String,
    pub right_full: String,
}

/// `Ψⁿ` or `Φⁿ` in the requested format.
pub fn tensor_ops_listing(side: OpKind, n: usize, format: Format) -> Result<String> {
    let ops: TensorOps = match side {
        OpKind::Coalg => tensor_ops_coalg(n)?,
        OpKind::Alg => tensor_ops_alg(n)?,
    };
    Ok(match format {
        Format::Text => format!("{}\n", ops.render()),
        Format::Latex => ops.render_latex(),
        Format::Json => to_json(&TensorOpsDocument {
            kind: "tensor-ops".into(),
            side,
            n,
            terms: ops
                .terms
                .iter()
                .map(|t| TensorTermDocument {
                    sign: t.sign,
                    left: t.left.render(),
                    right: t.right.render(),
                    left_full: t.left.render_full(),
                    right_full: t.right.render_full(),
                })
                .collect(),
        }),
    })
}

fn lines(it: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for l in it {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents always serialize");
    s.push('\n');
    s
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Latex => "latex",
        })
    }
}
