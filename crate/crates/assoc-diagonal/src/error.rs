//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the combinatorial operations.
///
/// All operations are pure, so every error describes a malformed input rather
/// than an environmental problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A face operator does not fit the factor it is applied to.
    #[error("operator d^{q}_({i},{l}) is not admissible: {reason}")]
    Inadmissible {
        q: usize,
        i: usize,
        l: usize,
        reason: String,
    },

    /// A rewrite rule was requested at a site where its side condition fails.
    #[error("relation ({rule}) does not apply at site {site}: {reason}")]
    RelationNotApplicable {
        rule: String,
        site: usize,
        reason: String,
    },

    /// A composition was expected to be in a particular fundamental form.
    #[error("composition is not in {expected} fundamental form")]
    WrongForm { expected: &'static str },

    /// A numeric argument lies outside its documented range.
    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    /// Two objects that must live on the same associahedron do not.
    #[error("ambient mismatch: {left} leaves versus {right} leaves")]
    AmbientMismatch { left: usize, right: usize },

    /// A textual representation could not be parsed.
    #[error("cannot parse {what}: {reason}")]
    Parse { what: &'static str, reason: String },

    /// Integer overflow while accumulating coefficients.
    #[error("coefficient overflow")]
    Overflow,

    /// A graded module instance is inconsistent with the operation applied to it.
    #[error("module instance mismatch: {0}")]
    Module(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, value: usize, range: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        value: value as i64,
        range: range.into(),
    }
}
