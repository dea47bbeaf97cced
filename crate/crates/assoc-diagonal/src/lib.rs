//! Exact combinatorics of Stasheff associahedra.
//!
//! The crate models faces of `K_{n+2}` as compositions of face operators and as
//! planar rooted trees, builds the signed cellular chain complex, computes an
//! explicit cellular diagonal `Δ: C_*(K) → C_*(K) ⊗ C_*(K)` and pushes it
//! through A∞ structures to obtain tensor-product operations.
//!
//! Module map:
//!
//! * [`assoc_core`]: faces, trees, fundamental forms, rewriting, Tamari order.
//! * [`chain_complex`]: integer chains, face signs, the boundary operator.
//! * [`diagonal`]: the inequality system, the sign `ε`, multiplicative extension.
//! * [`transfers`]: left and right transfers, the selection algorithm, facet lemmas.
//! * [`ainfinity`]: symbolic A∞ operations, `Ψⁿ`/`Φⁿ`, numeric evaluation.
//! * [`assoc_set`]: multi-indexed cells with face and degeneracy operators.
//! * [`render`]: text, LaTeX and JSON output shared by the examples and the binary.
//! * [`verify`]: the verification suites and their JSON certificate.
//!
//! The diagonal commutes with the boundary on a face of `K_5`:
//!
//! ```
//! use assoc_diagonal::assoc_core::Face;
//! use assoc_diagonal::chain_complex::{boundary_face, tensor_boundary};
//! use assoc_diagonal::diagonal::DiagonalTable;
//!
//! let f = Face::parse(5, "d_(1,2)")?;
//! let mut table = DiagonalTable::new();
//! let lhs = tensor_boundary(&table.diagonal_face(&f))?;
//! let rhs = table.diagonal(&boundary_face(&f))?;
//! assert_eq!(lhs, rhs);
//! # Ok::<(), assoc_diagonal::Error>(())
//! ```

pub mod ainfinity;
pub mod assoc_core;
pub mod assoc_set;
pub mod chain_complex;
pub mod diagonal;
pub mod error;
pub mod render;
pub mod transfers;
pub mod verify;

pub use error::{Error, Result};
