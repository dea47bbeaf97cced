//! Symbolic and numeric A∞ calculus.
//!
//! * [`ops`]: operation symbols, positioned operations, composites, signed sums.
//! * [`tensor`]: quadratic relations, the face maps `ξ` and `ζ`, and `Ψⁿ`/`Φⁿ`.
//! * [`instance`]: finite graded modules with operation tables and exact evaluation.
//! * [`product`]: `Ψⁿ`/`Φⁿ` evaluated on the tensor product of two instances.
//! * [`bar`]: bar and cobar differentials with suspension signs.

pub mod bar;
pub mod instance;
pub mod ops;
pub mod product;
pub mod tensor;

pub use instance::{
    broken_dga, interval_dga, interval_dgc, interval_with_cubic_cell, BasisElement,
    GradedModuleInstance, Word, WordSum,
};
pub use ops::{Composite, OpExpr, OpKind, OpSymbol, PositionedOp, Side};
pub use product::{evaluate_alg, evaluate_coalg, tensor_alg_instance, tensor_coalg_instance};
pub use tensor::{
    quadratic_relation_alg, quadratic_relation_coalg, tensor_ops_alg, tensor_ops_coalg,
    xi_composition, xi_face, zeta_composition, zeta_face, Linearization, TensorOps, TensorTerm,
};
