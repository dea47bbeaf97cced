//! Faces of associahedra as face-operator compositions and planar rooted
//! trees, with canonical rewriting, enumeration and the Tamari order.

pub mod face;
pub mod rewrite;
pub mod tamari;
pub mod tree;

pub use face::{
    all_contractions, apply_composition, comp_to_tree, composition_orientation, contraction,
    enumerate_all_faces, enumerate_faces, is_admissible, is_face_of, min_max_vertex, tree_to_comp,
    CellState, Composition, Face, FaceOperator, Form,
};
pub use rewrite::{
    apply_relation, normal_forms_along_random_orders, normalize_first, normalize_second,
    normalize_with, random_admissible, redexes, Rule, Target,
};
pub use tamari::{binary_trees, tamari_covers, tamari_leq, TamariLattice};
pub use tree::{Interval, Tree};
