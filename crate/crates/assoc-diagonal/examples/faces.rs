//! Faces of K5 in every dimension, in three notations, with facet and vertex counts.
//!
//! Run with `cargo run --example faces`.

use assoc_diagonal::assoc_core::{enumerate_faces, Face};
use assoc_diagonal::render::{face_label, Notation};

fn main() -> assoc_diagonal::Result<()> {
    let leaves = 5;
    for dim in (0..=leaves - 2).rev() {
        let faces = enumerate_faces(leaves, dim)?;
        println!("dimension {dim}: {} faces", faces.len());
        for f in &faces {
            let first = f.first_form();
            println!(
                "  {:<24} second form {:<24} {:<14} {}",
                face_label(f, &first, Notation::Operator),
                f.second_form().render(),
                face_label(f, &first, Notation::Parens),
                face_label(f, &first, Notation::Tree),
            );
        }
    }

    // A face can be entered in either fundamental form or as a parenthesization.
    let a = Face::parse(leaves, "d_(1,1)d_(2,1)")?;
    let b = Face::from_tree(&a.tree());
    assert_eq!(a, b);
    println!(
        "d_(1,1)d_(2,1) is the face {} of K{leaves}",
        a.tree().to_parens()
    );

    for n in 1..=7 {
        let facets = enumerate_faces(n + 2, n - 1)?.len();
        let vertices = enumerate_faces(n + 2, 0)?.len();
        println!("K{}: {facets} facets, {vertices} vertices", n + 2);
    }
    Ok(())
}
