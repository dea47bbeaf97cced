//! The signed cellular boundary on K6 and a check that it squares to zero.
//!
//! Run with `cargo run --example boundary`.

use assoc_diagonal::assoc_core::{enumerate_all_faces, Face};
use assoc_diagonal::chain_complex::{boundary, boundary_face, signed_facets};

fn main() -> assoc_diagonal::Result<()> {
    let f = Face::parse(6, "d_(1,2)")?;
    println!("boundary of {} in K6:", f.render());
    for (g, sign) in signed_facets(&f) {
        println!("  {:+} {}", sign, g.render());
    }

    let top = Face::top(6);
    println!(
        "the top cell of K6 has {} facets",
        boundary_face(&top).len()
    );

    let faces = enumerate_all_faces(6);
    for face in &faces {
        assert!(boundary(&boundary_face(face))?.is_zero(), "{face}");
    }
    println!("∂∂ = 0 on all {} faces of K6", faces.len());
    Ok(())
}
