//! The diagonal of the top cells of K3, K4 and K5, and the chain-map identity on K6.
//!
//! Run with `cargo run --example diagonal`.

use assoc_diagonal::assoc_core::enumerate_all_faces;
use assoc_diagonal::chain_complex::{boundary_face, tensor_boundary};
use assoc_diagonal::diagonal::{diagonal_terms, DiagonalTable};
use assoc_diagonal::render::{diagonal_listing, Format, Notation};

fn main() -> assoc_diagonal::Result<()> {
    for arity in 3..=4 {
        println!("ΔT{arity}:");
        print!(
            "{}",
            diagonal_listing(arity, Format::Text, Notation::Operator)?
        );
    }
    println!("ΔT5 in parenthesizations:");
    print!("{}", diagonal_listing(5, Format::Text, Notation::Parens)?);

    for n in 0..=6 {
        println!("ΔT{} has {} terms", n + 2, diagonal_terms(n).len());
    }

    let mut table = DiagonalTable::new();
    let faces = enumerate_all_faces(6);
    for f in &faces {
        let lhs = tensor_boundary(&table.diagonal_face(f))?;
        let rhs = table.diagonal(&boundary_face(f))?;
        assert_eq!(lhs, rhs, "{f}");
    }
    println!("(d⊗1 + 1⊗d)Δ = Δd on all {} faces of K6", faces.len());
    Ok(())
}
