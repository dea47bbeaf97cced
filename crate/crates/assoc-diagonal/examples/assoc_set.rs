//! Cells of a free associahedral set: degeneracies, point factors, relations and normalized chains.
//!
//! Run with `cargo run --example assoc_set`.

use assoc_diagonal::assoc_set::{
    apply_degeneracy, apply_face, boundary, check_relations, compare_with_associahedron,
    normalized_chains, FreeAssocSet, MultiIndexCell,
};

fn main() -> assoc_diagonal::Result<()> {
    let x = MultiIndexCell::top(0, 5);
    let sx = apply_degeneracy(&x, 1, 2)?;
    println!("{x} has index {}; {sx} has index {}", x.index(), sx.index());
    println!("d_(1,1) {sx} = {}", apply_face(&sx, 1, 1, 1)?);
    println!("d_(2,1) {sx} = {}", apply_face(&sx, 1, 2, 1)?);
    println!("d_(0,2) {sx} = {}", apply_face(&sx, 1, 0, 2)?);

    println!("boundary of {sx}:");
    for (cell, coeff) in boundary(&sx) {
        println!(
            "  {coeff:+} {cell}{}",
            if cell.is_degenerate() {
                ""
            } else {
                " (non-degenerate)"
            }
        );
    }

    let report = check_relations(2000, 1, 6)?;
    println!(
        "relations on 2000 random cells: {} d∘s, {} s∘s, {} d∘d instances, {} failures",
        report.face_degeneracy,
        report.degeneracy_degeneracy,
        report.face_face,
        report.failures.len()
    );

    let set = FreeAssocSet::new(vec![3, 4, 5])?;
    let chains = normalized_chains(&set);
    println!(
        "free set on T3, T4, T5: {} non-degenerate cells",
        chains.basis.len()
    );
    for cell in &chains.basis {
        assert!(chains.square(cell).is_empty());
        assert!(chains.chain_map_defect(cell)?.is_empty());
    }
    println!("d² = 0 and Δ is a chain map on the normalized chains");

    for arity in 2..=6 {
        match compare_with_associahedron(arity)? {
            Ok(count) => println!("free set on T{arity} matches C_*(K{arity}) on {count} cells"),
            Err(what) => println!("free set on T{arity} differs: {what}"),
        }
    }
    Ok(())
}
