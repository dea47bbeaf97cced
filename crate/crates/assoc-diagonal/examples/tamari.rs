//! The Tamari lattice on binary trees with five leaves, joins and meets, and a Graphviz export.
//!
//! Run with `cargo run --example tamari > tamari5.dot`; the summary goes to stderr.

use assoc_diagonal::assoc_core::{min_max_vertex, Face, TamariLattice};

fn main() -> assoc_diagonal::Result<()> {
    let lattice = TamariLattice::new(5);
    eprintln!(
        "{} trees, {} covers, bottom {}, top {}, lattice: {}",
        lattice.len(),
        lattice.covers.len(),
        lattice.bottom(),
        lattice.top(),
        lattice.is_lattice()
    );
    let (a, b) = (3, 7);
    eprintln!(
        "join of {} and {} is {}",
        lattice.elements[a],
        lattice.elements[b],
        lattice.elements[lattice.join(a, b).expect("lattice")]
    );
    eprintln!(
        "meet of {} and {} is {}",
        lattice.elements[a],
        lattice.elements[b],
        lattice.elements[lattice.meet(a, b).expect("lattice")]
    );

    // Every face is an interval of the order between its extreme vertices.
    let f = Face::parse(5, "d_(1,2)")?;
    let (lo, hi) = min_max_vertex(&f);
    eprintln!("face {} spans {lo} .. {hi}", f.tree().to_parens());

    print!("{}", lattice.to_dot());
    Ok(())
}
