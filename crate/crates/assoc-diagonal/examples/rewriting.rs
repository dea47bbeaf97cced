//! Rewriting an arbitrary admissible composition into both fundamental forms.
//!
//! Run with `cargo run --example rewriting`.

use assoc_diagonal::assoc_core::{normalize_first, normalize_second, Composition, Face};

fn main() -> assoc_diagonal::Result<()> {
    let inputs = [
        (4, "d^2_(0,1)d^1_(0,1)"),
        (4, "d^1_(0,1)d^1_(0,2)"),
        (6, "d^1_(1,1)d^2_(0,1)d^1_(2,2)"),
    ];
    for (leaves, text) in inputs {
        let c = Composition::parse(leaves, text)?;
        let first = normalize_first(&c)?;
        let second = normalize_second(&c)?;
        let face = Face::of_composition(&c)?;
        println!("{text} on K{leaves}");
        println!("  first form  {}", first.render());
        println!("  second form {}", second.render());
        println!("  tree        {}", face.tree().to_parens());
        assert_eq!(Face::of_composition(&first)?, face);
        assert_eq!(Face::of_composition(&second)?, face);
    }
    Ok(())
}
