//! Symbolic tensor-product operations Ψⁿ and Φⁿ, and their values on a tensor square.
//!
//! Run with `cargo run --example tensor_ops`.

use assoc_diagonal::ainfinity::{
    evaluate_coalg, interval_dgc, interval_with_cubic_cell, quadratic_relation_coalg,
    tensor_coalg_instance, tensor_ops_alg, tensor_ops_coalg, xi_face, zeta_face, Linearization,
    OpKind, Side,
};
use assoc_diagonal::assoc_core::Face;

fn main() -> assoc_diagonal::Result<()> {
    for n in 1..=4 {
        println!("{}", tensor_ops_coalg(n)?.render());
        println!("{}", tensor_ops_alg(n)?.render());
    }

    let f = Face::parse(5, "d_(0,1)d_(0,2)")?;
    let (sign, zeta) = zeta_face(&f, Linearization::First, Side::A)?;
    println!(
        "ξ({0}) = {1}, ζ({0}) = {2}{3}",
        f.render(),
        xi_face(&f, Linearization::First, Side::A)?,
        if sign < 0 { "−" } else { "" },
        zeta,
    );

    // On a dg coalgebra the higher operations vanish and Ψ² is the Koszul coproduct.
    let a = interval_dgc();
    let psi2 = tensor_coalg_instance(&a, &a, 2)?;
    for x in 0..psi2.rank() {
        let image = psi2.value(OpKind::Coalg, 2, &[x]);
        println!("Ψ²({}) = {}", psi2.name(x), image.render(&psi2));
    }
    let psi3 = tensor_ops_coalg(3)?;
    assert!(evaluate_coalg(&psi3, &a, &a, 0, 0)?.is_zero());

    // With a nonzero ψ³ the tensor square is a genuine A∞ coalgebra.
    let b = interval_with_cubic_cell();
    let square = tensor_coalg_instance(&b, &b, 5)?;
    for n in 1..=5 {
        let relation = quadratic_relation_coalg(n)?;
        let ok =
            (0..square.rank()).all(|x| square.evaluate(&relation, &[x]).is_ok_and(|v| v.is_zero()));
        println!(
            "relation of arity {n} on all {} basis elements: {}",
            square.rank(),
            if ok { "holds" } else { "fails" }
        );
    }
    Ok(())
}
