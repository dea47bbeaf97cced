//! Right and left transfers of a face, its containing facets, and the selection algorithm.
//!
//! Run with `cargo run --example transfers`.

use assoc_diagonal::assoc_core::Face;
use assoc_diagonal::diagonal::DiagonalSolution;
use assoc_diagonal::transfers::{
    common_facet, facets_by_transfer, left_transfer_first, lemma2_check, right_transfer_first,
    selection, selection_domain,
};

fn main() -> assoc_diagonal::Result<()> {
    let f = Face::parse(6, "d_(0,1)d_(1,2)d_(3,1)")?;
    let c = f.first_form();
    println!(
        "face {} of K6, first form {}",
        f.tree().to_parens(),
        c.render()
    );
    for k in 1..=c.len() {
        let right = right_transfer_first(&c, k)?;
        let left = left_transfer_first(&c, k)?;
        println!(
            "  k = {k}: right {} (facet d_{:?}), left {} (case {:?})",
            right.rewritten.render_explicit(),
            right.facet(),
            left.rewritten.render_explicit(),
            left.case,
        );
    }
    println!("containing facets: {:?}", facets_by_transfer(&f)?);

    let g = Face::parse(6, "d_(1,3)")?;
    println!(
        "a common facet of {} and {}: {:?}",
        f.render(),
        g.render(),
        common_facet(&f, &g)?
    );

    let s = DiagonalSolution::new(
        8,
        vec![(7, 1), (6, 1), (4, 2), (2, 3)],
        vec![(0, 1), (1, 1), (1, 2), (0, 4)],
    )?;
    let t: Vec<_> = (1..=4).map(|u| s.t(u)).collect();
    println!("t = {t:?}");
    for (k, m) in selection_domain(&s) {
        let state = selection(&s, k, m)?;
        let lemma = lemma2_check(&s, k, m)?;
        println!(
            "  k = {k}, m = {m}: z = {}, chain {:?}, lemma items hold: {}",
            state.z,
            state.chain,
            lemma.passed()
        );
    }
    Ok(())
}
