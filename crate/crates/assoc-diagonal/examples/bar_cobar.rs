//! Bar and cobar differentials of small instances, and a broken instance that fails `d² = 0`.
//!
//! Run with `cargo run --example bar_cobar`.

use assoc_diagonal::ainfinity::bar::{bar_differential, check_square_zero, cobar_differential};
use assoc_diagonal::ainfinity::{broken_dga, interval_dga, interval_with_cubic_cell};

fn main() -> assoc_diagonal::Result<()> {
    let dga = interval_dga();
    let bar = bar_differential(&dga, 3)?;
    let report = check_square_zero(&bar)?;
    println!("bar construction of {}: {report:?}", dga.name(0));

    let coalg = interval_with_cubic_cell();
    let cobar = cobar_differential(&coalg, 3)?;
    println!(
        "cobar construction: d² = 0 is {}",
        check_square_zero(&cobar)?.passed()
    );

    let broken = broken_dga();
    let report = check_square_zero(&bar_differential(&broken, 3)?)?;
    if let Some((word, square)) = &report.counterexample {
        let names: Vec<&str> = word.iter().map(|&b| broken.name(b)).collect();
        println!(
            "broken instance: d² on {names:?} is {}",
            square.render(&broken)
        );
    }

    println!("instance file:\n{}", coalg.to_toml());
    Ok(())
}
