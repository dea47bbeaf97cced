//! Runs every verification suite through K7 and prints the JSON certificate.
//!
//! Run with `cargo run --release --example verify`.

use assoc_diagonal::verify::{run, Suite};

fn main() -> assoc_diagonal::Result<()> {
    let cert = run(Suite::All, 5)?;
    for check in &cert.checks {
        println!(
            "{:<10} {:<22} n = {}  {:>6} instances  {}",
            check.suite,
            check.property,
            check.n,
            check.count,
            if check.passed { "ok" } else { "FAILED" }
        );
    }
    eprint!("{}", cert.to_json());
    std::process::exit(if cert.passed { 0 } else { 1 });
}
