//! `Φ¹…Φ⁵` pinned against files under `fixtures/regression/`.
//!
//! No printed table exists for the algebra side, so these files record the
//! generated operations. Set `ASSOCDIAG_BLESS=1` to rewrite them after an
//! intended change.

use assoc_diagonal::ainfinity::{tensor_ops_alg, tensor_ops_coalg};

fn path(n: usize) -> String {
    format!(
        "{}/../../fixtures/regression/phi_{n}.txt",
        env!("CARGO_MANIFEST_DIR")
    )
}

fn generated(n: usize) -> String {
    let mut out = String::new();
    for line in tensor_ops_alg(n).unwrap().render_lines() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[test]
fn phi_matches_the_pinned_tables() {
    for n in 1..=5 {
        let text = generated(n);
        if std::env::var_os("ASSOCDIAG_BLESS").is_some() {
            std::fs::write(path(n), &text).unwrap();
        }
        let pinned =
            std::fs::read_to_string(path(n)).unwrap_or_else(|e| panic!("{}: {e}", path(n)));
        assert_eq!(text, pinned, "n = {n}");
    }
}

#[test]
fn phi_has_as_many_terms_as_psi() {
    for n in 1..=6 {
        assert_eq!(
            tensor_ops_alg(n).unwrap().terms.len(),
            tensor_ops_coalg(n).unwrap().terms.len(),
            "n = {n}"
        );
    }
}
