//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 6 and 9 compare against printed tables that contain one wrong
//! entry each. They print FAIL with the discrepancy, and the test asserts that
//! the discrepancy is exactly the recorded one and that nothing else fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use assoc_diagonal::ainfinity::{
    evaluate_coalg, interval_dgc, tensor_ops_alg, tensor_ops_coalg, GradedModuleInstance, OpKind,
    WordSum,
};
use assoc_diagonal::assoc_core::{
    enumerate_faces, normal_forms_along_random_orders, random_admissible, Face, Target,
};
use assoc_diagonal::diagonal::{DiagonalSolution, DiagonalTable};
use assoc_diagonal::transfers::selection_z;
use assoc_diagonal::verify::{self, check_chain_map, Certificate, Suite};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
}

use Outcome::{Fail, Pass};

type Criterion = (&'static str, fn() -> Outcome);

fn fixture(dir: &str, name: &str) -> String {
    let path = format!("{}/../../fixtures/{dir}/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn line_set(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Pass(format!("{detail} in {:.2} s", took.as_secs_f64()))
    } else {
        Fail(format!(
            "{detail}, but took {:.2} s (limit {} s)",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn certificate_outcome(cert: &Certificate, detail: String) -> Outcome {
    match cert.first_failure() {
        None => Pass(detail),
        Some(c) => Fail(format!(
            "{} at n = {}: {}",
            c.property,
            c.n,
            c.counterexample.as_deref().unwrap_or("")
        )),
    }
}

fn count(cert: &Certificate, property: &str) -> usize {
    cert.checks
        .iter()
        .filter(|c| c.property == property)
        .map(|c| c.count)
        .sum()
}

fn golden_diagonal() -> Outcome {
    let start = Instant::now();
    for (arity, terms) in [(3, 2), (4, 6), (5, 22)] {
        let out = Command::new(env!("CARGO_BIN_EXE_assocdiag"))
            .args(["diagonal", "--n", &arity.to_string()])
            .output()
            .expect("binary runs");
        let got = String::from_utf8(out.stdout).unwrap();
        let want = line_set(&fixture("reference", &format!("delta_t{arity}.txt")));
        if !out.status.success() || got.lines().count() != terms || line_set(&got) != want {
            return Fail(format!("ΔT{arity} differs from the table:\n{got}"));
        }
    }
    within(
        Duration::from_secs(1),
        start,
        "ΔT3, ΔT4, ΔT5 have 2, 6, 22 terms matching the tables".into(),
    )
}

fn chain_map() -> Outcome {
    let start = Instant::now();
    let checks = check_chain_map(7, DiagonalTable::new);
    let faces: usize = checks.iter().map(|c| c.count).sum();
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Fail(c.counterexample.clone().unwrap_or_default()),
        None => within(
            Duration::from_secs(60),
            start,
            format!("(d⊗1+1⊗d)Δ = Δd on all {faces} faces of K2..K9"),
        ),
    }
}

fn d_squared() -> Outcome {
    let start = Instant::now();
    let cert = verify::run(Suite::DSquare, 7).unwrap();
    if let Fail(why) = certificate_outcome(&cert, String::new()) {
        return Fail(why);
    }
    within(
        Duration::from_secs(30),
        start,
        format!(
            "∂∂ = 0 on all {} faces of K2..K9",
            count(&cert, "d-squared")
        ),
    )
}

fn catalan(m: usize) -> usize {
    (0..m).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn counting() -> Outcome {
    for n in 0..=8 {
        let vertices = enumerate_faces(n + 2, 0).unwrap().len();
        if vertices != catalan(n + 1) {
            return Fail(format!("K{}: {vertices} vertices", n + 2));
        }
        if n > 0 {
            let facets = enumerate_faces(n + 2, n - 1).unwrap().len();
            if facets != n * (n + 3) / 2 {
                return Fail(format!("K{}: {facets} facets", n + 2));
            }
        }
    }
    Pass("facet and vertex counts of K2..K10 are n(n+3)/2 and C(n+1)".into())
}

fn confluence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for ambient in 2..=9 {
        for _ in 0..1000 {
            let c = random_admissible(&mut rng, ambient);
            let oracle = Face::of_composition(&c).unwrap().first_form();
            let reached = normal_forms_along_random_orders(&c, Target::First, 3, &mut rng);
            match reached {
                Ok(r) if r == BTreeSet::from([oracle.ops.clone()]) => {}
                Ok(r) => {
                    return Fail(format!(
                        "{} reaches {} normal forms",
                        c.render_explicit(),
                        r.len()
                    ))
                }
                Err(e) => return Fail(format!("{}: {e}", c.render_explicit())),
            }
        }
    }
    Pass("1000 random compositions per ambient K2..K9 reach one first form along 4 orders".into())
}

/// The printed selection table as `(k, m, z)`.
const PRINTED_SELECTION: [(usize, usize, usize); 8] = [
    (1, 0, 5),
    (2, 0, 5),
    (3, 0, 4),
    (3, 1, 3),
    (4, 0, 5),
    (4, 1, 4),
    (4, 2, 2),
    (4, 3, 1),
];

/// The single printed row the algorithm does not reproduce: `(k, m, printed, computed)`.
const SELECTION_DISCREPANCY: (usize, usize, usize, usize) = (2, 0, 5, 4);

fn selection_table() -> Outcome {
    let s = DiagonalSolution::new(
        8,
        vec![(7, 1), (6, 1), (4, 2), (2, 3)],
        vec![(0, 1), (1, 1), (1, 2), (0, 4)],
    )
    .unwrap();
    let t: Vec<Option<usize>> = (1..=4).map(|u| s.t(u)).collect();
    if t != [Some(5), Some(4), Some(3), Some(4)] {
        return Fail(format!("t = {t:?}"));
    }
    let mut wrong = Vec::new();
    for (k, m, z) in PRINTED_SELECTION {
        let got = selection_z(&s, k, m).unwrap();
        if got != z {
            wrong.push((k, m, z, got));
        }
    }
    match wrong.as_slice() {
        [] => Pass("t = (5,4,3,4) and all eight rows match".into()),
        rows => Fail(format!(
            "t = (5,4,3,4) matches; rows differing (k, m, printed z, computed z): {rows:?}"
        )),
    }
}

fn lemma_suites() -> Outcome {
    let cert = verify::run(Suite::Lemma2, 7).unwrap();
    let pairs = cert
        .checks
        .iter()
        .filter(|c| c.property == "common-facets")
        .map(|c| (c.n, c.count))
        .collect::<Vec<_>>();
    certificate_outcome(
        &cert,
        format!(
            "lemma holds on {} (solution, k, m) for n ≤ 7; common facets (n, pairs): {pairs:?}",
            count(&cert, "selection")
        ),
    )
}

fn transfers() -> Outcome {
    let cert = verify::run(Suite::Transfers, 7).unwrap();
    certificate_outcome(
        &cert,
        format!(
            "right transfers preserve and locate facets on all {} faces of K2..K9",
            count(&cert, "right-transfers")
        ),
    )
}

/// The printed `Ψ⁵` term that cannot occur, and the generated term in its place.
const PSI5_DISCREPANCY: (&str, &str) = ("+ ψ₀³ψ₀²ψ₀² ⊗ ψ₁³ψ₀²", "+ ψ₀³ψ₀²ψ₀² ⊗ ψ₁³ψ₀³");

fn golden_tensor_ops() -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=5 {
        let got: BTreeSet<String> = tensor_ops_coalg(n)
            .unwrap()
            .render_lines()
            .into_iter()
            .collect();
        let want = line_set(&fixture("reference", &format!("psi_{n}.txt")));
        if got != want {
            let missing: Vec<_> = want.difference(&got).collect();
            let extra: Vec<_> = got.difference(&want).collect();
            notes.push(format!(
                "Ψ{n}: table has {missing:?}, generated has {extra:?}"
            ));
        }
    }
    for n in 1..=5 {
        let mut text = String::new();
        for line in tensor_ops_alg(n).unwrap().render_lines() {
            text.push_str(&line);
            text.push('\n');
        }
        if text != fixture("regression", &format!("phi_{n}.txt")) {
            notes.push(format!("Φ{n} differs from its pinned table"));
        }
    }
    if notes.is_empty() {
        Pass("Ψ1..Ψ5 match the tables and Φ1..Φ5 match the pinned tables".into())
    } else {
        Fail(notes.join("; "))
    }
}

/// `Σ (−1)^{|a''||b'|} (a'⊗b') ⊗ (a''⊗b'')`, straight from the coproducts of the factors.
fn koszul_coproduct(a: &GradedModuleInstance, x: usize, y: usize) -> WordSum {
    let mut out = WordSum::zero();
    for (wa, ca) in a.value(OpKind::Coalg, 2, &[x]).iter() {
        for (wb, cb) in a.value(OpKind::Coalg, 2, &[y]).iter() {
            let sign = if (a.degree(wa[1]) * a.degree(wb[0])) % 2 == 0 {
                1
            } else {
                -1
            };
            out.add(
                vec![wa[0] * a.rank() + wb[0], wa[1] * a.rank() + wb[1]],
                sign * ca * cb,
            );
        }
    }
    out
}

fn dgc_degeneration() -> Outcome {
    let a = interval_dgc();
    let two = tensor_ops_coalg(2).unwrap();
    for x in 0..a.rank() {
        for y in 0..a.rank() {
            if evaluate_coalg(&two, &a, &a, x, y).unwrap() != koszul_coproduct(&a, x, y) {
                return Fail(format!(
                    "Ψ2({}⊗{}) is not the Koszul coproduct",
                    a.name(x),
                    a.name(y)
                ));
            }
            for n in 3..=6 {
                let ops = tensor_ops_coalg(n).unwrap();
                if !evaluate_coalg(&ops, &a, &a, x, y).unwrap().is_zero() {
                    return Fail(format!("Ψ{n}({}⊗{}) ≠ 0", a.name(x), a.name(y)));
                }
            }
        }
    }
    Pass(format!(
        "on the {}-dimensional interval DGC, Ψ2 is the Koszul coproduct and Ψ3..Ψ6 vanish",
        a.rank()
    ))
}

fn appendix_relations() -> Outcome {
    let cert = verify::run(Suite::Appendix, 6).unwrap();
    let relations = cert
        .checks
        .iter()
        .find(|c| c.property == "relations")
        .unwrap();
    certificate_outcome(
        &cert,
        format!(
            "{} relation instances on {} random cells hold; free set on T2..T8 matches C(K) and Δ",
            relations.count,
            verify::RELATION_SAMPLES
        ),
    )
}

fn negative_control() -> Outcome {
    let checks = check_chain_map(3, || DiagonalTable::with_flipped_sign(5, 0));
    let failing: Vec<usize> = checks.iter().filter(|c| !c.passed).map(|c| c.n).collect();
    if failing == [3] {
        Pass("flipping one sign of ΔT5 breaks the chain-map identity at n = 3".into())
    } else {
        Fail(format!("corrupted diagonal fails at n = {failing:?}"))
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        ("golden diagonal", golden_diagonal),
        ("chain map", chain_map),
        ("boundary squares to zero", d_squared),
        ("face counts", counting),
        ("first-form confluence", confluence),
        ("selection table", selection_table),
        ("selection lemma and common facets", lemma_suites),
        ("transfers", transfers),
        ("golden tensor operations", golden_tensor_ops),
        ("DGC degeneration", dgc_degeneration),
        ("associahedral set relations", appendix_relations),
        ("negative control", negative_control),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Pass(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Fail(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failures.push((i + 1, why));
            }
        }
    }
    let (k, m, printed, computed) = SELECTION_DISCREPANCY;
    let expected = vec![
        (
            6,
            format!(
                "t = (5,4,3,4) matches; rows differing (k, m, printed z, computed z): \
                 [({k}, {m}, {printed}, {computed})]"
            ),
        ),
        (
            9,
            format!(
                "Ψ5: table has [{:?}], generated has [{:?}]",
                PSI5_DISCREPANCY.0, PSI5_DISCREPANCY.1
            ),
        ),
    ];
    assert_eq!(
        failures, expected,
        "only the two recorded table errors may fail"
    );
}
