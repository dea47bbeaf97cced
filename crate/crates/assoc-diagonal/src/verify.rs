//! Verification suites behind `assocdiag verify`.
//!
//! Each suite checks one family of identities exhaustively (or on seeded random
//! samples where exhaustion is out of reach) and reports one [`Check`] per
//! property and size. Per-face work fans out over a rayon pool; results are
//! gathered in enumeration order, so the reported counterexample is always the
//! first one in that order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assoc_core::{enumerate_all_faces, enumerate_faces, is_face_of, Face};
use crate::assoc_set::{check_relations, compare_with_associahedron};
use crate::chain_complex::{boundary, boundary_face, tensor_boundary};
use crate::diagonal::{enumerate_solutions, DiagonalTable};
use crate::error::{out_of_range, Error, Result};
use crate::transfers::{
    common_facets, facets_by_transfer, lemma2_check, right_transfer_first, selection_domain,
};

/// Largest `n` accepted by [`run`]; the suites then reach `K_{n+2} = K_9`.
pub const MAX_N: usize = 7;

/// Random pairs of faces per ambient in the common-facet check.
pub const COMMON_FACET_SAMPLES: usize = 10_000;

/// Random instances in the relation check of the appendix suite.
pub const RELATION_SAMPLES: usize = 10_000;

/// A selectable group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    ChainMap,
    DSquare,
    Transfers,
    Lemma2,
    Appendix,
}

impl Suite {
    pub const EVERY: [Suite; 5] = [
        Suite::ChainMap,
        Suite::DSquare,
        Suite::Transfers,
        Suite::Lemma2,
        Suite::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::ChainMap => "chainmap",
            Suite::DSquare => "dsquare",
            Suite::Transfers => "transfers",
            Suite::Lemma2 => "lemma2",
            Suite::Appendix => "appendix",
        }
    }

    /// The concrete suites selected by `self`.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EVERY.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::EVERY)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "suite",
                reason: format!(
                    "{s:?} is not one of all, chainmap, dsquare, transfers, lemma2, appendix"
                ),
            })
    }
}

/// One checked property at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub property: String,
    /// The `n` of `K_{n+2}`.
    pub n: usize,
    /// Number of instances checked.
    pub count: usize,
    pub passed: bool,
    /// The first failing instance, in enumeration order.
    pub counterexample: Option<String>,
    /// A measured side observation that does not affect `passed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn new(suite: Suite, property: &str, n: usize, count: usize, failure: Option<String>) -> Self {
        Check {
            suite,
            property: property.to_string(),
            n,
            count,
            passed: failure.is_none(),
            counterexample: failure,
            note: None,
        }
    }
}

/// The JSON certificate printed by `assocdiag verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub suites: Vec<Suite>,
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Certificate {
    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates always serialize");
        s.push('\n');
        s
    }
}

/// Runs `suite` on `K_{n+2}` for every `n ≤ max_n`.
pub fn run(suite: Suite, max_n: usize) -> Result<Certificate> {
    run_with_table(suite, max_n, DiagonalTable::new)
}

/// [`run`], with the chain-map suite using diagonal tables built by `make_table`.
pub fn run_with_table<F>(suite: Suite, max_n: usize, make_table: F) -> Result<Certificate>
where
    F: Fn() -> DiagonalTable + Sync + Send,
{
    if max_n > MAX_N {
        return Err(out_of_range("max-n", max_n, format!("0..={MAX_N}")));
    }
    let suites = suite.expand();
    let mut checks = Vec::new();
    for &s in &suites {
        checks.extend(match s {
            Suite::ChainMap => check_chain_map(max_n, &make_table),
            Suite::DSquare => check_d_squared(max_n)?,
            Suite::Transfers => check_transfers(max_n)?,
            Suite::Lemma2 => check_lemma2(max_n)?,
            Suite::Appendix => check_appendix(max_n)?,
            Suite::All => unreachable!("expanded above"),
        });
    }
    Ok(Certificate {
        kind: "certificate".into(),
        passed: checks.iter().all(|c| c.passed),
        suites,
        max_n,
        checks,
    })
}

/// The first `Some` of a list computed in enumeration order.
fn first_failure(results: Vec<Option<String>>) -> Option<String> {
    results.into_iter().flatten().next()
}

/// `(d⊗1 + 1⊗d)Δ = Δd` on every face, with diagonals from tables built by `make_table`.
///
/// Each rayon worker builds its own table, so a corrupted table can be passed
/// in to show that the check detects a wrong sign.
pub fn check_chain_map<F>(max_n: usize, make_table: F) -> Vec<Check>
where
    F: Fn() -> DiagonalTable + Sync + Send,
{
    (0..=max_n)
        .map(|n| {
            let faces = enumerate_all_faces(n + 2);
            let results: Vec<Option<String>> = faces
                .par_iter()
                .map_init(&make_table, |table, f| {
                    let lhs = tensor_boundary(&table.diagonal_face(f));
                    let rhs = table.diagonal(&boundary_face(f));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) if l == r => None,
                        (Ok(l), Ok(r)) => Some(format!(
                            "face {f} of K{}: (d⊗1+1⊗d)Δ - Δd = {}",
                            f.leaves,
                            l.difference(&r)
                                .map_or_else(|e| e.to_string(), |d| d.to_string())
                        )),
                        (Err(e), _) | (_, Err(e)) => {
                            Some(format!("face {f} of K{}: {e}", f.leaves))
                        }
                    }
                })
                .collect();
            Check::new(
                Suite::ChainMap,
                "chain-map",
                n,
                faces.len(),
                first_failure(results),
            )
        })
        .collect()
}

fn catalan(m: usize) -> usize {
    (0..m).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// `∂² = 0` on every face, together with the facet and vertex counts.
fn check_d_squared(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 0..=max_n {
        let faces = enumerate_all_faces(n + 2);
        let results: Vec<Option<String>> = faces
            .par_iter()
            .map(|f| match boundary(&boundary_face(f)) {
                Ok(c) if c.is_zero() => None,
                Ok(c) => Some(format!("face {f}: ∂∂ = {c}")),
                Err(e) => Some(format!("face {f}: {e}")),
            })
            .collect();
        checks.push(Check::new(
            Suite::DSquare,
            "d-squared",
            n,
            faces.len(),
            first_failure(results),
        ));
        let counts = [
            ("facet-count", n.saturating_sub(1), n * (n + 3) / 2),
            ("vertex-count", 0, catalan(n + 1)),
        ];
        for (property, dim, expected) in counts {
            if property == "facet-count" && n == 0 {
                continue;
            }
            let got = enumerate_faces(n + 2, dim)?.len();
            let failure = (got != expected).then(|| format!("{got} faces, expected {expected}"));
            checks.push(Check::new(Suite::DSquare, property, n, 1, failure));
        }
    }
    Ok(checks)
}

/// Facets of `f` found by testing containment in every facet of the ambient.
pub fn facets_by_containment(f: &Face) -> Result<BTreeSet<(usize, usize)>> {
    let mut out = BTreeSet::new();
    if f.leaves < 3 {
        return Ok(out);
    }
    for b in enumerate_faces(f.leaves, f.leaves - 3)? {
        if is_face_of(f, &b)? {
            out.insert(b.key[0]);
        }
    }
    Ok(out)
}

fn transfer_failure(f: &Face) -> Result<Option<String>> {
    let first = f.first_form();
    for k in 1..=first.len() {
        let r = right_transfer_first(&first, k)?;
        if Face::of_composition(&r.rewritten)? != *f {
            return Ok(Some(format!("right transfer {k} of {f} changes the face")));
        }
    }
    let found = facets_by_transfer(f)?;
    let distinct: BTreeSet<(usize, usize)> = found.iter().copied().collect();
    let expected = facets_by_containment(f)?;
    if found.len() != f.key.len() || distinct != expected {
        return Ok(Some(format!(
            "face {f}: transfers give {found:?}, containment gives {expected:?}"
        )));
    }
    Ok(None)
}

/// Right transfers preserve each face and enumerate exactly its containing facets.
fn check_transfers(max_n: usize) -> Result<Vec<Check>> {
    (0..=max_n)
        .map(|n| {
            let faces = enumerate_all_faces(n + 2);
            let results = faces
                .par_iter()
                .map(transfer_failure)
                .collect::<Result<Vec<_>>>()?;
            Ok(Check::new(
                Suite::Transfers,
                "right-transfers",
                n,
                faces.len(),
                first_failure(results),
            ))
        })
        .collect()
}

/// The selection lemma on every solution, and common facets against containment.
fn check_lemma2(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 1..=max_n {
        let solutions = enumerate_solutions(n);
        let results = solutions
            .par_iter()
            .map(|s| -> Result<(usize, Option<String>)> {
                let domain = selection_domain(s);
                for &(k, m) in &domain {
                    let r = lemma2_check(s, k, m)?;
                    if !r.passed() {
                        return Ok((domain.len(), Some(format!("{s:?}: {r:?}"))));
                    }
                }
                Ok((domain.len(), None))
            })
            .collect::<Result<Vec<_>>>()?;
        let count = results.iter().map(|r| r.0).sum();
        let failure = first_failure(results.into_iter().map(|r| r.1).collect());
        checks.push(Check::new(Suite::Lemma2, "selection", n, count, failure));
    }
    for n in 2..=max_n.min(5) {
        let faces = enumerate_all_faces(n + 2);
        let facets: BTreeMap<&Face, BTreeSet<(usize, usize)>> = faces
            .iter()
            .map(|f| facets_by_containment(f).map(|s| (f, s)))
            .collect::<Result<_>>()?;
        let pairs: Vec<(&Face, &Face)> = if n <= 3 {
            faces
                .iter()
                .flat_map(|a| faces.iter().map(move |b| (a, b)))
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            (0..COMMON_FACET_SAMPLES)
                .map(|_| {
                    (
                        &faces[rng.gen_range(0..faces.len())],
                        &faces[rng.gen_range(0..faces.len())],
                    )
                })
                .collect()
        };
        let results = pairs
            .par_iter()
            .map(|&(a, b)| {
                let expected: BTreeSet<_> = facets[a].intersection(&facets[b]).copied().collect();
                let got = common_facets(a, b)?;
                Ok((got != expected)
                    .then(|| format!("{a} and {b}: {got:?}, containment gives {expected:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        checks.push(Check::new(
            Suite::Lemma2,
            "common-facets",
            n,
            pairs.len(),
            first_failure(results),
        ));
    }
    Ok(checks)
}

/// Relations of associahedral sets, and the free set on one top cell against `C_*(K)`.
fn check_appendix(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let report = check_relations(RELATION_SAMPLES, 11, (max_n + 2).max(3))?;
    let mut relations = Check::new(
        Suite::Appendix,
        "relations",
        max_n,
        report.face_degeneracy + report.degeneracy_degeneracy + report.face_face,
        report.failures.first().cloned(),
    );
    relations.note = Some(format!(
        "{} of {} sampled degenerate cells s y have ±2y in their boundary",
        report.subcomplex_defects, report.subcomplex
    ));
    checks.push(relations);
    for n in 0..=max_n.min(6) {
        let outcome = compare_with_associahedron(n + 2)?;
        let (count, failure) = match outcome {
            Ok(count) => (count, None),
            Err(what) => (0, Some(what)),
        };
        checks.push(Check::new(
            Suite::Appendix,
            "free-set-coincidence",
            n,
            count,
            failure,
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse_and_expand() {
        assert_eq!("dsquare".parse::<Suite>().unwrap(), Suite::DSquare);
        assert_eq!("all".parse::<Suite>().unwrap().expand().len(), 5);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<usize> = (0..8).map(catalan).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn d_squared_through_k5() {
        let cert = run(Suite::DSquare, 3).unwrap();
        assert!(cert.passed, "{:?}", cert.first_failure());
        let faces: usize = cert
            .checks
            .iter()
            .filter(|c| c.property == "d-squared")
            .map(|c| c.count)
            .sum();
        assert_eq!(faces, 1 + 3 + 11 + 45);
    }

    #[test]
    fn a_flipped_sign_is_reported_with_a_counterexample() {
        let checks = check_chain_map(2, || DiagonalTable::with_flipped_sign(4, 0));
        assert!(checks[0].passed && checks[1].passed);
        assert!(!checks[2].passed);
        assert!(checks[2]
            .counterexample
            .as_deref()
            .unwrap()
            .starts_with("face "));
    }

    #[test]
    fn max_n_is_bounded() {
        assert!(run(Suite::All, MAX_N + 1).is_err());
    }

    #[test]
    fn small_certificate_round_trips() {
        let cert = run(Suite::All, 3).unwrap();
        assert!(cert.passed, "{:?}", cert.first_failure());
        let back: Certificate = serde_json::from_str(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
    }
}
