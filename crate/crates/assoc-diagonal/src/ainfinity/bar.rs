//! Bar and cobar differentials of an instance, with the suspension signs
//! written out in closed form.
//!
//! A word `[a₁, …, a_n]` stands for `↑a₁ ⊗ ⋯ ⊗ ↑a_n` in the bar construction
//! and for `↓a₁ ⊗ ⋯ ⊗ ↓a_n` in the cobar construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::instance::{koszul, GradedModuleInstance, Word, WordSum};
use super::ops::{OpKind, OpSymbol, PositionedOp, Side};
use crate::error::{Error, Result};

/// Bar construction (words in `↑A`) or cobar construction (words in `↓A`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Bar,
    Cobar,
}

/// Parity of `f^{⊗N}` on a word when `f` is odd: `Σ_r deg(x_r)(N − 1 − r)`.
fn odd_power_parity(degrees: impl Iterator<Item = i64>, len: usize) -> i64 {
    degrees
        .enumerate()
        .map(|(r, d)| d * (len - 1 - r) as i64)
        .sum()
}

/// `Σ (−1)^{[(n−k)/2] + i(k+1)} ↑^{⊗ n−k+1} φ^k_{i,n−k−i} ↓^{⊗n}` on one word.
pub fn bar_differential_on(m: &GradedModuleInstance, word: &[usize]) -> Result<WordSum> {
    let n = word.len();
    let down = odd_power_parity(word.iter().map(|&a| m.degree(a) + 1), n);
    let mut out = WordSum::zero();
    for k in m.arities(OpKind::Alg) {
        if k > n {
            continue;
        }
        for i in 0..=n - k {
            let op = PositionedOp::new(OpSymbol::new(Side::A, OpKind::Alg, k), i, n - k - i);
            let exponent = ((n - k) / 2 + i * (k + 1)) as i64 + down;
            for (c, coeff) in m.apply_positioned(&op, word)?.iter() {
                let up = odd_power_parity(c.iter().map(|&x| m.degree(x)), c.len());
                out.add(c.clone(), koszul(exponent + up) * coeff);
            }
        }
    }
    Ok(out)
}

/// `Σ (−1)^{[n/2] + i(k+1) + k(n+1)} ↓^{⊗ n+k−1} ψ^k_{i,n−1−i} ↑^{⊗n}` on one word.
pub fn cobar_differential_on(m: &GradedModuleInstance, word: &[usize]) -> Result<WordSum> {
    let n = word.len();
    let up = odd_power_parity(word.iter().map(|&a| m.degree(a) - 1), n);
    let mut out = WordSum::zero();
    for k in m.arities(OpKind::Coalg) {
        for i in 0..n {
            let op = PositionedOp::new(OpSymbol::new(Side::A, OpKind::Coalg, k), i, n - 1 - i);
            let exponent = (n / 2 + i * (k + 1) + k * (n + 1)) as i64 + up;
            for (c, coeff) in m.apply_positioned(&op, word)?.iter() {
                let down = odd_power_parity(c.iter().map(|&x| m.degree(x)), c.len());
                out.add(c.clone(), koszul(exponent + down) * coeff);
            }
        }
    }
    Ok(out)
}

/// The differential tabulated on all words of length `1..=truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Differential {
    pub construction: Construction,
    pub truncation: usize,
    pub images: BTreeMap<Word, WordSum>,
}

fn tabulate(
    m: &GradedModuleInstance,
    truncation: usize,
    construction: Construction,
    f: fn(&GradedModuleInstance, &[usize]) -> Result<WordSum>,
) -> Result<Differential> {
    let mut images = BTreeMap::new();
    for len in 1..=truncation {
        for w in m.words(len) {
            let image = f(m, &w)?;
            images.insert(w, image);
        }
    }
    Ok(Differential {
        construction,
        truncation,
        images,
    })
}

/// Bar differential on words of length at most `truncation`.
pub fn bar_differential(m: &GradedModuleInstance, truncation: usize) -> Result<Differential> {
    tabulate(m, truncation, Construction::Bar, bar_differential_on)
}

/// Cobar differential on words of length at most `truncation`.
pub fn cobar_differential(m: &GradedModuleInstance, truncation: usize) -> Result<Differential> {
    tabulate(m, truncation, Construction::Cobar, cobar_differential_on)
}

/// Outcome of a square-zero check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareZeroReport {
    /// Words whose `d²` was computed from the table.
    pub checked: usize,
    /// Words whose image leaves the table.
    pub skipped: usize,
    /// First word with `d² ≠ 0`, together with `d²` of it.
    pub counterexample: Option<(Word, WordSum)>,
}

impl SquareZeroReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `d² = 0` on every tabulated word whose image stays inside the table.
///
/// Fails when no word at all can be certified.
pub fn check_square_zero(d: &Differential) -> Result<SquareZeroReport> {
    let mut report = SquareZeroReport {
        checked: 0,
        skipped: 0,
        counterexample: None,
    };
    'words: for (w, image) in &d.images {
        let mut square = WordSum::zero();
        for (v, c) in image.iter() {
            match d.images.get(v) {
                Some(dv) => square.add_sum(dv, c),
                None if v.is_empty() => {}
                None => {
                    report.skipped += 1;
                    continue 'words;
                }
            }
        }
        report.checked += 1;
        if !square.is_zero() && report.counterexample.is_none() {
            report.counterexample = Some((w.clone(), square));
        }
    }
    if report.checked == 0 {
        return Err(Error::Module(format!(
            "truncation {} is too small to certify any word",
            d.truncation
        )));
    }
    Ok(report)
}
