//! Finite graded modules carrying (co)algebra operations, and exact evaluation
//! of composites on basis words with Koszul signs.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ops::{Composite, OpExpr, OpKind, PositionedOp};
use crate::error::{Error, Result};

/// A word of basis indices.
pub type Word = Vec<usize>;

/// An integer combination of basis words. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSum(BTreeMap<Word, i64>);

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    pub fn single(word: Word) -> Self {
        let mut s = WordSum::zero();
        s.add(word, 1);
        s
    }

    pub fn add(&mut self, word: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.0.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_sum(&mut self, other: &WordSum, scale: i64) {
        for (w, c) in &other.0 {
            self.add(w.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, w: &[usize]) -> i64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.0.iter().map(|(w, c)| (w, *c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies a linear map given on basis words.
    pub fn map(&self, mut f: impl FnMut(&Word) -> Result<WordSum>) -> Result<WordSum> {
        let mut out = WordSum::zero();
        for (w, c) in &self.0 {
            out.add_sum(&f(w)?, *c);
        }
        Ok(out)
    }

    /// Human-readable form using basis names.
    pub fn render(&self, m: &GradedModuleInstance) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, (w, c)) in self.0.iter().enumerate() {
            let body = w.iter().map(|&b| m.name(b)).collect::<Vec<_>>().join("⊗");
            let sep = match (pos, *c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&body);
        }
        out
    }
}

/// A named basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

/// Operation tables keyed by arity and consumed word.
type Table = BTreeMap<usize, BTreeMap<Word, WordSum>>;

/// A free graded module of finite rank with tables for `φ^k` and `ψ^k`.
///
/// Coalgebra tables map a one-letter word to a combination of `k`-letter
/// words; algebra tables map a `k`-letter word to a combination of one-letter
/// words. Missing entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModuleInstance {
    pub name: String,
    basis: Vec<BasisElement>,
    alg: Table,
    coalg: Table,
}

impl GradedModuleInstance {
    pub fn new(name: impl Into<String>, basis: Vec<BasisElement>) -> Self {
        GradedModuleInstance {
            name: name.into(),
            basis,
            alg: Table::new(),
            coalg: Table::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn name(&self, b: usize) -> &str {
        &self.basis[b].name
    }

    pub fn degree(&self, b: usize) -> i64 {
        self.basis[b].degree
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&b| self.degree(b)).sum()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| Error::Module(format!("unknown basis element {name:?}")))
    }

    fn table(&self, kind: OpKind) -> &Table {
        match kind {
            OpKind::Alg => &self.alg,
            OpKind::Coalg => &self.coalg,
        }
    }

    /// Arities with at least one nonzero entry.
    pub fn arities(&self, kind: OpKind) -> Vec<usize> {
        self.table(kind)
            .iter()
            .filter(|(_, t)| t.values().any(|s| !s.is_zero()))
            .map(|(k, _)| *k)
            .collect()
    }

    /// Adds `coeff · output` to the value of the operation on `input`.
    ///
    /// Fails when the word lengths do not fit the operation or the degree
    /// of the output differs from `deg(input) + k − 2`.
    pub fn set(
        &mut self,
        kind: OpKind,
        arity: usize,
        input: Word,
        output: Word,
        coeff: i64,
    ) -> Result<()> {
        let (want_in, want_out) = match kind {
            OpKind::Alg => (arity, 1),
            OpKind::Coalg => (1, arity),
        };
        if arity == 0 || input.len() != want_in || output.len() != want_out {
            return Err(Error::Module(format!(
                "{kind:?} operation of arity {arity} maps {want_in} letters to {want_out}, got {} to {}",
                input.len(),
                output.len()
            )));
        }
        if let Some(&b) = input.iter().chain(&output).find(|&&b| b >= self.rank()) {
            return Err(Error::Module(format!("basis index {b} out of range")));
        }
        let shift = self.word_degree(&output) - self.word_degree(&input);
        if shift != arity as i64 - 2 {
            return Err(Error::Module(format!(
                "{kind:?} operation of arity {arity} must have degree {}, entry has degree {shift}",
                arity as i64 - 2
            )));
        }
        let table = match kind {
            OpKind::Alg => &mut self.alg,
            OpKind::Coalg => &mut self.coalg,
        };
        table
            .entry(arity)
            .or_default()
            .entry(input)
            .or_default()
            .add(output, coeff);
        Ok(())
    }

    /// Value of the bare operation on a consumed word.
    pub fn value(&self, kind: OpKind, arity: usize, input: &[usize]) -> WordSum {
        self.table(kind)
            .get(&arity)
            .and_then(|t| t.get(input))
            .cloned()
            .unwrap_or_default()
    }

    /// `1^{⊗i} ⊗ op ⊗ 1^{⊗j}` on a word, with sign `(−1)^{(k−2)·deg(prefix)}`.
    pub fn apply_positioned(&self, op: &PositionedOp, w: &[usize]) -> Result<WordSum> {
        if op.input_len() != w.len() {
            return Err(Error::Module(format!(
                "operation expects a word of length {}, got {}",
                op.input_len(),
                w.len()
            )));
        }
        let (prefix, rest) = w.split_at(op.left);
        let (consumed, suffix) = rest.split_at(op.symbol.input_len());
        let sign = koszul(op.symbol.degree() * self.word_degree(prefix));
        let mut out = WordSum::zero();
        for (mid, c) in self.value(op.symbol.kind, op.symbol.arity, consumed).iter() {
            let mut word = prefix.to_vec();
            word.extend_from_slice(mid);
            word.extend_from_slice(suffix);
            out.add(word, sign * c);
        }
        Ok(out)
    }

    /// Applies a composite to a combination of words.
    pub fn apply_composite(&self, c: &Composite, input: &WordSum) -> Result<WordSum> {
        let mut cur = input.clone();
        for op in &c.ops {
            cur = cur.map(|w| self.apply_positioned(op, w))?;
        }
        Ok(cur)
    }

    /// Evaluates a signed sum of composites on a basis word.
    pub fn evaluate(&self, e: &OpExpr, word: &[usize]) -> Result<WordSum> {
        let input = WordSum::single(word.to_vec());
        let mut out = WordSum::zero();
        for (sign, c) in &e.terms {
            if c.input_len() != word.len() {
                return Err(Error::Module(format!(
                    "expression takes words of length {}, got {}",
                    c.input_len(),
                    word.len()
                )));
            }
            out.add_sum(&self.apply_composite(c, &input)?, *sign);
        }
        Ok(out)
    }

    /// All words of the given length, in lexicographic order.
    pub fn words(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..self.rank()).map(move |b| {
                        let mut w = w.clone();
                        w.push(b);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Parses the TOML document format described in [`InstanceFile`].
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: InstanceFile = toml::from_str(text).map_err(|e| Error::Parse {
            what: "module instance",
            reason: e.to_string(),
        })?;
        file.build()
    }

    /// Serializes to the TOML document format.
    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_file()).expect("instance files always serialize")
    }

    pub fn to_file(&self) -> InstanceFile {
        let mut ops = Vec::new();
        for kind in [OpKind::Alg, OpKind::Coalg] {
            for (&arity, entries) in self.table(kind) {
                for (input, sum) in entries {
                    if sum.is_zero() {
                        continue;
                    }
                    ops.push(OpEntry {
                        kind,
                        arity,
                        input: input.iter().map(|&b| self.name(b).to_string()).collect(),
                        output: sum
                            .iter()
                            .map(|(w, c)| OutputEntry {
                                coeff: c,
                                word: w.iter().map(|&b| self.name(b).to_string()).collect(),
                            })
                            .collect(),
                    });
                }
            }
        }
        InstanceFile {
            name: self.name.clone(),
            basis: self.basis.clone(),
            op: ops,
        }
    }
}

pub(crate) fn koszul(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// On-disk form of a [`GradedModuleInstance`].
///
/// ```toml
/// name = "interval"
///
/// [[basis]]
/// name = "e"
/// degree = 1
///
/// [[op]]
/// kind = "coalg"        # or "alg"
/// arity = 2
/// input = ["e"]         # one letter for coalg, `arity` letters for alg
/// output = [{ coeff = 1, word = ["v0", "e"] }, { coeff = 1, word = ["e", "v1"] }]
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub name: String,
    pub basis: Vec<BasisElement>,
    #[serde(default)]
    pub op: Vec<OpEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpEntry {
    pub kind: OpKind,
    pub arity: usize,
    pub input: Vec<String>,
    pub output: Vec<OutputEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputEntry {
    pub coeff: i64,
    pub word: Vec<String>,
}

impl InstanceFile {
    pub fn build(&self) -> Result<GradedModuleInstance> {
        let mut m = GradedModuleInstance::new(self.name.clone(), self.basis.clone());
        for (pos, b) in self.basis.iter().enumerate() {
            if self.basis[..pos].iter().any(|x| x.name == b.name) {
                return Err(Error::Module(format!(
                    "duplicate basis element {:?}",
                    b.name
                )));
            }
        }
        let lookup = |names: &[String]| {
            names
                .iter()
                .map(|n| m.index_of(n))
                .collect::<Result<Word>>()
        };
        let mut entries = Vec::new();
        for op in &self.op {
            let input = lookup(&op.input)?;
            for out in &op.output {
                entries.push((
                    op.kind,
                    op.arity,
                    input.clone(),
                    lookup(&out.word)?,
                    out.coeff,
                ));
            }
        }
        for (kind, arity, input, output, coeff) in entries {
            m.set(kind, arity, input, output, coeff)?;
        }
        Ok(m)
    }
}

/// Chains on the interval: vertices `v0`, `v1` in degree 0, edge `e` in degree 1,
/// with `ψ¹(e) = v1 − v0` and the Alexander–Whitney coproduct as `ψ²`.
pub fn interval_dgc() -> GradedModuleInstance {
    let basis = vec![
        BasisElement {
            name: "v0".into(),
            degree: 0,
        },
        BasisElement {
            name: "v1".into(),
            degree: 0,
        },
        BasisElement {
            name: "e".into(),
            degree: 1,
        },
    ];
    let mut m = GradedModuleInstance::new("interval", basis);
    let (v0, v1, e) = (0, 1, 2);
    let entries = [
        (1, e, vec![v1], 1),
        (1, e, vec![v0], -1),
        (2, v0, vec![v0, v0], 1),
        (2, v1, vec![v1, v1], 1),
        (2, e, vec![v0, e], 1),
        (2, e, vec![e, v1], 1),
    ];
    for (arity, input, output, coeff) in entries {
        m.set(OpKind::Coalg, arity, vec![input], output, coeff)
            .expect("consistent entry");
    }
    m
}

/// Cochains on the interval: the linear dual of [`interval_dgc`] with the cup
/// product as `φ²`. Degrees are negated.
pub fn interval_dga() -> GradedModuleInstance {
    let basis = vec![
        BasisElement {
            name: "v0*".into(),
            degree: 0,
        },
        BasisElement {
            name: "v1*".into(),
            degree: 0,
        },
        BasisElement {
            name: "e*".into(),
            degree: -1,
        },
    ];
    let mut m = GradedModuleInstance::new("interval cochains", basis);
    let (v0, v1, e) = (0, 1, 2);
    let entries = [
        (1, vec![v0], e, -1),
        (1, vec![v1], e, 1),
        (2, vec![v0, v0], v0, 1),
        (2, vec![v1, v1], v1, 1),
        (2, vec![v0, e], e, 1),
        (2, vec![e, v1], e, 1),
    ];
    for (arity, input, output, coeff) in entries {
        m.set(OpKind::Alg, arity, input, vec![output], coeff)
            .expect("consistent entry");
    }
    m
}

/// [`interval_dgc`] plus a degree-2 cell `x` and a degree-1 cell `y` with
/// `ψ³(x) = y ⊗ y ⊗ y` and no other operation on them.
///
/// Every quadratic relation holds: each composite through `x` meets `ψ¹`,
/// `ψ²` or `ψ³` on `y`, all of which vanish. `ψ³ ≠ 0` makes the tensor
/// square exercise the higher terms of `Ψⁿ`.
pub fn interval_with_cubic_cell() -> GradedModuleInstance {
    let mut basis = interval_dgc().basis().to_vec();
    basis.push(BasisElement {
        name: "x".into(),
        degree: 2,
    });
    basis.push(BasisElement {
        name: "y".into(),
        degree: 1,
    });
    let mut m = GradedModuleInstance::new("interval with cubic cell", basis);
    let src = interval_dgc();
    for k in src.arities(OpKind::Coalg) {
        for b in 0..src.rank() {
            for (w, c) in src.value(OpKind::Coalg, k, &[b]).iter() {
                m.set(OpKind::Coalg, k, vec![b], w.clone(), c)
                    .expect("consistent entry");
            }
        }
    }
    let (x, y) = (3, 4);
    m.set(OpKind::Coalg, 3, vec![x], vec![y, y, y], 1)
        .expect("consistent entry");
    m
}

/// A product on two degree-0 generators that fails associativity,
/// `(x·x)·y ≠ x·(x·y)`, with no higher operation to absorb the defect.
pub fn broken_dga() -> GradedModuleInstance {
    let basis = vec![
        BasisElement {
            name: "x".into(),
            degree: 0,
        },
        BasisElement {
            name: "y".into(),
            degree: 0,
        },
    ];
    let mut m = GradedModuleInstance::new("non-associative", basis);
    let (x, y) = (0, 1);
    m.set(OpKind::Alg, 2, vec![x, x], vec![y], 1)
        .expect("consistent entry");
    m.set(OpKind::Alg, 2, vec![x, y], vec![x], 1)
        .expect("consistent entry");
    m
}

#[cfg(test)]
mod tests {
    use super::super::ops::{OpSymbol, Side};
    use super::super::tensor::{quadratic_relation_alg, quadratic_relation_coalg};
    use super::*;

    #[test]
    fn identity_composite_returns_the_word() {
        let m = interval_dgc();
        let w = WordSum::single(vec![2, 0, 1]);
        assert_eq!(m.apply_composite(&Composite::identity(3), &w).unwrap(), w);
    }

    #[test]
    fn degree_violations_are_rejected() {
        let mut m = interval_dgc();
        assert!(m.set(OpKind::Coalg, 2, vec![2], vec![0, 0], 1).is_err());
        assert!(m.set(OpKind::Coalg, 2, vec![2], vec![0], 1).is_err());
        assert!(m.set(OpKind::Alg, 2, vec![0, 9], vec![0], 1).is_err());
    }

    #[test]
    fn positioned_operations_carry_koszul_signs() {
        let m = interval_dgc();
        let d = PositionedOp::new(OpSymbol::new(Side::A, OpKind::Coalg, 1), 1, 0);
        let got = m.apply_positioned(&d, &[2, 2]).unwrap();
        let mut want = WordSum::zero();
        want.add(vec![2, 1], -1);
        want.add(vec![2, 0], 1);
        assert_eq!(got, want);
    }

    #[test]
    fn interval_instances_satisfy_their_relations() {
        for c in [interval_dgc(), interval_with_cubic_cell()] {
            for n in 1..=5 {
                let rel = quadratic_relation_coalg(n).unwrap();
                for b in 0..c.rank() {
                    assert!(
                        c.evaluate(&rel, &[b]).unwrap().is_zero(),
                        "coalg n = {n}, basis {b}"
                    );
                }
            }
        }
        let a = interval_dga();
        for n in 1..=4 {
            let rel = quadratic_relation_alg(n).unwrap();
            for w in a.words(n) {
                assert!(
                    a.evaluate(&rel, &w).unwrap().is_zero(),
                    "alg n = {n}, word {w:?}"
                );
            }
        }
    }

    #[test]
    fn broken_instance_violates_associativity() {
        let m = broken_dga();
        let rel = quadratic_relation_alg(3).unwrap();
        assert!(m
            .words(3)
            .iter()
            .any(|w| !m.evaluate(&rel, w).unwrap().is_zero()));
    }

    #[test]
    fn toml_round_trip() {
        for m in [interval_dgc(), interval_dga(), broken_dga()] {
            let text = m.to_toml();
            assert_eq!(GradedModuleInstance::from_toml(&text).unwrap(), m);
        }
    }

    #[test]
    fn toml_errors_are_reported() {
        assert!(GradedModuleInstance::from_toml("name = 1").is_err());
        let unknown = "name = \"x\"\n[[basis]]\nname = \"a\"\ndegree = 0\n[[op]]\nkind = \"alg\"\narity = 2\ninput = [\"a\", \"b\"]\noutput = []\n";
        assert!(GradedModuleInstance::from_toml(unknown).is_err());
    }
}
