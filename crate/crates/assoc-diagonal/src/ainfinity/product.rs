//! Numeric realization of `Ψⁿ` and `Φⁿ` on the tensor product of two instances.

use super::instance::{koszul, BasisElement, GradedModuleInstance, Word, WordSum};
use super::ops::OpKind;
use super::tensor::{tensor_ops_alg, tensor_ops_coalg, TensorOps};
use crate::error::{Error, Result};

/// Basis of `A ⊗ B`: pair `(a, b)` has index `a · rank(B) + b`.
pub fn pair_index(b_rank: usize, a: usize, b: usize) -> usize {
    a * b_rank + b
}

/// Sign of `(x₁…x_n) ⊗ (y₁…y_n) ↦ (x₁⊗y₁)…(x_n⊗y_n)`: each `y_j` passes `x_i` for `j < i`.
fn shuffle_sign(
    a: &GradedModuleInstance,
    b: &GradedModuleInstance,
    x: &[usize],
    y: &[usize],
) -> i64 {
    let mut exponent = 0;
    let mut passed = 0;
    for (&xi, &yi) in x.iter().zip(y) {
        exponent += passed * a.degree(xi);
        passed += b.degree(yi);
    }
    koszul(exponent)
}

/// `Ψⁿ(a ⊗ b)` as a combination of words over the basis of `A ⊗ B`.
///
/// Each term `s · (f ⊗ g)` contributes `s · (−1)^{|g||a|} σ(f(a) ⊗ g(b))`,
/// where `σ` interleaves the two output words with Koszul signs.
pub fn evaluate_coalg(
    ops: &TensorOps,
    a: &GradedModuleInstance,
    b: &GradedModuleInstance,
    x: usize,
    y: usize,
) -> Result<WordSum> {
    if ops.kind != OpKind::Coalg {
        return Err(Error::Module("expected coalgebra operations".into()));
    }
    let mut out = WordSum::zero();
    for t in &ops.terms {
        let fa = a.apply_composite(&t.left, &WordSum::single(vec![x]))?;
        if fa.is_zero() {
            continue;
        }
        let gb = b.apply_composite(&t.right, &WordSum::single(vec![y]))?;
        let iota = koszul(t.right.degree() * a.degree(x));
        for (wa, ca) in fa.iter() {
            for (wb, cb) in gb.iter() {
                let word: Word = wa
                    .iter()
                    .zip(wb)
                    .map(|(&p, &q)| pair_index(b.rank(), p, q))
                    .collect();
                out.add(word, t.sign * iota * shuffle_sign(a, b, wa, wb) * ca * cb);
            }
        }
    }
    Ok(out)
}

/// `Φⁿ` on a word over the basis of `A ⊗ B`.
///
/// The word is first unshuffled into `(x₁…x_n) ⊗ (y₁…y_n)` with Koszul sign,
/// then each term `s · (f ⊗ g)` contributes `s · (−1)^{|g||x|} f(x) ⊗ g(y)`.
pub fn evaluate_alg(
    ops: &TensorOps,
    a: &GradedModuleInstance,
    b: &GradedModuleInstance,
    word: &[usize],
) -> Result<WordSum> {
    if ops.kind != OpKind::Alg {
        return Err(Error::Module("expected algebra operations".into()));
    }
    if word.len() != ops.n {
        return Err(Error::Module(format!(
            "Φ^{} takes {} letters, got {}",
            ops.n,
            ops.n,
            word.len()
        )));
    }
    let x: Word = word.iter().map(|&w| w / b.rank()).collect();
    let y: Word = word.iter().map(|&w| w % b.rank()).collect();
    let unshuffle = shuffle_sign(a, b, &x, &y);
    let mut out = WordSum::zero();
    for t in &ops.terms {
        let fa = a.apply_composite(&t.left, &WordSum::single(x.clone()))?;
        if fa.is_zero() {
            continue;
        }
        let gb = b.apply_composite(&t.right, &WordSum::single(y.clone()))?;
        let iota = koszul(t.right.degree() * a.word_degree(&x));
        for (wa, ca) in fa.iter() {
            for (wb, cb) in gb.iter() {
                out.add(
                    vec![pair_index(b.rank(), wa[0], wb[0])],
                    t.sign * unshuffle * iota * ca * cb,
                );
            }
        }
    }
    Ok(out)
}

fn product_basis(a: &GradedModuleInstance, b: &GradedModuleInstance) -> Vec<BasisElement> {
    let mut basis = Vec::with_capacity(a.rank() * b.rank());
    for x in a.basis() {
        for y in b.basis() {
            basis.push(BasisElement {
                name: format!("{}⊗{}", x.name, y.name),
                degree: x.degree + y.degree,
            });
        }
    }
    basis
}

/// The instance `A ⊗ B` carrying `Ψ¹, …, Ψ^max_arity`.
pub fn tensor_coalg_instance(
    a: &GradedModuleInstance,
    b: &GradedModuleInstance,
    max_arity: usize,
) -> Result<GradedModuleInstance> {
    let mut m = GradedModuleInstance::new(format!("{} ⊗ {}", a.name, b.name), product_basis(a, b));
    for n in 1..=max_arity {
        let ops = tensor_ops_coalg(n)?;
        for x in 0..a.rank() {
            for y in 0..b.rank() {
                let value = evaluate_coalg(&ops, a, b, x, y)?;
                for (w, c) in value.iter() {
                    m.set(
                        OpKind::Coalg,
                        n,
                        vec![pair_index(b.rank(), x, y)],
                        w.clone(),
                        c,
                    )?;
                }
            }
        }
    }
    Ok(m)
}

/// The instance `A ⊗ B` carrying `Φ¹, …, Φ^max_arity`.
pub fn tensor_alg_instance(
    a: &GradedModuleInstance,
    b: &GradedModuleInstance,
    max_arity: usize,
) -> Result<GradedModuleInstance> {
    let mut m = GradedModuleInstance::new(format!("{} ⊗ {}", a.name, b.name), product_basis(a, b));
    for n in 1..=max_arity {
        let ops = tensor_ops_alg(n)?;
        for word in m.words(n) {
            let value = evaluate_alg(&ops, a, b, &word)?;
            for (w, c) in value.iter() {
                m.set(OpKind::Alg, n, word.clone(), w.clone(), c)?;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::super::instance::{interval_dga, interval_dgc, interval_with_cubic_cell};
    use super::super::tensor::{quadratic_relation_alg, quadratic_relation_coalg};
    use super::*;

    /// Koszul coproduct of `A ⊗ B`: `Σ (−1)^{|a''||b'|} (a'⊗b') ⊗ (a''⊗b'')`.
    fn koszul_coproduct(
        a: &GradedModuleInstance,
        b: &GradedModuleInstance,
        x: usize,
        y: usize,
    ) -> WordSum {
        let mut out = WordSum::zero();
        for (wa, ca) in a.value(OpKind::Coalg, 2, &[x]).iter() {
            for (wb, cb) in b.value(OpKind::Coalg, 2, &[y]).iter() {
                let sign = if (a.degree(wa[1]) * b.degree(wb[0])) % 2 == 0 {
                    1
                } else {
                    -1
                };
                out.add(
                    vec![wa[0] * b.rank() + wb[0], wa[1] * b.rank() + wb[1]],
                    sign * ca * cb,
                );
            }
        }
        out
    }

    #[test]
    fn psi_two_is_the_koszul_coproduct() {
        let a = interval_dgc();
        let ops = tensor_ops_coalg(2).unwrap();
        for x in 0..a.rank() {
            for y in 0..a.rank() {
                assert_eq!(
                    evaluate_coalg(&ops, &a, &a, x, y).unwrap(),
                    koszul_coproduct(&a, &a, x, y)
                );
            }
        }
    }

    #[test]
    fn higher_psi_vanishes_on_a_dgc() {
        let a = interval_dgc();
        for n in 3..=6 {
            let ops = tensor_ops_coalg(n).unwrap();
            for x in 0..a.rank() {
                for y in 0..a.rank() {
                    assert!(
                        evaluate_coalg(&ops, &a, &a, x, y).unwrap().is_zero(),
                        "n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn tensor_of_dgcs_satisfies_the_relations() {
        let a = interval_dgc();
        let m = tensor_coalg_instance(&a, &a, 3).unwrap();
        for n in 1..=4 {
            let rel = quadratic_relation_coalg(n).unwrap();
            for x in 0..m.rank() {
                assert!(
                    m.evaluate(&rel, &[x]).unwrap().is_zero(),
                    "n = {n}, basis {}",
                    m.name(x)
                );
            }
        }
    }

    #[test]
    fn tensor_of_dgas_satisfies_the_relations() {
        let a = interval_dga();
        let m = tensor_alg_instance(&a, &a, 3).unwrap();
        assert!(m.arities(OpKind::Alg).iter().all(|&k| k <= 2));
        for n in 1..=3 {
            let rel = quadratic_relation_alg(n).unwrap();
            for w in m.words(n) {
                assert!(
                    m.evaluate(&rel, &w).unwrap().is_zero(),
                    "n = {n}, word {w:?}"
                );
            }
        }
    }

    #[test]
    fn tensor_square_with_a_cubic_operation_satisfies_the_relations() {
        let a = interval_with_cubic_cell();
        let m = tensor_coalg_instance(&a, &a, 5).unwrap();
        assert!(m.arities(OpKind::Coalg).contains(&3));
        for n in 1..=5 {
            let rel = quadratic_relation_coalg(n).unwrap();
            for x in 0..m.rank() {
                let value = m.evaluate(&rel, &[x]).unwrap();
                assert!(
                    value.is_zero(),
                    "n = {n}, basis {}: {}",
                    m.name(x),
                    value.render(&m)
                );
            }
        }
    }

    #[test]
    fn mixed_tensor_product_satisfies_the_relations() {
        let a = interval_with_cubic_cell();
        let b = interval_dgc();
        for (l, r) in [(&a, &b), (&b, &a)] {
            let m = tensor_coalg_instance(l, r, 5).unwrap();
            for n in 1..=5 {
                let rel = quadratic_relation_coalg(n).unwrap();
                for x in 0..m.rank() {
                    assert!(
                        m.evaluate(&rel, &[x]).unwrap().is_zero(),
                        "n = {n}, basis {}",
                        m.name(x)
                    );
                }
            }
        }
    }
}
