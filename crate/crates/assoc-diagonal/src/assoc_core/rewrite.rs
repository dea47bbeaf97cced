//! The face relations and normalization into the two fundamental forms.
//!
//! A site `s` names the adjacent pair `ops[s]` (applied first) and `ops[s+1]`.
//! Writing `A = d^{q_A}_{(c,e)}` for the first and `B = d^{q_B}_{(a,b)}` for the
//! second operator, the relations read:
//!
//! * (1) `q_A > q_B`: `(A, B) → (d^{q_B}_{(a,b)}, d^{q_A+1}_{(c,e)})`, and the
//!   reverse move when `q_B > q_A + 1`.
//! * (2) `q_B = q_A + 1`, `a ≤ c ≤ a+b`: `(A, B) → (d^{q_A}_{(a,b+e)}, d^{q_A}_{(c-a,e)})`,
//!   and the reverse move when `q_A = q_B`.
//! * (3) `q_B = q_A + 1`, `c < a`: `(A, B) → (d^{q_A}_{(a+e,b)}, d^{q_A+1}_{(c,e)})`.
//! * (3′) `q_B = q_A + 1`, `c > a+b`: `(A, B) → (d^{q_A}_{(a,b)}, d^{q_A+1}_{(c-b,e)})`.
//!
//! (3) and (3′) are mutually inverse.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::face::{CellState, Composition, FaceOperator, Form};
use crate::error::{Error, Result};

/// Identifier of a face relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    One,
    Two,
    Three,
    ThreePrime,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::One => "1",
            Rule::Two => "2",
            Rule::Three => "3",
            Rule::ThreePrime => "3'",
        };
        write!(f, "{s}")
    }
}

fn not_applicable(rule: Rule, site: usize, reason: impl Into<String>) -> Error {
    Error::RelationNotApplicable {
        rule: rule.to_string(),
        site,
        reason: reason.into(),
    }
}

/// Rewrite the pair at `site` with `rule`, in whichever direction matches.
pub fn apply_relation(c: &Composition, site: usize, rule: Rule) -> Result<Composition> {
    if site + 1 >= c.ops.len() {
        return Err(not_applicable(rule, site, "no operator pair at this site"));
    }
    let a_op = c.ops[site];
    let b_op = c.ops[site + 1];
    let (new_a, new_b) =
        rewrite_pair(a_op, b_op, rule).map_err(|r| not_applicable(rule, site, r))?;
    let mut out = c.clone();
    out.ops[site] = new_a;
    out.ops[site + 1] = new_b;
    transport_suffix(c, &mut out, site + 2);
    out.form = Form::Raw;
    out.form = out.classify();
    Ok(out)
}

/// Relabels the operators of `new` from position `from` on so that each acts on
/// the same node as the corresponding operator of `old`.
///
/// Factors are numbered in insertion order, so (3) and (3′) exchange the labels
/// of the two nodes they create. Without this step a later operator of a
/// longer composition would act on the wrong node. Inadmissible inputs are
/// left unchanged.
fn transport_suffix(old: &Composition, new: &mut Composition, from: usize) {
    if from >= old.ops.len() {
        return;
    }
    let prefix = |c: &Composition| {
        let mut st = CellState::top(c.ambient);
        c.ops[..from]
            .iter()
            .try_for_each(|op| st.apply(*op))
            .map(|_| st)
    };
    let (Ok(mut old_state), Ok(mut new_state)) = (prefix(old), prefix(new)) else {
        return;
    };
    for k in from..old.ops.len() {
        let op = old.ops[k];
        let Some(&target) = old_state.factors.get(op.q.wrapping_sub(1)) else {
            return;
        };
        let Some(pos) = new_state.factors.iter().position(|&f| f == target) else {
            return;
        };
        new.ops[k].q = pos + 1;
        if old_state.apply(op).is_err() || new_state.apply(new.ops[k]).is_err() {
            return;
        }
    }
}

fn rewrite_pair(
    first: FaceOperator,
    second: FaceOperator,
    rule: Rule,
) -> std::result::Result<(FaceOperator, FaceOperator), String> {
    let (qa, c, e) = (first.q, first.i, first.l);
    let (qb, a, b) = (second.q, second.i, second.l);
    match rule {
        Rule::One => {
            if qa > qb {
                Ok((FaceOperator::new(qb, a, b), FaceOperator::new(qa + 1, c, e)))
            } else if qb > qa + 1 {
                Ok((FaceOperator::new(qb - 1, a, b), FaceOperator::new(qa, c, e)))
            } else {
                Err(format!("superscripts {qa}, {qb} act on related factors"))
            }
        }
        Rule::Two => {
            if qb == qa + 1 {
                if a <= c && c <= a + b {
                    Ok((
                        FaceOperator::new(qa, a, b + e),
                        FaceOperator::new(qa, c - a, e),
                    ))
                } else {
                    Err(format!("needs {a} <= {c} <= {}", a + b))
                }
            } else if qb == qa {
                // Inverse direction: group a block of the new inner node first.
                if e > b {
                    Ok((
                        FaceOperator::new(qa, c + a, b),
                        FaceOperator::new(qa + 1, c, e - b),
                    ))
                } else {
                    Err("inner block is not shorter than the outer one".into())
                }
            } else {
                Err(format!("superscripts {qa}, {qb} are not adjacent"))
            }
        }
        Rule::Three => {
            if qb == qa + 1 && c < a {
                Ok((
                    FaceOperator::new(qa, a + e, b),
                    FaceOperator::new(qa + 1, c, e),
                ))
            } else {
                Err(format!("needs q_B = q_A + 1 and {c} < {a}"))
            }
        }
        Rule::ThreePrime => {
            if qb == qa + 1 && c > a + b {
                Ok((
                    FaceOperator::new(qa, a, b),
                    FaceOperator::new(qa + 1, c - b, e),
                ))
            } else {
                Err(format!("needs q_B = q_A + 1 and {c} > {}", a + b))
            }
        }
    }
}

/// Target of a normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    First,
    Second,
}

/// The oriented rewrite applicable at `site` for `target`, if any.
///
/// Orientation: equal superscripts are split by inverse (2); a decreasing
/// superscript pair is commuted by (1); adjacent superscripts out of order are
/// fixed by (3) for the first form and (3′) for the second.
pub fn oriented_rule(c: &Composition, site: usize, target: Target) -> Option<Rule> {
    let x = c.ops[site];
    let y = c.ops[site + 1];
    if x.q == y.q {
        return Some(Rule::Two);
    }
    if x.q > y.q {
        return Some(Rule::One);
    }
    if y.q == x.q + 1 {
        return match target {
            Target::First if x.i < y.i => Some(Rule::Three),
            Target::Second if x.i > y.i + y.l => Some(Rule::ThreePrime),
            _ => None,
        };
    }
    None
}

/// All sites with an oriented rewrite for `target`.
pub fn redexes(c: &Composition, target: Target) -> Vec<(usize, Rule)> {
    (0..c.ops.len().saturating_sub(1))
        .filter_map(|s| oriented_rule(c, s, target).map(|r| (s, r)))
        .collect()
}

/// Upper bound on rewrite steps; generous compared with observed runs.
fn step_limit(c: &Composition) -> usize {
    let m = c.ops.len().max(1);
    64 * m * m * m + 64
}

/// Normalize with an arbitrary redex chooser. `choose` picks an index into the
/// list of available redexes.
pub fn normalize_with(
    c: &Composition,
    target: Target,
    mut choose: impl FnMut(&[(usize, Rule)]) -> usize,
) -> Result<Composition> {
    let _ = super::face::apply_composition(c)?;
    let mut cur = c.clone();
    let limit = step_limit(c);
    for _ in 0..limit {
        let rs = redexes(&cur, target);
        if rs.is_empty() {
            let ok = match target {
                Target::First => cur.is_first_form(),
                Target::Second => cur.is_second_form(),
            };
            if !ok {
                return Err(Error::WrongForm {
                    expected: match target {
                        Target::First => "first",
                        Target::Second => "second",
                    },
                });
            }
            cur.form = match target {
                Target::First => Form::First,
                Target::Second => Form::Second,
            };
            return Ok(cur);
        }
        let pick = choose(&rs).min(rs.len() - 1);
        let (site, rule) = rs[pick];
        cur = apply_relation(&cur, site, rule)?;
    }
    Err(Error::OutOfRange {
        what: "rewrite steps",
        value: limit as i64,
        range: "normalization did not terminate".into(),
    })
}

fn priority(r: Rule) -> u8 {
    match r {
        Rule::Two => 0,
        Rule::Three | Rule::ThreePrime => 1,
        Rule::One => 2,
    }
}

/// Leftmost redex of highest priority: (2) before (3)/(3′) before (1).
fn default_choice(rs: &[(usize, Rule)]) -> usize {
    let best = rs.iter().map(|&(_, r)| priority(r)).min().unwrap_or(0);
    rs.iter()
        .position(|&(_, r)| priority(r) == best)
        .unwrap_or(0)
}

/// Rewrite an admissible composition into first fundamental form.
pub fn normalize_first(c: &Composition) -> Result<Composition> {
    normalize_with(c, Target::First, default_choice)
}

/// Rewrite an admissible composition into second fundamental form.
pub fn normalize_second(c: &Composition) -> Result<Composition> {
    normalize_with(c, Target::Second, default_choice)
}

/// A random admissible composition on `ambient` leaves with up to `ambient − 2`
/// operators, each on a random factor that still has room for a face.
pub fn random_admissible<R: Rng>(rng: &mut R, ambient: usize) -> Composition {
    let mut st = CellState::top(ambient);
    let mut ops = Vec::new();
    let len = rng.gen_range(0..=ambient.saturating_sub(2));
    for _ in 0..len {
        let open: Vec<usize> = (1..=st.factors.len()).filter(|&q| st.n(q) > 0).collect();
        if open.is_empty() {
            break;
        }
        let q = open[rng.gen_range(0..open.len())];
        let n_q = st.n(q);
        let l = rng.gen_range(1..=n_q);
        let i = rng.gen_range(0..=n_q + 1 - l);
        let op = FaceOperator::new(q, i, l);
        st.apply(op).expect("chosen to fit");
        ops.push(op);
    }
    let mut c = Composition::raw(ambient, ops);
    c.form = c.classify();
    c
}

/// Normalizes `c` into `target` form along `orders` independently random
/// rewrite orders and returns the normal forms that were reached.
pub fn normal_forms_along_random_orders<R: Rng>(
    c: &Composition,
    target: Target,
    orders: usize,
    rng: &mut R,
) -> Result<BTreeSet<Vec<FaceOperator>>> {
    let mut out = BTreeSet::new();
    out.insert(normalize_with(c, target, default_choice)?.ops);
    for _ in 0..orders {
        out.insert(normalize_with(c, target, |rs| rng.gen_range(0..rs.len()))?.ops);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc_core::face::Face;

    fn comp(leaves: usize, s: &str) -> Composition {
        Composition::parse(leaves, s).unwrap()
    }

    #[test]
    fn rule_two_on_the_vertex_table() {
        let c = comp(4, "d^2_(0,1)d^1_(0,1)");
        let r = apply_relation(&c, 0, Rule::Two).unwrap();
        assert_eq!(r.render(), "d^1_(0,1)d^1_(0,2)");
        let back = apply_relation(&r, 0, Rule::Two).unwrap();
        assert_eq!(back.ops, c.ops);
    }

    #[test]
    fn rule_three_on_the_vertex_table() {
        let c = comp(4, "d^2_(1,1)d^1_(0,1)");
        let r = apply_relation(&c, 0, Rule::Three).unwrap();
        assert_eq!(r.render(), "d_(0,1)d_(2,1)");
        let back = apply_relation(&r, 0, Rule::ThreePrime).unwrap();
        assert_eq!(back.ops, c.ops);
    }

    #[test]
    fn rule_one_commutes() {
        let c = Composition::raw(
            8,
            vec![
                FaceOperator::new(1, 0, 2),
                FaceOperator::new(2, 2, 1),
                FaceOperator::new(3, 0, 1),
                FaceOperator::new(1, 0, 1),
            ],
        );
        let r = apply_relation(&c, 2, Rule::One).unwrap();
        assert_eq!(r.ops[2], FaceOperator::new(1, 0, 1));
        assert_eq!(r.ops[3], FaceOperator::new(4, 0, 1));
        assert_eq!(
            Face::of_composition(&r).unwrap(),
            Face::of_composition(&c).unwrap()
        );
    }

    #[test]
    fn side_conditions_are_enforced() {
        let c = comp(4, "d^2_(1,1)d^1_(0,1)");
        let err = apply_relation(&c, 0, Rule::Two).unwrap_err();
        assert!(matches!(err, Error::RelationNotApplicable { .. }));
        assert!(apply_relation(&c, 1, Rule::One).is_err());
    }

    #[test]
    fn normalization_examples() {
        assert!(normalize_first(&comp(4, "1")).unwrap().is_empty());
        let c = comp(4, "d^1_(0,1)d^1_(0,2)");
        assert_eq!(normalize_first(&c).unwrap().lower(), vec![(0, 1), (0, 1)]);
        let c = comp(4, "d^1_(1,1)d^1_(1,2)");
        assert_eq!(normalize_first(&c).unwrap().render(), "d_(1,1)d_(2,1)");
        let c = comp(4, "d_(1,1)d_(2,1)");
        assert_eq!(normalize_second(&c).unwrap().render(), "d_(1,1)d_(2,1)");
        let c = comp(5, "d_(1,2)");
        assert_eq!(normalize_second(&c).unwrap().render(), "d_(1,2)");
    }

    #[test]
    fn normal_forms_agree_with_trees() {
        for leaves in 3..=7 {
            for f in crate::assoc_core::face::enumerate_all_faces(leaves) {
                let s = f.second_form();
                assert_eq!(normalize_first(&s).unwrap().lower(), f.key);
                assert_eq!(
                    normalize_second(&f.first_form()).unwrap().lower(),
                    s.lower()
                );
            }
        }
    }

    #[test]
    fn rewriting_inside_a_longer_composition_keeps_later_operators_on_their_nodes() {
        let c = comp(6, "d^1_(1,1)d^2_(0,1)d^1_(2,2)");
        let face = Face::of_composition(&c).unwrap();
        let swapped = apply_relation(&c, 0, Rule::ThreePrime).unwrap();
        assert_eq!(swapped.render_explicit(), "d^2_(1,1)d^2_(1,2)d^1_(0,1)");
        assert_eq!(Face::of_composition(&swapped).unwrap(), face);
        assert_eq!(
            normalize_second(&c).unwrap().lower(),
            face.second_form().lower()
        );
        assert_eq!(normalize_first(&c).unwrap().lower(), face.key);
    }

    #[test]
    fn random_compositions_are_admissible_and_confluent() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for ambient in 2..=7 {
            for _ in 0..200 {
                let c = random_admissible(&mut rng, ambient);
                let face = Face::of_composition(&c).unwrap();
                for target in [Target::First, Target::Second] {
                    let forms = normal_forms_along_random_orders(&c, target, 3, &mut rng).unwrap();
                    assert_eq!(forms.len(), 1, "{} {target:?}", c.render_explicit());
                }
                let first = normalize_first(&c).unwrap();
                assert_eq!(first.lower(), face.key, "{}", c.render_explicit());
            }
        }
    }
}
