use std::collections::BTreeMap;

use super::ops::{apply_word, GradedOperator, Generator};
use super::{ModuleVector, SevostyanovChoice, Truncation};
use crate::error::Result;
use crate::fixedpoints::{enumerate, DegreeVector, FixedPoint};
use crate::report::{ring_note, run_all, zero_sum_verdict, CheckOptions, CheckRecord, ZeroVerdict};
use crate::symbolic::{RatFunc, Weight};

/// `coeff · word`, the word applied rightmost first.
#[derive(Clone, Debug)]
pub struct RelationTerm {
    pub coeff: RatFunc,
    pub word: Vec<Generator>,
}

/// Operator identity `Σ coeff · word = 0`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub anchor: &'static str,
    pub terms: Vec<RelationTerm>,
}

fn v_pow(n: usize, e: i32) -> RatFunc {
    Weight::one(n).v(e).rat()
}

fn int(n: usize, c: i64) -> RatFunc {
    RatFunc::from_int(n + 1, c)
}

/// `1 / (v - v^{-1})`.
fn quantum_denominator(n: usize) -> RatFunc {
    (&v_pow(n, 1) - &v_pow(n, -1)).inv().expect("v - 1/v is nonzero")
}

fn term(coeff: RatFunc, word: &[Generator]) -> RelationTerm {
    RelationTerm {
        coeff,
        word: word.to_vec(),
    }
}

/// The full presentation, for `E, F` and for the twisted `e, f`.
type GenCtor = fn(usize) -> Generator;

pub fn relation_catalog(n: usize) -> Vec<Relation> {
    use Generator::*;
    let r = n - 1;
    let sev = SevostyanovChoice::standard(n);
    let mut out = Vec::new();
    for i in 1..=r {
        let mut rhs = vec![L(i), L(i)];
        if i > 1 {
            rhs.insert(0, LInv(i - 1));
        }
        if i < r {
            rhs.push(LInv(i + 1));
        }
        out.push(Relation {
            name: format!("cartan[{i}]"),
            anchor: "K_i = L_{i-1}^{-1} L_i^2 L_{i+1}^{-1}",
            terms: vec![term(int(n, 1), &[K(i)]), term(int(n, -1), &rhs)],
        });
    }
    for twisted in [false, true] {
        let (up, down): (GenCtor, GenCtor) = if twisted {
            (SmallE, SmallF)
        } else {
            (E, F)
        };
        let (pe, pf) = if twisted { ("e", "f") } else { ("E", "F") };
        let tag = if twisted { "twisted-" } else { "" };
        for i in 1..=r {
            for j in 1..=r {
                let delta = i32::from(i == j);
                out.push(Relation {
                    name: format!("{tag}grading-{pe}[{i},{j}]"),
                    anchor: "L_i X_j L_i^{-1} = v^{±δ_ij} X_j",
                    terms: vec![
                        term(int(n, 1), &[L(i), up(j), LInv(i)]),
                        term(v_pow(n, delta).neg(), &[up(j)]),
                    ],
                });
                out.push(Relation {
                    name: format!("{tag}grading-{pf}[{i},{j}]"),
                    anchor: "L_i X_j L_i^{-1} = v^{±δ_ij} X_j",
                    terms: vec![
                        term(int(n, 1), &[L(i), down(j), LInv(i)]),
                        term(v_pow(n, -delta).neg(), &[down(j)]),
                    ],
                });
                let c = if twisted { sev.c(i, j) } else { 0 };
                let mut terms = vec![
                    term(int(n, 1), &[up(i), down(j)]),
                    term(v_pow(n, c).neg(), &[down(j), up(i)]),
                ];
                if i == j {
                    let q = quantum_denominator(n);
                    terms.push(term(q.neg(), &[K(i)]));
                    terms.push(term(q, &[KInv(i)]));
                }
                out.push(Relation {
                    name: format!("{tag}commutator[{i},{j}]"),
                    anchor: "X_i Y_j - v^{c_ij} Y_j X_i = δ_ij (K_i - K_i^{-1})/(v - v^{-1})",
                    terms,
                });
            }
        }
        for i in 1..=r {
            for j in 1..=r {
                let gap = i.abs_diff(j);
                if gap > 1 && i < j {
                    for (g, label) in [(up, pe), (down, pf)] {
                        out.push(Relation {
                            name: format!("{tag}serre-distant-{label}[{i},{j}]"),
                            anchor: "X_i X_j = X_j X_i for |i-j| > 1",
                            terms: vec![
                                term(int(n, 1), &[g(i), g(j)]),
                                term(int(n, -1), &[g(j), g(i)]),
                            ],
                        });
                    }
                }
                if gap == 1 {
                    // With e_i = E_i K_i^i the twist exponent is c_{ji}.
                    let c = if twisted { sev.c(j, i) } else { 0 };
                    for (g, label) in [(up, pe), (down, pf)] {
                        out.push(adjacent_serre(
                            n,
                            format!("{tag}serre-adjacent-{label}[{i},{j}]"),
                            [g(i), g(j)],
                            c,
                        ));
                    }
                }
            }
        }
    }
    out
}

fn adjacent_serre(n: usize, name: String, [gi, gj]: [Generator; 2], c: i32) -> Relation {
    let mid = (&v_pow(n, c + 1) + &v_pow(n, c - 1)).neg();
    Relation {
        name,
        anchor: "X_i^2 X_j - v^c (v + v^{-1}) X_i X_j X_i + v^{2c} X_j X_i^2 = 0",
        terms: vec![
            term(int(n, 1), &[gi, gi, gj]),
            term(mid, &[gi, gj, gi]),
            term(v_pow(n, 2 * c), &[gj, gi, gi]),
        ],
    }
}

/// Adjacent Serre relations for `e, f` with the twist `v^{c_{ij}}`
/// instead of `v^{c_{ji}}`; these fail on the module.
pub fn twisted_serre_opposite_sign(n: usize) -> Vec<Relation> {
    use Generator::*;
    let sev = SevostyanovChoice::standard(n);
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) == 1 {
                for (g, label) in [(SmallE as fn(usize) -> Generator, "e"), (SmallF, "f")] {
                    out.push(adjacent_serre(
                        n,
                        format!("twisted-serre-adjacent-{label}-opposite[{i},{j}]"),
                        [g(i), g(j)],
                        sev.c(i, j),
                    ));
                }
            }
        }
    }
    out
}

/// Checks the given relations on every degree of the box.
pub fn verify_relation_set(
    relations: &[Relation],
    n: usize,
    tr: &Truncation,
    opts: &CheckOptions,
) -> Result<Vec<CheckRecord>> {
    let tasks: Vec<(usize, DegreeVector)> = (0..relations.len())
        .flat_map(|k| tr.degrees().into_iter().map(move |d| (k, d)))
        .collect();
    run_all(&tasks, |(k, d)| {
        Ok(vec![check_relation_at(&relations[*k], n, d, tr, opts)?])
    })
}

/// Degrees visited by `word` starting at `d`, or `None` below degree zero.
fn trajectory(word: &[GradedOperator], d: &DegreeVector) -> Option<Vec<DegreeVector>> {
    let mut cur = d.clone();
    let mut out = vec![cur.clone()];
    for op in word.iter().rev() {
        cur = op.target_degree(&cur)?;
        out.push(cur.clone());
    }
    Some(out)
}

fn orbit_in_box(words: &[Vec<GradedOperator>], d: &DegreeVector, tr: &Truncation) -> bool {
    words.iter().all(|w| match trajectory(w, d) {
        Some(path) => path.iter().all(|x| tr.contains(x)),
        None => true,
    })
}

/// Per-target lists of the terms `coeff · (word [p])_q`.
fn relation_terms(
    words: &[(RatFunc, Vec<GradedOperator>)],
    p: &FixedPoint,
    tr: &Truncation,
) -> Result<BTreeMap<FixedPoint, Vec<RatFunc>>> {
    let x = ModuleVector::basis(p);
    let mut out: BTreeMap<FixedPoint, Vec<RatFunc>> = BTreeMap::new();
    for (c, w) in words {
        if let Some(y) = apply_word(w, &x, tr)? {
            for (q, val) in y.iter() {
                out.entry(q.clone()).or_default().push(val.checked_mul(c)?);
            }
        }
    }
    Ok(out)
}

fn witness(p: &FixedPoint, q: &FixedPoint, value: &RatFunc) -> serde_json::Value {
    serde_json::json!({ "source": p, "target": q, "value": value })
}

fn check_relation_at(
    rel: &Relation,
    n: usize,
    d: &DegreeVector,
    tr: &Truncation,
    opts: &CheckOptions,
) -> Result<CheckRecord> {
    let words: Vec<(RatFunc, Vec<GradedOperator>)> = rel
        .terms
        .iter()
        .map(|t| {
            let ops = t
                .word
                .iter()
                .map(|g| GradedOperator::new(n, *g, opts.path, opts.conv))
                .collect::<Result<Vec<_>>>()?;
            Ok((t.coeff.clone(), ops))
        })
        .collect::<Result<_>>()?;
    let rec = CheckRecord::new(rel.name.clone(), rel.anchor, n, Some(d.clone()));
    let plain: Vec<_> = words.iter().map(|(_, w)| w.clone()).collect();
    if !orbit_in_box(&plain, d, tr) {
        return Ok(rec.skipped("relation orbit leaves the degree box"));
    }
    let mut quotient = false;
    let mut checked = 0usize;
    for p in enumerate(n, d)? {
        for (q, terms) in relation_terms(&words, &p, tr)? {
            checked += 1;
            match zero_sum_verdict(&terms, n, opts)? {
                ZeroVerdict::Free => {}
                ZeroVerdict::Quotient => quotient = true,
                ZeroVerdict::Nonzero(s) => {
                    return Ok(rec.fail(
                        format!("nonzero entry from {p:?} to {q:?}"),
                        Some(witness(&p, &q, &s)),
                    ))
                }
            }
        }
    }
    Ok(rec.pass(format!("{checked} entries; {}", ring_note(quotient))))
}

/// Checks every relation of [`relation_catalog`] on every degree of the box
/// whose relation orbit stays inside it.
pub fn verify_relations(n: usize, tr: &Truncation, opts: &CheckOptions) -> Result<Vec<CheckRecord>> {
    verify_relation_set(&relation_catalog(n), n, tr, opts)
}

/// Checks that `E_i F_i - F_i E_i` has no off-diagonal entries.
pub fn diagonality_check(n: usize, i: usize, tr: &Truncation, opts: &CheckOptions) -> Result<Vec<CheckRecord>> {
    use Generator::*;
    let degrees = tr.degrees();
    run_all(&degrees, |d| {
        let rec = CheckRecord::new(
            format!("commutator-diagonal[{i}]"),
            "E_i F_i - F_i E_i is diagonal in the fixed-point basis",
            n,
            Some(d.clone()),
        );
        let ef = vec![
            GradedOperator::new(n, E(i), opts.path, opts.conv)?,
            GradedOperator::new(n, F(i), opts.path, opts.conv)?,
        ];
        let fe = vec![ef[1], ef[0]];
        if !orbit_in_box(&[ef.clone(), fe.clone()], d, tr) {
            return Ok(vec![rec.skipped("commutator orbit leaves the degree box")]);
        }
        let words = vec![(RatFunc::from_int(n + 1, 1), ef), (RatFunc::from_int(n + 1, -1), fe)];
        let mut off = 0usize;
        for p in enumerate(n, d)? {
            for (q, terms) in relation_terms(&words, &p, tr)? {
                if q == p {
                    continue;
                }
                off += 1;
                if let ZeroVerdict::Nonzero(s) = zero_sum_verdict(&terms, n, opts)? {
                    return Ok(vec![rec.fail(
                        format!("off-diagonal entry from {p:?} to {q:?}"),
                        Some(witness(&p, &q, &s)),
                    )]);
                }
            }
        }
        Ok(vec![rec.pass(format!("{off} off-diagonal entries vanish"))])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{Status, Summary};
    use crate::umodule::k_scalar;

    // Exponent of v picked up by K_j^m when the degree moves along e_i.
    fn k_shift(n: usize, j: usize, i: usize) -> i32 {
        let d = DegreeVector::zero(n);
        let up = d.shifted(i, 1).unwrap();
        let a = k_scalar(n, j, &up).exponent().halves()[n];
        let b = k_scalar(n, j, &d).exponent().halves()[n];
        (a - b) / 2
    }

    // v-exponent collected by moving every K of e_a e_b e_c to the right.
    fn word_shift(n: usize, [a, b, c]: [usize; 3]) -> i32 {
        a as i32 * (k_shift(n, a, b) + k_shift(n, a, c)) + b as i32 * k_shift(n, b, c)
    }

    #[test]
    fn twist_exponent_follows_from_k_commutation() {
        let n = 4;
        let sev = SevostyanovChoice::standard(n);
        for i in 1..n {
            for j in 1..n {
                if i.abs_diff(j) != 1 {
                    continue;
                }
                let w1 = word_shift(n, [i, i, j]);
                let w2 = word_shift(n, [i, j, i]);
                let w3 = word_shift(n, [j, i, i]);
                assert_eq!(w1 - w2, sev.c(j, i));
                assert_eq!(w1 - w3, 2 * sev.c(j, i));
                assert_ne!(sev.c(i, j), sev.c(j, i));
            }
        }
    }

    #[test]
    fn n3_relations_pass_and_opposite_twist_fails() {
        let tr = Truncation::new(3, 2).unwrap();
        let opts = CheckOptions::default();
        let recs = verify_relations(3, &tr, &opts).unwrap();
        assert_eq!(Summary::of(&recs).fail, 0);
        let bad = verify_relation_set(&twisted_serre_opposite_sign(3), 3, &tr, &opts).unwrap();
        assert!(bad
            .iter()
            .any(|r| r.name.starts_with("twisted-serre-adjacent-e") && r.status == Status::Fail));
    }
}
