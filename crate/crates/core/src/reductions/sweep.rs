//! Small enumerated source families and the soundness sweep that checks
//! every reduction against the source oracles on them.

use std::sync::Arc;

use super::abduction::AbdInstance;
use super::cnf::CnfInput;
use super::{reduce, solve_target, source_answer, ReductionKind, Source, SourceKind, SourceProblem};
use crate::error::Result;
use crate::formulas::{ArgInstance, Constraint, GammaFormula, Var};
use crate::limits::Limits;
use crate::logic::Engine;
use crate::relations::{catalog, ConstraintLanguage, Relation};

/// Multisets of size `k` drawn from `0..n`, as nondecreasing index lists.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Every non-tautological clause over `1..=n` without repeated variables.
fn clauses_over(n: usize, positive_only: bool) -> Vec<Vec<i32>> {
    let options: &[i32] = if positive_only { &[0, 1] } else { &[0, 1, -1] };
    let mut out = vec![Vec::new()];
    for j in 1..=n as i32 {
        out = out
            .into_iter()
            .flat_map(|c| {
                options.iter().map(move |&s| {
                    let mut c = c.clone();
                    if s != 0 {
                        c.push(s * j);
                    }
                    c
                })
            })
            .collect();
    }
    out.retain(|c| !c.is_empty());
    out
}

/// All CNFs over `1..=n` for `n ≤ max_vars` with between `min_clauses` and
/// `max_clauses` clauses, as multisets (repeated clauses included).
pub fn cnf_family(max_vars: usize, min_clauses: usize, max_clauses: usize, positive_only: bool) -> Vec<CnfInput> {
    let mut out = Vec::new();
    for n in 1..=max_vars {
        let pool = clauses_over(n, positive_only);
        for k in min_clauses..=max_clauses {
            for pick in multisets(pool.len(), k) {
                let cs = pick.iter().map(|&i| pool[i].clone()).collect();
                out.push(CnfInput::new(n, cs).expect("enumerated clauses are well-formed"));
            }
        }
    }
    out
}

fn tuples_rel(name: &str, arity: usize, tuples: &[&str]) -> Relation {
    Relation::from_strs(name, arity, tuples.iter().copied()).expect("fixed relation")
}

/// The fixed two-relation language each abduction-source kind is swept over.
pub fn abduction_language(kind: ReductionKind) -> Option<ConstraintLanguage> {
    use ReductionKind::*;
    let rels = match kind {
        AbdpArgNeq => vec![catalog::nae3(), catalog::neq()],
        AbdpArgAndNot => vec![catalog::one_in_three(), catalog::or2()],
        AbdArgrelBothValid | AbdArgrelBothValidStep2 => vec![
            tuples_rel("RH", 3, &["000", "100", "010", "001", "111"]),
            tuples_rel("RD", 3, &["000", "011", "101", "110", "111"]),
        ],
        AbdArgrelOneValid | AbdArgrelOneValidStep2 => vec![catalog::xor3(), catalog::or2()],
        _ => return None,
    };
    Some(ConstraintLanguage::new(rels).expect("distinct names"))
}

/// Ordered tuples of distinct variables from `pool`.
fn arg_tuples(pool: &[Var], arity: usize) -> Vec<Vec<Var>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Var>| {
                pool.iter()
                    .filter(|v| !t.contains(v))
                    .map(|v| {
                        let mut t = t.clone();
                        t.push(v.clone());
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn atoms(language: &ConstraintLanguage, pool: &[Var]) -> Vec<Constraint> {
    language
        .relations()
        .flat_map(|r| {
            arg_tuples(pool, r.arity())
                .into_iter()
                .map(move |args| Constraint::new(r.clone(), args).expect("arity matches"))
        })
        .collect()
}

/// Abduction instances over `language`: `φ` is one constraint in canonical
/// argument order `(a, b, …)` optionally followed by any second constraint
/// over `{a, b, c, d}`; every `q` and every `H ∌ q` with `|H| ≤ 2`.
pub fn abduction_family(language: &ConstraintLanguage) -> Vec<AbdInstance> {
    let pool: Vec<Var> = ["a", "b", "c", "d"].into_iter().map(Var::from).collect();
    let seconds = atoms(language, &pool);
    let mut phis = Vec::new();
    for r in language.relations() {
        let first = Constraint::new(r.clone(), pool[..r.arity()].to_vec()).expect("arity matches");
        phis.push(GammaFormula::single(first.clone()));
        for s in &seconds {
            phis.push(GammaFormula::new(vec![first.clone(), s.clone()]).expect("nonempty"));
        }
    }
    let mut out = Vec::new();
    for phi in &phis {
        for q in &pool {
            let rest: Vec<&Var> = pool.iter().filter(|v| *v != q).collect();
            let mut hs: Vec<Vec<Var>> = vec![Vec::new()];
            for (i, a) in rest.iter().enumerate() {
                hs.push(vec![(*a).clone()]);
                for b in &rest[i + 1..] {
                    hs.push(vec![(*a).clone(), (*b).clone()]);
                }
            }
            for h in hs {
                out.push(AbdInstance::new(language.clone(), phi.clone(), h, q.clone()).expect("q ∉ H"));
            }
        }
    }
    out
}

/// Instances whose knowledge base is every multiset of 1 to `max_kb` atoms
/// over `kb_language` on `{a, b, c}`, and whose claim is any single atom
/// over `claim_language`.
pub fn atom_family(
    kb_language: &ConstraintLanguage,
    claim_language: &ConstraintLanguage,
    max_kb: usize,
) -> Vec<ArgInstance> {
    let pool: Vec<Var> = ["a", "b", "c"].into_iter().map(Var::from).collect();
    let kb_atoms = atoms(kb_language, &pool);
    let claims = atoms(claim_language, &pool);
    let language = kb_language.union(claim_language).expect("compatible languages");
    let mut out = Vec::new();
    for k in 1..=max_kb {
        for pick in multisets(kb_atoms.len(), k) {
            let delta: Vec<GammaFormula> =
                pick.iter().map(|&i| GammaFormula::single(kb_atoms[i].clone())).collect();
            for c in &claims {
                out.push(
                    ArgInstance::with_default_labels(
                        language.clone(),
                        delta.clone(),
                        GammaFormula::single(c.clone()),
                        None,
                    )
                    .expect("well-formed"),
                );
            }
        }
    }
    out
}

/// Complementive ternary relation: every tuple except `011` and `100`.
pub fn cbv3() -> Relation {
    tuples_rel("CBV3", 3, &["000", "001", "010", "101", "110", "111"])
}

fn lang(rels: impl IntoIterator<Item = Relation>) -> ConstraintLanguage {
    ConstraintLanguage::from_shared(rels.into_iter().map(Arc::new)).expect("distinct names")
}

/// The enumerated source family for `kind`.
pub fn family(kind: ReductionKind) -> Vec<Source> {
    use ReductionKind::*;
    match kind.source() {
        SourceKind::Problem(p) if p.takes_cnf() => {
            // constructions emitting a conjunction over clauses need one
            let min = usize::from(p != SourceProblem::CriticalSat);
            cnf_family(3, min, 3, p == SourceProblem::Pos1In3)
                .into_iter()
                .map(Source::Cnf)
                .collect()
        }
        SourceKind::Problem(_) => {
            let language = abduction_language(kind).expect("abduction kinds have a language");
            abduction_family(&language).into_iter().map(Source::Abd).collect()
        }
        SourceKind::Arg => {
            let l = lang([catalog::implies(), catalog::nand2()]);
            atom_family(&l, &l, 3).into_iter().map(Source::Arg).collect()
        }
        SourceKind::ArgCheck => {
            let (gamma, claims) = match kind {
                ArgcheckTElimEq => {
                    let g = lang([cbv3(), catalog::eq()]);
                    let all = g.union(&lang([catalog::t()])).expect("distinct");
                    (g, all)
                }
                _ => {
                    let g = lang([catalog::nae3(), catalog::neq()]);
                    (g.clone(), g)
                }
            };
            let kb = gamma.union(&lang([catalog::t()])).expect("distinct");
            atom_family(&kb, &claims, 3).into_iter().map(Source::Arg).collect()
        }
    }
}

/// A source whose oracle answer differs from the target solver's.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub source: Source,
    pub expected: bool,
    pub got: bool,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub kind: ReductionKind,
    pub cases: usize,
    /// Sources with a YES answer.
    pub yes: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Reduces every source in `sources` and compares the answers.
pub fn sweep_sources(
    kind: ReductionKind,
    sources: &[Source],
    engine: Engine,
    limits: Limits,
) -> Result<SweepReport> {
    let mut report = SweepReport {
        kind,
        cases: 0,
        yes: 0,
        mismatches: Vec::new(),
    };
    for source in sources {
        let expected = source_answer(kind, source, limits)?;
        let target = reduce(kind, source)?;
        let got = solve_target(kind.target(), &target, engine, limits)?;
        report.cases += 1;
        report.yes += usize::from(expected);
        if expected != got {
            report.mismatches.push(Mismatch {
                source: source.clone(),
                expected,
                got,
            });
        }
    }
    Ok(report)
}

pub fn sweep(kind: ReductionKind, engine: Engine, limits: Limits) -> Result<SweepReport> {
    sweep_sources(kind, &family(kind), engine, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(clauses_over(3, false).len(), 26);
        assert_eq!(clauses_over(3, true).len(), 7);
        assert_eq!(multisets(26, 3).len(), 3276);
        // n = 1, 2, 3 with 0..=3 clauses
        assert_eq!(cnf_family(3, 0, 3, false).len(), 10 + 165 + 3654);
    }

    #[test]
    fn abduction_family_shape() {
        let l = abduction_language(ReductionKind::AbdpArgNeq).unwrap();
        let fam = abduction_family(&l);
        // (1 + 24 + 12) theories per first relation, 4 observations, 7 hypothesis sets
        assert_eq!(fam.len(), 2 * 37 * 4 * 7);
        assert!(fam.iter().all(|a| !a.hypotheses.contains(&a.q)));
    }

    #[test]
    fn cbv3_is_complementive() {
        assert!(cbv3().properties().complementive);
    }
}
