//! Satisfiability and entailment for Γ-formulas.
//!
//! [`Engine::Auto`] selects a polynomial engine from the language's flags
//! (constant assignment for 0-/1-valid languages, unit propagation for Horn
//! and dual Horn, implication graphs for bijunctive, elimination over GF(2)
//! for affine) and otherwise falls back to backtracking search.
//! [`Engine::Generic`] enumerates every assignment and serves as the oracle.
//!
//! Entailment `Φ ⊨ α` is refuted constraint by constraint: `Φ ⊭ C` iff
//! `Φ ∧ ¬D` is satisfiable for some clause (or equation) `D` of `C`.

mod cnf;
mod engines;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use cnf::{affine_equations, cnf_of, positive_cnf_of, Clause, Literal};

use crate::error::{Error, Result};
use crate::formulas::{Constraint, GammaFormula, Network};
use crate::limits::Limits;
use crate::relations::{tuple_bit, ConstraintLanguage, PropertyReport, Relation};
use engines::{horn_sat, two_sat, xor_sat, Row};

/// Solver strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    /// Fragment-aware dispatch.
    #[default]
    Auto,
    /// Exhaustive enumeration only.
    Generic,
}

/// The polynomial engine a language admits, in order of preference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fragment {
    Horn,
    DualHorn,
    Bijunctive,
    Affine,
    General,
}

impl Fragment {
    pub fn of(report: &PropertyReport) -> Fragment {
        if report.horn {
            Fragment::Horn
        } else if report.dual_horn {
            Fragment::DualHorn
        } else if report.bijunctive {
            Fragment::Bijunctive
        } else if report.affine {
            Fragment::Affine
        } else {
            Fragment::General
        }
    }
}

#[derive(Debug)]
enum Template {
    Clauses(Vec<Clause>),
    Equations(Vec<(u32, bool)>),
    None,
}

/// Decision procedures bound to one constraint language.
#[derive(Debug)]
pub struct Solver {
    language: ConstraintLanguage,
    report: PropertyReport,
    fragment: Fragment,
    engine: Engine,
    limits: Limits,
    templates: BTreeMap<String, Template>,
}

/// Network variables of a compiled query plus the premises.
struct Query<'a> {
    net: Network,
    premises: Vec<&'a Constraint>,
}

impl Solver {
    pub fn new(language: ConstraintLanguage, engine: Engine, limits: Limits) -> Self {
        let report = language.properties();
        let fragment = Fragment::of(&report);
        let templates = language
            .relations()
            .map(|r| {
                let t = match fragment {
                    Fragment::Horn | Fragment::DualHorn | Fragment::Bijunctive => {
                        Template::Clauses(cnf_of(r))
                    }
                    Fragment::Affine => {
                        Template::Equations(affine_equations(r).expect("affine language"))
                    }
                    Fragment::General => Template::None,
                };
                (r.name().to_string(), t)
            })
            .collect();
        Solver {
            language,
            report,
            fragment,
            engine,
            limits,
            templates,
        }
    }

    pub fn language(&self) -> &ConstraintLanguage {
        &self.language
    }

    pub fn report(&self) -> &PropertyReport {
        &self.report
    }

    pub fn fragment(&self) -> Fragment {
        self.fragment
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn check(&self, f: &GammaFormula) -> Result<()> {
        for c in f.constraints() {
            match self.language.get(c.relation().name()) {
                Some(r) if Arc::ptr_eq(r, c.relation()) || r == c.relation() => {}
                _ => return Err(Error::UnknownRelation(c.relation().name().to_string())),
            }
        }
        Ok(())
    }

    fn query<'a>(
        &self,
        phi: &[&'a GammaFormula],
        alpha: Option<&'a GammaFormula>,
    ) -> Result<Query<'a>> {
        for f in phi.iter().copied().chain(alpha) {
            self.check(f)?;
        }
        let premises: Vec<&Constraint> = phi.iter().flat_map(|f| f.constraints()).collect();
        let all = premises
            .iter()
            .copied()
            .chain(alpha.into_iter().flat_map(|a| a.constraints()));
        let mut net = Network::new(all.flat_map(|c| c.args().iter().cloned()));
        for c in &premises {
            net.add(c);
        }
        Ok(Query { net, premises })
    }

    /// Whether the conjunction of `phi` has a model. The empty set is consistent.
    pub fn is_consistent<'a>(
        &self,
        phi: impl IntoIterator<Item = &'a GammaFormula>,
    ) -> Result<bool> {
        let phi: Vec<&GammaFormula> = phi.into_iter().collect();
        let q = self.query(&phi, None)?;
        match self.engine {
            Engine::Generic => naive_exists(&q.net, &self.limits, |_| true),
            Engine::Auto => {
                if self.report.zero_valid || self.report.one_valid {
                    return Ok(true);
                }
                match self.fragment {
                    Fragment::General => {
                        let done = q.net.for_each_model(&self.limits, |_| false)?;
                        Ok(!done)
                    }
                    _ => Ok(self.fast_sat(&q, &Negation::Nothing)),
                }
            }
        }
    }

    /// Whether every model of `phi` (over `var(phi) ∪ var(alpha)`) satisfies `alpha`.
    pub fn entails<'a>(
        &self,
        phi: impl IntoIterator<Item = &'a GammaFormula>,
        alpha: &GammaFormula,
    ) -> Result<bool> {
        let phi: Vec<&GammaFormula> = phi.into_iter().collect();
        let q = self.query(&phi, Some(alpha))?;
        let goal: Vec<_> = alpha.constraints().iter().map(|c| q.net.compile(c)).collect();
        match self.engine {
            Engine::Generic => {
                let refuted =
                    naive_exists(&q.net, &self.limits, |v| !goal.iter().all(|c| c.holds(v)))?;
                Ok(!refuted)
            }
            Engine::Auto => match self.fragment {
                Fragment::General => {
                    for c in alpha.constraints() {
                        let mut net = q.net.clone();
                        let negated = Arc::new(negate(c.relation()));
                        net.add(&c.with_relation(negated));
                        if !net.for_each_model(&self.limits, |_| false)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
                _ => {
                    for c in alpha.constraints() {
                        let args: Vec<usize> = c.args().iter().map(|v| q.net.index[v]).collect();
                        match &self.templates[c.relation().name()] {
                            Template::Clauses(cs) => {
                                for cl in cs {
                                    if let Some(lits) = instantiate(cl, &args) {
                                        if self.fast_sat(&q, &Negation::Clause(lits)) {
                                            return Ok(false);
                                        }
                                    }
                                }
                            }
                            Template::Equations(eqs) => {
                                for &(w, b) in eqs {
                                    let mut row = equation_row(w, b, &args, c.relation(), q.net.len());
                                    row.rhs = !row.rhs;
                                    if self.fast_sat(&q, &Negation::Equation(row)) {
                                        return Ok(false);
                                    }
                                }
                            }
                            Template::None => unreachable!("fast fragment has templates"),
                        }
                    }
                    Ok(true)
                }
            },
        }
    }

    /// Satisfiability of the premises conjoined with a negated clause or equation.
    fn fast_sat(&self, q: &Query<'_>, extra: &Negation) -> bool {
        let n = q.net.len();
        match &self.fragment {
            Fragment::Affine => {
                let mut rows = Vec::new();
                for c in &q.premises {
                    let args: Vec<usize> = c.args().iter().map(|v| q.net.index[v]).collect();
                    let Template::Equations(eqs) = &self.templates[c.relation().name()] else {
                        unreachable!()
                    };
                    for &(w, b) in eqs {
                        rows.push(equation_row(w, b, &args, c.relation(), n));
                    }
                }
                match extra {
                    Negation::Nothing => {}
                    Negation::Equation(r) => rows.push(r.clone()),
                    Negation::Clause(lits) => {
                        for l in lits {
                            let mut r = Row::zero(n);
                            r.toggle(l.var);
                            r.rhs = !l.positive;
                            rows.push(r);
                        }
                    }
                }
                xor_sat(rows)
            }
            frag => {
                let mut clauses: Vec<Vec<Literal>> = Vec::new();
                for c in &q.premises {
                    let args: Vec<usize> = c.args().iter().map(|v| q.net.index[v]).collect();
                    let Template::Clauses(cs) = &self.templates[c.relation().name()] else {
                        unreachable!()
                    };
                    clauses.extend(cs.iter().filter_map(|cl| instantiate(cl, &args)));
                }
                if let Negation::Clause(lits) = extra {
                    clauses.extend(lits.iter().map(|l| vec![l.negated()]));
                }
                match frag {
                    Fragment::Horn => horn_sat(n, &clauses),
                    Fragment::DualHorn => {
                        for c in clauses.iter_mut() {
                            for l in c.iter_mut() {
                                *l = l.negated();
                            }
                        }
                        horn_sat(n, &clauses)
                    }
                    Fragment::Bijunctive => two_sat(n, &clauses),
                    _ => unreachable!(),
                }
            }
        }
    }
}

enum Negation {
    Nothing,
    Clause(Vec<Literal>),
    Equation(Row),
}

/// `¬R`; `R` nontrivial so the complement is too.
fn negate(r: &Relation) -> Relation {
    r.negation(format!("not_{}", r.name()))
}

/// A template clause over network variables; `None` if it became tautological.
fn instantiate(clause: &Clause, args: &[usize]) -> Option<Vec<Literal>> {
    let mut out: Vec<Literal> = Vec::with_capacity(clause.literals().len());
    for l in clause.literals() {
        let lit = Literal {
            var: args[l.var],
            positive: l.positive,
        };
        if out.contains(&lit.negated()) {
            return None;
        }
        if !out.contains(&lit) {
            out.push(lit);
        }
    }
    Some(out)
}

fn equation_row(w: u32, b: bool, args: &[usize], r: &Relation, n: usize) -> Row {
    let k = r.arity();
    let mut row = Row::zero(n);
    for (i, &a) in args.iter().enumerate() {
        if tuple_bit(w, i, k) {
            row.toggle(a);
        }
    }
    row.rhs = b;
    row
}

/// Whether some assignment satisfies the network and `pred`, by plain
/// enumeration of all `2^n` assignments.
fn naive_exists(
    net: &Network,
    limits: &Limits,
    pred: impl Fn(&[bool]) -> bool,
) -> Result<bool> {
    let n = net.len();
    limits.check_vars(n)?;
    let mut values = vec![false; n];
    for bits in 0..1u64 << n {
        for (i, v) in values.iter_mut().enumerate() {
            *v = (bits >> (n - 1 - i)) & 1 == 1;
        }
        if net.constraints.iter().all(|c| c.holds(&values)) && pred(&values) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::vars;
    use crate::relations::catalog;

    fn solver(rels: Vec<Relation>, engine: Engine) -> Solver {
        Solver::new(
            ConstraintLanguage::new(rels).unwrap(),
            engine,
            Limits::default(),
        )
    }

    fn atom(s: &Solver, name: &str, args: Vec<crate::formulas::Var>) -> GammaFormula {
        GammaFormula::atom(s.language().get(name).unwrap(), args)
    }

    #[test]
    fn consistency_examples() {
        for engine in [Engine::Auto, Engine::Generic] {
            let s = solver(vec![catalog::t(), catalog::f()], engine);
            let tx = atom(&s, "T", vars(["x"]));
            let fx = atom(&s, "F", vars(["x"]));
            assert!(!s.is_consistent([&tx, &fx]).unwrap());
            assert!(s.is_consistent([]).unwrap());

            let s = solver(vec![catalog::nae3(), catalog::t()], engine);
            let n = atom(&s, "NAE3", vars(["x", "y", "z"]));
            let ts: Vec<_> = ["x", "y", "z"]
                .iter()
                .map(|&v| atom(&s, "T", vec![v.into()]))
                .collect();
            let all: Vec<&GammaFormula> = std::iter::once(&n).chain(&ts).collect();
            assert!(!s.is_consistent(all).unwrap());
        }
    }

    #[test]
    fn entailment_examples() {
        for engine in [Engine::Auto, Engine::Generic] {
            let s = solver(vec![catalog::implies(), catalog::t(), catalog::f()], engine);
            let ab = atom(&s, "IMPL", vars(["a", "b"]));
            let bc = atom(&s, "IMPL", vars(["b", "c"]));
            let ac = atom(&s, "IMPL", vars(["a", "c"]));
            assert!(s.entails([&ab, &bc], &ac).unwrap());
            assert!(!s.entails([&ab], &ac).unwrap());
            assert!(!s.entails([], &atom(&s, "T", vars(["x"]))).unwrap());
            let fx = atom(&s, "F", vars(["x"]));
            assert!(s.entails([&fx], &atom(&s, "IMPL", vars(["x", "y"]))).unwrap());
        }
    }

    #[test]
    fn each_fragment_agrees_with_enumeration() {
        let langs = vec![
            (vec![catalog::implies(), catalog::t(), catalog::f()], Fragment::Horn),
            (vec![catalog::or2(), catalog::t(), catalog::f()], Fragment::DualHorn),
            (vec![catalog::neq(), catalog::or2(), catalog::nand2()], Fragment::Bijunctive),
            (vec![catalog::xor3(), catalog::neq(), catalog::f()], Fragment::Affine),
            (vec![catalog::nae3(), catalog::t()], Fragment::General),
        ];
        let names = ["a", "b", "c", "d"];
        for (rels, frag) in langs {
            let fast = solver(rels.clone(), Engine::Auto);
            let slow = solver(rels, Engine::Generic);
            assert_eq!(fast.fragment(), frag);
            let atoms: Vec<GammaFormula> = fast
                .language()
                .relations()
                .flat_map(|r| {
                    let k = r.arity();
                    (0..4usize.pow(k as u32)).step_by(3).map(move |code| {
                        let args = (0..k)
                            .map(|i| names[(code / 4usize.pow(i as u32)) % 4].into())
                            .collect();
                        GammaFormula::atom(r, args)
                    })
                })
                .collect();
            for (i, a) in atoms.iter().enumerate() {
                for b in &atoms[i..] {
                    for goal in &atoms {
                        assert_eq!(
                            fast.is_consistent([a, b]).unwrap(),
                            slow.is_consistent([a, b]).unwrap()
                        );
                        assert_eq!(
                            fast.entails([a, b], goal).unwrap(),
                            slow.entails([a, b], goal).unwrap(),
                            "{a} & {b} |= {goal} ({frag:?})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn foreign_relations_are_rejected() {
        let s = solver(vec![catalog::t()], Engine::Auto);
        let f = GammaFormula::atom(&Arc::new(catalog::f()), vars(["x"]));
        assert!(matches!(s.is_consistent([&f]), Err(Error::UnknownRelation(_))));
        let fake_t = GammaFormula::atom(&Arc::new(catalog::f().renamed("T")), vars(["x"]));
        assert!(s.is_consistent([&fake_t]).is_err());
    }
}
