//! Gadgets: small target relations expressed as (possibly quantified)
//! Γ-formulas by identifying variables of a single constraint.
//!
//! A language is condensed into the Cartesian product `R` of its relations;
//! a constraint `R(x₁…x_K)` then unfolds into one constraint per relation on
//! consecutive argument slices. Every construction is a list of *sections*
//! (argument vectors for `R`) plus existential variables, chosen from the
//! first witnesses in canonical tuple order. Dual targets run the
//! construction on the coordinate-wise dual of `R` and realize the result
//! with the original relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formulas::{Constraint, GammaFormula, Network, QuantifiedFormula, Var};
use crate::limits::Limits;
use crate::relations::{catalog, tuple_bit, ConstraintLanguage, PropertyReport, Relation, MAX_ARITY};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetTarget {
    Neq,
    Impl,
    AndNot,
    TConst,
    FConst,
    Eq,
    EqAndT,
    EqAndF,
    EqExists,
}

impl GadgetTarget {
    pub const ALL: [GadgetTarget; 9] = [
        GadgetTarget::Neq,
        GadgetTarget::Impl,
        GadgetTarget::AndNot,
        GadgetTarget::TConst,
        GadgetTarget::FConst,
        GadgetTarget::Eq,
        GadgetTarget::EqAndT,
        GadgetTarget::EqAndF,
        GadgetTarget::EqExists,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            GadgetTarget::Neq => "neq",
            GadgetTarget::Impl => "impl",
            GadgetTarget::AndNot => "and-not",
            GadgetTarget::TConst => "t",
            GadgetTarget::FConst => "f",
            GadgetTarget::Eq => "eq",
            GadgetTarget::EqAndT => "eq-and-t",
            GadgetTarget::EqAndF => "eq-and-f",
            GadgetTarget::EqExists => "eq-exists",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        GadgetTarget::ALL.into_iter().find(|t| t.name() == s)
    }

    /// The relation the gadget must define, over its free variables in order.
    pub fn reference(self) -> Relation {
        match self {
            GadgetTarget::Neq => catalog::neq(),
            GadgetTarget::Impl => catalog::implies(),
            GadgetTarget::AndNot => catalog::and_not(),
            GadgetTarget::TConst => catalog::t(),
            GadgetTarget::FConst => catalog::f(),
            GadgetTarget::Eq | GadgetTarget::EqExists => catalog::eq(),
            GadgetTarget::EqAndT => catalog::eq_and_t(),
            GadgetTarget::EqAndF => catalog::eq_and_f(),
        }
    }

    /// Whether a language with flags `p` admits the construction.
    pub fn applies_to(self, p: &PropertyReport) -> bool {
        let (c, z, o) = (p.complementive, p.zero_valid, p.one_valid);
        match self {
            GadgetTarget::Neq => c && !z && !o,
            GadgetTarget::Impl => !c && z && o,
            GadgetTarget::AndNot => !c && !z && !o,
            GadgetTarget::TConst => o && !z,
            GadgetTarget::FConst => z && !o,
            GadgetTarget::Eq => z && o,
            GadgetTarget::EqAndT => o && !z && !p.positive,
            GadgetTarget::EqAndF => z && !o && !p.negative,
            GadgetTarget::EqExists => !p.schaefer,
        }
    }

    fn requirement(self) -> &'static str {
        match self {
            GadgetTarget::Neq => "complementive and neither 0-valid nor 1-valid",
            GadgetTarget::Impl => "0-valid and 1-valid but not complementive",
            GadgetTarget::AndNot => "not complementive, not 0-valid, not 1-valid",
            GadgetTarget::TConst => "1-valid and not 0-valid",
            GadgetTarget::FConst => "0-valid and not 1-valid",
            GadgetTarget::Eq => "0-valid and 1-valid",
            GadgetTarget::EqAndT => "1-valid but neither 0-valid nor positive",
            GadgetTarget::EqAndF => "0-valid but neither 1-valid nor negative",
            GadgetTarget::EqExists => "not Schaefer",
        }
    }
}

impl fmt::Display for GadgetTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A constructed gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    pub target: GadgetTarget,
    pub formula: QuantifiedFormula,
}

impl Expression {
    /// The formula itself when it has no quantifiers.
    pub fn as_gamma(&self) -> Option<GammaFormula> {
        if self.formula.exists().is_empty() && self.formula.equalities().is_empty() {
            GammaFormula::new(self.formula.body().to_vec()).ok()
        } else {
            None
        }
    }
}

/// Argument vector for the condensed relation.
type Section = Vec<Var>;

#[derive(Default)]
struct Plan {
    sections: Vec<Section>,
    exists: Vec<Var>,
}

impl Plan {
    fn push(&mut self, s: Section) {
        if !self.sections.contains(&s) {
            self.sections.push(s);
        }
    }

    fn extend(&mut self, other: Plan) {
        for s in other.sections {
            self.push(s);
        }
        for v in other.exists {
            if !self.exists.contains(&v) {
                self.exists.push(v);
            }
        }
    }
}

/// The relations of a language and their Cartesian product.
struct Condensed {
    parts: Vec<Arc<Relation>>,
    product: Relation,
}

impl Condensed {
    fn new(language: &ConstraintLanguage) -> Result<Self> {
        let parts: Vec<Arc<Relation>> = language.relations().cloned().collect();
        let total: usize = parts.iter().map(|r| r.arity()).sum();
        if total > MAX_ARITY {
            return Err(Error::Precondition(format!(
                "total arity {total} of the language exceeds {MAX_ARITY}"
            )));
        }
        let product = Relation::from_fn("PRODUCT", total, |t| {
            let mut shift = total;
            parts.iter().all(|r| {
                shift -= r.arity();
                r.contains((t >> shift) & r.full_tuple())
            })
        })?;
        Ok(Condensed { parts, product })
    }

    fn realize(&self, plan: &Plan) -> Vec<Constraint> {
        let mut out: Vec<Constraint> = Vec::new();
        for s in &plan.sections {
            let mut at = 0;
            for r in &self.parts {
                let c = Constraint::new(r.clone(), s[at..at + r.arity()].to_vec())
                    .expect("slice has the relation's arity");
                at += r.arity();
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    }
}

fn split2(m: u32, k: usize, v0: &Var, v1: &Var) -> Section {
    (0..k)
        .map(|i| if tuple_bit(m, i, k) { v1.clone() } else { v0.clone() })
        .collect()
}

/// Coordinate `i` goes to `vs[2·m₁ᵢ + m₂ᵢ]`.
fn split4(m1: u32, m2: u32, k: usize, vs: [&Var; 4]) -> Section {
    (0..k)
        .map(|i| {
            let idx = 2 * usize::from(tuple_bit(m1, i, k)) + usize::from(tuple_bit(m2, i, k));
            vs[idx].clone()
        })
        .collect()
}

/// Tuples over `free` extending to an assignment satisfying every section.
fn plan_tuples(r: &Relation, sections: &[Section], free: &[Var]) -> BTreeSet<u32> {
    let vars: Vec<&Var> = sections
        .iter()
        .flatten()
        .chain(free)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pos: BTreeMap<&Var, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let n = vars.len();
    let mut out = BTreeSet::new();
    for bits in 0..1u32 << n {
        let val = |v: &Var| (bits >> pos[v]) & 1 == 1;
        let ok = sections.iter().all(|s| {
            r.contains(s.iter().fold(0u32, |acc, v| (acc << 1) | u32::from(val(v))))
        });
        if ok {
            out.insert(free.iter().fold(0u32, |acc, v| (acc << 1) | u32::from(val(v))));
        }
    }
    out
}

fn v(name: &str) -> Var {
    Var::from(name)
}

fn no_witness(what: &str) -> Error {
    Error::Construction(format!("no {what} witness"))
}

/// `x ≠ y` from `m ∈ R`; needs complementive, neither 0- nor 1-valid.
fn plan_neq(r: &Relation, x: &Var, y: &Var) -> Result<Plan> {
    let m = r.tuples().next().expect("nonempty");
    Ok(Plan {
        sections: vec![split2(m, r.arity(), x, y)],
        exists: vec![],
    })
}

/// `x → y` (or, with `swap`, `x ∧ ¬y`) from the first `m ∈ R` with `m̄ ∉ R`.
fn plan_from_non_complement(r: &Relation, x: &Var, y: &Var, swap: bool) -> Result<Plan> {
    let full = r.full_tuple();
    let m = r
        .tuples()
        .find(|&m| !r.contains(m ^ full))
        .ok_or_else(|| no_witness("non-complementive"))?;
    let s = if swap {
        split2(m, r.arity(), y, x)
    } else {
        split2(m, r.arity(), x, y)
    };
    Ok(Plan {
        sections: vec![s],
        exists: vec![],
    })
}

/// `T(x)` for 1-valid, not 0-valid `R`: all coordinates identified.
fn plan_t(r: &Relation, x: &Var) -> Plan {
    Plan {
        sections: vec![vec![x.clone(); r.arity()]],
        exists: vec![],
    }
}

/// `x = y` for 0- and 1-valid `R`, from the first non-member other than
/// `0^k`, `1^k`.
fn plan_eq(r: &Relation, x: &Var, y: &Var) -> Result<Plan> {
    let full = r.full_tuple();
    let m = r
        .non_members()
        .find(|&m| m != 0 && m != full)
        .ok_or_else(|| no_witness("non-member"))?;
    let k = r.arity();
    Ok(Plan {
        sections: vec![split2(m, k, x, y), split2(m, k, y, x)],
        exists: vec![],
    })
}

/// `(x = y) ∧ z` for 1-valid `R` that is neither 0-valid nor positive.
fn plan_eq_and_t(r: &Relation, x: &Var, y: &Var, z: &Var) -> Result<Plan> {
    let k = r.arity();
    let free = [x.clone(), y.clone(), z.clone()];
    let want: BTreeSet<u32> = [0b001, 0b111].into();
    let p = r.properties();
    let mut plan = Plan::default();
    if p.in_is0 {
        let entails_pos = |i: usize| r.tuples().all(|t| tuple_bit(t, i, k));
        let equal = |i: usize, j: usize| {
            r.tuples()
                .all(|t| tuple_bit(t, i, k) == tuple_bit(t, j, k))
        };
        let (pivot, class) = (0..k)
            .filter(|&i| !entails_pos(i))
            .map(|i| (i, (0..k).filter(|&j| equal(i, j)).collect::<Vec<_>>()))
            .find(|(_, w)| w.len() >= 2)
            .ok_or_else(|| no_witness("forced-equality"))?;
        let section: Section = (0..k)
            .map(|i| {
                if i == pivot {
                    x.clone()
                } else if class.contains(&i) {
                    y.clone()
                } else {
                    z.clone()
                }
            })
            .collect();
        plan.push(section);
        if plan_tuples(r, &plan.sections, &free) != want {
            plan.extend(plan_t(r, z));
        }
    } else {
        let tuples: Vec<u32> = r.tuples().collect();
        let full = r.full_tuple();
        let (m1, m2) = tuples
            .iter()
            .flat_map(|&a| tuples.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| !r.contains((!a | b) & full))
            .ok_or_else(|| no_witness("implication-closure"))?;
        // V00 → x, V01 → z, V10 → y, V11 → z
        plan.push(split4(m1, m2, k, [x, z, y, z]));
        plan.push(split4(m1, m2, k, [y, z, x, z]));
        plan.extend(plan_t(r, z));
    }
    Ok(plan)
}

/// `x ≠ y` for a non-Schaefer, non-complementive `R` that is neither 0- nor
/// 1-valid, given variables `t`, `f` constrained elsewhere to `t ∧ ¬f`.
fn plan_neq_via_pairs(r: &Relation, x: &Var, y: &Var, t: &Var, f: &Var) -> Result<Plan> {
    let k = r.arity();
    let tuples: Vec<u32> = r.tuples().collect();
    let pair = |op: fn(u32, u32) -> u32| {
        tuples
            .iter()
            .flat_map(|&a| tuples.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| !r.contains(op(a, b)))
    };
    let (m1, m2) = pair(|a, b| a & b).ok_or_else(|| no_witness("Horn-violating"))?;
    let (m3, m4) = pair(|a, b| a | b).ok_or_else(|| no_witness("dual-Horn-violating"))?;
    // V00 → f, V01 → x, V10 → y, V11 → t
    let mut plan = Plan::default();
    plan.push(split4(m1, m2, k, [f, x, y, t]));
    plan.push(split4(m3, m4, k, [f, x, y, t]));
    Ok(plan)
}

fn plan_eq_exists(r: &Relation) -> Result<Plan> {
    let p = r.properties();
    let (x, y, z) = (v("x"), v("y"), v("z"));
    if p.zero_valid && p.one_valid {
        return plan_eq(r, &x, &y);
    }
    if p.one_valid || p.zero_valid {
        let base = if p.one_valid { r.clone() } else { r.dual("DUAL") };
        let mut plan = plan_eq_and_t(&base, &x, &y, &z)?;
        plan.exists.push(z);
        return Ok(plan);
    }
    let mut plan = Plan::default();
    if p.complementive {
        plan.extend(plan_neq(r, &x, &z)?);
        plan.extend(plan_neq(r, &z, &y)?);
        plan.exists.push(z);
    } else {
        let (t, f) = (v("t"), v("f"));
        plan.extend(plan_neq_via_pairs(r, &x, &z, &t, &f)?);
        plan.extend(plan_neq_via_pairs(r, &z, &y, &t, &f)?);
        plan.extend(plan_from_non_complement(r, &t, &f, true)?);
        plan.exists.extend([f, t, z]);
    }
    Ok(plan)
}

/// Builds `target` over `language`, verified extensionally.
pub fn express(target: GadgetTarget, language: &ConstraintLanguage) -> Result<Expression> {
    let props = language.properties();
    if !target.applies_to(&props) {
        return Err(Error::Precondition(format!(
            "`{target}` needs a language that is {}",
            target.requirement()
        )));
    }
    let cond = Condensed::new(language)?;
    let r = &cond.product;
    let dual = || r.dual("DUAL");
    let (x, y, z) = (v("x"), v("y"), v("z"));
    let plan = match target {
        GadgetTarget::Neq => plan_neq(r, &x, &y)?,
        GadgetTarget::Impl => plan_from_non_complement(r, &x, &y, false)?,
        GadgetTarget::AndNot => plan_from_non_complement(r, &x, &y, true)?,
        GadgetTarget::TConst => plan_t(r, &x),
        GadgetTarget::FConst => plan_t(&dual(), &x),
        GadgetTarget::Eq => plan_eq(r, &x, &y)?,
        GadgetTarget::EqAndT => plan_eq_and_t(r, &x, &y, &z)?,
        GadgetTarget::EqAndF => plan_eq_and_t(&dual(), &x, &y, &z)?,
        GadgetTarget::EqExists => plan_eq_exists(r)?,
    };
    let formula = QuantifiedFormula::new(
        plan.exists.iter().cloned().collect(),
        cond.realize(&plan),
        vec![],
    )?;
    let reference = target.reference();
    if !verify_expresses(&formula, &reference, &Limits::default())? {
        return Err(Error::Construction(format!(
            "`{formula}` does not define {target}"
        )));
    }
    Ok(Expression { target, formula })
}

/// Whether the free-variable projection of `f`'s models is exactly `target`.
/// Free variables are taken in canonical order.
pub fn verify_expresses(f: &QuantifiedFormula, target: &Relation, limits: &Limits) -> Result<bool> {
    let free: Vec<Var> = f.free_vars().into_iter().collect();
    if free.len() != target.arity() {
        return Err(Error::Precondition(format!(
            "{} free variables for a relation of arity {}",
            free.len(),
            target.arity()
        )));
    }
    let mut net = Network::new(f.body_vars());
    for c in f.body() {
        net.add(c);
    }
    let eq = Arc::new(catalog::eq());
    for (a, b) in f.equalities() {
        net.add(&Constraint::new(eq.clone(), vec![a.clone(), b.clone()])?);
    }
    let idx: Vec<usize> = free.iter().map(|v| net.index[v]).collect();
    let mut seen = BTreeSet::new();
    net.for_each_model(limits, |values| {
        seen.insert(idx.iter().fold(0u32, |acc, &i| (acc << 1) | u32::from(values[i])));
        true
    })?;
    Ok(seen.into_iter().eq(target.tuples()))
}

/// Removes every quantifier; bound variables become free.
pub fn drop_quantifiers(f: &QuantifiedFormula) -> Result<GammaFormula> {
    if !f.equalities().is_empty() {
        return Err(Error::Precondition(
            "quantifiers can only be dropped from equality-free bodies".into(),
        ));
    }
    GammaFormula::new(f.body().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::vars;

    fn lang(rs: Vec<Relation>) -> ConstraintLanguage {
        ConstraintLanguage::new(rs).unwrap()
    }

    #[test]
    fn lemma_examples() {
        let e = express(GadgetTarget::Neq, &lang(vec![catalog::nae3()])).unwrap();
        assert_eq!(e.formula.to_string(), "NAE3(x,x,y)");
        let e = express(GadgetTarget::Eq, &lang(vec![catalog::implies()])).unwrap();
        assert_eq!(e.formula.to_string(), "IMPL(y,x) & IMPL(x,y)");
        let e = express(GadgetTarget::TConst, &lang(vec![catalog::or2()])).unwrap();
        assert_eq!(e.formula.to_string(), "OR2(x,x)");
        let e = express(GadgetTarget::EqExists, &lang(vec![catalog::one_in_three()])).unwrap();
        assert!(!e.formula.exists().is_empty());
    }

    #[test]
    fn is0_branch_needs_the_constant() {
        // (x1 = x2) ∧ (x2 ∨ x3)
        let r = Relation::from_strs("R", 3, ["001", "110", "111"]).unwrap();
        let p = r.properties();
        assert!(p.in_is0 && p.one_valid && !p.zero_valid && !p.positive);
        let e = express(GadgetTarget::EqAndT, &lang(vec![r])).unwrap();
        assert_eq!(e.formula.to_string(), "R(x,y,z) & R(z,z,z)");
    }

    #[test]
    fn duals_and_multi_relation_languages() {
        let e = express(GadgetTarget::FConst, &lang(vec![catalog::nand2()])).unwrap();
        assert_eq!(e.formula.to_string(), "NAND2(x,x)");
        let e = express(GadgetTarget::Impl, &lang(vec![catalog::implies(), catalog::eq()])).unwrap();
        assert!(e.as_gamma().is_some());
        let e = express(GadgetTarget::EqExists, &lang(vec![catalog::xor3(), catalog::or2()])).unwrap();
        assert!(verify_expresses(&e.formula, &catalog::eq(), &Limits::default()).unwrap());
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(matches!(
            express(GadgetTarget::Neq, &lang(vec![catalog::or2()])),
            Err(Error::Precondition(_))
        ));
        assert!(express(GadgetTarget::EqExists, &lang(vec![catalog::neq()])).is_err());
    }

    #[test]
    fn verification_examples() {
        let l = lang(vec![catalog::implies(), catalog::or2(), catalog::neq()]);
        let atom = |n: &str, a: Vec<Var>| Constraint::new(l.get(n).unwrap().clone(), a).unwrap();
        let eq = QuantifiedFormula::new(
            BTreeSet::new(),
            vec![atom("IMPL", vars(["x", "y"])), atom("IMPL", vars(["y", "x"]))],
            vec![],
        )
        .unwrap();
        let lim = Limits::default();
        assert!(verify_expresses(&eq, &catalog::eq(), &lim).unwrap());
        let or = QuantifiedFormula::new(BTreeSet::new(), vec![atom("OR2", vars(["x", "y"]))], vec![])
            .unwrap();
        assert!(!verify_expresses(&or, &catalog::neq(), &lim).unwrap());
        let chain = QuantifiedFormula::new(
            [Var::from("z")].into(),
            vec![atom("NEQ", vars(["x", "z"])), atom("NEQ", vars(["z", "y"]))],
            vec![],
        )
        .unwrap();
        assert!(verify_expresses(&chain, &catalog::eq(), &lim).unwrap());
    }

    #[test]
    fn dropping_quantifiers() {
        let neq = Arc::new(catalog::neq());
        let q = QuantifiedFormula::new(
            [Var::from("z")].into(),
            vec![Constraint::new(neq, vars(["x", "z"])).unwrap()],
            vec![],
        )
        .unwrap();
        let g = drop_quantifiers(&q).unwrap();
        assert_eq!(g.to_string(), "NEQ(x,z)");
        assert_eq!(QuantifiedFormula::from_formula(&g).quantify([Var::from("z")]).unwrap(), q);
        let with_eq = QuantifiedFormula::new(
            BTreeSet::new(),
            vec![],
            vec![(Var::from("x"), Var::from("y"))],
        )
        .unwrap();
        assert!(drop_quantifiers(&with_eq).is_err());
    }
}
