//! Random instance generators and brute-force reference deciders shared by
//! the property tests and the acceptance suite. The deciders evaluate
//! relations tuple by tuple and never call into the solver.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use argcl_core::relations::catalog;
use argcl_core::{Constraint, ConstraintLanguage, GammaFormula, Relation, Var};
use rand::seq::SliceRandom;
use rand::Rng;

/// A nontrivial relation of the given arity with random tuples.
pub fn random_relation(rng: &mut impl Rng, name: &str, arity: usize) -> Relation {
    let size = 1u32 << arity;
    loop {
        let tuples: Vec<u32> = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
        if let Ok(r) = Relation::new(name, arity, tuples) {
            return r;
        }
    }
}

pub fn language(rels: impl IntoIterator<Item = Relation>) -> ConstraintLanguage {
    ConstraintLanguage::from_shared(rels.into_iter().map(Arc::new)).unwrap()
}

/// Up to `max_rels` random relations of arity `1..=max_arity`.
pub fn random_language(rng: &mut impl Rng, max_rels: usize, max_arity: usize) -> ConstraintLanguage {
    let n = rng.gen_range(1..=max_rels);
    language((0..n).map(|i| {
        let k = rng.gen_range(1..=max_arity);
        random_relation(rng, &format!("R{i}"), k)
    }))
}

pub fn var_pool(n: usize) -> Vec<Var> {
    (0..n).map(|i| Var::new(format!("v{i}"))).collect()
}

/// A conjunction of `1..=max_atoms` atoms over `lang`; arguments may repeat.
pub fn random_formula(
    rng: &mut impl Rng,
    lang: &ConstraintLanguage,
    pool: &[Var],
    max_atoms: usize,
) -> GammaFormula {
    let rels: Vec<&Arc<Relation>> = lang.relations().collect();
    let n = rng.gen_range(1..=max_atoms);
    let cs = (0..n)
        .map(|_| {
            let r = *rels.choose(rng).unwrap();
            let args = (0..r.arity()).map(|_| pool.choose(rng).unwrap().clone()).collect();
            Constraint::new(r.clone(), args).unwrap()
        })
        .collect();
    GammaFormula::new(cs).unwrap()
}

pub struct Instance {
    pub lang: ConstraintLanguage,
    pub delta: Vec<GammaFormula>,
    pub alpha: GammaFormula,
}

/// `|Δ| ≤ max_kb` (possibly empty), formulas of up to two atoms, a claim of
/// up to two atoms, all over `vars` variables.
pub fn random_instance(
    rng: &mut impl Rng,
    lang: ConstraintLanguage,
    max_kb: usize,
    vars: usize,
) -> Instance {
    let pool = var_pool(vars);
    let m = rng.gen_range(0..=max_kb);
    let delta = (0..m).map(|_| random_formula(rng, &lang, &pool, 2)).collect();
    let alpha = random_formula(rng, &lang, &pool, 2);
    Instance { lang, delta, alpha }
}

/// Positive language `{T, OR2, OR3}`.
pub fn positive_language() -> ConstraintLanguage {
    language([catalog::t(), catalog::or2(), catalog::or3()])
}

fn eval(c: &Constraint, vars: &[Var], a: u64) -> bool {
    let tuple = c.args().iter().fold(0u32, |acc, v| {
        let i = vars.iter().position(|w| w == v).unwrap();
        (acc << 1) | ((a >> i) & 1) as u32
    });
    c.relation().contains(tuple)
}

fn holds(fs: &[&GammaFormula], vars: &[Var], a: u64) -> bool {
    fs.iter().all(|f| f.constraints().iter().all(|c| eval(c, vars, a)))
}

fn all_vars<'a>(fs: impl IntoIterator<Item = &'a GammaFormula>) -> Vec<Var> {
    let set: BTreeSet<Var> = fs.into_iter().flat_map(|f| f.vars()).collect();
    set.into_iter().collect()
}

pub fn naive_consistent(phi: &[&GammaFormula]) -> bool {
    let vars = all_vars(phi.iter().copied());
    (0..1u64 << vars.len()).any(|a| holds(phi, &vars, a))
}

pub fn naive_entails(phi: &[&GammaFormula], alpha: &GammaFormula) -> bool {
    let vars = all_vars(phi.iter().copied().chain([alpha]));
    (0..1u64 << vars.len()).all(|a| !holds(phi, &vars, a) || holds(&[alpha], &vars, a))
}

fn subset(delta: &[GammaFormula], mask: u32) -> Vec<&GammaFormula> {
    (0..delta.len()).filter(|i| (mask >> i) & 1 == 1).map(|i| &delta[i]).collect()
}

/// Whether the formulas selected by `mask` are an argument for `alpha`.
pub fn naive_argcheck(delta: &[GammaFormula], mask: u32, alpha: &GammaFormula) -> bool {
    let phi = subset(delta, mask);
    if !naive_consistent(&phi) || !naive_entails(&phi, alpha) {
        return false;
    }
    // every proper subset, not just single removals
    (0..mask)
        .filter(|&s| s & !mask == 0)
        .all(|s| !naive_entails(&subset(delta, s), alpha))
}

/// Every argument for `alpha` as a bitmask over `delta`.
pub fn naive_supports(delta: &[GammaFormula], alpha: &GammaFormula) -> Vec<u32> {
    (0..1u32 << delta.len())
        .filter(|&m| naive_argcheck(delta, m, alpha))
        .collect()
}
