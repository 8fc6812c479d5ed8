//! Instance generators. Each returns an [`ArgInstance`] whose language holds
//! exactly the relations its formulas use (plus the source language, where
//! the source has one).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::abduction::AbdInstance;
use super::cnf::CnfInput;
use crate::error::{Error, Result};
use crate::formulas::{ArgInstance, Constraint, GammaFormula, Var};
use crate::relations::{catalog, tuple_bit, ConstraintLanguage, Relation};

/// Collects relations and hands out variable names avoiding `taken`.
struct Builder {
    relations: BTreeMap<String, Arc<Relation>>,
    taken: BTreeSet<Var>,
}

impl Builder {
    fn new(taken: impl IntoIterator<Item = Var>) -> Self {
        Builder {
            relations: BTreeMap::new(),
            taken: taken.into_iter().collect(),
        }
    }

    fn relation(&mut self, r: Relation) -> Arc<Relation> {
        self.relations
            .entry(r.name().to_string())
            .or_insert_with(|| Arc::new(r))
            .clone()
    }

    /// `base`, or `base` with underscores appended until unused.
    fn fresh(&mut self, base: &str) -> Var {
        let mut name = base.to_string();
        while self.taken.contains(&Var::new(name.as_str())) {
            name.push('_');
        }
        let v = Var::new(name);
        self.taken.insert(v.clone());
        v
    }

    fn language(&self, base: Option<&ConstraintLanguage>) -> Result<ConstraintLanguage> {
        let own = ConstraintLanguage::from_shared(self.relations.values().cloned());
        match (base, own) {
            (Some(b), Ok(own)) => b.union(&own).map_err(|e| Error::Precondition(e.to_string())),
            (Some(b), Err(_)) => Ok(b.clone()),
            (None, own) => own,
        }
    }
}

fn atom(r: &Arc<Relation>, args: &[&Var]) -> Constraint {
    Constraint::new(r.clone(), args.iter().map(|&v| v.clone()).collect()).expect("arity matches")
}

fn conj(cs: Vec<Constraint>) -> GammaFormula {
    GammaFormula::new(cs).expect("constructions emit nonempty conjunctions")
}

fn x(j: usize) -> Var {
    Var::new(format!("x{j}"))
}

fn signs_tag(clause: &[i32]) -> String {
    clause.iter().map(|&l| if l > 0 { 'P' } else { 'N' }).collect()
}

fn require_width3(cnf: &CnfInput) -> Result<()> {
    if cnf.max_width() > 3 {
        return Err(Error::Precondition(format!(
            "unsupported clause width {}; at most 3",
            cnf.max_width()
        )));
    }
    Ok(())
}

fn require_clauses(cnf: &CnfInput) -> Result<()> {
    if cnf.clauses().is_empty() || cnf.vars() == 0 {
        return Err(Error::Precondition("needs at least one clause and one variable".into()));
    }
    Ok(())
}

/// 3SAT to ARG over `{≠}`: `x_j ≠ f`, `x'_j ≠ f`, the pairing `⋀ x_j ≠ x'_j`,
/// and one link per literal; claim `⋀ c_i ≠ f ∧ ⋀ x_j ≠ x'_j`.
pub fn three_sat_to_arg_neq(cnf: &CnfInput) -> Result<ArgInstance> {
    require_width3(cnf)?;
    require_clauses(cnf)?;
    let mut b = Builder::new([]);
    let neq = b.relation(catalog::neq());
    let f = Var::new("f");
    let xp = |j: usize| Var::new(format!("xp{j}"));
    let c = |i: usize| Var::new(format!("c{i}"));
    let n = cnf.vars();
    let mut delta = Vec::new();
    for j in 1..=n {
        delta.push(GammaFormula::single(atom(&neq, &[&x(j), &f])));
        delta.push(GammaFormula::single(atom(&neq, &[&xp(j), &f])));
    }
    let pairs: Vec<Constraint> = (1..=n).map(|j| atom(&neq, &[&x(j), &xp(j)])).collect();
    delta.push(conj(pairs.clone()));
    for (i, clause) in cnf.clauses().iter().enumerate() {
        let ci = c(i + 1);
        for &l in clause {
            let j = l.unsigned_abs() as usize;
            // a true literal lets c_i take the value opposite f
            let side = if l > 0 { xp(j) } else { x(j) };
            delta.push(GammaFormula::single(atom(&neq, &[&side, &ci])));
        }
    }
    let mut alpha: Vec<Constraint> = (1..=cnf.clauses().len())
        .map(|i| atom(&neq, &[&c(i), &f]))
        .collect();
    alpha.extend(pairs);
    ArgInstance::with_default_labels(b.language(None)?, delta, conj(alpha), None)
}

/// Positive 1-in-3 SAT to ARG over `{x ∧ ¬y}`: one formula per clause and
/// literal choosing that literal; claim `⋀ c_i ∧ ¬f`.
pub fn pos1in3_to_arg_andnot(cnf: &CnfInput) -> Result<ArgInstance> {
    require_width3(cnf)?;
    require_clauses(cnf)?;
    if cnf.clauses().iter().flatten().any(|&l| l < 0) {
        return Err(Error::Precondition("expects positive clauses".into()));
    }
    let mut b = Builder::new([]);
    let andnot = b.relation(catalog::and_not());
    let f = Var::new("f");
    let c = |i: usize| Var::new(format!("c{i}"));
    let mut delta = Vec::new();
    for (i, clause) in cnf.clauses().iter().enumerate() {
        let ci = c(i + 1);
        for &l in clause {
            let chosen = x(l as usize);
            let mut cs = vec![atom(&andnot, &[&ci, &f]), atom(&andnot, &[&chosen, &f])];
            for &o in clause.iter().filter(|&&o| o != l) {
                cs.push(atom(&andnot, &[&ci, &x(o as usize)]));
            }
            delta.push(conj(cs));
        }
    }
    let alpha = (1..=cnf.clauses().len())
        .map(|i| atom(&andnot, &[&c(i), &f]))
        .collect();
    ArgInstance::with_default_labels(b.language(None)?, delta, conj(alpha), None)
}

/// ABD_P to ARG for complementive languages: `Δ = {φ} ∪ {h ≠ f}`, `α = q ≠ f`.
pub fn abdp_to_arg_neq(abd: &AbdInstance) -> Result<ArgInstance> {
    if !abd.language.properties().complementive {
        return Err(Error::Precondition("language must be complementive".into()));
    }
    let mut b = Builder::new(abd.all_vars());
    let neq = b.relation(catalog::neq());
    let f = b.fresh("f");
    let mut delta = vec![abd.phi.clone()];
    for h in &abd.hypotheses {
        delta.push(GammaFormula::single(atom(&neq, &[h, &f])));
    }
    let alpha = GammaFormula::single(atom(&neq, &[&abd.q, &f]));
    ArgInstance::with_default_labels(b.language(Some(&abd.language))?, delta, alpha, None)
}

/// ABD_P to ARG: `Δ = {φ} ∪ {h ∧ ¬f} ∪ {t ∧ ¬f}`, `α = (q ∧ ¬f) ∧ (t ∧ ¬f)`.
pub fn abdp_to_arg_andnot(abd: &AbdInstance) -> Result<ArgInstance> {
    let mut b = Builder::new(abd.all_vars());
    let andnot = b.relation(catalog::and_not());
    let t = b.fresh("t");
    let f = b.fresh("f");
    let mut delta = vec![abd.phi.clone()];
    for h in &abd.hypotheses {
        delta.push(GammaFormula::single(atom(&andnot, &[h, &f])));
    }
    let tf = atom(&andnot, &[&t, &f]);
    delta.push(GammaFormula::single(tf.clone()));
    let alpha = conj(vec![atom(&andnot, &[&abd.q, &f]), tf]);
    ArgInstance::with_default_labels(b.language(Some(&abd.language))?, delta, alpha, None)
}

/// Which generalized clause CRITICAL SAT is embedded with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CritsatVariant {
    /// `C_i ∨ (f → t)`, claim `f → t`.
    Impl,
    /// `C_i ∨ u`, claim `u`.
    T,
    /// `(C_i ∨ u) ∧ ¬v`, claim `u ∧ ¬v`.
    AndNot,
}

/// CRITICAL SAT to ARGCHECK; the knowledge base is the candidate support.
pub fn critsat_to_argcheck(cnf: &CnfInput, variant: CritsatVariant) -> Result<ArgInstance> {
    require_width3(cnf)?;
    let mut b = Builder::new([]);
    let (aux, claim): (Vec<Var>, Constraint) = match variant {
        CritsatVariant::Impl => {
            let (f, t) = (Var::new("f"), Var::new("t"));
            let imp = b.relation(catalog::implies());
            let c = atom(&imp, &[&f, &t]);
            (vec![f, t], c)
        }
        CritsatVariant::T => {
            let u = Var::new("u");
            let t = b.relation(catalog::t());
            let c = atom(&t, &[&u]);
            (vec![u], c)
        }
        CritsatVariant::AndNot => {
            let (u, v) = (Var::new("u"), Var::new("v"));
            let an = b.relation(catalog::and_not());
            let c = atom(&an, &[&u, &v]);
            (vec![u, v], c)
        }
    };
    let mut delta = Vec::new();
    for clause in cnf.clauses() {
        let mut signs: Vec<bool> = clause.iter().map(|&l| l > 0).collect();
        let tag = signs_tag(clause);
        let rel = match variant {
            CritsatVariant::Impl => {
                signs.extend([false, true]);
                catalog::clause(&format!("CL_{tag}_IMP"), &signs)
            }
            CritsatVariant::T => {
                signs.push(true);
                catalog::clause(&format!("CL_{tag}_U"), &signs)
            }
            CritsatVariant::AndNot => {
                let w = signs.len();
                let k = w + 2;
                Relation::from_fn(format!("CL_{tag}_U_NV"), k, |t| {
                    let clause = (0..w).any(|i| tuple_bit(t, i, k) == signs[i]);
                    (clause || tuple_bit(t, w, k)) && !tuple_bit(t, w + 1, k)
                })?
            }
        };
        let rel = b.relation(rel);
        let mut args: Vec<Var> = clause.iter().map(|&l| x(l.unsigned_abs() as usize)).collect();
        args.extend(aux.iter().cloned());
        delta.push(GammaFormula::single(Constraint::new(rel, args)?));
    }
    ArgInstance::with_default_labels(b.language(None)?, delta, GammaFormula::single(claim), None)
}

/// Which equality relation the 3SAT-to-ARGREL chain is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqVariant {
    /// `x = y`.
    Plain,
    /// `(x = y) ∧ t`.
    WithT,
    /// `(x = y) ∧ ¬t`.
    WithF,
}

/// 3SAT to ARGREL over equalities: a chain `c_0 … c_k` threaded through
/// `γ_j = (c_0 = x_j) ∧ ⋀_{x_j ∈ C_i} (c_{i-1} = c_i)` and
/// `δ_j = (x_j = s) ∧ ⋀_{¬x_j ∈ C_i} (c_{i-1} = c_i)`; claim `c_0 = s`,
/// relevant `ψ = (c_k = s)`.
pub fn three_sat_to_argrel_eq(cnf: &CnfInput, variant: EqVariant) -> Result<ArgInstance> {
    require_width3(cnf)?;
    require_clauses(cnf)?;
    let mut b = Builder::new([]);
    let t = Var::new("t");
    let rel = b.relation(match variant {
        EqVariant::Plain => catalog::eq(),
        EqVariant::WithT => catalog::eq_and_t(),
        EqVariant::WithF => catalog::eq_and_f(),
    });
    let eq = |l: &Var, r: &Var| match variant {
        EqVariant::Plain => atom(&rel, &[l, r]),
        _ => atom(&rel, &[l, r, &t]),
    };
    let c = |i: usize| Var::new(format!("c{i}"));
    let s = Var::new("s");
    let k = cnf.clauses().len();
    let mut delta = Vec::new();
    for j in 1..=cnf.vars() {
        let mut gamma = vec![eq(&c(0), &x(j))];
        let mut delta_j = vec![eq(&x(j), &s)];
        for (i, clause) in cnf.clauses().iter().enumerate() {
            if clause.contains(&(j as i32)) {
                gamma.push(eq(&c(i), &c(i + 1)));
            }
            if clause.contains(&-(j as i32)) {
                delta_j.push(eq(&c(i), &c(i + 1)));
            }
        }
        delta.push(conj(gamma));
        delta.push(conj(delta_j));
    }
    delta.push(GammaFormula::single(eq(&c(k), &s)));
    let psi = delta.len() - 1;
    let alpha = GammaFormula::single(eq(&c(0), &s));
    ArgInstance::with_default_labels(b.language(None)?, delta, alpha, Some(psi))
}

/// ARG to ARGREL: `(Δ ∪ {φ₀}, α ∧ φ₀, φ₀)` with `φ₀` the first relation of
/// the language applied to fresh variables.
pub fn arg_to_argrel(inst: &ArgInstance) -> Result<ArgInstance> {
    let mut taken: BTreeSet<Var> = inst.alpha.vars();
    for f in &inst.delta {
        taken.extend(f.vars());
    }
    let mut b = Builder::new(taken);
    let r = inst.language.relations().next().expect("languages are nonempty").clone();
    let args: Vec<Var> = (1..=r.arity()).map(|i| b.fresh(&format!("p{i}"))).collect();
    let pad = GammaFormula::single(Constraint::new(r, args)?);
    let mut label = "pad".to_string();
    while inst.labels.contains(&label) {
        label.push('_');
    }
    let mut delta: Vec<(String, GammaFormula)> =
        inst.labels.iter().cloned().zip(inst.delta.iter().cloned()).collect();
    delta.push((label, pad.clone()));
    let psi = delta.len() - 1;
    ArgInstance::new(inst.language.clone(), delta, inst.alpha.and(&pad), Some(psi))
}

/// `((x1 ∨ ¬x2 ∨ x3) ↔ (x4 = x5)) ∧ (x6 = x7)`.
pub fn r_delta7() -> Relation {
    Relation::from_fn("RDELTA7", 7, |t| {
        let b = |i| tuple_bit(t, i, 7);
        ((b(0) || !b(1) || b(2)) == (b(3) == b(4))) && b(5) == b(6)
    })
    .expect("nontrivial")
}

/// `((x1 ∨ x2) ↔ x3) ∧ x4`.
pub fn r_delta4() -> Relation {
    Relation::from_fn("RDELTA4", 4, |t| {
        let b = |i| tuple_bit(t, i, 4);
        ((b(0) || b(1)) == b(2)) && b(3)
    })
    .expect("nontrivial")
}

/// ABD to ARGREL for languages that are 0-valid and 1-valid:
/// `Δ = {h ∨ ¬t, ¬h ∨ f} ∪ {φ, ψ}`, `α = s ∨ ¬t ∨ f`, `ψ = (s = q)`.
/// With `step2`, adds `δ = R_δ(s, t, f, u1, u2, v1, v2)` and the claim
/// becomes `(u1 = u2) ∧ (v1 = v2)`.
pub fn abd_to_argrel_both_valid(abd: &AbdInstance, step2: bool) -> Result<ArgInstance> {
    let p = abd.language.properties();
    if !(p.zero_valid && p.one_valid) {
        return Err(Error::Precondition("language must be 0-valid and 1-valid".into()));
    }
    let mut b = Builder::new(abd.all_vars());
    let imp = b.relation(catalog::implies());
    let eq = b.relation(catalog::eq());
    let (s, t, f) = (b.fresh("s"), b.fresh("t"), b.fresh("f"));
    let mut delta = Vec::new();
    for h in &abd.hypotheses {
        delta.push(GammaFormula::single(atom(&imp, &[&t, h])));
        delta.push(GammaFormula::single(atom(&imp, &[h, &f])));
    }
    delta.push(abd.phi.clone());
    delta.push(GammaFormula::single(atom(&eq, &[&s, &abd.q])));
    let psi = delta.len() - 1;
    let alpha = if step2 {
        let rd = b.relation(r_delta7());
        let [u1, u2, v1, v2] = ["u1", "u2", "v1", "v2"].map(|n| b.fresh(n));
        delta.push(GammaFormula::single(atom(&rd, &[&s, &t, &f, &u1, &u2, &v1, &v2])));
        conj(vec![atom(&eq, &[&u1, &u2]), atom(&eq, &[&v1, &v2])])
    } else {
        let cl = b.relation(catalog::clause("CL_PNP", &[true, false, true]));
        GammaFormula::single(atom(&cl, &[&s, &t, &f]))
    };
    ArgInstance::with_default_labels(b.language(Some(&abd.language))?, delta, alpha, Some(psi))
}

/// ABD to ARGREL for 1-valid languages: `Δ = {h, ¬h ∨ f} ∪ {φ, ψ}`,
/// `α = s ∨ f`, `ψ = (s = q)`. With `step2`, adds `δ = R_δ(s, f, u, v)` and
/// the claim becomes `u ∧ v`.
pub fn abd_to_argrel_one_valid(abd: &AbdInstance, step2: bool) -> Result<ArgInstance> {
    if !abd.language.properties().one_valid {
        return Err(Error::Precondition("language must be 1-valid".into()));
    }
    let mut b = Builder::new(abd.all_vars());
    let tr = b.relation(catalog::t());
    let imp = b.relation(catalog::implies());
    let eq = b.relation(catalog::eq());
    let (s, f) = (b.fresh("s"), b.fresh("f"));
    let mut delta = Vec::new();
    for h in &abd.hypotheses {
        delta.push(GammaFormula::single(atom(&tr, &[h])));
        delta.push(GammaFormula::single(atom(&imp, &[h, &f])));
    }
    delta.push(abd.phi.clone());
    delta.push(GammaFormula::single(atom(&eq, &[&s, &abd.q])));
    let psi = delta.len() - 1;
    let alpha = if step2 {
        let rd = b.relation(r_delta4());
        let and2 = b.relation(catalog::and2());
        let (u, v) = (b.fresh("u"), b.fresh("v"));
        delta.push(GammaFormula::single(atom(&rd, &[&s, &f, &u, &v])));
        GammaFormula::single(atom(&and2, &[&u, &v]))
    } else {
        let or2 = b.relation(catalog::or2());
        GammaFormula::single(atom(&or2, &[&s, &f]))
    };
    ArgInstance::with_default_labels(b.language(Some(&abd.language))?, delta, alpha, Some(psi))
}

/// How `T(x)` is rewritten when eliminating `T` from a complementive language.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TElimVariant {
    /// `T(x)` becomes `x = t`.
    Eq,
    /// `T(x)` becomes `x ≠ f_x ∧ f_x ≠ t`, one `f_x` per variable.
    Neq,
}

fn is_t(r: &Relation) -> bool {
    r.same_tuples(&catalog::t())
}

/// Rewrites an ARGCHECK instance over `Γ ∪ {T}` (`Γ` complementive) into one
/// over `Γ ∪ {=}` or `Γ ∪ {≠}`. The knowledge base is the candidate support.
///
/// The `Neq` variant requires every `T(x)` in the claim to occur in the
/// knowledge base too; otherwise `f_x ≠ t` is unreachable.
pub fn argcheck_t_elimination(inst: &ArgInstance, variant: TElimVariant) -> Result<ArgInstance> {
    let rest: Vec<Arc<Relation>> = inst.language.relations().filter(|r| !is_t(r)).cloned().collect();
    if !rest.is_empty() {
        let gamma = ConstraintLanguage::from_shared(rest.iter().cloned())?;
        if !gamma.properties().complementive {
            return Err(Error::Precondition("language without T must be complementive".into()));
        }
    }
    let t_vars = |f: &GammaFormula| -> BTreeSet<Var> {
        f.constraints()
            .iter()
            .filter(|c| is_t(c.relation()))
            .map(|c| c.args()[0].clone())
            .collect()
    };
    let in_kb: BTreeSet<Var> = inst.delta.iter().flat_map(t_vars).collect();
    if variant == TElimVariant::Neq && !t_vars(&inst.alpha).is_subset(&in_kb) {
        return Err(Error::Precondition(
            "claim constrains a variable with T that the knowledge base leaves unconstrained".into(),
        ));
    }
    let mut taken: BTreeSet<Var> = inst.alpha.vars();
    for f in &inst.delta {
        taken.extend(f.vars());
    }
    let mut b = Builder::new(taken);
    for r in &rest {
        b.relations.insert(r.name().to_string(), r.clone());
    }
    let t = b.fresh("t");
    let rel = b.relation(match variant {
        TElimVariant::Eq => catalog::eq(),
        TElimVariant::Neq => catalog::neq(),
    });
    let fx: BTreeMap<Var, Var> = match variant {
        TElimVariant::Eq => BTreeMap::new(),
        TElimVariant::Neq => in_kb
            .iter()
            .map(|v| (v.clone(), b.fresh(&format!("f_{}", v.name()))))
            .collect(),
    };
    let rewrite = |f: &GammaFormula| -> GammaFormula {
        let mut cs = Vec::new();
        for c in f.constraints() {
            if !is_t(c.relation()) {
                cs.push(c.clone());
                continue;
            }
            let v = &c.args()[0];
            match variant {
                TElimVariant::Eq => cs.push(atom(&rel, &[v, &t])),
                TElimVariant::Neq => {
                    cs.push(atom(&rel, &[v, &fx[v]]));
                    cs.push(atom(&rel, &[&fx[v], &t]));
                }
            }
        }
        conj(cs)
    };
    let delta: Vec<(String, GammaFormula)> = inst
        .labels
        .iter()
        .cloned()
        .zip(inst.delta.iter().map(rewrite))
        .collect();
    ArgInstance::new(b.language(None)?, delta, rewrite(&inst.alpha), None)
}
