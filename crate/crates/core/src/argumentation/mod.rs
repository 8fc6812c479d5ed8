//! Argument existence, verification and relevance over a knowledge base.
//!
//! A support for a claim `α` is a consistent `Φ ⊆ Δ` with `Φ ⊨ α`; it is
//! minimal when no proper subset entails `α`. Since entailment is monotone,
//! minimality only needs single-element removals.

mod complexity;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

pub use complexity::{classify_complexity, ComplexityClass, ComplexityReport};

use crate::error::{Error, Result};
use crate::formulas::{ArgInstance, Constraint, GammaFormula, Var};
use crate::limits::Limits;
use crate::logic::{positive_cnf_of, Engine, Solver};
use crate::relations::ConstraintLanguage;

/// A subset of the knowledge base, as ascending indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support {
    indices: Vec<usize>,
}

impl Support {
    /// Fails on duplicate or out-of-range indices.
    pub fn new(mut indices: Vec<usize>, delta_len: usize) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("duplicate support index".into()));
        }
        if indices.last().is_some_and(|&i| i >= delta_len) {
            return Err(Error::Precondition("support index outside the knowledge base".into()));
        }
        Ok(Support { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn formulas<'a>(&self, delta: &'a [GammaFormula]) -> Vec<&'a GammaFormula> {
        self.indices.iter().map(|&i| &delta[i]).collect()
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices.iter().join(", "))
    }
}

fn pick<'a>(delta: &'a [GammaFormula], idx: &[usize]) -> Vec<&'a GammaFormula> {
    idx.iter().map(|&i| &delta[i]).collect()
}

impl Solver {
    /// A solver over an instance's language.
    pub fn for_instance(inst: &ArgInstance, engine: Engine, limits: Limits) -> Self {
        Solver::new(inst.language.clone(), engine, limits)
    }

    /// Whether `(Φ, α)` is an argument: `Φ` consistent, `Φ ⊨ α`, and no
    /// `Φ ∖ {φ}` entails `α`.
    pub fn argcheck(&self, phi: &[&GammaFormula], alpha: &GammaFormula) -> Result<bool> {
        if !self.is_consistent(phi.iter().copied())? || !self.entails(phi.iter().copied(), alpha)? {
            return Ok(false);
        }
        for skip in 0..phi.len() {
            let rest = phi
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, f)| *f);
            if self.entails(rest, alpha)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_support(&self, delta: &[GammaFormula], idx: &[usize], alpha: &GammaFormula) -> Result<bool> {
        let phi = pick(delta, idx);
        Ok(self.is_consistent(phi.iter().copied())? && self.entails(phi.iter().copied(), alpha)?)
    }

    /// Whether some consistent subset of `delta` entails `alpha`.
    pub fn arg_exists(&self, delta: &[GammaFormula], alpha: &GammaFormula) -> Result<bool> {
        if self.engine() == Engine::Generic {
            return Ok(self.first_support_by_size(delta, alpha)?.is_some());
        }
        if self.report().eps_valid {
            // every Γ-formula set is consistent
            return self.entails(delta, alpha);
        }
        self.limits().check_kb(delta.len())?;
        Ok(self.support_search(delta, alpha, None)?.is_some())
    }

    /// Subsets in order of size, then lexicographically; the first that is a
    /// support, which is then cardinality-minimal.
    fn first_support_by_size(
        &self,
        delta: &[GammaFormula],
        alpha: &GammaFormula,
    ) -> Result<Option<Support>> {
        self.limits().check_kb(delta.len())?;
        for size in 0..=delta.len() {
            for idx in (0..delta.len()).combinations(size) {
                if self.is_support(delta, &idx, alpha)? {
                    return Ok(Some(Support { indices: idx }));
                }
            }
        }
        Ok(None)
    }

    /// Depth-first search over include/exclude decisions for a consistent
    /// entailing subset. With `relevant = Some(ψ)`, `ψ` is forced in and the
    /// subset must additionally satisfy `Φ ∖ {ψ} ⊭ α`.
    fn support_search(
        &self,
        delta: &[GammaFormula],
        alpha: &GammaFormula,
        relevant: Option<usize>,
    ) -> Result<Option<Vec<usize>>> {
        let mut included: Vec<usize> = relevant.into_iter().collect();
        if !self.is_consistent(pick(delta, &included))? {
            return Ok(None);
        }
        let order: Vec<usize> = (0..delta.len()).filter(|&i| Some(i) != relevant).collect();
        self.search_from(delta, alpha, relevant, &order, 0, &mut included)
    }

    fn search_from(
        &self,
        delta: &[GammaFormula],
        alpha: &GammaFormula,
        relevant: Option<usize>,
        order: &[usize],
        pos: usize,
        included: &mut Vec<usize>,
    ) -> Result<Option<Vec<usize>>> {
        // invariant: `included` is consistent
        let without_psi: Vec<usize> = included
            .iter()
            .copied()
            .filter(|&i| Some(i) != relevant)
            .collect();
        if relevant.is_some() && self.entails(pick(delta, &without_psi), alpha)? {
            return Ok(None);
        }
        let mut upper = included.clone();
        upper.extend_from_slice(&order[pos..]);
        if !self.entails(pick(delta, &upper), alpha)? {
            return Ok(None);
        }
        if self.is_consistent(pick(delta, &upper))? {
            let rest: Vec<usize> = upper
                .iter()
                .copied()
                .filter(|&i| Some(i) != relevant)
                .collect();
            if relevant.is_none() || !self.entails(pick(delta, &rest), alpha)? {
                upper.sort_unstable();
                return Ok(Some(upper));
            }
        }
        if pos == order.len() {
            return Ok(None);
        }
        let next = order[pos];
        included.push(next);
        if self.is_consistent(pick(delta, included))? {
            if let Some(found) = self.search_from(delta, alpha, relevant, order, pos + 1, included)? {
                return Ok(Some(found));
            }
        }
        included.pop();
        self.search_from(delta, alpha, relevant, order, pos + 1, included)
    }

    /// A minimal support, or `None` iff no support exists.
    ///
    /// Within the subset budget the result is the first support in order of
    /// size, then lexicographically. Larger knowledge bases over 0- or 1-valid
    /// languages are reduced greedily from `delta`, dropping indices in
    /// ascending order while entailment survives.
    pub fn find_minimal_support(
        &self,
        delta: &[GammaFormula],
        alpha: &GammaFormula,
    ) -> Result<Option<Support>> {
        if !self.arg_exists(delta, alpha)? {
            return Ok(None);
        }
        let start = if delta.len() <= self.limits().max_kb {
            self.first_support_by_size(delta, alpha)?
                .expect("a support exists")
                .indices
        } else if self.report().eps_valid {
            (0..delta.len()).collect()
        } else {
            return Err(Error::KbBudget {
                size: delta.len(),
                cap: self.limits().max_kb,
            });
        };
        let mut kept = start;
        let mut i = 0;
        while i < kept.len() {
            let mut trial = kept.clone();
            trial.remove(i);
            if self.entails(pick(delta, &trial), alpha)? {
                kept = trial;
            } else {
                i += 1;
            }
        }
        Ok(Some(Support { indices: kept }))
    }

    /// Every minimal support, in order of size, then lexicographically.
    pub fn enumerate_minimal_supports(
        &self,
        delta: &[GammaFormula],
        alpha: &GammaFormula,
    ) -> Result<Vec<Support>> {
        self.limits().check_kb(delta.len())?;
        let mut found: Vec<BTreeSet<usize>> = Vec::new();
        let mut out = Vec::new();
        for size in 0..=delta.len() {
            for idx in (0..delta.len()).combinations(size) {
                let set: BTreeSet<usize> = idx.iter().copied().collect();
                if found.iter().any(|s| s.is_subset(&set)) {
                    continue;
                }
                if self.is_support(delta, &idx, alpha)? {
                    found.push(set);
                    out.push(Support { indices: idx });
                }
            }
        }
        Ok(out)
    }

    /// Whether `delta[psi]` belongs to some minimal support of `alpha`.
    pub fn argrel(&self, delta: &[GammaFormula], alpha: &GammaFormula, psi: usize) -> Result<bool> {
        if psi >= delta.len() {
            return Err(Error::Precondition("relevant index outside the knowledge base".into()));
        }
        if self.engine() == Engine::Generic {
            self.limits().check_kb(delta.len())?;
            let others: Vec<usize> = (0..delta.len()).filter(|&i| i != psi).collect();
            for size in 0..=others.len() {
                for mut idx in others.iter().copied().combinations(size) {
                    idx.push(psi);
                    if self.argcheck(&pick(delta, &idx), alpha)? {
                        return Ok(true);
                    }
                }
            }
            return Ok(false);
        }
        if self.report().positive {
            return self.argrel_positive(delta, alpha, psi);
        }
        if self.report().negative {
            return self.argrel_negative(delta, alpha, psi);
        }
        self.limits().check_kb(delta.len())?;
        Ok(self.support_search(delta, alpha, Some(psi))?.is_some())
    }

    /// Relevance for positive languages in polynomially many entailment
    /// tests: accept iff for some positive clause `C` of `α`, the formulas
    /// not entailing `C`, together with `ψ`, entail `α`.
    pub fn argrel_positive(
        &self,
        delta: &[GammaFormula],
        alpha: &GammaFormula,
        psi: usize,
    ) -> Result<bool> {
        if !self.report().positive {
            return Err(Error::Precondition("language is not positive".into()));
        }
        if psi >= delta.len() {
            return Err(Error::Precondition("relevant index outside the knowledge base".into()));
        }
        for clause in positive_clauses(alpha)? {
            let mut delta_i: Vec<&GammaFormula> = vec![&delta[psi]];
            for (j, d) in delta.iter().enumerate() {
                if j != psi && !positive_entails_clause(d, &clause) {
                    delta_i.push(d);
                }
            }
            if self.entails(delta_i, alpha)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The dual of [`Solver::argrel_positive`]: flipping every variable maps a
    /// negative instance to a positive one with the same answer.
    pub fn argrel_negative(
        &self,
        delta: &[GammaFormula],
        alpha: &GammaFormula,
        psi: usize,
    ) -> Result<bool> {
        if !self.report().negative {
            return Err(Error::Precondition("language is not negative".into()));
        }
        let dual_lang = ConstraintLanguage::from_shared(
            self.language()
                .relations()
                .map(|r| Arc::new(r.dual(r.name()))),
        )?;
        let flip = |f: &GammaFormula| {
            GammaFormula::new(
                f.constraints()
                    .iter()
                    .map(|c| {
                        c.with_relation(dual_lang.get(c.relation().name()).expect("same names").clone())
                    })
                    .collect(),
            )
            .expect("nonempty")
        };
        let dual_delta: Vec<GammaFormula> = delta.iter().map(flip).collect();
        let solver = Solver::new(dual_lang.clone(), self.engine(), *self.limits());
        solver.argrel_positive(&dual_delta, &flip(alpha), psi)
    }
}

/// The positive clauses of `α`'s constraints over its variables, deduplicated.
fn positive_clauses(alpha: &GammaFormula) -> Result<Vec<BTreeSet<Var>>> {
    let mut out: Vec<BTreeSet<Var>> = Vec::new();
    for c in alpha.constraints() {
        for cl in positive_cnf_of(c.relation())? {
            let vars: BTreeSet<Var> = cl.literals().iter().map(|l| c.args()[l.var].clone()).collect();
            if !out.contains(&vars) {
                out.push(vars);
            }
        }
    }
    Ok(out)
}

/// `δ ⊨ C` for positive `δ`: the largest assignment falsifying `C` fails `δ`.
fn positive_entails_clause(delta: &GammaFormula, clause: &BTreeSet<Var>) -> bool {
    !delta
        .constraints()
        .iter()
        .all(|c: &Constraint| c.holds(|v| !clause.contains(v)))
}
