//! Γ-formulas: conjunctions of constraints over shared variables, plus the
//! argumentation instance data model.

mod models;
mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::relations::{is_identifier, tuple_from_bits, ConstraintLanguage, Relation};

pub use models::{enumerate_models, Assignment, Models};
pub(crate) use models::Network;
pub use text::{
    file_loader, parse_document, parse_instance, parse_instance_file, serialize_instance,
    InstanceDocument,
};

/// A propositional variable. Variables are ordered by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var(s.to_string())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Convenience for building argument lists: `vars(["x", "y"])`.
pub fn vars<const N: usize>(names: [&str; N]) -> Vec<Var> {
    names.into_iter().map(Var::from).collect()
}

/// `R(x₁, …, x_k)`; arguments may repeat.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    relation: Arc<Relation>,
    args: Vec<Var>,
}

impl Constraint {
    pub fn new(relation: Arc<Relation>, args: Vec<Var>) -> Result<Self> {
        if args.len() != relation.arity() {
            return Err(Error::InvalidFormula(format!(
                "`{}` takes {} arguments, got {}",
                relation.name(),
                relation.arity(),
                args.len()
            )));
        }
        Ok(Constraint { relation, args })
    }

    pub fn relation(&self) -> &Arc<Relation> {
        &self.relation
    }

    pub fn args(&self) -> &[Var] {
        &self.args
    }

    /// `C[V/u]`: every occurrence of a variable in `from` becomes `to`.
    pub fn substitute(&self, from: &BTreeSet<Var>, to: &Var) -> Constraint {
        self.rename(|v| if from.contains(v) { to.clone() } else { v.clone() })
    }

    /// Applies `f` to every argument.
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> Constraint {
        Constraint {
            relation: self.relation.clone(),
            args: self.args.iter().map(f).collect(),
        }
    }

    /// The same arguments under another relation of equal arity.
    pub(crate) fn with_relation(&self, relation: Arc<Relation>) -> Constraint {
        debug_assert_eq!(relation.arity(), self.relation.arity());
        Constraint {
            relation,
            args: self.args.clone(),
        }
    }

    /// Whether the assignment `value` satisfies the constraint.
    pub fn holds(&self, value: impl Fn(&Var) -> bool) -> bool {
        self.relation
            .contains(tuple_from_bits(self.args.iter().map(value)))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.relation.name())?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A nonempty conjunction of constraints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GammaFormula {
    constraints: Vec<Constraint>,
}

impl GammaFormula {
    pub fn new(constraints: Vec<Constraint>) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::InvalidFormula("empty conjunction".into()));
        }
        Ok(GammaFormula { constraints })
    }

    pub fn single(c: Constraint) -> Self {
        GammaFormula {
            constraints: vec![c],
        }
    }

    /// Shorthand for a one-constraint formula; panics on arity mismatch.
    pub fn atom(relation: &Arc<Relation>, args: Vec<Var>) -> Self {
        GammaFormula::single(Constraint::new(relation.clone(), args).expect("arity matches"))
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// `var(φ)` in canonical order.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.constraints
            .iter()
            .flat_map(|c| c.args.iter().cloned())
            .collect()
    }

    /// `φ ∧ ψ`.
    pub fn and(&self, other: &GammaFormula) -> GammaFormula {
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        GammaFormula { constraints }
    }

    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> GammaFormula {
        GammaFormula {
            constraints: self.constraints.iter().map(|c| c.rename(&f)).collect(),
        }
    }

    pub fn holds(&self, value: impl Fn(&Var) -> bool) -> bool {
        self.constraints.iter().all(|c| c.holds(&value))
    }

    /// Fails if a constraint uses a relation outside `language`.
    pub fn check_language(&self, language: &ConstraintLanguage) -> Result<()> {
        for c in &self.constraints {
            if !language.contains(c.relation()) {
                return Err(Error::UnknownRelation(c.relation().name().to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GammaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GammaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `∃ y₁…y_l. body`, where the body may also contain built-in equalities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuantifiedFormula {
    exists: BTreeSet<Var>,
    body: Vec<Constraint>,
    equalities: Vec<(Var, Var)>,
}

impl QuantifiedFormula {
    pub fn new(
        exists: BTreeSet<Var>,
        body: Vec<Constraint>,
        equalities: Vec<(Var, Var)>,
    ) -> Result<Self> {
        if body.is_empty() && equalities.is_empty() {
            return Err(Error::InvalidFormula("empty quantified body".into()));
        }
        let q = QuantifiedFormula {
            exists,
            body,
            equalities,
        };
        let body_vars = q.body_vars();
        if let Some(v) = q.exists.iter().find(|v| !body_vars.contains(v)) {
            return Err(Error::InvalidFormula(format!(
                "quantified variable `{v}` does not occur in the body"
            )));
        }
        Ok(q)
    }

    /// A quantifier-free formula viewed as a quantified one.
    pub fn from_formula(f: &GammaFormula) -> Self {
        QuantifiedFormula {
            exists: BTreeSet::new(),
            body: f.constraints.clone(),
            equalities: Vec::new(),
        }
    }

    pub fn exists(&self) -> &BTreeSet<Var> {
        &self.exists
    }

    pub fn body(&self) -> &[Constraint] {
        &self.body
    }

    pub fn equalities(&self) -> &[(Var, Var)] {
        &self.equalities
    }

    pub fn body_vars(&self) -> BTreeSet<Var> {
        let mut vs: BTreeSet<Var> = self
            .body
            .iter()
            .flat_map(|c| c.args.iter().cloned())
            .collect();
        for (a, b) in &self.equalities {
            vs.insert(a.clone());
            vs.insert(b.clone());
        }
        vs
    }

    /// Free variables in canonical order.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.body_vars()
            .into_iter()
            .filter(|v| !self.exists.contains(v))
            .collect()
    }

    /// Re-quantifies `vars` (which must occur in the body).
    pub fn quantify(&self, vars: impl IntoIterator<Item = Var>) -> Result<Self> {
        let mut exists = self.exists.clone();
        exists.extend(vars);
        QuantifiedFormula::new(exists, self.body.clone(), self.equalities.clone())
    }
}

impl fmt::Display for QuantifiedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.exists.is_empty() {
            f.write_str("exists")?;
            for v in &self.exists {
                write!(f, " {v}")?;
            }
            f.write_str(": ")?;
        }
        let mut first = true;
        for c in &self.body {
            if !first {
                f.write_str(" & ")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        for (a, b) in &self.equalities {
            if !first {
                f.write_str(" & ")?;
            }
            first = false;
            write!(f, "{a}={b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuantifiedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An argumentation instance: knowledge base Δ, claim α and optionally a
/// distinguished formula ψ ∈ Δ (by index).
///
/// Each knowledge-base formula carries a label, used as its name in instance
/// files and reports.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArgInstance {
    pub language: ConstraintLanguage,
    pub delta: Vec<GammaFormula>,
    pub labels: Vec<String>,
    pub alpha: GammaFormula,
    pub relevant: Option<usize>,
}

impl ArgInstance {
    pub fn new(
        language: ConstraintLanguage,
        delta: Vec<(String, GammaFormula)>,
        alpha: GammaFormula,
        relevant: Option<usize>,
    ) -> Result<Self> {
        let (labels, delta): (Vec<String>, Vec<GammaFormula>) = delta.into_iter().unzip();
        let inst = ArgInstance {
            language,
            delta,
            labels,
            alpha,
            relevant,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Labels `d0, d1, …` in order.
    pub fn with_default_labels(
        language: ConstraintLanguage,
        delta: Vec<GammaFormula>,
        alpha: GammaFormula,
        relevant: Option<usize>,
    ) -> Result<Self> {
        let named = delta
            .into_iter()
            .enumerate()
            .map(|(i, f)| (format!("d{i}"), f))
            .collect();
        ArgInstance::new(language, named, alpha, relevant)
    }

    pub fn validate(&self) -> Result<()> {
        if self.labels.len() != self.delta.len() {
            return Err(Error::InvalidFormula("one label per formula".into()));
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for (label, f) in self.labels.iter().zip(&self.delta) {
            if !is_identifier(label) {
                return Err(Error::InvalidFormula(format!("`{label}` is not a valid name")));
            }
            if !seen.insert(label) {
                return Err(Error::InvalidFormula(format!("duplicate label `{label}`")));
            }
            f.check_language(&self.language)?;
        }
        self.alpha.check_language(&self.language)?;
        if let Some(r) = self.relevant {
            if r >= self.delta.len() {
                return Err(Error::InvalidFormula(format!(
                    "relevant index {r} outside the knowledge base"
                )));
            }
        }
        Ok(())
    }

    /// The distinguished formula's index, or an error if none was given.
    pub fn require_relevant(&self) -> Result<usize> {
        self.relevant
            .ok_or_else(|| Error::Precondition("instance has no relevant formula".into()))
    }
}
