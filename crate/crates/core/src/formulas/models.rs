use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::{Constraint, GammaFormula, Var};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::relations::Relation;

/// A total assignment over an ordered variable list; variable `i` sits at
/// bit `width - 1 - i`, so numeric order is lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Assignment {
    bits: u64,
    width: usize,
}

impl Assignment {
    pub fn new(bits: u64, width: usize) -> Self {
        debug_assert!(width < 64 && bits >> width == 0);
        Assignment { bits, width }
    }

    pub(crate) fn from_values(values: &[bool]) -> Self {
        let bits = values.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
        Assignment::new(bits, values.len())
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        (self.bits >> (self.width - 1 - i)) & 1 == 1
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Models over `vars`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Models {
    pub vars: Vec<Var>,
    pub assignments: Vec<Assignment>,
}

impl Models {
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn value(&self, a: &Assignment, v: &Var) -> Option<bool> {
        self.vars.iter().position(|w| w == v).map(|i| a.get(i))
    }
}

/// All assignments over `over` satisfying every formula, in lexicographic order.
///
/// `over` must contain every variable of the formulas.
pub fn enumerate_models<'a>(
    formulas: impl IntoIterator<Item = &'a GammaFormula>,
    over: &BTreeSet<Var>,
    limits: &Limits,
) -> Result<Models> {
    let mut net = Network::new(over.iter().cloned());
    for f in formulas {
        for c in f.constraints() {
            if let Some(v) = c.args().iter().find(|v| !over.contains(v)) {
                return Err(Error::InvalidFormula(format!(
                    "variable `{v}` missing from the enumeration domain"
                )));
            }
            net.add(c);
        }
    }
    let mut assignments = Vec::new();
    net.for_each_model(limits, |values| {
        assignments.push(Assignment::from_values(values));
        true
    })?;
    Ok(Models {
        vars: net.vars,
        assignments,
    })
}

/// A constraint whose arguments are positions in a [`Network`]'s variable list.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub relation: Arc<Relation>,
    pub args: Vec<usize>,
}

impl Compiled {
    #[inline]
    pub fn tuple(&self, values: &[bool]) -> u32 {
        self.args
            .iter()
            .fold(0u32, |acc, &i| (acc << 1) | u32::from(values[i]))
    }

    #[inline]
    pub fn holds(&self, values: &[bool]) -> bool {
        self.relation.contains(self.tuple(values))
    }
}

/// Constraints over a fixed, canonically ordered variable list.
#[derive(Clone, Debug, Default)]
pub(crate) struct Network {
    pub vars: Vec<Var>,
    pub index: BTreeMap<Var, usize>,
    pub constraints: Vec<Compiled>,
}

impl Network {
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Self {
        let set: BTreeSet<Var> = vars.into_iter().collect();
        let vars: Vec<Var> = set.into_iter().collect();
        let index = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Network {
            vars,
            index,
            constraints: Vec::new(),
        }
    }

    /// Adds a constraint; its variables must already be present.
    pub fn add(&mut self, c: &Constraint) {
        self.constraints.push(self.compile(c));
    }

    pub fn compile(&self, c: &Constraint) -> Compiled {
        Compiled {
            relation: c.relation().clone(),
            args: c.args().iter().map(|v| self.index[v]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    /// Calls `visit` on each model in lexicographic order until it returns
    /// false. Returns whether the enumeration ran to completion.
    pub fn for_each_model(
        &self,
        limits: &Limits,
        mut visit: impl FnMut(&[bool]) -> bool,
    ) -> Result<bool> {
        let n = self.vars.len();
        limits.check_vars(n)?;
        // constraints become checkable once their last variable is set
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (ci, c) in self.constraints.iter().enumerate() {
            let last = c.args.iter().max().map_or(0, |&m| m + 1);
            at[last].push(ci);
        }
        if !at[0].iter().all(|&ci| self.constraints[ci].holds(&[])) {
            return Ok(true);
        }
        let mut values = vec![false; n];
        Ok(self.descend(0, &mut values, &at, &mut visit))
    }

    fn descend(
        &self,
        depth: usize,
        values: &mut [bool],
        at: &[Vec<usize>],
        visit: &mut impl FnMut(&[bool]) -> bool,
    ) -> bool {
        if depth == values.len() {
            return visit(values);
        }
        for b in [false, true] {
            values[depth] = b;
            if at[depth + 1]
                .iter()
                .all(|&ci| self.constraints[ci].holds(values))
                && !self.descend(depth + 1, values, at, visit)
            {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::vars;
    use crate::relations::catalog;

    fn models(fs: &[GammaFormula], over: &[&str]) -> Vec<String> {
        let over: BTreeSet<Var> = over.iter().map(|&v| Var::from(v)).collect();
        enumerate_models(fs, &over, &Limits::default())
            .unwrap()
            .assignments
            .iter()
            .map(|a| a.to_string())
            .collect()
    }

    #[test]
    fn or2_models() {
        let or2 = Arc::new(catalog::or2());
        let f = GammaFormula::atom(&or2, vars(["x", "y"]));
        assert_eq!(models(&[f], &["x", "y"]), ["01", "10", "11"]);
    }

    #[test]
    fn disequality_chain() {
        let neq = Arc::new(catalog::neq());
        let f = GammaFormula::atom(&neq, vars(["x", "y"]))
            .and(&GammaFormula::atom(&neq, vars(["y", "z"])));
        assert_eq!(models(&[f], &["x", "y", "z"]), ["010", "101"]);
    }

    #[test]
    fn repeated_argument_unsatisfiable() {
        let neq = Arc::new(catalog::neq());
        let f = GammaFormula::atom(&neq, vars(["x", "x"]));
        assert!(models(&[f], &["x"]).is_empty());
    }

    #[test]
    fn free_extra_variables_and_empty_formula_set() {
        let t = Arc::new(catalog::t());
        let f = GammaFormula::atom(&t, vars(["b"]));
        assert_eq!(models(&[f], &["a", "b"]), ["01", "11"]);
        assert_eq!(models(&[], &[]), [""]);
    }

    #[test]
    fn domain_and_budget_errors() {
        let t = Arc::new(catalog::t());
        let f = GammaFormula::atom(&t, vars(["b"]));
        let over: BTreeSet<Var> = [Var::from("a")].into();
        assert!(enumerate_models([&f], &over, &Limits::default()).is_err());
        let over: BTreeSet<Var> = (0..5).map(|i| Var::new(format!("v{i}"))).collect();
        let tight = Limits {
            max_models: 16,
            ..Limits::default()
        };
        assert!(enumerate_models([], &over, &tight).unwrap_err().is_budget());
    }
}
