use std::fmt;

use super::abduction::AbdInstance;
use super::cnf::{clause_holds, CnfInput};
use crate::error::{Error, Result};
use crate::formulas::enumerate_models;
use crate::limits::Limits;

/// Largest variable count the CNF oracles enumerate.
pub const MAX_CNF_VARS: usize = 20;
/// Largest hypothesis set the abduction oracles enumerate.
pub const MAX_HYPOTHESES: usize = 12;

/// Source problems with brute-force deciders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceProblem {
    ThreeSat,
    Pos1In3,
    CriticalSat,
    Abd,
    AbdP,
}

impl SourceProblem {
    pub const ALL: [SourceProblem; 5] = [
        SourceProblem::ThreeSat,
        SourceProblem::Pos1In3,
        SourceProblem::CriticalSat,
        SourceProblem::Abd,
        SourceProblem::AbdP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SourceProblem::ThreeSat => "3sat",
            SourceProblem::Pos1In3 => "pos1in3",
            SourceProblem::CriticalSat => "critsat",
            SourceProblem::Abd => "abd",
            SourceProblem::AbdP => "abdp",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn takes_cnf(self) -> bool {
        !matches!(self, SourceProblem::Abd | SourceProblem::AbdP)
    }
}

impl fmt::Display for SourceProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_cnf_budget(cnf: &CnfInput) -> Result<()> {
    if cnf.vars() > MAX_CNF_VARS {
        return Err(Error::ModelBudget {
            vars: cnf.vars(),
            cap: 1 << MAX_CNF_VARS,
        });
    }
    Ok(())
}

fn require_width(cnf: &CnfInput, problem: SourceProblem) -> Result<()> {
    if cnf.max_width() > 3 {
        return Err(Error::Precondition(format!(
            "{problem} expects clauses of width at most 3, found {}",
            cnf.max_width()
        )));
    }
    Ok(())
}

/// Whether the CNF has a model.
pub fn three_sat(cnf: &CnfInput) -> Result<bool> {
    require_width(cnf, SourceProblem::ThreeSat)?;
    check_cnf_budget(cnf)?;
    Ok((0..1u64 << cnf.vars()).any(|a| cnf.satisfied_by(a)))
}

/// Whether some assignment makes exactly one variable per clause true.
/// Clauses must be positive.
pub fn pos_one_in_three(cnf: &CnfInput) -> Result<bool> {
    require_width(cnf, SourceProblem::Pos1In3)?;
    if cnf.clauses().iter().flatten().any(|&l| l < 0) {
        return Err(Error::Precondition("pos1in3 expects positive clauses".into()));
    }
    check_cnf_budget(cnf)?;
    Ok((0..1u64 << cnf.vars()).any(|a| {
        cnf.clauses()
            .iter()
            .all(|c| c.iter().filter(|&&l| (a >> (l - 1)) & 1 == 1).count() == 1)
    }))
}

/// Whether the CNF is unsatisfiable while every clause-deleted remainder
/// is satisfiable.
pub fn critical_sat(cnf: &CnfInput) -> Result<bool> {
    require_width(cnf, SourceProblem::CriticalSat)?;
    check_cnf_budget(cnf)?;
    let k = cnf.clauses().len();
    // witnessed[i]: some assignment falsifies clause i alone
    let mut witnessed = vec![false; k];
    for a in 0..1u64 << cnf.vars() {
        let mut falsified = cnf
            .clauses()
            .iter()
            .enumerate()
            .filter(|(_, c)| !clause_holds(c, a))
            .map(|(i, _)| i);
        match (falsified.next(), falsified.next()) {
            (None, _) => return Ok(false),
            (Some(i), None) => witnessed[i] = true,
            _ => {}
        }
    }
    Ok(witnessed.into_iter().all(|w| w))
}

/// Whether some consistent set of literals over `H` (positive literals only
/// when `positive_only`) is consistent with `phi` and together entails `q`.
pub fn abduction(abd: &AbdInstance, positive_only: bool) -> Result<bool> {
    let h: Vec<_> = abd.hypotheses.iter().cloned().collect();
    if h.len() > MAX_HYPOTHESES {
        return Err(Error::KbBudget {
            size: h.len(),
            cap: MAX_HYPOTHESES,
        });
    }
    let limits = Limits::default();
    let models = enumerate_models([&abd.phi], &abd.all_vars(), &limits)?;
    let pos = |v| models.vars.iter().position(|w| w == v).expect("enumerated");
    let hpos: Vec<usize> = h.iter().map(pos).collect();
    let qpos = pos(&abd.q);
    // E as (mask, values): hypothesis i is fixed iff mask bit i is set
    let choices: Box<dyn Iterator<Item = (u32, u32)>> = if positive_only {
        Box::new((0..1u32 << h.len()).map(|m| (m, m)))
    } else {
        Box::new((0..1u32 << h.len()).flat_map(|m| {
            (0..1u32 << h.len())
                .filter(move |v| v & !m == 0)
                .map(move |v| (m, v))
        }))
    };
    for (mask, vals) in choices {
        let mut consistent = false;
        let mut entails = true;
        for a in &models.assignments {
            let agrees = hpos
                .iter()
                .enumerate()
                .all(|(i, &p)| (mask >> i) & 1 == 0 || a.get(p) == ((vals >> i) & 1 == 1));
            if agrees {
                consistent = true;
                if !a.get(qpos) {
                    entails = false;
                    break;
                }
            }
        }
        if consistent && entails {
            return Ok(true);
        }
    }
    Ok(false)
}
