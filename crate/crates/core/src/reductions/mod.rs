//! Source-problem oracles and the hardness constructions as instance
//! generators, so that every construction can be checked end to end.

mod abduction;
mod cnf;
pub mod constructions;
mod oracle;
pub mod sweep;

use std::fmt;

pub use abduction::{parse_abduction, parse_abduction_file, AbdInstance};
pub use cnf::{parse_dimacs, CnfInput};
pub use constructions::{CritsatVariant, EqVariant, TElimVariant};
pub use oracle::{
    abduction as solve_abduction, critical_sat, pos_one_in_three, three_sat, SourceProblem,
    MAX_CNF_VARS, MAX_HYPOTHESES,
};

use crate::error::{Error, Result};
use crate::formulas::{ArgInstance, GammaFormula};
use crate::limits::Limits;
use crate::logic::{Engine, Solver};

/// A source instance of any kind.
#[derive(Clone, Debug)]
pub enum Source {
    Cnf(CnfInput),
    Abd(AbdInstance),
    Arg(ArgInstance),
}

/// What the source of a reduction is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    Problem(SourceProblem),
    /// Argument existence over the instance's language.
    Arg,
    /// Whether the whole knowledge base is an argument for the claim.
    ArgCheck,
}

/// Which argumentation problem a reduction's output is an instance of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetProblem {
    Arg,
    /// The whole knowledge base is the candidate support.
    ArgCheck,
    /// The instance's relevant formula is the queried one.
    ArgRel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    ThreeSatArgNeq,
    Pos1In3ArgAndNot,
    AbdpArgNeq,
    AbdpArgAndNot,
    CritsatArgcheckImpl,
    CritsatArgcheckT,
    CritsatArgcheckAndNot,
    ThreeSatArgrelEq,
    ThreeSatArgrelEqT,
    ThreeSatArgrelEqF,
    ArgArgrel,
    AbdArgrelBothValid,
    AbdArgrelBothValidStep2,
    AbdArgrelOneValid,
    AbdArgrelOneValidStep2,
    ArgcheckTElimEq,
    ArgcheckTElimNeq,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 17] = [
        ReductionKind::ThreeSatArgNeq,
        ReductionKind::Pos1In3ArgAndNot,
        ReductionKind::AbdpArgNeq,
        ReductionKind::AbdpArgAndNot,
        ReductionKind::CritsatArgcheckImpl,
        ReductionKind::CritsatArgcheckT,
        ReductionKind::CritsatArgcheckAndNot,
        ReductionKind::ThreeSatArgrelEq,
        ReductionKind::ThreeSatArgrelEqT,
        ReductionKind::ThreeSatArgrelEqF,
        ReductionKind::ArgArgrel,
        ReductionKind::AbdArgrelBothValid,
        ReductionKind::AbdArgrelBothValidStep2,
        ReductionKind::AbdArgrelOneValid,
        ReductionKind::AbdArgrelOneValidStep2,
        ReductionKind::ArgcheckTElimEq,
        ReductionKind::ArgcheckTElimNeq,
    ];

    pub fn name(self) -> &'static str {
        use ReductionKind::*;
        match self {
            ThreeSatArgNeq => "3sat-arg-neq",
            Pos1In3ArgAndNot => "pos1in3-arg-andnot",
            AbdpArgNeq => "abdp-arg-neq",
            AbdpArgAndNot => "abdp-arg-andnot",
            CritsatArgcheckImpl => "critsat-argcheck-impl",
            CritsatArgcheckT => "critsat-argcheck-t",
            CritsatArgcheckAndNot => "critsat-argcheck-andnot",
            ThreeSatArgrelEq => "3sat-argrel-eq",
            ThreeSatArgrelEqT => "3sat-argrel-eq-t",
            ThreeSatArgrelEqF => "3sat-argrel-eq-f",
            ArgArgrel => "arg-argrel",
            AbdArgrelBothValid => "abd-argrel-bothvalid",
            AbdArgrelBothValidStep2 => "abd-argrel-bothvalid-step2",
            AbdArgrelOneValid => "abd-argrel-onevalid",
            AbdArgrelOneValidStep2 => "abd-argrel-onevalid-step2",
            ArgcheckTElimEq => "argcheck-t-elim-eq",
            ArgcheckTElimNeq => "argcheck-t-elim-neq",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn source(self) -> SourceKind {
        use ReductionKind::*;
        match self {
            ThreeSatArgNeq | ThreeSatArgrelEq | ThreeSatArgrelEqT | ThreeSatArgrelEqF => {
                SourceKind::Problem(SourceProblem::ThreeSat)
            }
            Pos1In3ArgAndNot => SourceKind::Problem(SourceProblem::Pos1In3),
            AbdpArgNeq | AbdpArgAndNot => SourceKind::Problem(SourceProblem::AbdP),
            CritsatArgcheckImpl | CritsatArgcheckT | CritsatArgcheckAndNot => {
                SourceKind::Problem(SourceProblem::CriticalSat)
            }
            AbdArgrelBothValid | AbdArgrelBothValidStep2 | AbdArgrelOneValid
            | AbdArgrelOneValidStep2 => SourceKind::Problem(SourceProblem::Abd),
            ArgArgrel => SourceKind::Arg,
            ArgcheckTElimEq | ArgcheckTElimNeq => SourceKind::ArgCheck,
        }
    }

    pub fn target(self) -> TargetProblem {
        use ReductionKind::*;
        match self {
            ThreeSatArgNeq | Pos1In3ArgAndNot | AbdpArgNeq | AbdpArgAndNot => TargetProblem::Arg,
            CritsatArgcheckImpl | CritsatArgcheckT | CritsatArgcheckAndNot | ArgcheckTElimEq
            | ArgcheckTElimNeq => TargetProblem::ArgCheck,
            _ => TargetProblem::ArgRel,
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn wrong_source(kind: ReductionKind) -> Error {
    Error::Precondition(format!("{kind} expects a different source format"))
}

/// Builds the target instance of `kind` from `source`.
pub fn reduce(kind: ReductionKind, source: &Source) -> Result<ArgInstance> {
    use constructions::*;
    use ReductionKind::*;
    match (kind, source) {
        (ThreeSatArgNeq, Source::Cnf(c)) => three_sat_to_arg_neq(c),
        (Pos1In3ArgAndNot, Source::Cnf(c)) => pos1in3_to_arg_andnot(c),
        (CritsatArgcheckImpl, Source::Cnf(c)) => critsat_to_argcheck(c, CritsatVariant::Impl),
        (CritsatArgcheckT, Source::Cnf(c)) => critsat_to_argcheck(c, CritsatVariant::T),
        (CritsatArgcheckAndNot, Source::Cnf(c)) => critsat_to_argcheck(c, CritsatVariant::AndNot),
        (ThreeSatArgrelEq, Source::Cnf(c)) => three_sat_to_argrel_eq(c, EqVariant::Plain),
        (ThreeSatArgrelEqT, Source::Cnf(c)) => three_sat_to_argrel_eq(c, EqVariant::WithT),
        (ThreeSatArgrelEqF, Source::Cnf(c)) => three_sat_to_argrel_eq(c, EqVariant::WithF),
        (AbdpArgNeq, Source::Abd(a)) => abdp_to_arg_neq(a),
        (AbdpArgAndNot, Source::Abd(a)) => abdp_to_arg_andnot(a),
        (AbdArgrelBothValid, Source::Abd(a)) => abd_to_argrel_both_valid(a, false),
        (AbdArgrelBothValidStep2, Source::Abd(a)) => abd_to_argrel_both_valid(a, true),
        (AbdArgrelOneValid, Source::Abd(a)) => abd_to_argrel_one_valid(a, false),
        (AbdArgrelOneValidStep2, Source::Abd(a)) => abd_to_argrel_one_valid(a, true),
        (ArgArgrel, Source::Arg(i)) => arg_to_argrel(i),
        (ArgcheckTElimEq, Source::Arg(i)) => argcheck_t_elimination(i, TElimVariant::Eq),
        (ArgcheckTElimNeq, Source::Arg(i)) => argcheck_t_elimination(i, TElimVariant::Neq),
        _ => Err(wrong_source(kind)),
    }
}

/// Decides a source problem by brute force.
pub fn solve_source(problem: SourceProblem, source: &Source) -> Result<bool> {
    match (problem, source) {
        (SourceProblem::ThreeSat, Source::Cnf(c)) => three_sat(c),
        (SourceProblem::Pos1In3, Source::Cnf(c)) => pos_one_in_three(c),
        (SourceProblem::CriticalSat, Source::Cnf(c)) => critical_sat(c),
        (SourceProblem::Abd, Source::Abd(a)) => solve_abduction(a, false),
        (SourceProblem::AbdP, Source::Abd(a)) => solve_abduction(a, true),
        _ => Err(Error::Precondition(format!("{problem} expects a different source format"))),
    }
}

/// The answer a reduction must preserve, computed on the source side with
/// brute-force oracles only.
pub fn source_answer(kind: ReductionKind, source: &Source, limits: Limits) -> Result<bool> {
    match (kind.source(), source) {
        (SourceKind::Problem(p), _) => solve_source(p, source),
        (SourceKind::Arg, Source::Arg(i)) => {
            Solver::for_instance(i, Engine::Generic, limits).arg_exists(&i.delta, &i.alpha)
        }
        (SourceKind::ArgCheck, Source::Arg(i)) => {
            let phi: Vec<&GammaFormula> = i.delta.iter().collect();
            Solver::for_instance(i, Engine::Generic, limits).argcheck(&phi, &i.alpha)
        }
        _ => Err(wrong_source(kind)),
    }
}

/// Solves a generated instance as the problem `target` names.
pub fn solve_target(
    target: TargetProblem,
    inst: &ArgInstance,
    engine: Engine,
    limits: Limits,
) -> Result<bool> {
    let solver = Solver::for_instance(inst, engine, limits);
    match target {
        TargetProblem::Arg => solver.arg_exists(&inst.delta, &inst.alpha),
        TargetProblem::ArgCheck => {
            let phi: Vec<&GammaFormula> = inst.delta.iter().collect();
            solver.argcheck(&phi, &inst.alpha)
        }
        TargetProblem::ArgRel => solver.argrel(&inst.delta, &inst.alpha, inst.require_relevant()?),
    }
}

